#include "wbc/security.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wbc {

namespace {

Rational grid_point(const Rational& lo, const Rational& hi, int steps, int i) {
  if (steps == 1) return lo;
  return lo + (hi - lo) * Rational(i, steps - 1);
}

}  // namespace

bool in_guaranteed_region(const Rational& mu, const Rational& lambda) {
  if (!(mu > Rational(2, 9) && mu < Rational(1, 3))) return false;
  return lambda > lambda_threshold(mu) && lambda < 1;
}

Rational lambda_threshold(const Rational& mu) {
  if (mu == 0) throw ParameterError("mu must be non-zero");
  return (2 + 9 * mu) / (18 * mu);
}

double ExponentialSum::value(double m) const {
  double v = 0.0;
  for (const auto& t : terms) v += t.prefactor * std::exp(-t.rate * m);
  return v;
}

double ExponentialSum::log_value(double m) const {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) top = std::max(top, std::log(t.prefactor) - t.rate * m);
  double s = 0.0;
  for (const auto& t : terms) s += std::exp(std::log(t.prefactor) - t.rate * m - top);
  return top + std::log(s);
}

double ExponentialSum::log_slope(double m) const {
  // derivative of log sum_i a_i e^{-b_i m} is the weighted mean of -b_i
  const double lv = log_value(m);
  double slope = 0.0;
  for (const auto& t : terms) slope += -t.rate * std::exp(std::log(t.prefactor) - t.rate * m - lv);
  return slope;
}

ExponentialSum chernoff_no_faulty_terms(const Rational& mu) {
  if (!(mu < Rational(1, 3))) throw ParameterError("mu < 1/3 violated");
  const double gap = to_double(1 - 3 * mu);
  return {{{1.0, gap * gap / 6.0}}};
}

ExponentialSum chernoff_S_terms(const Rational& mu, const Rational& lambda) {
  if (!(lambda >= Rational(1, 2))) throw ParameterError("lambda >= 1/2 violated");
  if (!(mu < Rational(1, 3))) throw ParameterError("mu < 1/3 violated");
  const double gap = to_double(1 - 3 * mu);
  return {{{1.0, to_double((1 - lambda) * mu) * std::log(2.0)}, {4.0, gap * gap / 9.0}}};
}

ExponentialSum chernoff_R_terms(const Rational& mu, const Rational& lambda, bool enforce_region) {
  if (enforce_region && !in_guaranteed_region(mu, lambda)) {
    throw ParameterError("chernoff_R needs 2/9 < mu < 1/3 and (2+9mu)/(18mu) < lambda < 1");
  }
  if (mu * 27 == 6) throw ParameterError("mu = 2/9 makes delta undefined");
  const double gap = to_double(1 - 3 * mu);
  const double delta = to_double((2 + 9 * mu - 18 * lambda * mu) / (6 - 27 * mu));
  const double xbar_rate = to_double(Rational(3, 2) * mu - Rational(1, 3));
  return {{{2.0, gap * gap / 9.0}, {2.0, gap * gap / 18.0}, {1.0, xbar_rate * delta * delta / 3.0}}};
}

double chernoff_no_faulty(const Rational& mu, double m) {
  return chernoff_no_faulty_terms(mu).value(m);
}

double chernoff_S(const Rational& mu, const Rational& lambda, double m) {
  return chernoff_S_terms(mu, lambda).value(m);
}

double chernoff_R(const Rational& mu, const Rational& lambda, double m) {
  return chernoff_R_terms(mu, lambda).value(m);
}

std::vector<RegionCell> region_grid(const Rational& mu_lo, const Rational& mu_hi, int mu_steps,
                                    const Rational& lambda_lo, const Rational& lambda_hi, int lambda_steps) {
  if (mu_steps < 1 || lambda_steps < 1) throw ParameterError("grid needs at least one point per axis");
  std::vector<RegionCell> cells;
  cells.reserve(static_cast<std::size_t>(mu_steps) * static_cast<std::size_t>(lambda_steps));
  for (int i = 0; i < mu_steps; ++i) {
    const Rational mu = grid_point(mu_lo, mu_hi, mu_steps, i);
    for (int j = 0; j < lambda_steps; ++j) {
      const Rational lambda = grid_point(lambda_lo, lambda_hi, lambda_steps, j);
      cells.push_back({mu, lambda, in_guaranteed_region(mu, lambda)});
    }
  }
  return cells;
}

}  // namespace wbc
