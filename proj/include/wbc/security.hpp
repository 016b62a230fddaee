#pragma once

#include <vector>

#include "wbc/rational.hpp"

namespace wbc {

/// 2/9 < mu < 1/3 and (2 + 9 mu) / (18 mu) < lambda < 1, evaluated exactly.
bool in_guaranteed_region(const Rational& mu, const Rational& lambda);

/// Lower edge of the lambda interval, (2 + 9 mu) / (18 mu).
Rational lambda_threshold(const Rational& mu);

struct ExponentialTerm {
  double prefactor;
  double rate;  // per unit m
};

/// sum_i a_i exp(-b_i m). Values are not clamped; at small m they may exceed 1.
struct ExponentialSum {
  std::vector<ExponentialTerm> terms;

  double value(double m) const;
  double log_value(double m) const;
  /// d/dm log(value) at m.
  double log_slope(double m) const;
};

/// exp(-(m/6)(1 - 3 mu)^2). Throws ParameterError unless mu < 1/3.
ExponentialSum chernoff_no_faulty_terms(const Rational& mu);
/// 2^(-(1 - lambda) mu m) + 4 exp(-(m/9)(1 - 3 mu)^2). Throws ParameterError unless lambda >= 1/2.
ExponentialSum chernoff_S_terms(const Rational& mu, const Rational& lambda);
/// 2 exp(-(m/9)(1 - 3 mu)^2) + 2 exp(-(m/18)(1 - 3 mu)^2) + exp(-Xbar delta^2 / 3), with
/// delta = (2 + 9 mu - 18 lambda mu) / (6 - 27 mu) and Xbar = (3 mu / 2 - 1/3) m.
/// Throws ParameterError outside the guaranteed region unless enforce_region is false, in which
/// case the same expressions are evaluated as they stand.
ExponentialSum chernoff_R_terms(const Rational& mu, const Rational& lambda, bool enforce_region = true);

double chernoff_no_faulty(const Rational& mu, double m);
double chernoff_S(const Rational& mu, const Rational& lambda, double m);
double chernoff_R(const Rational& mu, const Rational& lambda, double m);

struct RegionCell {
  Rational mu;
  Rational lambda;
  bool inside;
};

/// Grid over [mu_lo, mu_hi] x [lambda_lo, lambda_hi] with the given number of points per axis
/// (endpoints included, row-major in mu).
std::vector<RegionCell> region_grid(const Rational& mu_lo, const Rational& mu_hi, int mu_steps,
                                    const Rational& lambda_lo, const Rational& lambda_hi, int lambda_steps);

}  // namespace wbc
