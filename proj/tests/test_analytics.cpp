#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "wbc/adversary.hpp"
#include "wbc/analytics.hpp"

using namespace wbc;
using wbc::test::params;

namespace {

const char* const kParamSets[][2] = {{"0.26", "0.94"}, {"0.272", "0.94"}, {"0.30", "0.95"}};

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

int first_below(AdversaryConfig cfg, BoundKind kind, double target) {
  for (int m = 1; m <= 1000; ++m) {
    if (failure_probability(cfg, kind, params("0.272", "0.94", m)).value < target) return m;
  }
  return -1;
}

}  // namespace

TEST_SUITE("analytics") {
  TEST_CASE("log multinomial") {
    CHECK(std::abs(log_multinomial(12, {4, 4, 4}) - std::log(34650.0)) < 1e-12);
    CHECK(log_multinomial(7, {7}) == 0.0);
    CHECK(std::abs(log_multinomial(5, {2, 3}) - std::log(10.0)) < 1e-12);
    CHECK(multinomial(12, {4, 4, 4}) == 34650);
    CHECK_THROWS_AS(log_multinomial(5, {2, 2}), ParameterError);
    CHECK_THROWS_AS(log_multinomial(5, {6, -1}), ParameterError);
    for (int m = 0; m <= 30; ++m) {
      for (int a = 0; a <= m; ++a) {
        for (int b = 0; a + b <= m; b += 3) {
          const std::vector<int> parts = {a, b, m - a - b};
          const double exact = std::log(to_double(Rational(multinomial(m, parts))));
          CHECK(std::abs(log_multinomial(m, parts) - exact) <= 1e-12 * std::max(1.0, exact));
        }
      }
    }
  }

  TEST_CASE("no-faulty small cases") {
    CHECK(pf_no_faulty_rational(params("0.272", "0.94", 1)) == Rational(2, 3));
    CHECK(pf_no_faulty_rational(params("0.272", "0.94", 2)) == Rational(4, 9));
    CHECK(pf_bruteforce(AdversaryConfig::NoFaulty, BoundKind::Exact, params("0.272", "0.94", 2)).exact ==
          Rational(4, 9));
    CHECK(std::abs(pf_no_faulty_exact(params("0.272", "0.94", 1)).value - 2.0 / 3.0) < 1e-15);
  }

  TEST_CASE("formulas equal exhaustive enumeration for m <= 5") {
    for (const auto& ps : kParamSets) {
      for (int m = 1; m <= 5; ++m) {
        CAPTURE(ps[0]);
        CAPTURE(m);
        const ProtocolParams p = params(ps[0], ps[1], m);
        CHECK(*pf_bruteforce(AdversaryConfig::NoFaulty, BoundKind::Exact, p).exact == pf_no_faulty_rational(p));
        CHECK(best_failure_probability_bruteforce(AdversaryConfig::NoFaulty, p) == pf_no_faulty_rational(p));
        const auto s = pf_S_bounds_rational(p);
        CHECK(*pf_bruteforce(AdversaryConfig::SenderFaulty, BoundKind::Upper, p).exact == s.second);
        CHECK(*pf_bruteforce(AdversaryConfig::SenderFaulty, BoundKind::Lower, p).exact == s.first);
        const auto r = pf_R_bounds_rational(p);
        CHECK(*pf_bruteforce(AdversaryConfig::R0Faulty, BoundKind::Upper, p).exact == r.second);
        CHECK(*pf_bruteforce(AdversaryConfig::R0Faulty, BoundKind::Lower, p).exact == r.first);
      }
    }
  }

  TEST_CASE("formulas equal exhaustive enumeration at m = 6 on a wider parameter grid") {
    for (const char* mu : {"0.05", "0.17", "1/6", "0.2", "0.3333"}) {
      for (const char* lambda : {"0.51", "0.75", "0.99"}) {
        const ProtocolParams p = params(mu, lambda, 6);
        CHECK(*pf_bruteforce(AdversaryConfig::SenderFaulty, BoundKind::Upper, p).exact ==
              pf_S_bounds_rational(p).second);
        CHECK(*pf_bruteforce(AdversaryConfig::R0Faulty, BoundKind::Upper, p).exact == pf_R_bounds_rational(p).second);
        CHECK(*pf_bruteforce(AdversaryConfig::R0Faulty, BoundKind::Lower, p).exact == pf_R_bounds_rational(p).first);
      }
    }
    CHECK_THROWS_AS(pf_bruteforce(AdversaryConfig::NoFaulty, BoundKind::Exact, params("0.3", "0.9", 9)),
                    ParameterError);
  }

  TEST_CASE("log-space backend agrees with the rational backend") {
    for (const auto& ps : kParamSets) {
      for (int m = 1; m <= 30; ++m) {
        const ProtocolParams p = params(ps[0], ps[1], m);
        CHECK(rel_diff(pf_no_faulty_exact(p).value, to_double(pf_no_faulty_rational(p))) < 1e-12);
        const auto s = pf_S_bounds(p);
        const auto sr = pf_S_bounds_rational(p);
        CHECK(rel_diff(s.first.value, to_double(sr.first)) < 1e-12);
        CHECK(rel_diff(s.second.value, to_double(sr.second)) < 1e-12);
        const auto r = pf_R_bounds(p);
        const auto rr = pf_R_bounds_rational(p);
        CHECK(rel_diff(r.first.value, to_double(rr.first)) < 1e-12);
        CHECK(rel_diff(r.second.value, to_double(rr.second)) < 1e-12);
      }
    }
  }

  TEST_CASE("S bound identity and ordering") {
    for (int m = 1; m <= 40; ++m) {
      const ProtocolParams p = params("0.272", "0.94", m);
      const auto [lo, hi] = pf_S_bounds_rational(p);
      const Rational mass = pf_S_domain_mass_rational(p);
      CHECK(lo == mass * pow(Rational(1, 2), p.Q()));
      CHECK(hi == lo + 1 - mass);
      CHECK(hi - lo == (1 - mass) + 0);
      CHECK(lo <= hi);
      const auto [rlo, rhi] = pf_R_bounds_rational(p);
      CHECK(rlo <= rhi);
      CHECK(rhi <= 1);
    }
    for (int m = 50; m <= 2000; m += 150) {
      const ProtocolParams p = params("0.272", "0.94", m);
      const auto s = pf_S_bounds(p);
      const auto r = pf_R_bounds(p);
      CHECK(s.first.value <= s.second.value);
      CHECK(r.first.value <= r.second.value);
      CHECK(s.second.value <= 1.0);
      CHECK(r.first.value >= 0.0);
    }
  }

  TEST_CASE("trinomial normalization") {
    for (int m : {1, 7, 50, 200}) {
      for (auto probs : {std::array<double, 3>{1.0 / 3, 1.0 / 3, 1.0 / 3}, std::array<double, 3>{1.0 / 3, 1.0 / 6, 0.5}}) {
        double s = 0.0;
        for (int a = 0; a <= m; ++a) {
          for (int b = 0; a + b <= m; ++b) {
            const int c = m - a - b;
            s += std::exp(log_multinomial(m, {a, b, c}) + a * std::log(probs[0]) + b * std::log(probs[1]) +
                          c * std::log(probs[2]));
          }
        }
        CHECK(std::abs(s - 1.0) < 1e-12);
      }
    }
  }

  TEST_CASE("first m below 0.05 at mu = 0.272, lambda = 0.94") {
    CHECK(first_below(AdversaryConfig::NoFaulty, BoundKind::Exact, 0.05) == 143);
    CHECK(first_below(AdversaryConfig::SenderFaulty, BoundKind::Upper, 0.05) == 246);
    CHECK(first_below(AdversaryConfig::R0Faulty, BoundKind::Upper, 0.05) == 280);
  }

  TEST_CASE("upper bounds trend downward over m in [50, 400]") {
    // The bounds jump whenever T or Q steps, so the trend is measured by the least-squares
    // slope of log(bound) and by maxima over 50-wide blocks.
    for (auto cfg : {AdversaryConfig::SenderFaulty, AdversaryConfig::R0Faulty}) {
      std::vector<double> xs, ys;
      double previous = 2.0;
      for (int start = 50; start < 400; start += 50) {
        double block = 0.0;
        for (int m = start; m < start + 50; ++m) {
          const double v = failure_probability(cfg, BoundKind::Upper, params("0.272", "0.94", m)).value;
          block = std::max(block, v);
          xs.push_back(m);
          ys.push_back(std::log(v));
        }
        CHECK(block < previous);
        previous = block;
      }
      const double n = static_cast<double>(xs.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
      }
      CHECK((n * sxy - sx * sy) / (n * sxx - sx * sx) < 0.0);
    }
  }

  TEST_CASE("large m stays finite") {
    const ProtocolParams p = params("0.272", "0.94", 2000);
    const double v = pf_R_bounds(p).second.value;
    CHECK(v > 0.0);
    CHECK(v < 1e-5);
    CHECK(pf_no_faulty_exact(p).value > 0.0);
  }

  TEST_CASE("curves") {
    const auto rows = failure_curves(parse_rational("0.272"), parse_rational("0.94"), 10, 12);
    CHECK(rows.size() == 15);
    CHECK(rows.front().m == 10);
    CHECK_THROWS_AS(failure_curves(parse_rational("0.272"), parse_rational("0.94"), 5, 4), ParameterError);
  }
}
