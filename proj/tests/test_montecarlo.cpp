#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "wbc/analytics.hpp"
#include "wbc/montecarlo.hpp"

using namespace wbc;
using wbc::test::params;

TEST_SUITE("montecarlo") {
  TEST_CASE("stderr") {
    CHECK(binomial_stderr(0.2, 10000) == doctest::Approx(0.004));
    CHECK(binomial_stderr(0.0, 100) == 0.0);
  }

  TEST_CASE("argument checks") {
    MonteCarloOptions o;
    o.trials = 0;
    CHECK_THROWS_AS(estimate_pf(AdversaryConfig::NoFaulty, params("0.272", "0.94", 10), o), ParameterError);
    o.trials = 10;
    o.jobs = 0;
    CHECK_THROWS_AS(estimate_pf(AdversaryConfig::NoFaulty, params("0.272", "0.94", 10), o), ParameterError);
  }

  TEST_CASE("same seed, same result; any job count") {
    for (auto cfg : {AdversaryConfig::NoFaulty, AdversaryConfig::SenderFaulty, AdversaryConfig::R0Faulty}) {
      MonteCarloOptions o;
      o.trials = 3000;
      o.seed = 99;
      const auto a = estimate_pf(cfg, params("0.272", "0.94", 60), o);
      const auto b = estimate_pf(cfg, params("0.272", "0.94", 60), o);
      o.jobs = 4;
      const auto c = estimate_pf(cfg, params("0.272", "0.94", 60), o);
      o.jobs = 7;
      const auto d = estimate_pf(cfg, params("0.272", "0.94", 60), o);
      CHECK(a.failures == b.failures);
      CHECK(a.estimate == b.estimate);
      CHECK(a.stderr_ == b.stderr_);
      CHECK(a.failures == c.failures);
      CHECK(a.failures == d.failures);
      CHECK(a.out_of_domain == d.out_of_domain);
      o.jobs = 1;
      o.seed = 100;
      CHECK(estimate_pf(cfg, params("0.272", "0.94", 60), o).failures != a.failures);
    }
  }

  TEST_CASE("m = 2 honest run converges to 4/9") {
    MonteCarloOptions o;
    o.trials = 1'000'000;
    o.seed = 7;
    const auto r = estimate_pf(AdversaryConfig::NoFaulty, params("0.272", "0.94", 2), o);
    const double sigma = binomial_stderr(4.0 / 9.0, o.trials);
    CHECK(std::abs(r.estimate - 4.0 / 9.0) < 5 * sigma);
  }

  TEST_CASE("faulty estimates sit between the bounds") {
    MonteCarloOptions o;
    o.trials = 20000;
    o.seed = 3;
    const auto p = params("0.272", "0.94", 120);
    const auto [s_lo, s_hi] = pf_S_bounds(p);
    const auto [r_lo, r_hi] = pf_R_bounds(p);
    const auto s_up = estimate_pf(AdversaryConfig::SenderFaulty, p, o);
    const auto r_up = estimate_pf(AdversaryConfig::R0Faulty, p, o);
    o.out_of_domain = BoundKind::Lower;
    const auto s_dn = estimate_pf(AdversaryConfig::SenderFaulty, p, o);
    const auto r_dn = estimate_pf(AdversaryConfig::R0Faulty, p, o);
    const double sigma_s = binomial_stderr(s_hi.value, o.trials);
    const double sigma_r = binomial_stderr(r_hi.value, o.trials);
    CHECK(std::abs(s_up.estimate - s_hi.value) < 5 * sigma_s);
    CHECK(std::abs(r_up.estimate - r_hi.value) < 5 * sigma_r);
    CHECK(std::abs(s_dn.estimate - s_lo.value) < 5 * binomial_stderr(s_lo.value, o.trials) + 1e-12);
    CHECK(std::abs(r_dn.estimate - r_lo.value) < 5 * binomial_stderr(r_lo.value, o.trials) + 1e-12);
    CHECK(s_dn.failures <= s_up.failures);
    CHECK(r_dn.failures <= r_up.failures);
  }

  TEST_CASE("agreement with analytic values across a sweep") {
    MonteCarloOptions o;
    o.trials = 10000;
    o.seed = 11;
    for (int m : {50, 100, 150, 200, 250, 300}) {
      const auto p = params("0.272", "0.94", m);
      const double nf = pf_no_faulty_exact(p).value;
      const double s = pf_S_bounds(p).second.value;
      const double r = pf_R_bounds(p).second.value;
      for (auto [cfg, ref] : {std::pair{AdversaryConfig::NoFaulty, nf}, {AdversaryConfig::SenderFaulty, s},
                              {AdversaryConfig::R0Faulty, r}}) {
        const auto est = estimate_pf(cfg, p, o);
        const double sigma = std::max(est.stderr_, binomial_stderr(ref, o.trials));
        CAPTURE(m);
        CAPTURE(est.estimate);
        CAPTURE(ref);
        CHECK(std::abs(est.estimate - ref) <= 4 * sigma);
      }
    }
  }
}
