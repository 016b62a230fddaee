#pragma once

#include <cstdint>

#include "wbc/analytics.hpp"
#include "wbc/protocol.hpp"

namespace wbc {

struct MonteCarloOptions {
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  int jobs = 1;
  /// Upper: an Event outside the strategy domain counts as failure. Lower: as success.
  BoundKind out_of_domain = BoundKind::Upper;
  int x_S = 0;
};

struct MonteCarloResult {
  AdversaryConfig config;
  int m;
  std::int64_t trials;
  std::int64_t failures;
  std::int64_t out_of_domain;
  double estimate;
  double stderr_;
  std::uint64_t seed;
};

/// Samples `trials` Events, trial i from Substream{seed, i}, runs the protocol with zeta_S or
/// zeta_R for the faulty configurations and scores each transcript with
/// classify_weak_broadcast. The result does not depend on jobs.
/// Throws ParameterError for trials < 1 or jobs < 1.
MonteCarloResult estimate_pf(AdversaryConfig cfg, const ProtocolParams& p, const MonteCarloOptions& options);

/// sqrt(p (1 - p) / n)
double binomial_stderr(double p, std::int64_t n);

}  // namespace wbc
