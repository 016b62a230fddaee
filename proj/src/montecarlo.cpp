#include "wbc/montecarlo.hpp"

#include <cmath>
#include <thread>
#include <vector>

#include "wbc/adversary.hpp"

namespace wbc {

namespace {

struct Tally {
  std::int64_t failures = 0;
  std::int64_t out_of_domain = 0;
};

Tally run_range(AdversaryConfig cfg, const ProtocolParams& p, const MonteCarloOptions& o, std::int64_t begin,
                std::int64_t end) {
  const ZetaSender sender;
  const ZetaReceiver0 receiver;
  Adversary adversary;
  if (cfg == AdversaryConfig::SenderFaulty) adversary = &sender;
  if (cfg == AdversaryConfig::R0Faulty) adversary = &receiver;

  Tally t;
  for (std::int64_t i = begin; i < end; ++i) {
    const Event e = sample_event(p.m(), Substream{o.seed, static_cast<std::uint64_t>(i)});
    const auto run = run_protocol(e, p, o.x_S, adversary);
    if (const auto* transcript = std::get_if<Transcript>(&run)) {
      if (classify(*transcript) == Verdict::Failure) ++t.failures;
    } else {
      ++t.out_of_domain;
      if (o.out_of_domain == BoundKind::Upper) ++t.failures;
    }
  }
  return t;
}

}  // namespace

double binomial_stderr(double p, std::int64_t n) {
  if (n < 1) throw ParameterError("n >= 1 required");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

MonteCarloResult estimate_pf(AdversaryConfig cfg, const ProtocolParams& p, const MonteCarloOptions& options) {
  if (options.trials < 1) throw ParameterError("N >= 1 violated");
  if (options.jobs < 1) throw ParameterError("jobs >= 1 violated");
  if (options.out_of_domain == BoundKind::Exact) throw ParameterError("out-of-domain scoring must be lower or upper");
  if (options.x_S != 0 && options.x_S != 1) throw ParameterError("x_S must be 0 or 1");

  const std::int64_t workers = std::min<std::int64_t>(options.jobs, options.trials);
  std::vector<Tally> tallies(static_cast<std::size_t>(workers));
  auto bounds = [&](std::int64_t w) { return options.trials * w / workers; };

  if (workers == 1) {
    tallies[0] = run_range(cfg, p, options, 0, options.trials);
  } else {
    std::vector<std::thread> threads;
    for (std::int64_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] { tallies[static_cast<std::size_t>(w)] = run_range(cfg, p, options, bounds(w), bounds(w + 1)); });
    }
    for (auto& th : threads) th.join();
  }

  MonteCarloResult r{cfg, p.m(), options.trials, 0, 0, 0.0, 0.0, options.seed};
  for (const Tally& t : tallies) {
    r.failures += t.failures;
    r.out_of_domain += t.out_of_domain;
  }
  r.estimate = static_cast<double>(r.failures) / static_cast<double>(r.trials);
  r.stderr_ = binomial_stderr(r.estimate, r.trials);
  return r;
}

}  // namespace wbc
