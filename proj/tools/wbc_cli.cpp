// wbc: command-line front end for the WBC(3,1) analysis library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wbc/adversary.hpp"
#include "wbc/analytics.hpp"
#include "wbc/io.hpp"
#include "wbc/metrics.hpp"
#include "wbc/montecarlo.hpp"
#include "wbc/optimizer.hpp"
#include "wbc/protocol.hpp"
#include "wbc/security.hpp"
#include "wbc/truth_table.hpp"

namespace {

using namespace wbc;
using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitParameter = 3;
constexpr int kExitInput = 4;
constexpr int kExitVerifyFailed = 1;

struct Common {
  std::string format = "csv";
  std::string output_dir;
  bool inexact = false;
  int jobs = 1;
};

void add_common(CLI::App* sub, Common& c, bool with_jobs) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--output-dir", c.output_dir,
                  "Write <command>.<ext> and <command>.manifest.json here (default: $WBC_OUTPUT_DIR, else stdout)");
  sub->add_flag("--inexact", c.inexact, "Accept floating-point notation for mu and lambda");
  if (with_jobs) sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

std::string output_dir(const Common& c) {
  if (!c.output_dir.empty()) return c.output_dir;
  if (const char* env = std::getenv("WBC_OUTPUT_DIR"); env != nullptr) return env;
  return "";
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

/// Primary output to stdout, or to files plus a manifest when an output directory is set.
void emit(const std::string& command, const Common& c, const Table& table, Json parameters) {
  const Format f = parse_format(c.format);
  const std::string dir = output_dir(c);
  if (dir.empty()) {
    write_table(std::cout, table, f);
    return;
  }
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  {
    auto out = open_out(base / (command + (f == Format::Csv ? ".csv" : ".json")));
    write_table(out, table, f);
  }
  auto out = open_out(base / (command + ".manifest.json"));
  out << make_manifest(command, std::move(parameters)).dump(2) << '\n';
}

struct MuLambda {
  std::string mu = "0.272";
  std::string lambda = "0.94";
};

void add_mu_lambda(CLI::App* sub, MuLambda& ml) {
  sub->add_option("--mu", ml.mu, "Check-set length fraction, decimal or p/q")->capture_default_str();
  sub->add_option("--lambda", ml.lambda, "Cross-check consistency fraction, decimal or p/q")->capture_default_str();
}

Rational rat(const std::string& text, const Common& c) {
  return parse_rational(text, c.inexact);
}

struct MRange {
  std::vector<int> list;
  int from = 0;
  int to = 0;
  int step = 1;

  std::vector<int> values() const {
    if (!list.empty()) return list;
    if (from < 1 || to < from || step < 1) throw ParameterError("need 1 <= m-from <= m-to and m-step >= 1");
    std::vector<int> v;
    for (int m = from; m <= to; m += step) v.push_back(m);
    return v;
  }
};

void add_m_range(CLI::App* sub, MRange& r, int from, int to, int step) {
  r.from = from;
  r.to = to;
  r.step = step;
  sub->add_option("--m", r.list, "Explicit list of m values (overrides the range)")->delimiter(',');
  sub->add_option("--m-from", r.from, "First m")->capture_default_str();
  sub->add_option("--m-to", r.to, "Last m")->capture_default_str();
  sub->add_option("--m-step", r.step, "Step in m")->capture_default_str();
}

std::vector<AdversaryConfig> configs_of(const std::string& name) {
  if (name == "all") return {AdversaryConfig::NoFaulty, AdversaryConfig::SenderFaulty, AdversaryConfig::R0Faulty};
  return {parse_config(name)};
}

const std::vector<std::string> kConfigNames = {"all", "no-faulty", "s-faulty", "r0-faulty"};

Json m_json(const std::vector<int>& ms) {
  return Json(ms);
}

// -- simulate ------------------------------------------------------------------------------

void setup_simulate(CLI::App& app, std::vector<std::function<void()>>& actions) {
  auto* sub = app.add_subcommand("simulate", "Monte-Carlo failure estimates over a sweep of m");
  struct Opts {
    Common c;
    MuLambda ml;
    MRange m;
    std::string config = "all";
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    std::string out_of_domain = "upper";
  };
  auto o = std::make_shared<Opts>();
  add_common(sub, o->c, true);
  add_mu_lambda(sub, o->ml);
  add_m_range(sub, o->m, 50, 300, 50);
  sub->add_option("--config", o->config, "Adversary configuration")->check(CLI::IsMember(kConfigNames))->capture_default_str();
  sub->add_option("--trials", o->trials, "Trials per (m, config)")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--seed", o->seed, "Root seed")->capture_default_str();
  sub->add_option("--out-of-domain", o->out_of_domain, "Score Events outside the strategy domain as failure (upper) or success (lower)")
      ->check(CLI::IsMember({"upper", "lower"}))
      ->capture_default_str();
  sub->callback([sub, o, &actions] {
    (void)sub;
    actions.push_back([o] {
      const Rational mu = rat(o->ml.mu, o->c);
      const Rational lambda = rat(o->ml.lambda, o->c);
      MonteCarloOptions mc;
      mc.trials = o->trials;
      mc.seed = o->seed;
      mc.jobs = o->c.jobs;
      mc.out_of_domain = parse_bound_kind(o->out_of_domain);
      const auto ms = o->m.values();
      std::vector<MonteCarloResult> rows;
      for (int m : ms) {
        const ProtocolParams p(mu, lambda, m);
        for (auto cfg : configs_of(o->config)) rows.push_back(estimate_pf(cfg, p, mc));
      }
      emit("simulate", o->c, montecarlo_table(rows),
           {{"mu", format_rational(mu)}, {"lambda", format_rational(lambda)}, {"m", m_json(ms)},
            {"config", o->config}, {"trials", o->trials}, {"seed", o->seed}, {"out_of_domain", o->out_of_domain},
            {"substreams", "trial i uses substream (seed, i)"}});
    });
  });
}

// -- exact ---------------------------------------------------------------------------------

void setup_exact(CLI::App& app, std::vector<std::function<void()>>& actions) {
  auto* sub = app.add_subcommand("exact", "Analytic failure probabilities (exact, lower and upper bounds)");
  struct Opts {
    Common c;
    MuLambda ml;
    MRange m;
    std::string config = "all";
    std::string kind = "all";
  };
  auto o = std::make_shared<Opts>();
  add_common(sub, o->c, false);
  add_mu_lambda(sub, o->ml);
  add_m_range(sub, o->m, 1, 400, 1);
  sub->add_option("--config", o->config, "Adversary configuration")->check(CLI::IsMember(kConfigNames))->capture_default_str();
  sub->add_option("--kind", o->kind, "exact, lower, upper or all (faulty configurations have no exact value)")
      ->check(CLI::IsMember({"all", "exact", "lower", "upper"}))
      ->capture_default_str();
  sub->callback([o, &actions] {
    actions.push_back([o] {
      const Rational mu = rat(o->ml.mu, o->c);
      const Rational lambda = rat(o->ml.lambda, o->c);
      const auto ms = o->m.values();
      std::vector<CurveRow> rows;
      for (int m : ms) {
        const ProtocolParams p(mu, lambda, m);
        for (auto cfg : configs_of(o->config)) {
          std::vector<BoundKind> kinds;
          if (o->kind != "all") {
            kinds = {parse_bound_kind(o->kind)};
          } else if (cfg == AdversaryConfig::NoFaulty) {
            kinds = {BoundKind::Exact};
          } else {
            kinds = {BoundKind::Lower, BoundKind::Upper};
          }
          for (auto k : kinds) rows.push_back({m, cfg, k, failure_probability(cfg, k, p).value});
        }
      }
      emit("exact", o->c, curve_table(rows),
           {{"mu", format_rational(mu)}, {"lambda", format_rational(lambda)}, {"m", m_json(ms)},
            {"config", o->config}, {"kind", o->kind}});
    });
  });
}

// -- bounds --------------------------------------------------------------------------------

void setup_bounds(CLI::App& app, std::vector<std::function<void()>>& actions) {
  auto* sub = app.add_subcommand("bounds", "Asymptotic Chernoff bounds next to the analytic values");
  struct Opts {
    Common c;
    MuLambda ml;
    MRange m;
    std::string config = "all";
  };
  auto o = std::make_shared<Opts>();
  add_common(sub, o->c, false);
  add_mu_lambda(sub, o->ml);
  add_m_range(sub, o->m, 50, 400, 50);
  sub->add_option("--config", o->config, "Adversary configuration")->check(CLI::IsMember(kConfigNames))->capture_default_str();
  sub->callback([o, &actions] {
    actions.push_back([o] {
      const Rational mu = rat(o->ml.mu, o->c);
      const Rational lambda = rat(o->ml.lambda, o->c);
      const auto ms = o->m.values();
      Table t{{"m", "config", "chernoff", "chernoff_raw", "analytic"}, {}, {true, false, true, true, true}};
      for (auto cfg : configs_of(o->config)) {
        ExponentialSum sum;
        switch (cfg) {
          case AdversaryConfig::NoFaulty: sum = chernoff_no_faulty_terms(mu); break;
          case AdversaryConfig::SenderFaulty: sum = chernoff_S_terms(mu, lambda); break;
          case AdversaryConfig::R0Faulty: sum = chernoff_R_terms(mu, lambda); break;
        }
        for (int m : ms) {
          const ProtocolParams p(mu, lambda, m);
          const BoundKind k = cfg == AdversaryConfig::NoFaulty ? BoundKind::Exact : BoundKind::Upper;
          const double raw = sum.value(m);
          t.add_row({std::to_string(m), to_string(cfg), format_double(std::min(1.0, raw)), format_double(raw),
                     format_double(failure_probability(cfg, k, p).value)});
        }
      }
      emit("bounds", o->c, t,
           {{"mu", format_rational(mu)}, {"lambda", format_rational(lambda)}, {"m", m_json(ms)},
            {"config", o->config}});
    });
  });
}

// -- optimize ------------------------------------------------------------------------------

void setup_optimize(CLI::App& app, std::vector<std::function<void()>>& actions) {
  auto* sub = app.add_subcommand("optimize", "Grid search for the minimal m over the (mu, lambda) plane");
  struct Opts {
    Common c;
    std::string grid = "fine";
    std::optional<std::string> mu_lo, mu_hi, lambda_lo, lambda_hi;
    std::optional<int> mu_steps, lambda_steps;
    std::vector<int> m_candidates;
    std::optional<int> m_lo, m_hi;
    double pft = 0.05;
  };
  auto o = std::make_shared<Opts>();
  add_common(sub, o->c, true);
  sub->add_option("--grid", o->grid, "Preset grid")->check(CLI::IsMember({"fine", "rough"}))->capture_default_str();
  sub->add_option("--mu-lo", o->mu_lo, "Override the preset's lowest mu");
  sub->add_option("--mu-hi", o->mu_hi, "Override the preset's highest mu");
  sub->add_option("--mu-steps", o->mu_steps, "Override the number of mu points");
  sub->add_option("--lambda-lo", o->lambda_lo, "Override the preset's lowest lambda");
  sub->add_option("--lambda-hi", o->lambda_hi, "Override the preset's highest lambda");
  sub->add_option("--lambda-steps", o->lambda_steps, "Override the number of lambda points");
  sub->add_option("--m-candidates", o->m_candidates, "Ascending candidate m values")->delimiter(',');
  sub->add_option("--m-lo", o->m_lo, "Candidate range start (with --m-hi)");
  sub->add_option("--m-hi", o->m_hi, "Candidate range end (with --m-lo)");
  sub->add_option("--pft", o->pft, "Target failure probability")->capture_default_str();
  sub->callback([o, &actions] {
    actions.push_back([o] {
      GridSpec g = o->grid == "fine" ? fine_grid_default() : rough_grid_default();
      if (o->mu_lo) g.mu.lo = rat(*o->mu_lo, o->c);
      if (o->mu_hi) g.mu.hi = rat(*o->mu_hi, o->c);
      if (o->mu_steps) g.mu.steps = *o->mu_steps;
      if (o->lambda_lo) g.lambda.lo = rat(*o->lambda_lo, o->c);
      if (o->lambda_hi) g.lambda.hi = rat(*o->lambda_hi, o->c);
      if (o->lambda_steps) g.lambda.steps = *o->lambda_steps;
      if (o->m_lo || o->m_hi) {
        if (!o->m_lo || !o->m_hi) throw ParameterError("--m-lo and --m-hi go together");
        if (*o->m_lo > *o->m_hi) throw ParameterError("m-lo <= m-hi violated");
        g.m_candidates.clear();
        for (int m = *o->m_lo; m <= *o->m_hi; ++m) g.m_candidates.push_back(m);
      }
      if (!o->m_candidates.empty()) g.m_candidates = o->m_candidates;
      g.p_target = o->pft;
      g.jobs = o->c.jobs;
      g.validate();
      const auto cells = grid_search(g);
      emit("optimize", o->c, heatmap_table(cells),
           {{"grid", o->grid},
            {"mu", {{"lo", format_rational(g.mu.lo)}, {"hi", format_rational(g.mu.hi)}, {"steps", g.mu.steps}}},
            {"lambda",
             {{"lo", format_rational(g.lambda.lo)}, {"hi", format_rational(g.lambda.hi)}, {"steps", g.lambda.steps}}},
            {"m_candidates", m_json(g.m_candidates)},
            {"p_target", o->pft}});
    });
  });
}

// -- mmin ----------------------------------------------------------------------------------

void setup_mmin(CLI::App& app, std::vector<std::function<void()>>& actions) {
  auto* sub = app.add_subcommand("mmin", "Minimal m with every failure probability below the target");
  struct Opts {
    Common c;
    MuLambda ml;
    double pft = 0.05;
    int m_lo = 1;
    int m_hi = 1000;
    bool allow_outside = false;
    bool per_config = false;
  };
  auto o = std::make_shared<Opts>();
  o->c.format = "text";
  sub->add_option("--format", o->c.format, "text prints the bare number")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output-dir", o->c.output_dir, "Write mmin.<ext> and mmin.manifest.json here");
  sub->add_flag("--inexact", o->c.inexact, "Accept floating-point notation for mu and lambda");
  add_mu_lambda(sub, o->ml);
  sub->add_option("--pft", o->pft, "Target failure probability")->capture_default_str();
  sub->add_option("--m-lo", o->m_lo, "Smallest m scanned")->capture_default_str();
  sub->add_option("--m-hi", o->m_hi, "Largest m scanned")->capture_default_str();
  sub->add_flag("--allow-outside", o->allow_outside, "Scan even outside the guaranteed region");
  sub->add_flag("--per-config", o->per_config, "Also report the crossing of each configuration");
  sub->callback([o, &actions] {
    actions.push_back([o] {
      const Rational mu = rat(o->ml.mu, o->c);
      const Rational lambda = rat(o->ml.lambda, o->c);
      auto show = [](const std::optional<int>& m) { return m ? std::to_string(*m) : std::string("NOT_FOUND"); };
      const auto found = m_min_upper(mu, lambda, o->pft, o->m_lo, o->m_hi, o->allow_outside);
      Table t{{"config", "m_min"}, {}, {false, false}};
      if (o->per_config) {
        for (auto cfg : configs_of("all")) {
          t.add_row({to_string(cfg), show(first_m_below(cfg, mu, lambda, o->pft, o->m_lo, o->m_hi))});
        }
      }
      t.add_row({"worst", show(found)});
      Json params{{"mu", format_rational(mu)}, {"lambda", format_rational(lambda)}, {"p_target", o->pft},
                  {"m_lo", o->m_lo}, {"m_hi", o->m_hi}};
      if (o->c.format == "text") {
        for (const auto& row : t.rows) {
          if (o->per_config) std::cout << row[0] << ' ';
          std::cout << row[1] << '\n';
        }
        if (const std::string dir = output_dir(o->c); !dir.empty()) {
          std::filesystem::create_directories(dir);
          auto out = open_out(std::filesystem::path(dir) / "mmin.manifest.json");
          out << make_manifest("mmin", params).dump(2) << '\n';
        }
        return;
      }
      emit("mmin", o->c, t, params);
    });
  });
}

// -- truth-table ---------------------------------------------------------------------------

void setup_truth_table(CLI::App& app, std::vector<std::function<void()>>& actions, int& exit_code) {
  auto* sub = app.add_subcommand("truth-table", "Emit or verify the broadcast / weak broadcast truth tables");
  struct Opts {
    Common c;
    std::string kind = "weak";
    bool verify = false;
  };
  auto o = std::make_shared<Opts>();
  add_common(sub, o->c, false);
  sub->add_option("--kind", o->kind, "Table")->check(CLI::IsMember({"weak", "broadcast"}))->capture_default_str();
  sub->add_flag("--verify", o->verify, "Exit 1 if any computed cell differs from the reference table");
  sub->callback([o, &actions, &exit_code] {
    actions.push_back([o, &exit_code] {
      const auto cells = truth_table_cells(parse_table_kind(o->kind));
      emit("truth-table", o->c, truth_table(cells), {{"kind", o->kind}});
      if (o->verify) {
        int mismatches = 0;
        for (const auto& c : cells) mismatches += c.expected != c.computed ? 1 : 0;
        std::cerr << cells.size() << " cells, " << mismatches << " mismatches\n";
        if (mismatches > 0) exit_code = kExitVerifyFailed;
      }
    });
  });
}

// -- fidelity ------------------------------------------------------------------------------

void setup_fidelity(CLI::App& app, std::vector<std::function<void()>>& actions) {
  auto* sub = app.add_subcommand("fidelity", "Fidelities against the ideal singlet state from count / matrix files");
  struct Opts {
    Common c;
    std::string counts;
    std::string density;
  };
  auto o = std::make_shared<Opts>();
  add_common(sub, o->c, false);
  sub->add_option("--counts", o->counts, "JSON object mapping four-bit strings to counts");
  sub->add_option("--density", o->density, "JSON 16x16 array of [re, im] pairs");
  sub->callback([o, &actions] {
    actions.push_back([o] {
      if (o->counts.empty() && o->density.empty()) throw ParameterError("give --counts, --density or both");
      Table t{{"metric", "value"}, {}, {false, true}};
      if (!o->counts.empty()) {
        const auto p = ingest_counts_file(o->counts);
        t.add_row({"classical_fidelity", format_double(classical_fidelity(p, ideal_bitstring_distribution()))});
      }
      if (!o->density.empty()) {
        const auto rho = ingest_density_matrix_file(o->density);
        t.add_row({"quantum_fidelity", format_double(quantum_fidelity_pure_target(rho))});
      }
      emit("fidelity", o->c, t, {{"counts", o->counts}, {"density", o->density}});
    });
  });
}

// -- oracle --------------------------------------------------------------------------------

void setup_oracle(CLI::App& app, std::vector<std::function<void()>>& actions) {
  auto* sub = app.add_subcommand("oracle", "Exhaustive small-m enumeration next to the closed-form values");
  struct Opts {
    Common c;
    MuLambda ml;
    MRange m;
    std::string config = "all";
    bool strategies = false;
  };
  auto o = std::make_shared<Opts>();
  add_common(sub, o->c, false);
  add_mu_lambda(sub, o->ml);
  add_m_range(sub, o->m, 1, 5, 1);
  sub->add_option("--config", o->config, "Adversary configuration")->check(CLI::IsMember(kConfigNames))->capture_default_str();
  sub->add_flag("--strategies", o->strategies, "Add the best complete strategy found by enumeration (m <= 6)");
  sub->callback([o, &actions] {
    actions.push_back([o] {
      const Rational mu = rat(o->ml.mu, o->c);
      const Rational lambda = rat(o->ml.lambda, o->c);
      const auto ms = o->m.values();
      std::vector<std::string> cols{"m", "config", "kind", "enumeration", "formula", "match"};
      if (o->strategies) cols.push_back("best_strategy");
      Table t{cols, {}, {true, false, false, false, false, false, false}};
      for (int m : ms) {
        const ProtocolParams p(mu, lambda, m);
        for (auto cfg : configs_of(o->config)) {
          const bool nf = cfg == AdversaryConfig::NoFaulty;
          Rational lo, hi;
          if (nf) {
            lo = hi = pf_no_faulty_rational(p);
          } else {
            std::tie(lo, hi) = cfg == AdversaryConfig::SenderFaulty ? pf_S_bounds_rational(p) : pf_R_bounds_rational(p);
          }
          const std::string best = o->strategies ? to_string(best_failure_probability_bruteforce(cfg, p)) : "";
          for (auto k : nf ? std::vector{BoundKind::Exact} : std::vector{BoundKind::Lower, BoundKind::Upper}) {
            const Rational e = *pf_bruteforce(cfg, k, p).exact;
            const Rational& f = k == BoundKind::Lower ? lo : hi;
            std::vector<std::string> row{std::to_string(m), to_string(cfg), to_string(k), to_string(e), to_string(f),
                                         e == f ? "true" : "false"};
            if (o->strategies) row.push_back(best);
            t.add_row(std::move(row));
          }
        }
      }
      emit("oracle", o->c, t,
           {{"mu", format_rational(mu)}, {"lambda", format_rational(lambda)}, {"m", m_json(ms)},
            {"config", o->config}});
    });
  });
}

// -- region --------------------------------------------------------------------------------

void setup_region(CLI::App& app, std::vector<std::function<void()>>& actions) {
  auto* sub = app.add_subcommand("region", "Guaranteed-security region on a (mu, lambda) grid");
  struct Opts {
    Common c;
    std::string mu_lo = "0.2", mu_hi = "0.35", lambda_lo = "0.8", lambda_hi = "1";
    int mu_steps = 200, lambda_steps = 200;
  };
  auto o = std::make_shared<Opts>();
  add_common(sub, o->c, false);
  sub->add_option("--mu-lo", o->mu_lo, "Lowest mu")->capture_default_str();
  sub->add_option("--mu-hi", o->mu_hi, "Highest mu")->capture_default_str();
  sub->add_option("--mu-steps", o->mu_steps, "Number of mu points")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--lambda-lo", o->lambda_lo, "Lowest lambda")->capture_default_str();
  sub->add_option("--lambda-hi", o->lambda_hi, "Highest lambda")->capture_default_str();
  sub->add_option("--lambda-steps", o->lambda_steps, "Number of lambda points")->check(CLI::PositiveNumber)->capture_default_str();
  sub->callback([o, &actions] {
    actions.push_back([o] {
      const auto cells = region_grid(rat(o->mu_lo, o->c), rat(o->mu_hi, o->c), o->mu_steps, rat(o->lambda_lo, o->c),
                                     rat(o->lambda_hi, o->c), o->lambda_steps);
      emit("region", o->c, region_table(cells),
           {{"mu", {{"lo", o->mu_lo}, {"hi", o->mu_hi}, {"steps", o->mu_steps}}},
            {"lambda", {{"lo", o->lambda_lo}, {"hi", o->lambda_hi}, {"steps", o->lambda_steps}}}});
    });
  });
}

// -- domain --------------------------------------------------------------------------------

void setup_domain(CLI::App& app, std::vector<std::function<void()>>& actions) {
  auto* sub = app.add_subcommand("domain", "Strategy domains over all local count lists for one m");
  struct Opts {
    Common c;
    MuLambda ml;
    int m = 12;
    std::string side = "s";
  };
  auto o = std::make_shared<Opts>();
  add_common(sub, o->c, false);
  add_mu_lambda(sub, o->ml);
  sub->add_option("--m", o->m, "Number of singlet states")->capture_default_str();
  sub->add_option("--side", o->side, "Sender (s) or R0 (r0) view")->check(CLI::IsMember({"s", "r0"}))->capture_default_str();
  sub->callback([o, &actions] {
    actions.push_back([o] {
      const ProtocolParams p(rat(o->ml.mu, o->c), rat(o->ml.lambda, o->c), o->m);
      const auto cells = o->side == "s" ? domain_grid_S(p) : domain_grid_R(p);
      emit("domain", o->c, domain_table(cells),
           {{"mu", format_rational(p.mu())}, {"lambda", format_rational(p.lambda())}, {"m", o->m}, {"T", p.T()},
            {"Q", p.Q()}, {"side", o->side}});
    });
  });
}

// -- run -----------------------------------------------------------------------------------

void setup_run(CLI::App& app, std::vector<std::function<void()>>& actions) {
  auto* sub = app.add_subcommand("run", "One protocol run with a phase-by-phase transcript (JSON)");
  struct Opts {
    Common c;
    MuLambda ml;
    std::string events;
    int m = 12;
    std::uint64_t seed = 1;
    std::uint64_t trial = 0;
    std::string config = "no-faulty";
    int x_S = 0;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--output-dir", o->c.output_dir, "Write run.json and run.manifest.json here");
  sub->add_flag("--inexact", o->c.inexact, "Accept floating-point notation for mu and lambda");
  add_mu_lambda(sub, o->ml);
  sub->add_option("--events", o->events, "Event CSV (index,S_bits,R0_bit,R1_bit); otherwise one is sampled");
  sub->add_option("--m", o->m, "Rows of the sampled Event")->capture_default_str();
  sub->add_option("--seed", o->seed, "Root seed for sampling")->capture_default_str();
  sub->add_option("--trial", o->trial, "Substream index for sampling")->capture_default_str();
  sub->add_option("--config", o->config, "Adversary configuration")
      ->check(CLI::IsMember({"no-faulty", "s-faulty", "r0-faulty"}))
      ->capture_default_str();
  sub->add_option("--x-s", o->x_S, "Sender bit")->check(CLI::Range(0, 1))->capture_default_str();
  sub->callback([o, &actions] {
    actions.push_back([o] {
      const Event e = o->events.empty() ? sample_event(o->m, Substream{o->seed, o->trial})
                                        : read_event_csv_file(o->events);
      const ProtocolParams p(rat(o->ml.mu, o->c), rat(o->ml.lambda, o->c), e.size());
      const ZetaSender sender;
      const ZetaReceiver0 receiver;
      Adversary adversary;
      switch (parse_config(o->config)) {
        case AdversaryConfig::NoFaulty: break;
        case AdversaryConfig::SenderFaulty: adversary = &sender; break;
        case AdversaryConfig::R0Faulty: adversary = &receiver; break;
      }
      Json j;
      j["params"] = {{"mu", format_rational(p.mu())}, {"lambda", format_rational(p.lambda())}, {"m", p.m()},
                     {"T", p.T()}, {"Q", p.Q()}};
      const auto result = run_protocol(e, p, o->x_S, adversary);
      if (const auto* t = std::get_if<Transcript>(&result)) {
        j["transcript"] = transcript_json(*t);
      } else {
        j["out_of_domain"] = std::get<OutOfDomain>(result).reason;
      }
      const std::string dir = output_dir(o->c);
      if (dir.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
      }
      std::filesystem::create_directories(dir);
      open_out(std::filesystem::path(dir) / "run.json") << j.dump(2) << '\n';
      open_out(std::filesystem::path(dir) / "run.manifest.json")
          << make_manifest("run", {{"events", o->events}, {"m", e.size()}, {"seed", o->seed}, {"trial", o->trial},
                                   {"config", o->config}, {"x_S", o->x_S}})
                 .dump(2)
          << '\n';
    });
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and analysis of quantum-aided weak broadcast WBC(3,1)", "wbc"};
  app.require_subcommand(1);
  std::vector<std::function<void()>> actions;
  int exit_code = 0;
  setup_simulate(app, actions);
  setup_exact(app, actions);
  setup_bounds(app, actions);
  setup_optimize(app, actions);
  setup_mmin(app, actions);
  setup_truth_table(app, actions, exit_code);
  setup_fidelity(app, actions);
  setup_oracle(app, actions);
  setup_region(app, actions);
  setup_domain(app, actions);
  setup_run(app, actions);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    for (auto& action : actions) action();
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return exit_code;
}
