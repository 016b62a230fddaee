#include <algorithm>
#include <functional>
#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "wbc/adversary.hpp"

using namespace wbc;
using wbc::test::example_event;
using wbc::test::labels;
using wbc::test::params;

namespace {

const char* const kParamSets[][2] = {{"0.26", "0.94"}, {"0.272", "0.94"}, {"0.30", "0.95"}};

Event event_with_counts_S(const LocalCountListS& l) {
  std::vector<Outcome> rows;
  rows.insert(rows.end(), static_cast<std::size_t>(l.l1), Outcome::k0011);
  for (int i = 0; i < l.l2; ++i) rows.push_back(i % 2 ? Outcome::k0110 : Outcome::k1001);
  rows.insert(rows.end(), static_cast<std::size_t>(l.l3), Outcome::k1100);
  return Event(rows);
}

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// Calls fn with every picker that differs from pick_lowest in which ranks it takes per slot.
void for_each_picker(const std::vector<std::pair<int, int>>& slot_sizes_and_k,
                     const std::function<void(const ClassPicker&)>& fn) {
  std::map<int, std::vector<int>> ranks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == slot_sizes_and_k.size()) {
      const auto chosen = ranks;
      fn([chosen](const IndexSet& members, int k, int slot) {
        const auto it = chosen.find(slot);
        if (it == chosen.end()) return pick_lowest(members, k, slot);
        IndexSet out;
        for (int r : it->second) out.push_back(members[static_cast<std::size_t>(r)]);
        return out;
      });
      return;
    }
    const auto [size, k] = slot_sizes_and_k[i];
    combinations(size, k, [&](const std::vector<int>& c) {
      ranks[static_cast<int>(i)] = c;
      rec(i + 1);
    });
  };
  rec(0);
}

}  // namespace

TEST_SUITE("adversary") {
  TEST_CASE("zeta_S examples") {
    const ProtocolParams p = params("0.26", "0.94", 12);
    const auto z = zeta_S({4, 4, 4}, p);
    REQUIRE(std::holds_alternative<StrategyS>(z));
    CHECK(std::get<StrategyS>(z) == StrategyS{3, 1, 0, 0, 0, 4});

    const int T = p.T(), Q = p.Q();
    const LocalCountListS short1{T - Q - 1, 12 - (T - Q - 1) - T, T};
    const auto v1 = domain_S(short1, p);
    CHECK_FALSE(v1.in_domain);
    CHECK(v1.failed == std::vector<DomainCondition>{DomainCondition::ZeroOneShortage});
    CHECK(std::holds_alternative<OutOfDomain>(zeta_S(short1, p)));

    const auto v3 = domain_S({12, 0, 0}, p);
    CHECK(std::find(v3.failed.begin(), v3.failed.end(), DomainCondition::OneOneShortage) != v3.failed.end());
    CHECK(std::get<OutOfDomain>(zeta_S({12, 0, 0}, p)).reason.find("cond3") != std::string::npos);
  }

  TEST_CASE("zeta_R examples") {
    const ProtocolParams p = params("0.26", "0.94", 12);
    CHECK(std::get<StrategyR>(zeta_R({4, 2, 6}, p)) == StrategyR{0, 2, 2});
    CHECK(region_R({4, 2, 6}, p) == RegionR::Orange);
    CHECK(std::get<StrategyR>(zeta_R({4, 5, 3}, p)) == StrategyR{0, 5, 0});
    CHECK(std::holds_alternative<OutOfDomain>(zeta_R({12 - p.T() + 1, 0, p.T() - 1}, p)));
    CHECK(std::holds_alternative<StrategyR>(zeta_R({12 - p.T(), 0, p.T()}, p)));
  }

  TEST_CASE("S domain is exactly where the zeta shape yields two accepted check sets") {
    const ProtocolParams p = params("0.26", "0.94", 12);
    for (int l1 = 0; l1 <= 12; ++l1) {
      for (int l3 = 0; l1 + l3 <= 12; ++l3) {
        const LocalCountListS l{l1, 12 - l1 - l3, l3};
        const Event e = event_with_counts_S(l);
        const StrategyS shape{p.T() - p.Q(), p.Q(), 0, 0, 0, l3};
        bool workable = true;
        try {
          const auto msg = assemble_check_sets_S(e, shape, 0, 1);
          workable = static_cast<int>(msg.sigma0.size()) == p.T() && static_cast<int>(msg.sigma1.size()) >= p.T();
        } catch (const ParameterError&) {
          workable = false;
        }
        CHECK(domain_S(l, p).in_domain == workable);
        CHECK(std::holds_alternative<StrategyS>(zeta_S(l, p)) == workable);
      }
    }
  }

  TEST_CASE("R domain and regions at m = 12") {
    const ProtocolParams p = params("0.26", "0.94", 12);
    std::map<std::string, int> tally;
    for (const auto& cell : domain_grid_R(p)) {
      const LocalCountListR l{cell.l1, cell.l2, cell.l3};
      CHECK(domain_R(l, p).in_domain == (cell.label != "green"));
      CHECK(domain_R(l, p).in_domain == (l.l1 + p.T() <= 12));
      ++tally[cell.label];
    }
    CHECK(tally["orange"] + tally["blue"] + tally["pink"] + tally["green"] == 91);
    CHECK(tally["pink"] == 13 + 12 + 11 + 10);  // l1 = 0..3
  }

  TEST_CASE("check-set assembly") {
    const Event e = example_event();
    const auto classes = sender_classes(sender_view(e));
    CHECK(classes[0] == labels("befi"));
    CHECK(classes[1] == labels("dgjl"));
    CHECK(classes[2] == labels("achk"));

    const auto msg = assemble_check_sets_S(e, {3, 1, 0, 0, 0, 4}, 0, 1);
    CHECK(msg.sigma0 == labels("bdef"));
    CHECK(msg.sigma1 == labels("achk"));
    const auto empty = assemble_check_sets_S(e, {}, 0, 1);
    CHECK(empty.sigma0.empty());
    CHECK(empty.sigma1.empty());
    CHECK_THROWS_AS(assemble_check_sets_S(e, {5, 0, 0, 0, 0, 0}, 0, 1), ParameterError);

    const IndexSet sigma0 = labels("befi");
    const auto rclasses = receiver0_classes(receiver0_view(e, 0, sigma0));
    CHECK(rclasses[1] == labels("dg"));
    CHECK(rclasses[2] == labels("achjkl"));
    const auto rho = assemble_rho_R(e, sigma0, 0, {0, 2, 2});
    CHECK(rho.y01 == Output::One);
    CHECK(rho.rho01 == labels("acdg"));
    CHECK(assemble_rho_R(e, sigma0, 0, {1, 1, 3}).rho01.size() == 5);
    CHECK_THROWS_AS(assemble_rho_R(e, sigma0, 0, {0, 3, 0}), ParameterError);

    const Event no_xx10 = test::event_from({"0011", "0101", "1100", "1001", "0011", "1100"});
    const ProtocolParams p6 = params("0.3", "0.9", 6);
    const auto r = assemble_rho_R(no_xx10, invocation_honest(no_xx10, 0).sigma0, 0, {0, 0, p6.T()});
    CHECK(r.rho01 == IndexSet{1, 2});
  }

  TEST_CASE("failure probability does not depend on which indices are picked within a class") {
    for (const auto& ps : kParamSets) {
      for (int m = 3; m <= 5; ++m) {
        const ProtocolParams p = params(ps[0], ps[1], m);
        const EventCatalog catalog(m);
        for (const auto& [l, ids] : catalog.by_sender_counts()) {
          const auto z = zeta_S(l, p);
          if (!std::holds_alternative<StrategyS>(z)) continue;
          const StrategyS s = std::get<StrategyS>(z);
          const Rational reference = conditional_failure_S(catalog, l, {0, 1, s}, p);
          CHECK(reference == pow(Rational(1, 2), p.Q()));
          for_each_picker({{l.l1, s.k0_0011}, {l.l2, s.k0_mixed}}, [&](const ClassPicker& pick) {
            CHECK(conditional_failure_S(catalog, l, {0, 1, s}, p, pick) == reference);
          });
        }
        for (const auto& [l, ids] : catalog.by_receiver_counts()) {
          const auto z = zeta_R(l, p);
          if (!std::holds_alternative<StrategyR>(z)) continue;
          const StrategyR s = std::get<StrategyR>(z);
          const Rational reference = conditional_failure_R(catalog, l, {Output::One, s}, p);
          for_each_picker({{l.l1, 0}, {l.l2, s.k_xx10}, {l.l3, s.k_xx0x}}, [&](const ClassPicker& pick) {
            CHECK(conditional_failure_R(catalog, l, {Output::One, s}, p, pick) == reference);
          });
        }
      }
    }
  }

  TEST_CASE("no strategy beats zeta on its domain (m <= 4)") {
    for (const auto& ps : kParamSets) {
      for (int m = 1; m <= 4; ++m) {
        const ProtocolParams p = params(ps[0], ps[1], m);
        const EventCatalog catalog(m);
        for (const auto& o : sender_optima(catalog, p)) {
          if (o.zeta) CHECK(o.best == *o.zeta);
        }
        for (const auto& o : receiver_optima(catalog, p)) {
          if (o.zeta) CHECK(o.best == *o.zeta);
        }
      }
    }
  }

  TEST_CASE("dysfunctional sender strategies (m <= 4)") {
    for (const auto& ps : kParamSets) {
      for (int m = 1; m <= 4; ++m) {
        const ProtocolParams p = params(ps[0], ps[1], m);
        const EventCatalog catalog(m);
        for (const auto& [l, ids] : catalog.by_sender_counts()) {
          for (const SenderMove& move : sender_moves(l)) {
            const auto& k = move.k;
            const int size0 = k.k0_0011 + k.k0_mixed + k.k0_1100;
            const int size1 = k.k1_0011 + k.k1_mixed + k.k1_1100;
            const bool short_set = size0 < p.T() || size1 < p.T();
            const bool few_guesses = size0 >= p.T() && k.k0_mixed < p.Q();
            if (short_set || few_guesses) CHECK(conditional_failure_S(catalog, l, move, p) == 0);
          }
        }
      }
    }
  }

  TEST_CASE("sender strategies along and below the diagonal fail with probability (1/2)^Q'") {
    // (T', Q') = (T + n, Q + n') with k0_0011 = T' - Q'. Along the diagonal n' = n; below it
    // n' < n, where the cross-check still tolerates only T - ceil(lambda T) inconsistent rows.
    const ProtocolParams p = params("0.2", "0.9", 5);  // T = 1, Q = 1
    REQUIRE(p.T() == 1);
    REQUIRE(p.Q() == 1);
    const EventCatalog catalog(5);
    const LocalCountListS l{2, 2, 1};
    for (int n = 0; n <= 2; ++n) {
      for (int n2 = 0; n2 <= std::min(n, 1); ++n2) {
        const int q = p.Q() + n2;
        const StrategyS s{p.T() + n - q, q, 0, 0, 0, l.l3};
        CHECK(conditional_failure_S(catalog, l, {0, 1, s}, p) == pow(Rational(1, 2), q));
      }
    }
    // strictly decreasing along the diagonal
    for (int n = 0; n < 5; ++n) CHECK(pow(Rational(1, 2), p.Q() + n + 1) < pow(Rational(1, 2), p.Q() + n));
  }

  TEST_CASE("dysfunctional R0 strategies below the diagonal (m <= 4)") {
    for (const auto& ps : kParamSets) {
      for (int m = 1; m <= 4; ++m) {
        const ProtocolParams p = params(ps[0], ps[1], m);
        const EventCatalog catalog(m);
        for (const auto& [l, ids] : catalog.by_receiver_counts()) {
          if (!domain_R(l, p).in_domain || l.l1 < p.T() || l.l2 > p.T()) continue;
          const int n_min = std::max(0, p.T() - l.l2);
          for (int n = 1; n <= l.l2; ++n) {
            for (int n2 = 0; n2 < n && n_min + n2 <= l.l3; ++n2) {
              const StrategyR s{0, l.l2 - n, n_min + n2};
              CHECK(conditional_failure_R(catalog, l, {Output::One, s}, p) == 0);
            }
          }
          // increasing k_0011 from zero never helps
          const auto z = std::get<StrategyR>(zeta_R(l, p));
          const Rational base = conditional_failure_R(catalog, l, {Output::One, z}, p);
          for (int k = 1; k <= l.l1; ++k) {
            StrategyR s = z;
            s.k_0011 = k;
            CHECK(conditional_failure_R(catalog, l, {Output::One, s}, p) <= base);
          }
        }
      }
    }
  }

  TEST_CASE("brute force optimum totals") {
    const ProtocolParams p = params("0.26", "0.94", 3);
    const Rational s = best_failure_probability_bruteforce(AdversaryConfig::SenderFaulty, p);
    const Rational r = best_failure_probability_bruteforce(AdversaryConfig::R0Faulty, p);
    CHECK(s >= 0);
    CHECK(s <= 1);
    CHECK(r >= 0);
    CHECK(r <= 1);
    CHECK_THROWS_AS(best_failure_probability_bruteforce(AdversaryConfig::NoFaulty, params("0.26", "0.94", 7)),
                    ParameterError);
  }
}
