#include "doctest.h"
#include "fixtures.hpp"
#include "wbc/adversary.hpp"
#include "wbc/protocol.hpp"
#include "wbc/truth_table.hpp"

using namespace wbc;
using wbc::test::example_event;
using wbc::test::labels;
using wbc::test::params;

TEST_SUITE("protocol") {
  TEST_CASE("thresholds") {
    auto t = derive_thresholds(parse_rational("0.26"), parse_rational("0.94"), 12);
    CHECK(t.T == 4);
    CHECK(t.Q == 1);
    t = derive_thresholds(parse_rational("0.26"), parse_rational("0.94"), 1200);
    CHECK(t.T == 312);
    CHECK(t.Q == 19);
    // 0.272 * 143 = 38.896 -> 39; 0.94 * 39 = 36.66 -> 37; Q = 39 - 37 + 1
    t = derive_thresholds(parse_rational("0.272"), parse_rational("0.94"), 143);
    CHECK(t.T == 39);
    CHECK(t.Q == 3);
  }

  TEST_CASE("exact ceilings at integer products") {
    // 0.25 * 12 = 3 exactly; a float product could land on 3.0000000000000004
    const ProtocolParams p = params("0.25", "0.75", 12);
    CHECK(p.T() == 3);
    CHECK(p.lambda_T_ceil() == 3);  // 0.75 * 3 = 2.25
    CHECK(p.Q() == 1);
    const ProtocolParams q = params("0.3", "0.6", 10);  // 3 and 1.8
    CHECK(q.T() == 3);
    CHECK(q.Q() == 2);
  }

  TEST_CASE("parameter validation names the inequality") {
    auto message = [](const char* mu, const char* lambda, int m) {
      try {
        params(mu, lambda, m);
      } catch (const ParameterError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message("0", "0.9", 10).find("0 < mu") != std::string::npos);
    CHECK(message("0.34", "0.9", 10).find("mu < 1/3") != std::string::npos);
    CHECK(message("1/3", "0.9", 10).find("mu < 1/3") != std::string::npos);
    CHECK(message("0.3", "0.5", 10).find("1/2 < lambda") != std::string::npos);
    CHECK(message("0.3", "1", 10).find("lambda < 1") != std::string::npos);
    CHECK(message("0.3", "0.9", 0).find("m >= 1") != std::string::npos);
    CHECK_THROWS_AS(params("0.3x", "0.9", 10), ParameterError);
  }

  TEST_CASE("honest invocation") {
    const Event e = example_event();
    const auto inv = invocation_honest(e, 0);
    CHECK(inv.sigma0 == labels("befi"));
    CHECK(inv.sigma1 == inv.sigma0);
    CHECK(inv.x0 == 0);
    CHECK(invocation_honest(e, 1).sigma0 == labels("achk"));
    CHECK(invocation_honest(test::event_from({"1100", "1100"}), 0).sigma0.empty());
  }

  TEST_CASE("check phase") {
    const Event e = example_event();
    const ProtocolParams p = params("0.26", "0.94", 12);
    CHECK(check_phase(e, Receiver::R0, 0, labels("befi"), p) == Output::Zero);
    CHECK(check_phase(e, Receiver::R1, 0, labels("befi"), p) == Output::Zero);
    CHECK(check_phase(e, Receiver::R0, 0, {}, p) == Output::Abort);
    CHECK(check_phase(e, Receiver::R0, 0, labels("bef"), p) == Output::Abort);
    // j = 0101: R0 measured 0 = x0
    CHECK(check_phase(e, Receiver::R0, 0, labels("befj"), p) == Output::Abort);
    CHECK_THROWS_AS(check_phase(e, Receiver::R0, 0, {12}, p), ParameterError);
    CHECK_THROWS_AS(check_phase(e, Receiver::R0, 0, {3, 1}, p), ParameterError);
  }

  TEST_CASE("cross check") {
    const Event e = example_event();
    const ProtocolParams p = params("0.26", "0.94", 12);
    // no confusion
    CHECK(cross_check(Output::Zero, Output::Zero, labels("acdg"), e, p) == Output::Zero);
    CHECK(cross_check(Output::Abort, Output::One, labels("acdg"), e, p) == Output::Abort);
    CHECK(cross_check(Output::Zero, Output::Abort, labels("acdg"), e, p) == Output::Zero);
    // too short
    CHECK(cross_check(Output::Zero, Output::One, labels("acd"), e, p) == Output::Zero);
    // all four rows have R1 = 0, opposite to y01 = 1
    CHECK(cross_check(Output::Zero, Output::One, labels("acdg"), e, p) == Output::One);
    // one inconsistent row (j: R1 = 1) already exceeds Q - 1 = 0
    CHECK(cross_check(Output::Zero, Output::One, labels("acdj"), e, p) == Output::Zero);
    // longer set: the threshold grows with |rho|, so the number of tolerated
    // inconsistent rows stays T - ceil(lambda T)
    CHECK(cross_check(Output::Zero, Output::One, labels("acdghk"), e, p) == Output::One);
    CHECK(cross_check(Output::Zero, Output::One, labels("acdghkj"), e, p) == Output::Zero);
  }

  TEST_CASE("example runs") {
    const Event e = example_event();
    const ProtocolParams p = params("0.26", "0.94", 12);

    const auto honest = std::get<Transcript>(run_protocol(e, p, 0));
    CHECK(honest.y_S == 0);
    CHECK(honest.y0 == Output::Zero);
    CHECK(honest.y1 == Output::Zero);
    CHECK(classify(honest) == Verdict::Achieved);

    const ZetaSender sender;
    const auto s = std::get<Transcript>(run_protocol(e, p, 0, &sender));
    CHECK(s.sigma0 == labels("bdef"));
    CHECK(s.sigma1 == labels("achk"));
    CHECK(s.y0 == Output::Zero);
    CHECK(s.y_tilde1 == Output::One);
    CHECK(s.y1 == Output::One);
    CHECK(classify(s) == Verdict::Failure);

    const ZetaReceiver0 receiver;
    const auto r = std::get<Transcript>(run_protocol(e, p, 0, &receiver));
    CHECK(r.rho01 == labels("acdg"));
    CHECK(r.y_tilde1 == Output::Zero);
    CHECK(r.y01 == Output::One);
    CHECK(r.y1 == Output::One);
    CHECK(classify(r) == Verdict::Failure);
  }

  TEST_CASE("out-of-domain runs are reported, not scored") {
    const ProtocolParams p = params("0.26", "0.94", 12);
    const Event all_zero = test::event_from(std::vector<std::string>(12, "0011"));
    const ZetaSender sender;
    CHECK(std::holds_alternative<OutOfDomain>(run_protocol(all_zero, p, 0, &sender)));
    const ZetaReceiver0 receiver;
    CHECK(std::holds_alternative<OutOfDomain>(run_protocol(all_zero, p, 0, &receiver)));
  }

  TEST_CASE("validity and no-faulty failure condition, exhaustively for m <= 5") {
    for (int m = 1; m <= 5; ++m) {
      for (const char* mu : {"0.1", "0.26", "0.3"}) {
        const ProtocolParams p = params(mu, "0.9", m);
        for_each_event(m, [&](const Event& e, std::int64_t) {
          const GlobalCountList g = global_counts(e);
          for (int x = 0; x <= 1; ++x) {
            const auto t = std::get<Transcript>(run_protocol(e, p, x));
            const int supporting = x == 0 ? g[Outcome::k0011] : g[Outcome::k1100];
            if (supporting >= p.T()) {
              CHECK(t.y0 == output_of(x));
              CHECK(t.y1 == output_of(x));
            } else {
              CHECK(t.y0 == Output::Abort);
              CHECK(t.y1 == Output::Abort);
            }
            CHECK((classify(t) == Verdict::Failure) == (supporting < p.T()));
          }
        });
      }
    }
  }

  TEST_CASE("flip symmetry between x_S = 0 and x_S = 1") {
    const ProtocolParams p = params("0.26", "0.94", 4);
    const ZetaReceiver0 receiver;
    for_each_event(4, [&](const Event& e, std::int64_t) {
      const auto a = std::get<Transcript>(run_protocol(e, p, 0));
      const auto b = std::get<Transcript>(run_protocol(e.flipped(), p, 1));
      CHECK(a.sigma0 == b.sigma0);
      CHECK(classify(a) == classify(b));
      CHECK((a.y1 == Output::Abort) == (b.y1 == Output::Abort));

      const auto ra = run_protocol(e, p, 0, &receiver);
      const auto rb = run_protocol(e.flipped(), p, 1, &receiver);
      REQUIRE(ra.index() == rb.index());
      if (const auto* ta = std::get_if<Transcript>(&ra)) {
        const auto& tb = std::get<Transcript>(rb);
        CHECK(ta->rho01 == tb.rho01);
        CHECK(classify(*ta) == classify(tb));
      }
    });
  }

  TEST_CASE("truth tables") {
    CHECK(classify_weak_broadcast(AdversaryConfig::NoFaulty, 0, Output::Zero, Output::Zero) == Verdict::Achieved);
    CHECK(classify_weak_broadcast(AdversaryConfig::SenderFaulty, 0, Output::Abort, Output::Abort) ==
          Verdict::Achieved);
    CHECK(classify_weak_broadcast(AdversaryConfig::R0Faulty, 0, Output::One, Output::Zero) == Verdict::Achieved);
    CHECK(classify_broadcast(AdversaryConfig::NoFaulty, 1, Output::One, Output::One) == Verdict::Achieved);
    CHECK(classify_broadcast(AdversaryConfig::SenderFaulty, 0, Output::One, Output::One) == Verdict::Achieved);
    CHECK(classify_broadcast(AdversaryConfig::R0Faulty, 0, Output::One, Output::Zero) == Verdict::Achieved);
    CHECK_THROWS_AS(classify_broadcast(AdversaryConfig::NoFaulty, 0, Output::Abort, Output::Zero), ParameterError);

    const auto weak = truth_table_cells(TableKind::WeakBroadcast);
    CHECK(weak.size() == 54);
    for (const auto& c : weak) CHECK(c.expected == c.computed);
    const auto strong = truth_table_cells(TableKind::Broadcast);
    CHECK(strong.size() == 24);
    for (const auto& c : strong) CHECK(c.expected == c.computed);
  }

  TEST_CASE("config names") {
    for (auto c : {AdversaryConfig::NoFaulty, AdversaryConfig::SenderFaulty, AdversaryConfig::R0Faulty}) {
      CHECK(parse_config(to_string(c)) == c);
    }
    CHECK_THROWS_AS(parse_config("r1-faulty"), ParameterError);
  }
}
