#include "wbc/adversary.hpp"

#include <algorithm>

namespace wbc {

namespace {

int sender_class_of(int pair) {
  if (pair == 0b00) return 0;
  if (pair == 0b11) return 2;
  return 1;
}

int receiver_class_of(int bit, bool in_sigma, int x0) {
  if (in_sigma) return 0;
  return bit == 1 - x0 ? 1 : 2;
}

void append_picked(IndexSet& out, const IndexSet& members, int k, int slot, const ClassPicker& pick) {
  if (k < 0) throw ParameterError("strategy counts must be non-negative");
  if (k > static_cast<int>(members.size())) {
    throw ParameterError("strategy asks for " + std::to_string(k) + " indices from a class of " +
                         std::to_string(members.size()));
  }
  IndexSet chosen = pick(members, k, slot);
  if (static_cast<int>(chosen.size()) != k) throw ParameterError("class picker returned the wrong number of indices");
  out.insert(out.end(), chosen.begin(), chosen.end());
}

void finish(IndexSet& s) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ParameterError("class picker repeated an index");
}

Rational list_probability(const EventCatalog& catalog, const std::vector<std::size_t>& members) {
  std::int64_t w = 0;
  for (std::size_t i : members) w += catalog.all()[i].weight;
  return Rational(w, catalog.total_weight());
}

void enumerate_counts(const std::array<int, 3>& bounds, const std::function<void(const std::array<int, 3>&)>& fn) {
  std::array<int, 3> k{};
  for (k[0] = 0; k[0] <= bounds[0]; ++k[0]) {
    for (k[1] = 0; k[1] <= bounds[1]; ++k[1]) {
      for (k[2] = 0; k[2] <= bounds[2]; ++k[2]) fn(k);
    }
  }
}

}  // namespace

std::string to_string(DomainCondition c) {
  switch (c) {
    case DomainCondition::ZeroOneShortage: return "cond1";
    case DomainCondition::MixedShortage: return "cond2";
    case DomainCondition::OneOneShortage: return "cond3";
    case DomainCondition::TooManyCertain: return "l1>m-T";
  }
  return "?";
}

std::string DomainVerdict::reason() const {
  std::string out;
  for (DomainCondition c : failed) {
    if (!out.empty()) out += '+';
    out += to_string(c);
  }
  return out;
}

DomainVerdict domain_S(const LocalCountListS& l, const ProtocolParams& p) {
  DomainVerdict v;
  if (l.l1 < p.T() - p.Q()) v.failed.push_back(DomainCondition::ZeroOneShortage);
  if (l.l2 < p.Q()) v.failed.push_back(DomainCondition::MixedShortage);
  if (l.l3 < p.T()) v.failed.push_back(DomainCondition::OneOneShortage);
  v.in_domain = v.failed.empty();
  return v;
}

DomainVerdict domain_R(const LocalCountListR& l, const ProtocolParams& p) {
  DomainVerdict v;
  if (l.l1 > p.m() - p.T()) v.failed.push_back(DomainCondition::TooManyCertain);
  v.in_domain = v.failed.empty();
  return v;
}

std::variant<StrategyS, OutOfDomain> zeta_S(const LocalCountListS& l, const ProtocolParams& p) {
  const DomainVerdict v = domain_S(l, p);
  if (!v.in_domain) return OutOfDomain{v.reason()};
  return StrategyS{p.T() - p.Q(), p.Q(), 0, 0, 0, l.l3};
}

std::variant<StrategyR, OutOfDomain> zeta_R(const LocalCountListR& l, const ProtocolParams& p) {
  const DomainVerdict v = domain_R(l, p);
  if (!v.in_domain) return OutOfDomain{v.reason()};
  return StrategyR{0, l.l2, std::max(0, p.T() - l.l2)};
}

std::string to_string(RegionR r) {
  switch (r) {
    case RegionR::Orange: return "orange";
    case RegionR::Blue: return "blue";
    case RegionR::Pink: return "pink";
    case RegionR::Green: return "green";
  }
  return "?";
}

RegionR region_R(const LocalCountListR& l, const ProtocolParams& p) {
  if (l.l1 > p.m() - p.T()) return RegionR::Green;
  if (l.l1 < p.T()) return RegionR::Pink;
  if (l.l2 >= p.T() - p.Q() + 1) return RegionR::Blue;
  return RegionR::Orange;
}

std::array<IndexSet, 3> sender_classes(const SenderView& view) {
  std::array<IndexSet, 3> classes;
  for (std::size_t i = 0; i < view.pairs.size(); ++i) {
    classes[static_cast<std::size_t>(sender_class_of(view.pairs[i]))].push_back(static_cast<int>(i));
  }
  return classes;
}

std::array<IndexSet, 3> receiver0_classes(const Receiver0View& view) {
  std::vector<bool> in_sigma(view.bits.size(), false);
  for (int i : view.sigma0) {
    if (i < 0 || i >= static_cast<int>(view.bits.size())) throw ParameterError("sigma0 index out of range");
    in_sigma[static_cast<std::size_t>(i)] = true;
  }
  std::array<IndexSet, 3> classes;
  for (std::size_t i = 0; i < view.bits.size(); ++i) {
    const int c = receiver_class_of(view.bits[i], in_sigma[i], view.x0);
    classes[static_cast<std::size_t>(c)].push_back(static_cast<int>(i));
  }
  return classes;
}

LocalCountListS local_counts_S(const SenderView& view) {
  const auto c = sender_classes(view);
  return {static_cast<int>(c[0].size()), static_cast<int>(c[1].size()), static_cast<int>(c[2].size())};
}

LocalCountListR local_counts_R(const Receiver0View& view) {
  const auto c = receiver0_classes(view);
  return {static_cast<int>(c[0].size()), static_cast<int>(c[1].size()), static_cast<int>(c[2].size())};
}

IndexSet pick_lowest(const IndexSet& members, int k, int /*slot*/) {
  return IndexSet(members.begin(), members.begin() + k);
}

InvocationMessages assemble_check_sets_S(const SenderView& view, const StrategyS& s, int x0, int x1,
                                         const ClassPicker& pick) {
  if ((x0 != 0 && x0 != 1) || (x1 != 0 && x1 != 1)) throw ParameterError("x0 and x1 must be bits");
  const auto classes = sender_classes(view);
  const auto k = s.as_array();
  InvocationMessages msg;
  msg.x0 = x0;
  msg.x1 = x1;
  for (int c = 0; c < 3; ++c) {
    append_picked(msg.sigma0, classes[static_cast<std::size_t>(c)], k[static_cast<std::size_t>(c)], c, pick);
    append_picked(msg.sigma1, classes[static_cast<std::size_t>(c)], k[static_cast<std::size_t>(c + 3)], c + 3, pick);
  }
  finish(msg.sigma0);
  finish(msg.sigma1);
  return msg;
}

InvocationMessages assemble_check_sets_S(const Event& e, const StrategyS& s, int x0, int x1, const ClassPicker& pick) {
  return assemble_check_sets_S(sender_view(e), s, x0, x1, pick);
}

CrossCallMessage assemble_rho_R(const Receiver0View& view, const StrategyR& s, const ClassPicker& pick) {
  const auto classes = receiver0_classes(view);
  const auto k = s.as_array();
  CrossCallMessage msg;
  msg.y01 = output_of(1 - view.x0);
  for (int c = 0; c < 3; ++c) {
    append_picked(msg.rho01, classes[static_cast<std::size_t>(c)], k[static_cast<std::size_t>(c)], c, pick);
  }
  finish(msg.rho01);
  return msg;
}

CrossCallMessage assemble_rho_R(const Event& e, const IndexSet& sigma0, int x0, const StrategyR& s,
                                const ClassPicker& pick) {
  return assemble_rho_R(receiver0_view(e, x0, sigma0), s, pick);
}

std::variant<InvocationMessages, OutOfDomain> ZetaSender::invoke(const SenderView& view,
                                                                 const ProtocolParams& p) const {
  auto z = zeta_S(local_counts_S(view), p);
  if (auto* out = std::get_if<OutOfDomain>(&z)) return *out;
  return assemble_check_sets_S(view, std::get<StrategyS>(z), 0, 1, pick_);
}

std::variant<CrossCallMessage, OutOfDomain> ZetaReceiver0::cross_call(const Receiver0View& view,
                                                                      const ProtocolParams& p) const {
  auto z = zeta_R(local_counts_R(view), p);
  if (auto* out = std::get_if<OutOfDomain>(&z)) return *out;
  return assemble_rho_R(view, std::get<StrategyR>(z), pick_);
}

EventCatalog::EventCatalog(int m) : m_(m) {
  if (m < 1 || m > 6) throw ParameterError("exhaustive strategy enumeration needs 1 <= m <= 6");
  for_each_event(m, [&](const Event& e, std::int64_t w) {
    const std::size_t id = all_.size();
    all_.push_back({e, w});
    const GlobalCountList g = global_counts(e);
    by_s_[project_S(g)].push_back(id);
    by_r_[project_R(g)].push_back(id);
  });
}

std::vector<SenderMove> sender_moves(const LocalCountListS& l) {
  std::vector<SenderMove> moves;
  const std::array<int, 3> bounds = {l.l1, l.l2, l.l3};
  for (int x0 = 0; x0 <= 1; ++x0) {
    for (int x1 = 0; x1 <= 1; ++x1) {
      enumerate_counts(bounds, [&](const std::array<int, 3>& a) {
        enumerate_counts(bounds, [&](const std::array<int, 3>& b) {
          moves.push_back({x0, x1, StrategyS{a[0], a[1], a[2], b[0], b[1], b[2]}});
        });
      });
    }
  }
  return moves;
}

std::vector<ReceiverMove> receiver_moves(const LocalCountListR& l) {
  std::vector<ReceiverMove> moves;
  for (Output y : {Output::Zero, Output::One, Output::Abort}) {
    enumerate_counts({l.l1, l.l2, l.l3}, [&](const std::array<int, 3>& k) {
      moves.push_back({y, StrategyR{k[0], k[1], k[2]}});
    });
  }
  return moves;
}

Rational conditional_failure_S(const EventCatalog& catalog, const LocalCountListS& l, const SenderMove& move,
                               const ProtocolParams& p, const ClassPicker& pick) {
  if (p.m() != catalog.m()) throw ParameterError("catalog and parameters disagree on m");
  const auto it = catalog.by_sender_counts().find(l);
  if (it == catalog.by_sender_counts().end()) throw ParameterError("local count list does not occur");
  std::int64_t fail = 0;
  std::int64_t total = 0;
  for (std::size_t id : it->second) {
    const auto& entry = catalog.all()[id];
    const InvocationMessages msg = assemble_check_sets_S(entry.event, move.k, move.x0, move.x1, pick);
    const Transcript t = run_with_invocation(entry.event, p, AdversaryConfig::SenderFaulty, move.x0, msg);
    if (classify(t) == Verdict::Failure) fail += entry.weight;
    total += entry.weight;
  }
  return Rational(fail, total);
}

Rational conditional_failure_R(const EventCatalog& catalog, const LocalCountListR& l, const ReceiverMove& move,
                               const ProtocolParams& p, const ClassPicker& pick) {
  if (p.m() != catalog.m()) throw ParameterError("catalog and parameters disagree on m");
  const auto it = catalog.by_receiver_counts().find(l);
  if (it == catalog.by_receiver_counts().end()) throw ParameterError("local count list does not occur");
  std::int64_t fail = 0;
  std::int64_t total = 0;
  for (std::size_t id : it->second) {
    const auto& entry = catalog.all()[id];
    const InvocationMessages inv = invocation_honest(entry.event, 0);
    CrossCallMessage msg = assemble_rho_R(entry.event, inv.sigma0, 0, move.k, pick);
    msg.y01 = move.y01;
    const Transcript t = run_with_cross_call(entry.event, p, 0, msg);
    if (classify(t) == Verdict::Failure) fail += entry.weight;
    total += entry.weight;
  }
  return Rational(fail, total);
}

std::vector<SenderOptimum> sender_optima(const EventCatalog& catalog, const ProtocolParams& p) {
  std::vector<SenderOptimum> out;
  for (const auto& [l, members] : catalog.by_sender_counts()) {
    SenderOptimum o{l, list_probability(catalog, members), Rational(-1), {}, std::nullopt};
    for (const SenderMove& move : sender_moves(l)) {
      Rational f = conditional_failure_S(catalog, l, move, p);
      if (f > o.best) {
        o.best = f;
        o.best_move = move;
      }
    }
    auto z = zeta_S(l, p);
    if (const auto* s = std::get_if<StrategyS>(&z)) o.zeta = conditional_failure_S(catalog, l, {0, 1, *s}, p);
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<ReceiverOptimum> receiver_optima(const EventCatalog& catalog, const ProtocolParams& p) {
  std::vector<ReceiverOptimum> out;
  for (const auto& [l, members] : catalog.by_receiver_counts()) {
    ReceiverOptimum o{l, list_probability(catalog, members), Rational(-1), {}, std::nullopt};
    for (const ReceiverMove& move : receiver_moves(l)) {
      Rational f = conditional_failure_R(catalog, l, move, p);
      if (f > o.best) {
        o.best = f;
        o.best_move = move;
      }
    }
    auto z = zeta_R(l, p);
    if (const auto* s = std::get_if<StrategyR>(&z)) {
      o.zeta = conditional_failure_R(catalog, l, {Output::One, *s}, p);
    }
    out.push_back(std::move(o));
  }
  return out;
}

Rational best_failure_probability_bruteforce(AdversaryConfig cfg, const ProtocolParams& p) {
  if (p.m() > 6) throw ParameterError("brute-force strategy enumeration is limited to m <= 6");
  const EventCatalog catalog(p.m());
  Rational total = 0;
  switch (cfg) {
    case AdversaryConfig::NoFaulty: {
      std::int64_t fail = 0;
      for (const auto& entry : catalog.all()) {
        const auto t = std::get<Transcript>(run_protocol(entry.event, p, 0));
        if (classify(t) == Verdict::Failure) fail += entry.weight;
      }
      total = Rational(fail, catalog.total_weight());
      break;
    }
    case AdversaryConfig::SenderFaulty:
      for (const auto& o : sender_optima(catalog, p)) total += o.probability * o.best;
      break;
    case AdversaryConfig::R0Faulty:
      for (const auto& o : receiver_optima(catalog, p)) total += o.probability * o.best;
      break;
  }
  return total;
}

std::vector<DomainCell> domain_grid_S(const ProtocolParams& p) {
  std::vector<DomainCell> cells;
  for (int l1 = 0; l1 <= p.m(); ++l1) {
    for (int l3 = 0; l1 + l3 <= p.m(); ++l3) {
      const LocalCountListS l{l1, p.m() - l1 - l3, l3};
      const DomainVerdict v = domain_S(l, p);
      cells.push_back({l.l1, l.l2, l.l3, v.in_domain ? "domain" : v.reason()});
    }
  }
  return cells;
}

std::vector<DomainCell> domain_grid_R(const ProtocolParams& p) {
  std::vector<DomainCell> cells;
  for (int l1 = 0; l1 <= p.m(); ++l1) {
    for (int l2 = 0; l1 + l2 <= p.m(); ++l2) {
      const LocalCountListR l{l1, l2, p.m() - l1 - l2};
      cells.push_back({l.l1, l.l2, l.l3, to_string(region_R(l, p))});
    }
  }
  return cells;
}

}  // namespace wbc
