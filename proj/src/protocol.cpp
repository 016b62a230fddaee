#include "wbc/protocol.hpp"

#include <algorithm>

namespace wbc {

namespace {

void require_bit(int b, const char* what) {
  if (b != 0 && b != 1) throw ParameterError(std::string(what) + " must be 0 or 1");
}

void require_indices(const IndexSet& s, int m, const char* what) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= m) throw ParameterError(std::string(what) + " contains an index outside 1..m");
    if (i > 0 && s[i] <= s[i - 1]) throw ParameterError(std::string(what) + " must be sorted and duplicate-free");
  }
}

bool is_bit(Output v) { return v != Output::Abort; }

}  // namespace

ProtocolParams::ProtocolParams(Rational mu, Rational lambda, int m)
    : mu_(std::move(mu)), lambda_(std::move(lambda)), m_(m) {
  if (!(mu_ > 0)) throw ParameterError("0 < mu violated");
  if (!(mu_ < Rational(1, 3))) throw ParameterError("mu < 1/3 violated");
  if (!(lambda_ > Rational(1, 2))) throw ParameterError("1/2 < lambda violated");
  if (!(lambda_ < 1)) throw ParameterError("lambda < 1 violated");
  if (m_ < 1) throw ParameterError("m >= 1 violated");

  T_ = static_cast<int>(to_int64(ceil(mu_ * m_)));
  lambda_T_ceil_ = static_cast<int>(to_int64(ceil(lambda_ * T_)));
  Q_ = T_ - lambda_T_ceil_ + 1;
  if (!(1 <= Q_ && Q_ <= T_ && T_ <= m_)) throw ParameterError("1 <= Q <= T <= m violated");
}

Thresholds derive_thresholds(const Rational& mu, const Rational& lambda, int m) {
  const ProtocolParams p(mu, lambda, m);
  return {p.T(), p.Q()};
}

Output output_of(int bit) {
  require_bit(bit, "bit");
  return bit == 0 ? Output::Zero : Output::One;
}

std::string to_string(Output v) {
  switch (v) {
    case Output::Zero: return "0";
    case Output::One: return "1";
    case Output::Abort: return "abort";
  }
  return "?";
}

std::string to_string(AdversaryConfig c) {
  switch (c) {
    case AdversaryConfig::NoFaulty: return "no-faulty";
    case AdversaryConfig::SenderFaulty: return "s-faulty";
    case AdversaryConfig::R0Faulty: return "r0-faulty";
  }
  return "?";
}

AdversaryConfig parse_config(const std::string& name) {
  if (name == "no-faulty") return AdversaryConfig::NoFaulty;
  if (name == "s-faulty") return AdversaryConfig::SenderFaulty;
  if (name == "r0-faulty") return AdversaryConfig::R0Faulty;
  throw ParameterError("unknown adversary configuration '" + name + "' (expected no-faulty, s-faulty or r0-faulty)");
}

std::string to_string(Verdict v) {
  return v == Verdict::Achieved ? "achieved" : "failure";
}

InvocationMessages invocation_honest(const Event& e, int x_S) {
  require_bit(x_S, "x_S");
  const int target = x_S ? 0b11 : 0b00;
  InvocationMessages msg;
  msg.x0 = msg.x1 = x_S;
  for (int i = 0; i < e.size(); ++i) {
    if (sender_bits(e[i]) == target) msg.sigma0.push_back(i);
  }
  msg.sigma1 = msg.sigma0;
  return msg;
}

Output check_phase(const Event& e, Receiver receiver, int x_j, const IndexSet& sigma, const ProtocolParams& p) {
  require_bit(x_j, "x_j");
  require_indices(sigma, e.size(), "check set");
  if (static_cast<int>(sigma.size()) < p.T()) return Output::Abort;
  for (int i : sigma) {
    const int measured = receiver == Receiver::R0 ? r0_bit(e[i]) : r1_bit(e[i]);
    if (measured == x_j) return Output::Abort;
  }
  return output_of(x_j);
}

Output cross_check(Output y_tilde1, Output y01, const IndexSet& rho01, const Event& e, const ProtocolParams& p) {
  require_indices(rho01, e.size(), "rho01");
  const bool confusion = is_bit(y01) && is_bit(y_tilde1) && y01 != y_tilde1;
  if (!confusion) return y_tilde1;
  const int size = static_cast<int>(rho01.size());
  if (size < p.T()) return y_tilde1;

  const int opposite = y01 == Output::Zero ? 1 : 0;
  int consistent = 0;
  for (int i : rho01) {
    if (r1_bit(e[i]) == opposite) ++consistent;
  }
  // consistent >= lambda T + |rho| - T  <=>  consistent >= ceil(lambda T) + |rho| - T
  if (consistent >= p.lambda_T_ceil() + size - p.T()) return y01;
  return y_tilde1;
}

SenderView sender_view(const Event& e) {
  SenderView v;
  v.pairs.reserve(static_cast<std::size_t>(e.size()));
  for (Outcome o : e.outcomes()) v.pairs.push_back(sender_bits(o));
  return v;
}

Receiver0View receiver0_view(const Event& e, int x0, const IndexSet& sigma0) {
  Receiver0View v;
  v.bits.reserve(static_cast<std::size_t>(e.size()));
  for (Outcome o : e.outcomes()) v.bits.push_back(r0_bit(o));
  v.x0 = x0;
  v.sigma0 = sigma0;
  return v;
}

AdversaryConfig config_of(const Adversary& adversary) {
  if (std::holds_alternative<const FaultySender*>(adversary)) return AdversaryConfig::SenderFaulty;
  if (std::holds_alternative<const FaultyReceiver0*>(adversary)) return AdversaryConfig::R0Faulty;
  return AdversaryConfig::NoFaulty;
}

Transcript run_with_invocation(const Event& e, const ProtocolParams& p, AdversaryConfig config, int claimed_x_S,
                               const InvocationMessages& messages) {
  if (e.size() != p.m()) throw ParameterError("Event length must equal m");
  require_bit(messages.x0, "x0");
  require_bit(messages.x1, "x1");

  Transcript t;
  t.config = config;
  t.x_S = claimed_x_S;
  t.y_S = claimed_x_S;
  t.x0 = messages.x0;
  t.x1 = messages.x1;
  t.sigma0 = messages.sigma0;
  t.sigma1 = messages.sigma1;

  t.y0 = check_phase(e, Receiver::R0, t.x0, t.sigma0, p);
  t.y_tilde1 = check_phase(e, Receiver::R1, t.x1, t.sigma1, p);

  t.y01 = t.y0;
  t.rho01 = t.sigma0;
  t.y1 = cross_check(t.y_tilde1, t.y01, t.rho01, e, p);
  return t;
}

Transcript run_with_cross_call(const Event& e, const ProtocolParams& p, int x_S, const CrossCallMessage& message) {
  if (e.size() != p.m()) throw ParameterError("Event length must equal m");
  const InvocationMessages inv = invocation_honest(e, x_S);

  Transcript t;
  t.config = AdversaryConfig::R0Faulty;
  t.x_S = t.y_S = x_S;
  t.x0 = inv.x0;
  t.x1 = inv.x1;
  t.sigma0 = inv.sigma0;
  t.sigma1 = inv.sigma1;
  t.y_tilde1 = check_phase(e, Receiver::R1, t.x1, t.sigma1, p);
  t.y0 = message.y01;
  t.y01 = message.y01;
  t.rho01 = message.rho01;
  t.y1 = cross_check(t.y_tilde1, t.y01, t.rho01, e, p);
  return t;
}

std::variant<Transcript, OutOfDomain> run_protocol(const Event& e, const ProtocolParams& p, int x_S,
                                                   const Adversary& adversary) {
  if (const auto* sender = std::get_if<const FaultySender*>(&adversary)) {
    auto messages = (*sender)->invoke(sender_view(e), p);
    if (auto* out = std::get_if<OutOfDomain>(&messages)) return *out;
    const auto& inv = std::get<InvocationMessages>(messages);
    return run_with_invocation(e, p, AdversaryConfig::SenderFaulty, inv.x0, inv);
  }
  if (const auto* receiver = std::get_if<const FaultyReceiver0*>(&adversary)) {
    const InvocationMessages inv = invocation_honest(e, x_S);
    auto message = (*receiver)->cross_call(receiver0_view(e, inv.x0, inv.sigma0), p);
    if (auto* out = std::get_if<OutOfDomain>(&message)) return *out;
    return run_with_cross_call(e, p, x_S, std::get<CrossCallMessage>(message));
  }
  return run_with_invocation(e, p, AdversaryConfig::NoFaulty, x_S, invocation_honest(e, x_S));
}

Verdict classify_weak_broadcast(AdversaryConfig config, int y_S, Output y0, Output y1) {
  require_bit(y_S, "y_S");
  const Output s = output_of(y_S);
  bool ok = false;
  switch (config) {
    case AdversaryConfig::NoFaulty:
      ok = y0 == s && y1 == s;
      break;
    case AdversaryConfig::SenderFaulty:
      ok = !(is_bit(y0) && is_bit(y1) && y0 != y1);
      break;
    case AdversaryConfig::R0Faulty:
      ok = y1 == s;
      break;
  }
  return ok ? Verdict::Achieved : Verdict::Failure;
}

Verdict classify_broadcast(AdversaryConfig config, int y_S, Output y0, Output y1) {
  require_bit(y_S, "y_S");
  if (!is_bit(y0) || !is_bit(y1)) throw ParameterError("broadcast outputs must be 0 or 1, abort is not allowed");
  const Output s = output_of(y_S);
  bool ok = false;
  switch (config) {
    case AdversaryConfig::NoFaulty:
      ok = y0 == s && y1 == s;
      break;
    case AdversaryConfig::SenderFaulty:
      ok = y0 == y1;
      break;
    case AdversaryConfig::R0Faulty:
      ok = y1 == s;
      break;
  }
  return ok ? Verdict::Achieved : Verdict::Failure;
}

Verdict classify(const Transcript& t) {
  return classify_weak_broadcast(t.config, t.y_S, t.y0, t.y1);
}

}  // namespace wbc
