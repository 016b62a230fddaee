#include "wbc/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wbc/adversary.hpp"

namespace wbc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Prob {
  int num;
  int den;
};

constexpr Prob kThird{1, 3};
constexpr Prob kTwoThirds{2, 3};
constexpr Prob kSixth{1, 6};
constexpr Prob kHalf{1, 2};

double log_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(1 << 14);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    return t;
  }();
  if (n < static_cast<int>(table.size())) return table[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

void check_parts(int m, const std::vector<int>& parts) {
  long sum = 0;
  for (int v : parts) {
    if (v < 0) throw ParameterError("multinomial parts must be non-negative");
    sum += v;
  }
  if (sum != m) throw ParameterError("multinomial parts must sum to m");
}

// Log-space backend. Values are natural logs; zero is -inf.
struct LogBackend {
  using Value = double;

  class Sum {
   public:
    void add(Value v) {
      if (v != kNegInf) terms_.push_back(v);
    }
    void add_sum(const Sum& other) { terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end()); }

    Value total() const {
      if (terms_.empty()) return kNegInf;
      const double top = *std::max_element(terms_.begin(), terms_.end());
      // terms more than e^-80 below the largest cannot move a double
      std::vector<double> kept;
      kept.reserve(terms_.size());
      for (double t : terms_) {
        if (t > top - 80.0) kept.push_back(t);
      }
      std::sort(kept.begin(), kept.end());
      double s = 0.0;
      for (double t : kept) s += std::exp(t - top);
      return top + std::log(s);
    }

   private:
    std::vector<double> terms_;
  };

  static Value one() { return 0.0; }
  static Value multinomial(int m, std::initializer_list<int> parts) {
    double v = log_factorial(m);
    for (int k : parts) v -= log_factorial(k);
    return v;
  }
  static Value power(Prob p, int k) {
    if (k == 0) return 0.0;
    return k * (std::log(static_cast<double>(p.num)) - std::log(static_cast<double>(p.den)));
  }
  static Value half_power(int q) { return -q * std::log(2.0); }
  static Value times(Value a, Value b) { return a + b; }
  static Value plus(Value a, Value b) {
    Sum s;
    s.add(a);
    s.add(b);
    return s.total();
  }
  static double to_double(Value v) { return std::clamp(std::exp(v), 0.0, 1.0); }
};

struct ExactBackend {
  using Value = Rational;

  class Sum {
   public:
    void add(const Value& v) { total_ += v; }
    void add_sum(const Sum& other) { total_ += other.total_; }
    Value total() const { return total_; }

   private:
    Rational total_ = 0;
  };

  static Value one() { return 1; }
  static Value multinomial(int m, std::initializer_list<int> parts) {
    return Rational(wbc::multinomial(m, std::vector<int>(parts)));
  }
  static Value power(Prob p, int k) { return pow(Rational(p.num, p.den), k); }
  static Value half_power(int q) { return pow(Rational(1, 2), q); }
  static Value times(const Value& a, const Value& b) { return a * b; }
  static Value plus(const Value& a, const Value& b) { return a + b; }
};

template <class B>
typename B::Value binomial_term(int n, int k, Prob p, Prob q) {
  return B::times(B::multinomial(n, {k, n - k}), B::times(B::power(p, k), B::power(q, n - k)));
}

template <class B>
typename B::Value trinomial_term(int m, int a, int b, int c, Prob pa, Prob pb, Prob pc) {
  return B::times(B::multinomial(m, {a, b, c}), B::times(B::power(pa, a), B::times(B::power(pb, b), B::power(pc, c))));
}

template <class B>
typename B::Value no_faulty(const ProtocolParams& p) {
  typename B::Sum s;
  for (int k = 0; k <= p.T() - 1; ++k) s.add(binomial_term<B>(p.m(), k, kThird, kTwoThirds));
  return s.total();
}

// Range of the S sums: T <= l3 <= m - T, T - Q <= l1 <= m - Q - l3.
bool in_s_range(int l1, int l3, const ProtocolParams& p) {
  const int m = p.m(), T = p.T(), Q = p.Q();
  return T <= l3 && l3 <= m - T && T - Q <= l1 && l1 <= m - Q - l3;
}

// Returns (domain mass, mass outside the domain). Both are sums of positive terms; the
// complement is summed directly rather than taken as 1 - mass so that it keeps full relative
// precision when it is tiny.
template <class B>
std::pair<typename B::Value, typename B::Value> s_masses(const ProtocolParams& p) {
  typename B::Sum inside;
  typename B::Sum outside;
  const int m = p.m();
  for (int l3 = p.T(); l3 <= m - p.T(); ++l3) {
    for (int l1 = p.T() - p.Q(); l1 <= m - p.Q() - l3; ++l1) {
      inside.add(trinomial_term<B>(m, l3, l1, m - l1 - l3, kThird, kThird, kThird));
    }
  }
  for (int l3 = 0; l3 <= m; ++l3) {
    for (int l1 = 0; l1 + l3 <= m; ++l1) {
      if (!in_s_range(l1, l3, p)) outside.add(trinomial_term<B>(m, l3, l1, m - l1 - l3, kThird, kThird, kThird));
    }
  }
  return {inside.total(), outside.total()};
}

template <class B>
std::pair<typename B::Value, typename B::Value> s_bounds(const ProtocolParams& p) {
  const auto [inside, outside] = s_masses<B>(p);
  const typename B::Value lower = B::times(inside, B::half_power(p.Q()));
  return {lower, B::plus(lower, outside)};
}

template <class B>
typename B::Value orange_conditional(int T, int Q, int l2) {
  typename B::Sum s;
  const int n = T - l2;
  for (int k = T - Q + 1 - l2; k <= n; ++k) s.add(binomial_term<B>(n, k, kTwoThirds, kThird));
  return s.total();
}

template <class B>
std::pair<typename B::Value, typename B::Value> r_bounds(const ProtocolParams& p) {
  const int m = p.m(), T = p.T(), Q = p.Q();
  typename B::Sum lower;
  for (int l1 = T; l1 <= m - T; ++l1) {
    for (int l2 = 0; l2 <= T - Q; ++l2) {
      const int l3 = m - l1 - l2;
      if (l3 < 0) continue;  // empty simplex point
      lower.add(B::times(trinomial_term<B>(m, l1, l2, l3, kThird, kSixth, kHalf), orange_conditional<B>(T, Q, l2)));
    }
  }
  for (int l1 = T; l1 <= m - T; ++l1) {
    for (int l2 = T - Q + 1; l2 <= m - l1; ++l2) {
      lower.add(trinomial_term<B>(m, l1, l2, m - l1 - l2, kThird, kSixth, kHalf));
    }
  }
  for (int l1 = 0; l1 <= T - 1; ++l1) lower.add(binomial_term<B>(m, l1, kThird, kTwoThirds));

  typename B::Sum upper;
  upper.add_sum(lower);
  for (int l1 = m - T + 1; l1 <= m; ++l1) upper.add(binomial_term<B>(m, l1, kThird, kTwoThirds));
  return {lower.total(), upper.total()};
}

FailureReport report(AdversaryConfig cfg, BoundKind kind, double value, const ProtocolParams& p) {
  return FailureReport{cfg, kind, value, std::nullopt, p};
}

}  // namespace

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Exact: return "exact";
    case BoundKind::Lower: return "lower";
    case BoundKind::Upper: return "upper";
  }
  return "?";
}

BoundKind parse_bound_kind(const std::string& name) {
  if (name == "exact") return BoundKind::Exact;
  if (name == "lower") return BoundKind::Lower;
  if (name == "upper") return BoundKind::Upper;
  throw ParameterError("unknown bound kind '" + name + "' (expected exact, lower or upper)");
}

double log_multinomial(int m, const std::vector<int>& parts) {
  check_parts(m, parts);
  double v = log_factorial(m);
  for (int k : parts) v -= log_factorial(k);
  return v;
}

BigInt multinomial(int m, const std::vector<int>& parts) {
  check_parts(m, parts);
  BigInt c = 1;
  int placed = 0;
  for (int v : parts) {
    for (int k = 1; k <= v; ++k) {
      c *= placed + k;
      c /= k;
    }
    placed += v;
  }
  return c;
}

FailureReport pf_no_faulty_exact(const ProtocolParams& p) {
  return report(AdversaryConfig::NoFaulty, BoundKind::Exact, LogBackend::to_double(no_faulty<LogBackend>(p)), p);
}

std::pair<FailureReport, FailureReport> pf_S_bounds(const ProtocolParams& p) {
  const auto [lo, hi] = s_bounds<LogBackend>(p);
  return {report(AdversaryConfig::SenderFaulty, BoundKind::Lower, LogBackend::to_double(lo), p),
          report(AdversaryConfig::SenderFaulty, BoundKind::Upper, LogBackend::to_double(hi), p)};
}

std::pair<FailureReport, FailureReport> pf_R_bounds(const ProtocolParams& p) {
  const auto [lo, hi] = r_bounds<LogBackend>(p);
  return {report(AdversaryConfig::R0Faulty, BoundKind::Lower, LogBackend::to_double(lo), p),
          report(AdversaryConfig::R0Faulty, BoundKind::Upper, LogBackend::to_double(hi), p)};
}

Rational pf_no_faulty_rational(const ProtocolParams& p) {
  return no_faulty<ExactBackend>(p);
}

std::pair<Rational, Rational> pf_S_bounds_rational(const ProtocolParams& p) {
  return s_bounds<ExactBackend>(p);
}

std::pair<Rational, Rational> pf_R_bounds_rational(const ProtocolParams& p) {
  return r_bounds<ExactBackend>(p);
}

Rational pf_S_domain_mass_rational(const ProtocolParams& p) {
  return s_masses<ExactBackend>(p).first;
}

FailureReport failure_probability(AdversaryConfig cfg, BoundKind kind, const ProtocolParams& p) {
  switch (cfg) {
    case AdversaryConfig::NoFaulty: {
      FailureReport r = pf_no_faulty_exact(p);
      r.kind = kind;
      return r;
    }
    case AdversaryConfig::SenderFaulty: {
      if (kind == BoundKind::Exact) throw ParameterError("s-faulty has only lower and upper bounds");
      auto b = pf_S_bounds(p);
      return kind == BoundKind::Lower ? b.first : b.second;
    }
    case AdversaryConfig::R0Faulty: {
      if (kind == BoundKind::Exact) throw ParameterError("r0-faulty has only lower and upper bounds");
      auto b = pf_R_bounds(p);
      return kind == BoundKind::Lower ? b.first : b.second;
    }
  }
  throw ParameterError("unknown configuration");
}

FailureReport pf_bruteforce(AdversaryConfig cfg, BoundKind kind, const ProtocolParams& p) {
  if (p.m() > 8) throw ParameterError("exhaustive enumeration is limited to m <= 8");
  const ZetaSender sender;
  const ZetaReceiver0 receiver;
  Adversary adversary;
  if (cfg == AdversaryConfig::SenderFaulty) adversary = &sender;
  if (cfg == AdversaryConfig::R0Faulty) adversary = &receiver;

  std::int64_t fail = 0;
  for_each_event(p.m(), [&](const Event& e, std::int64_t w) {
    const auto run = run_protocol(e, p, 0, adversary);
    if (const auto* t = std::get_if<Transcript>(&run)) {
      if (classify(*t) == Verdict::Failure) fail += w;
    } else if (kind == BoundKind::Upper) {
      fail += w;
    }
  });
  const Rational value(fail, twelve_to_the(p.m()));
  return FailureReport{cfg, cfg == AdversaryConfig::NoFaulty ? BoundKind::Exact : kind, to_double(value), value, p};
}

std::vector<CurveRow> failure_curves(const Rational& mu, const Rational& lambda, int m_from, int m_to) {
  if (m_from < 1 || m_to < m_from) throw ParameterError("curve range needs 1 <= m_from <= m_to");
  std::vector<CurveRow> rows;
  for (int m = m_from; m <= m_to; ++m) {
    const ProtocolParams p(mu, lambda, m);
    rows.push_back({m, AdversaryConfig::NoFaulty, BoundKind::Exact, pf_no_faulty_exact(p).value});
    const auto s = pf_S_bounds(p);
    rows.push_back({m, AdversaryConfig::SenderFaulty, BoundKind::Lower, s.first.value});
    rows.push_back({m, AdversaryConfig::SenderFaulty, BoundKind::Upper, s.second.value});
    const auto r = pf_R_bounds(p);
    rows.push_back({m, AdversaryConfig::R0Faulty, BoundKind::Lower, r.first.value});
    rows.push_back({m, AdversaryConfig::R0Faulty, BoundKind::Upper, r.second.value});
  }
  return rows;
}

}  // namespace wbc
