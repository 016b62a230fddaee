#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wbc/protocol.hpp"
#include "wbc/rational.hpp"

namespace wbc {

enum class BoundKind : std::uint8_t { Exact, Lower, Upper };

std::string to_string(BoundKind k);
/// "exact", "lower", "upper". Throws ParameterError otherwise.
BoundKind parse_bound_kind(const std::string& name);

struct FailureReport {
  AdversaryConfig config;
  BoundKind kind;
  double value;                 // in [0, 1]
  std::optional<Rational> exact;  // set by the rational backend and the enumeration oracle
  ProtocolParams params;
};

/// log of m! / (parts[0]! parts[1]! ...). Throws ParameterError if the parts do not sum to m
/// or any part is negative.
double log_multinomial(int m, const std::vector<int>& parts);
BigInt multinomial(int m, const std::vector<int>& parts);

/// Probability that fewer than T of m rows are 0011 (honest run fails).
FailureReport pf_no_faulty_exact(const ProtocolParams& p);
/// Bounds for the faulty-sender strategy zeta_S: (lower, upper).
std::pair<FailureReport, FailureReport> pf_S_bounds(const ProtocolParams& p);
/// Bounds for the faulty-R0 strategy zeta_R: (lower, upper).
std::pair<FailureReport, FailureReport> pf_R_bounds(const ProtocolParams& p);

/// The same three formulas evaluated in exact rational arithmetic. Cost grows like m^3 bits;
/// intended for m up to a few dozen.
Rational pf_no_faulty_rational(const ProtocolParams& p);
std::pair<Rational, Rational> pf_S_bounds_rational(const ProtocolParams& p);
std::pair<Rational, Rational> pf_R_bounds_rational(const ProtocolParams& p);

/// Probability mass of the local count lists inside the summation range of the S bounds
/// (the domain of zeta_S). upper = lower + 1 - mass.
Rational pf_S_domain_mass_rational(const ProtocolParams& p);

/// Dispatch by (config, kind). NoFaulty accepts every kind and returns the exact value.
FailureReport failure_probability(AdversaryConfig cfg, BoundKind kind, const ProtocolParams& p);

/// Exhaustive oracle over all 6^m Events with exact weights. NoFaulty scores the honest
/// protocol; faulty configurations play zeta_S / zeta_R and score OutOfDomain as failure
/// (Upper) or success (Lower). Throws ParameterError for m > 8.
FailureReport pf_bruteforce(AdversaryConfig cfg, BoundKind kind, const ProtocolParams& p);

struct CurveRow {
  int m;
  AdversaryConfig config;
  BoundKind kind;
  double value;
};

/// Rows for every m in [m_from, m_to] and every (config, kind) with a formula: no-faulty exact,
/// S lower/upper, R0 lower/upper.
std::vector<CurveRow> failure_curves(const Rational& mu, const Rational& lambda, int m_from, int m_to);

}  // namespace wbc
