#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wbc/protocol.hpp"
#include "wbc/rational.hpp"
#include "wbc/source.hpp"

namespace wbc {

/// Faulty-sender strategy: how many indices of each of S's local classes go into sigma0 and
/// sigma1. Classes are absolute (by S's own two bits), not relative to the bits sent.
struct StrategyS {
  int k0_0011 = 0;
  int k0_mixed = 0;
  int k0_1100 = 0;
  int k1_0011 = 0;
  int k1_mixed = 0;
  int k1_1100 = 0;

  std::array<int, 6> as_array() const { return {k0_0011, k0_mixed, k0_1100, k1_0011, k1_mixed, k1_1100}; }
  bool operator==(const StrategyS&) const = default;
};

/// Faulty-R0 strategy. The three classes are relative to the bit x0 that S sent:
///   k_0011: rows of sigma0;
///   k_xx10: rows outside sigma0 where R0 measured 1 - x0 (R1 certainly measured x0);
///   k_xx0x: rows where R0 measured x0.
/// The names follow the x_S = 0 case.
struct StrategyR {
  int k_0011 = 0;
  int k_xx10 = 0;
  int k_xx0x = 0;

  std::array<int, 3> as_array() const { return {k_0011, k_xx10, k_xx0x}; }
  int size() const { return k_0011 + k_xx10 + k_xx0x; }
  bool operator==(const StrategyR&) const = default;
};

enum class DomainCondition : std::uint8_t {
  ZeroOneShortage,  // l1 < T - Q
  MixedShortage,    // l2 < Q
  OneOneShortage,   // l3 < T
  TooManyCertain,   // l1 > m - T (R0 side)
};

std::string to_string(DomainCondition c);

struct DomainVerdict {
  bool in_domain = true;
  std::vector<DomainCondition> failed;  // empty iff in_domain

  std::string reason() const;
};

DomainVerdict domain_S(const LocalCountListS& l, const ProtocolParams& p);
DomainVerdict domain_R(const LocalCountListR& l, const ProtocolParams& p);

/// (T-Q, Q, 0; 0, 0, l3) for the targets x0 = 0, x1 = 1.
std::variant<StrategyS, OutOfDomain> zeta_S(const LocalCountListS& l, const ProtocolParams& p);
/// (0, l2, max(0, T - l2)).
std::variant<StrategyR, OutOfDomain> zeta_R(const LocalCountListR& l, const ProtocolParams& p);

/// Regions of R0's local count lists under zeta_R.
enum class RegionR : std::uint8_t {
  Orange,  // T <= l1 <= m-T, l2 <= T-Q: failure needs enough lucky XX0X guesses
  Blue,    // T <= l1 <= m-T, l2 >= T-Q+1: failure certain
  Pink,    // l1 < T: S's honest check set is too short, failure certain
  Green,   // l1 > m-T: outside the domain
};

std::string to_string(RegionR r);
RegionR region_R(const LocalCountListR& l, const ProtocolParams& p);

LocalCountListS local_counts_S(const SenderView& view);
LocalCountListR local_counts_R(const Receiver0View& view);

/// Row indices of each local class, ascending. S: 0011, mixed, 1100. R0: 0011, XX10, XX0X.
std::array<IndexSet, 3> sender_classes(const SenderView& view);
std::array<IndexSet, 3> receiver0_classes(const Receiver0View& view);

/// Chooses k of the given class members. slot is the position of the count in the strategy
/// vector (0..5 for StrategyS, 0..2 for StrategyR). The result need not be sorted.
using ClassPicker = std::function<IndexSet(const IndexSet& members, int k, int slot)>;

/// The k lowest indices.
IndexSet pick_lowest(const IndexSet& members, int k, int slot);

/// Builds the faulty sender's messages. Throws ParameterError if a count exceeds its class.
InvocationMessages assemble_check_sets_S(const SenderView& view, const StrategyS& s, int x0, int x1,
                                         const ClassPicker& pick = pick_lowest);
InvocationMessages assemble_check_sets_S(const Event& e, const StrategyS& s, int x0, int x1,
                                         const ClassPicker& pick = pick_lowest);

/// Builds R0's cross-call message with y01 = 1 - x0. Throws ParameterError if a count exceeds
/// its class.
CrossCallMessage assemble_rho_R(const Receiver0View& view, const StrategyR& s, const ClassPicker& pick = pick_lowest);
CrossCallMessage assemble_rho_R(const Event& e, const IndexSet& sigma0, int x0, const StrategyR& s,
                                const ClassPicker& pick = pick_lowest);

class ZetaSender final : public FaultySender {
 public:
  explicit ZetaSender(ClassPicker pick = pick_lowest) : pick_(std::move(pick)) {}
  std::variant<InvocationMessages, OutOfDomain> invoke(const SenderView& view, const ProtocolParams& p) const override;

 private:
  ClassPicker pick_;
};

class ZetaReceiver0 final : public FaultyReceiver0 {
 public:
  explicit ZetaReceiver0(ClassPicker pick = pick_lowest) : pick_(std::move(pick)) {}
  std::variant<CrossCallMessage, OutOfDomain> cross_call(const Receiver0View& view,
                                                         const ProtocolParams& p) const override;

 private:
  ClassPicker pick_;
};

// -- Exhaustive strategy enumeration -------------------------------------------------------

/// All 6^m Events with integer weights (probability = weight / 12^m), grouped by the local
/// count list seen by S and by R0 (with S honestly sending 0).
class EventCatalog {
 public:
  struct Entry {
    Event event;
    std::int64_t weight;
  };

  /// Throws ParameterError unless 1 <= m <= 6.
  explicit EventCatalog(int m);

  int m() const { return m_; }
  std::int64_t total_weight() const { return twelve_to_the(m_); }
  const std::vector<Entry>& all() const { return all_; }
  const std::map<LocalCountListS, std::vector<std::size_t>>& by_sender_counts() const { return by_s_; }
  const std::map<LocalCountListR, std::vector<std::size_t>>& by_receiver_counts() const { return by_r_; }

 private:
  int m_;
  std::vector<Entry> all_;
  std::map<LocalCountListS, std::vector<std::size_t>> by_s_;
  std::map<LocalCountListR, std::vector<std::size_t>> by_r_;
};

struct SenderMove {
  int x0 = 0;
  int x1 = 1;
  StrategyS k;
};

struct ReceiverMove {
  Output y01 = Output::One;
  StrategyR k;
};

/// Every move legal for the class sizes of l.
std::vector<SenderMove> sender_moves(const LocalCountListS& l);
std::vector<ReceiverMove> receiver_moves(const LocalCountListR& l);

/// P(failure | l) when S plays move on every Event with local count list l.
Rational conditional_failure_S(const EventCatalog& catalog, const LocalCountListS& l, const SenderMove& move,
                               const ProtocolParams& p, const ClassPicker& pick = pick_lowest);
/// P(failure | l) when R0 plays move on every Event with local count list l (S sends 0).
Rational conditional_failure_R(const EventCatalog& catalog, const LocalCountListR& l, const ReceiverMove& move,
                               const ProtocolParams& p, const ClassPicker& pick = pick_lowest);

template <class Counts, class Move>
struct ListOptimum {
  Counts l;
  Rational probability;  // P(l)
  Rational best;         // max over legal moves of P(failure | l)
  Move best_move;
  std::optional<Rational> zeta;  // zeta's P(failure | l) when l is in its domain
};

using SenderOptimum = ListOptimum<LocalCountListS, SenderMove>;
using ReceiverOptimum = ListOptimum<LocalCountListR, ReceiverMove>;

std::vector<SenderOptimum> sender_optima(const EventCatalog& catalog, const ProtocolParams& p);
std::vector<ReceiverOptimum> receiver_optima(const EventCatalog& catalog, const ProtocolParams& p);

/// Failure probability of the best complete strategy, where a strategy maps each local count
/// list to a move. NoFaulty scores the honest protocol. Throws ParameterError for m > 6.
Rational best_failure_probability_bruteforce(AdversaryConfig cfg, const ProtocolParams& p);

// -- Domain plots --------------------------------------------------------------------------

struct DomainCell {
  int l1;
  int l2;
  int l3;
  std::string label;
};

/// Every l with l1 + l2 + l3 = m. S labels: "domain" or the failed conditions joined by '+';
/// R0 labels: the region name.
std::vector<DomainCell> domain_grid_S(const ProtocolParams& p);
std::vector<DomainCell> domain_grid_R(const ProtocolParams& p);

}  // namespace wbc
