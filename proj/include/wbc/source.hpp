#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "wbc/rational.hpp"

namespace wbc {

// Measurement statistics of the four-qubit singlet
//
//   |psi> = (2|0011> - |0101> - |0110> - |1001> - |1010> + 2|1100>) / (2 sqrt 3)
//
// Qubits 1 and 2 belong to the sender S, qubit 3 to R0 and qubit 4 to R1.
// Bit strings are written with qubit 1 leftmost.

/// The six outcomes with non-zero probability, in global count list order.
enum class Outcome : std::uint8_t { k0011 = 0, k0101, k0110, k1001, k1010, k1100 };

inline constexpr int kOutcomeCount = 6;
inline constexpr std::array<Outcome, kOutcomeCount> kAllOutcomes = {
    Outcome::k0011, Outcome::k0101, Outcome::k0110, Outcome::k1001, Outcome::k1010, Outcome::k1100};

/// Four-bit value, qubit 1 as most significant bit ("0011" -> 3).
int outcome_bits(Outcome o);
std::string outcome_string(Outcome o);
/// Throws InputError for strings outside the six-element support.
Outcome outcome_from_string(const std::string& bits);

/// Two-bit value measured by S (0..3).
inline int sender_bits(Outcome o) { return outcome_bits(o) >> 2; }
inline int r0_bit(Outcome o) { return (outcome_bits(o) >> 1) & 1; }
inline int r1_bit(Outcome o) { return outcome_bits(o) & 1; }

/// Global bit flip: 0011<->1100, 0101<->1010, 0110<->1001.
Outcome flipped(Outcome o);

/// Exact probability: 1/3 for 0011 and 1100, 1/12 for the four mixed outcomes.
Rational outcome_probability(Outcome o);
/// Integer weight w with probability = w / 12.
int outcome_weight12(Outcome o);

/// Squared amplitudes over all 16 four-bit strings, indexed by four-bit value.
std::array<Rational, 16> ideal_distribution();

/// Signed amplitudes of |psi> over the 16 basis states, in units of 1/(2 sqrt 3).
std::array<int, 16> singlet_amplitude_numerators();

/// One protocol run's worth of correlated measurement data (rows 1..m).
class Event {
 public:
  Event() = default;
  explicit Event(std::vector<Outcome> outcomes);

  int size() const { return static_cast<int>(outcomes_.size()); }
  Outcome operator[](int index) const { return outcomes_[static_cast<std::size_t>(index)]; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }

  Event flipped() const;

  bool operator==(const Event&) const = default;

 private:
  std::vector<Outcome> outcomes_;
};

/// Row label used in human-readable dumps: 0 -> "a", 25 -> "z", 26 -> "aa".
std::string index_label(int zero_based_index);
int index_from_label(const std::string& label);

struct GlobalCountList {
  std::array<int, 6> g{};  // 0011, 0101, 0110, 1001, 1010, 1100

  int total() const;
  int& operator[](Outcome o) { return g[static_cast<std::size_t>(o)]; }
  int operator[](Outcome o) const { return g[static_cast<std::size_t>(o)]; }
  auto operator<=>(const GlobalCountList&) const = default;
};

/// S's coarse view: (#0011, #mixed, #1100).
struct LocalCountListS {
  int l1 = 0;
  int l2 = 0;
  int l3 = 0;
  int total() const { return l1 + l2 + l3; }
  auto operator<=>(const LocalCountListS&) const = default;
};

/// R0's view when S honestly sent bit 0: (#0011, #XX10, #XX0X).
struct LocalCountListR {
  int l1 = 0;
  int l2 = 0;
  int l3 = 0;
  int total() const { return l1 + l2 + l3; }
  auto operator<=>(const LocalCountListR&) const = default;
};

GlobalCountList global_counts(const Event& e);
LocalCountListS project_S(const GlobalCountList& g);
LocalCountListR project_R(const GlobalCountList& g);

/// multinomial(m; g) * (1/3)^(g1+g6) * (1/12)^(g2+..+g5), exactly.
/// Throws ParameterError for negative entries or an empty list.
Rational event_class_probability(const GlobalCountList& g);
/// Probability of one specific Event, exactly.
Rational event_probability(const Event& e);

/// Calls fn(event, weight) for each of the 6^m Events in lexicographic order, where
/// weight / 12^m is the Event's probability. Throws ParameterError unless 1 <= m <= 10.
void for_each_event(int m, const std::function<void(const Event&, std::int64_t)>& fn);

/// 12^m as an exact integer.
std::int64_t twelve_to_the(int m);

/// SplitMix64 generator; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t state_;
};

/// Finalizer of SplitMix64, used as a 64-bit mixing function.
std::uint64_t mix64(std::uint64_t x);

/// Identifies one independent random stream: (root seed, stream index).
///
/// The generator for stream i starts from mix64(mix64(root) ^ mix64(i + 1)); trial i of a
/// Monte-Carlo run always uses stream i, so results do not depend on how trials are split
/// across workers.
struct Substream {
  std::uint64_t root = 0;
  std::uint64_t index = 0;

  SplitMix64 generator() const;
};

/// Draws m i.i.d. outcomes from the six-point distribution. Throws ParameterError for m < 1.
Event sample_event(int m, const Substream& stream);
Event sample_event(int m, SplitMix64& rng);

}  // namespace wbc
