#include "wbc/source.hpp"

#include <random>
#include <stdexcept>

namespace wbc {

namespace {

constexpr std::array<int, kOutcomeCount> kBits = {0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100};

}  // namespace

int outcome_bits(Outcome o) {
  return kBits[static_cast<std::size_t>(o)];
}

std::string outcome_string(Outcome o) {
  const int v = outcome_bits(o);
  std::string s(4, '0');
  for (int i = 0; i < 4; ++i) {
    if (v & (1 << (3 - i))) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

Outcome outcome_from_string(const std::string& bits) {
  for (Outcome o : kAllOutcomes) {
    if (outcome_string(o) == bits) return o;
  }
  throw InputError("'" + bits + "' is not one of the six singlet outcomes");
}

Outcome flipped(Outcome o) {
  return static_cast<Outcome>(kOutcomeCount - 1 - static_cast<int>(o));
}

int outcome_weight12(Outcome o) {
  return (o == Outcome::k0011 || o == Outcome::k1100) ? 4 : 1;
}

Rational outcome_probability(Outcome o) {
  return Rational(outcome_weight12(o), 12);
}

std::array<int, 16> singlet_amplitude_numerators() {
  std::array<int, 16> amp{};
  amp[0b0011] = 2;
  amp[0b0101] = -1;
  amp[0b0110] = -1;
  amp[0b1001] = -1;
  amp[0b1010] = -1;
  amp[0b1100] = 2;
  return amp;
}

std::array<Rational, 16> ideal_distribution() {
  // |amp / (2 sqrt 3)|^2 = amp^2 / 12
  std::array<Rational, 16> p;
  const auto amp = singlet_amplitude_numerators();
  for (std::size_t i = 0; i < 16; ++i) p[i] = Rational(amp[i] * amp[i], 12);
  return p;
}

Event::Event(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {}

Event Event::flipped() const {
  std::vector<Outcome> out;
  out.reserve(outcomes_.size());
  for (Outcome o : outcomes_) out.push_back(wbc::flipped(o));
  return Event(std::move(out));
}

std::string index_label(int zero_based_index) {
  if (zero_based_index < 0) throw std::out_of_range("negative row index");
  std::string label;
  int n = zero_based_index + 1;
  while (n > 0) {
    --n;
    label.insert(label.begin(), static_cast<char>('a' + n % 26));
    n /= 26;
  }
  return label;
}

int index_from_label(const std::string& label) {
  if (label.empty()) throw InputError("empty row label");
  long n = 0;
  for (char c : label) {
    if (c < 'a' || c > 'z') throw InputError("row label '" + label + "' must use letters a-z");
    n = n * 26 + (c - 'a' + 1);
    if (n > 100'000'000) throw InputError("row label '" + label + "' is too large");
  }
  return static_cast<int>(n - 1);
}

int GlobalCountList::total() const {
  int s = 0;
  for (int v : g) s += v;
  return s;
}

GlobalCountList global_counts(const Event& e) {
  GlobalCountList g;
  for (Outcome o : e.outcomes()) ++g[o];
  return g;
}

LocalCountListS project_S(const GlobalCountList& g) {
  return {g.g[0], g.g[1] + g.g[2] + g.g[3] + g.g[4], g.g[5]};
}

LocalCountListR project_R(const GlobalCountList& g) {
  return {g.g[0], g.g[2] + g.g[4], g.g[1] + g.g[3] + g.g[5]};
}

Rational event_class_probability(const GlobalCountList& g) {
  for (int v : g.g) {
    if (v < 0) throw ParameterError("global count list entries must be non-negative");
  }
  const int m = g.total();
  if (m < 1) throw ParameterError("global count list must sum to m >= 1");

  BigInt coefficient = 1;  // multinomial(m; g1..g6), built as a product of binomials
  int placed = 0;
  for (int v : g.g) {
    for (int k = 1; k <= v; ++k) {
      coefficient *= placed + k;
      coefficient /= k;
    }
    placed += v;
  }
  return Rational(coefficient) * pow(Rational(1, 3), g.g[0] + g.g[5]) *
         pow(Rational(1, 12), g.g[1] + g.g[2] + g.g[3] + g.g[4]);
}

Rational event_probability(const Event& e) {
  const GlobalCountList g = global_counts(e);
  return pow(Rational(1, 3), g.g[0] + g.g[5]) * pow(Rational(1, 12), e.size() - g.g[0] - g.g[5]);
}

std::int64_t twelve_to_the(int m) {
  std::int64_t v = 1;
  for (int i = 0; i < m; ++i) v *= 12;
  return v;
}

void for_each_event(int m, const std::function<void(const Event&, std::int64_t)>& fn) {
  if (m < 1 || m > 10) throw ParameterError("exhaustive Event enumeration needs 1 <= m <= 10");
  std::vector<int> digits(static_cast<std::size_t>(m), 0);
  std::vector<Outcome> outcomes(static_cast<std::size_t>(m), Outcome::k0011);
  while (true) {
    std::int64_t weight = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      outcomes[i] = kAllOutcomes[static_cast<std::size_t>(digits[i])];
      weight *= outcome_weight12(outcomes[i]);
    }
    fn(Event(outcomes), weight);

    int pos = m - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == kOutcomeCount - 1) {
      digits[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

SplitMix64 Substream::generator() const {
  return SplitMix64(mix64(mix64(root) ^ mix64(index + 1)));
}

Event sample_event(int m, SplitMix64& rng) {
  if (m < 1) throw ParameterError("m >= 1 required to sample an Event");
  // Twelve equally likely slots: four for 0011, four for 1100, one per mixed outcome.
  static constexpr std::array<Outcome, 12> kSlots = {
      Outcome::k0011, Outcome::k0011, Outcome::k0011, Outcome::k0011, Outcome::k1100, Outcome::k1100,
      Outcome::k1100, Outcome::k1100, Outcome::k0101, Outcome::k0110, Outcome::k1001, Outcome::k1010};
  std::uniform_int_distribution<int> slot(0, 11);
  std::vector<Outcome> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out.push_back(kSlots[static_cast<std::size_t>(slot(rng))]);
  return Event(std::move(out));
}

Event sample_event(int m, const Substream& stream) {
  SplitMix64 rng = stream.generator();
  return sample_event(m, rng);
}

}  // namespace wbc
