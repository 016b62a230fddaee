#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "wbc/protocol.hpp"
#include "wbc/source.hpp"

namespace wbc::test {

inline Event event_from(const std::vector<std::string>& rows) {
  std::vector<Outcome> out;
  for (const auto& r : rows) out.push_back(outcome_from_string(r));
  return Event(out);
}

/// m = 12 example Event, rows a..l. Rows g, j, l are our own choice;
/// any choice with the right local classes works (g in XX10, j and l in XX0X).
inline Event example_event() {
  return event_from({"1100", "0011", "1100", "1010", "0011", "0011", "0110", "1100", "0011", "0101", "1100", "1001"});
}

inline IndexSet labels(const std::string& letters) {
  IndexSet s;
  for (char c : letters) s.push_back(index_from_label(std::string(1, c)));
  std::sort(s.begin(), s.end());
  return s;
}

inline ProtocolParams params(const char* mu, const char* lambda, int m) {
  return ProtocolParams(parse_rational(mu), parse_rational(lambda), m);
}

}  // namespace wbc::test
