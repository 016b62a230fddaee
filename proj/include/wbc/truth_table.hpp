#pragma once

#include <array>
#include <string>
#include <vector>

#include "wbc/protocol.hpp"

namespace wbc {

enum class TableKind { Broadcast, WeakBroadcast };

TableKind parse_table_kind(const std::string& name);  // "broadcast" or "weak"

/// One row of a reference truth table: outputs plus the verdict for
/// no-faulty, S-faulty and R0-faulty, in that order.
struct TruthRow {
  int y_S;
  Output y0;
  Output y1;
  std::array<bool, 3> achieved;
};

/// The reference tables, transcribed row by row (8 and 18 rows).
const std::vector<TruthRow>& broadcast_reference();
const std::vector<TruthRow>& weak_broadcast_reference();

struct TruthCell {
  int y_S;
  Output y0;
  Output y1;
  AdversaryConfig config;
  Verdict expected;
  Verdict computed;
};

/// One cell per (row, configuration): 24 for broadcast, 54 for weak broadcast.
std::vector<TruthCell> truth_table_cells(TableKind kind);

}  // namespace wbc
