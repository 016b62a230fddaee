#include "wbc/truth_table.hpp"

namespace wbc {

namespace {

constexpr Output O0 = Output::Zero;
constexpr Output O1 = Output::One;
constexpr Output OA = Output::Abort;
constexpr bool Y = true;
constexpr bool N = false;

constexpr std::array<AdversaryConfig, 3> kColumns = {AdversaryConfig::NoFaulty, AdversaryConfig::SenderFaulty,
                                                     AdversaryConfig::R0Faulty};

}  // namespace

TableKind parse_table_kind(const std::string& name) {
  if (name == "broadcast") return TableKind::Broadcast;
  if (name == "weak") return TableKind::WeakBroadcast;
  throw ParameterError("unknown table kind '" + name + "' (expected weak or broadcast)");
}

const std::vector<TruthRow>& broadcast_reference() {
  static const std::vector<TruthRow> rows = {
      {0, O0, O0, {Y, Y, Y}}, {0, O0, O1, {N, N, N}}, {0, O1, O0, {N, N, Y}}, {0, O1, O1, {N, Y, N}},
      {1, O0, O0, {N, Y, N}}, {1, O0, O1, {N, N, Y}}, {1, O1, O0, {N, N, N}}, {1, O1, O1, {Y, Y, Y}},
  };
  return rows;
}

const std::vector<TruthRow>& weak_broadcast_reference() {
  static const std::vector<TruthRow> rows = {
      {0, O0, O0, {Y, Y, Y}}, {0, O0, O1, {N, N, N}}, {0, O0, OA, {N, Y, N}},
      {0, O1, O0, {N, N, Y}}, {0, O1, O1, {N, Y, N}}, {0, O1, OA, {N, Y, N}},
      {0, OA, O0, {N, Y, Y}}, {0, OA, O1, {N, Y, N}}, {0, OA, OA, {N, Y, N}},
      {1, O0, O0, {N, Y, N}}, {1, O0, O1, {N, N, Y}}, {1, O0, OA, {N, Y, N}},
      {1, O1, O0, {N, N, N}}, {1, O1, O1, {Y, Y, Y}}, {1, O1, OA, {N, Y, N}},
      {1, OA, O0, {N, Y, N}}, {1, OA, O1, {N, Y, Y}}, {1, OA, OA, {N, Y, N}},
  };
  return rows;
}

std::vector<TruthCell> truth_table_cells(TableKind kind) {
  const auto& rows = kind == TableKind::Broadcast ? broadcast_reference() : weak_broadcast_reference();
  std::vector<TruthCell> cells;
  for (const TruthRow& r : rows) {
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      const Verdict computed = kind == TableKind::Broadcast ? classify_broadcast(kColumns[c], r.y_S, r.y0, r.y1)
                                                            : classify_weak_broadcast(kColumns[c], r.y_S, r.y0, r.y1);
      cells.push_back({r.y_S, r.y0, r.y1, kColumns[c], r.achieved[c] ? Verdict::Achieved : Verdict::Failure, computed});
    }
  }
  return cells;
}

}  // namespace wbc
