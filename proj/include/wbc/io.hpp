#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "wbc/adversary.hpp"
#include "wbc/analytics.hpp"
#include "wbc/montecarlo.hpp"
#include "wbc/optimizer.hpp"
#include "wbc/protocol.hpp"
#include "wbc/security.hpp"
#include "wbc/source.hpp"
#include "wbc/truth_table.hpp"

namespace wbc {

/// Shortest decimal that round-trips the double.
std::string format_double(double v);
/// Exact decimal when the expansion terminates within 30 digits, otherwise "num/den".
std::string format_rational(const Rational& q);

/// A rectangular table of already-formatted cells. Every export goes through this type so that
/// CSV and JSON carry the same columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  /// Columns whose cells are emitted as JSON numbers rather than strings. Cells that are not
  /// valid JSON numbers ("1/3") are kept as strings.
  std::vector<bool> numeric;

  void add_row(std::vector<std::string> row);
};

enum class Format : std::uint8_t { Csv, Json };
Format parse_format(const std::string& name);

void write_csv(std::ostream& out, const Table& t);
/// Array of objects, keys in column order.
void write_json(std::ostream& out, const Table& t);
void write_table(std::ostream& out, const Table& t, Format f);

// -- Exports -------------------------------------------------------------------------------

/// index, S_bits, R0_bit, R1_bit with letter labels a, b, ...
Table event_table(const Event& e);
/// Reads the same layout back. Throws InputError naming the offending line.
Event read_event_csv(std::istream& in);
Event read_event_csv_file(const std::string& path);

/// Phase-by-phase fields with 1-based letter labels for index sets.
nlohmann::ordered_json transcript_json(const Transcript& t);

nlohmann::json strategy_json(const StrategyS& s);
nlohmann::json strategy_json(const StrategyR& s);

Table curve_table(const std::vector<CurveRow>& rows);
Table montecarlo_table(const std::vector<MonteCarloResult>& rows);
Table heatmap_table(const std::vector<GridCell>& cells);
Table region_table(const std::vector<RegionCell>& cells);
Table domain_table(const std::vector<DomainCell>& cells);
Table truth_table(const std::vector<TruthCell>& cells);

/// Run manifest: command, parameters, seed and a UTC timestamp. The timestamp is the only
/// field that changes between identical runs.
nlohmann::ordered_json make_manifest(const std::string& command, nlohmann::ordered_json parameters);

}  // namespace wbc
