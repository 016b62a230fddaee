#include "wbc/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace wbc {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string bits_string(int v, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if (v & (1 << (width - 1 - i))) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

nlohmann::ordered_json labels_json(const IndexSet& s) {
  auto a = nlohmann::ordered_json::array();
  for (int i : s) a.push_back(index_label(i));
  return a;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string format_rational(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt den = denominator(q);
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  const int digits = std::max(twos, fives);
  if (den != 1 || digits > 30) return to_string(q);
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const BigInt scaled = numerator(q) * scale / denominator(q);
  const bool negative = scaled < 0;
  std::string s = (negative ? BigInt(-scaled) : scaled).str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + s : s;
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the column count");
  rows.push_back(std::move(row));
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw ParameterError("format must be csv or json, got '" + name + "'");
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << csv_escape(t.columns[c]);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& t) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json o;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const bool numeric = c < t.numeric.size() && t.numeric[c];
      // exact fractions such as "1/3" stay strings
      if (numeric && nlohmann::ordered_json::accept(row[c])) {
        o[t.columns[c]] = nlohmann::ordered_json::parse(row[c]);
      } else {
        o[t.columns[c]] = row[c];
      }
    }
    a.push_back(std::move(o));
  }
  out << a.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& t, Format f) {
  if (f == Format::Csv) {
    write_csv(out, t);
  } else {
    write_json(out, t);
  }
}

Table event_table(const Event& e) {
  Table t{{"index", "S_bits", "R0_bit", "R1_bit"}, {}, {false, false, true, true}};
  for (int i = 0; i < e.size(); ++i) {
    t.add_row({index_label(i), bits_string(sender_bits(e[i]), 2), std::to_string(r0_bit(e[i])),
               std::to_string(r1_bit(e[i]))});
  }
  return t;
}

Event read_event_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::vector<std::pair<int, Outcome>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 4) {
      throw InputError("event CSV line " + std::to_string(line_no) + ": expected 4 columns, got " +
                       std::to_string(cells.size()));
    }
    if (cells[0] == "index") continue;
    const std::string bits = cells[1] + cells[2] + cells[3];
    Outcome o;
    int index;
    try {
      index = index_from_label(cells[0]);
      o = outcome_from_string(bits);
    } catch (const InputError& err) {
      throw InputError("event CSV line " + std::to_string(line_no) + ": " + err.what());
    }
    rows.emplace_back(index, o);
  }
  if (rows.empty()) throw InputError("event CSV holds no rows");
  std::vector<Outcome> outcomes;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].first != static_cast<int>(k)) {
      throw InputError("event CSV rows must be labelled a, b, c, ... in order; row " + std::to_string(k + 1) +
                       " is '" + index_label(rows[k].first) + "'");
    }
    outcomes.push_back(rows[k].second);
  }
  return Event(std::move(outcomes));
}

Event read_event_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_event_csv(in);
}

nlohmann::ordered_json transcript_json(const Transcript& t) {
  nlohmann::ordered_json j;
  j["config"] = to_string(t.config);
  j["invocation"] = {{"x_S", t.x_S}, {"x0", t.x0}, {"sigma0", labels_json(t.sigma0)},
                     {"x1", t.x1}, {"sigma1", labels_json(t.sigma1)}};
  j["check"] = {{"y_S", t.y_S}, {"y0", to_string(t.y0)}, {"y_tilde1", to_string(t.y_tilde1)}};
  j["cross_call"] = {{"y01", to_string(t.y01)}, {"rho01", labels_json(t.rho01)}};
  j["cross_check"] = {{"y1", to_string(t.y1)}};
  j["verdict"] = to_string(classify(t));
  return j;
}

nlohmann::json strategy_json(const StrategyS& s) {
  return s.as_array();
}

nlohmann::json strategy_json(const StrategyR& s) {
  return s.as_array();
}

Table curve_table(const std::vector<CurveRow>& rows) {
  Table t{{"m", "config", "kind", "value"}, {}, {true, false, false, true}};
  for (const auto& r : rows) {
    t.add_row({std::to_string(r.m), to_string(r.config), to_string(r.kind), format_double(r.value)});
  }
  return t;
}

Table montecarlo_table(const std::vector<MonteCarloResult>& rows) {
  Table t{{"m", "config", "N", "estimate", "stderr", "seed"}, {}, {true, false, true, true, true, true}};
  for (const auto& r : rows) {
    t.add_row({std::to_string(r.m), to_string(r.config), std::to_string(r.trials), format_double(r.estimate),
               format_double(r.stderr_), std::to_string(r.seed)});
  }
  return t;
}

Table heatmap_table(const std::vector<GridCell>& cells) {
  Table t{{"mu", "lambda", "verdict"}, {}, {true, true, false}};
  for (const auto& c : cells) t.add_row({format_rational(c.mu), format_rational(c.lambda), c.verdict()});
  return t;
}

Table region_table(const std::vector<RegionCell>& cells) {
  Table t{{"mu", "lambda", "inside"}, {}, {true, true, true}};
  for (const auto& c : cells) {
    t.add_row({format_rational(c.mu), format_rational(c.lambda), c.inside ? "true" : "false"});
  }
  return t;
}

Table domain_table(const std::vector<DomainCell>& cells) {
  Table t{{"l1", "l2", "l3", "label"}, {}, {true, true, true, false}};
  for (const auto& c : cells) {
    t.add_row({std::to_string(c.l1), std::to_string(c.l2), std::to_string(c.l3), c.label});
  }
  return t;
}

Table truth_table(const std::vector<TruthCell>& cells) {
  Table t{{"y_S", "y0", "y1", "config", "expected", "computed"}, {}, {true, false, false, false, false, false}};
  for (const auto& c : cells) {
    t.add_row({std::to_string(c.y_S), to_string(c.y0), to_string(c.y1), to_string(c.config), to_string(c.expected),
               to_string(c.computed)});
  }
  return t;
}

nlohmann::ordered_json make_manifest(const std::string& command, nlohmann::ordered_json parameters) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  nlohmann::ordered_json j;
  j["command"] = command;
  j["parameters"] = std::move(parameters);
  j["timestamp"] = stamp;
  return j;
}

}  // namespace wbc
