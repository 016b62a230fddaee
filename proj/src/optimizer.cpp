#include "wbc/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "wbc/analytics.hpp"
#include "wbc/security.hpp"

namespace wbc {

namespace {

double value_for(AdversaryConfig cfg, const ProtocolParams& p) {
  return failure_probability(cfg, cfg == AdversaryConfig::NoFaulty ? BoundKind::Exact : BoundKind::Upper, p).value;
}

GridCell evaluate_cell(const GridSpec& g, int i, int j) {
  GridCell c{i, j, g.mu.at(i), g.lambda.at(j), CellStatus::NotFound, 0};
  if (!in_guaranteed_region(c.mu, c.lambda)) {
    c.status = CellStatus::OutsideRegion;
    return c;
  }
  for (int m : g.m_candidates) {
    if (worst_upper(ProtocolParams(c.mu, c.lambda, m), g.p_target) < g.p_target) {
      c.status = CellStatus::Found;
      c.m = m;
      break;
    }
  }
  return c;
}

}  // namespace

double worst_upper(const ProtocolParams& p, double stop_at) {
  double worst = 0.0;
  for (auto cfg : {AdversaryConfig::NoFaulty, AdversaryConfig::SenderFaulty, AdversaryConfig::R0Faulty}) {
    worst = std::max(worst, value_for(cfg, p));
    if (worst >= stop_at) break;
  }
  return worst;
}

std::optional<int> first_m_below(AdversaryConfig cfg, const Rational& mu, const Rational& lambda, double p_target,
                                 int m_lo, int m_hi) {
  if (m_lo < 1 || m_lo > m_hi) throw ParameterError("1 <= m_lo <= m_hi violated");
  for (int m = m_lo; m <= m_hi; ++m) {
    if (value_for(cfg, ProtocolParams(mu, lambda, m)) < p_target) return m;
  }
  return std::nullopt;
}

std::optional<int> m_min_upper(const Rational& mu, const Rational& lambda, double p_target, int m_lo, int m_hi,
                               bool allow_outside_region) {
  if (m_lo < 1 || m_lo > m_hi) throw ParameterError("1 <= m_lo <= m_hi violated");
  if (!allow_outside_region && !in_guaranteed_region(mu, lambda)) {
    throw ParameterError("(mu, lambda) outside the guaranteed region: need 2/9 < mu < 1/3 and (2+9mu)/(18mu) < lambda < 1");
  }
  for (int m = m_lo; m <= m_hi; ++m) {
    if (worst_upper(ProtocolParams(mu, lambda, m), p_target) < p_target) return m;
  }
  return std::nullopt;
}

std::optional<int> first_recrossing(const Rational& mu, const Rational& lambda, double p_target, int m_found,
                                    int horizon) {
  for (int m = m_found + 1; m <= m_found + horizon; ++m) {
    if (worst_upper(ProtocolParams(mu, lambda, m), p_target) >= p_target) return m;
  }
  return std::nullopt;
}

Rational GridAxis::at(int i) const {
  if (i < 0 || i >= steps) throw ParameterError("grid index out of range");
  if (steps == 1) return lo;
  return lo + (hi - lo) * Rational(i, steps - 1);
}

void GridSpec::validate() const {
  for (const GridAxis* a : {&mu, &lambda}) {
    if (a->steps < 1) throw ParameterError("grid axis needs at least one point");
    if (a->steps > 1 && !(a->lo < a->hi)) throw ParameterError("grid axis needs lo < hi");
  }
  if (m_candidates.empty()) throw ParameterError("m candidate list is empty");
  for (std::size_t k = 0; k < m_candidates.size(); ++k) {
    if (m_candidates[k] < 1) throw ParameterError("m candidates must be >= 1");
    if (k > 0 && m_candidates[k] <= m_candidates[k - 1]) throw ParameterError("m candidates must be ascending");
  }
  if (!(p_target > 0.0 && p_target <= 1.0)) throw ParameterError("0 < p_target <= 1 violated");
  if (jobs < 1) throw ParameterError("jobs >= 1 violated");
}

GridSpec fine_grid_default() {
  GridSpec g{{parse_rational("0.262"), parse_rational("0.282"), 11},
             {parse_rational("0.92"), parse_rational("0.96"), 11},
             {},
             0.05,
             1};
  for (int m = 270; m <= 300; ++m) g.m_candidates.push_back(m);
  return g;
}

GridSpec rough_grid_default() {
  return GridSpec{{parse_rational("0.25"), parse_rational("0.30"), 11},
                  {parse_rational("0.93"), parse_rational("0.96"), 13},
                  {290, 300},
                  0.05,
                  1};
}

std::string GridCell::verdict() const {
  switch (status) {
    case CellStatus::OutsideRegion: return "OUTSIDE";
    case CellStatus::NotFound: return "NOT_FOUND";
    case CellStatus::Found: return std::to_string(m);
  }
  return "?";
}

std::vector<GridCell> grid_search(const GridSpec& g) {
  g.validate();
  const int n = g.mu.steps * g.lambda.steps;
  std::vector<GridCell> cells(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < n; k = next++) {
      cells[static_cast<std::size_t>(k)] = evaluate_cell(g, k / g.lambda.steps, k % g.lambda.steps);
    }
  };
  const int workers = std::min(g.jobs, n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  return cells;
}

}  // namespace wbc
