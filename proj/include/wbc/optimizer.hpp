#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wbc/protocol.hpp"
#include "wbc/rational.hpp"

namespace wbc {

/// max(no-faulty exact, S upper, R0 upper). Evaluation stops early once a term reaches
/// `stop_at`, in which case the returned value is only known to be >= stop_at.
double worst_upper(const ProtocolParams& p, double stop_at = 2.0);

/// Smallest m in [m_lo, m_hi] whose value for cfg (exact for no-faulty, upper otherwise) is
/// below p_target.
std::optional<int> first_m_below(AdversaryConfig cfg, const Rational& mu, const Rational& lambda, double p_target,
                                 int m_lo, int m_hi);

/// Smallest m in [m_lo, m_hi] with worst_upper < p_target. Throws ParameterError outside the
/// guaranteed region unless allow_outside_region is set.
std::optional<int> m_min_upper(const Rational& mu, const Rational& lambda, double p_target, int m_lo, int m_hi,
                               bool allow_outside_region = false);

/// First m in (m_found, m_found + horizon] where worst_upper climbs back to >= p_target.
std::optional<int> first_recrossing(const Rational& mu, const Rational& lambda, double p_target, int m_found,
                                    int horizon = 20);

struct GridAxis {
  Rational lo;
  Rational hi;
  int steps;

  /// lo + i (hi - lo) / (steps - 1), exactly.
  Rational at(int i) const;
};

struct GridSpec {
  GridAxis mu;
  GridAxis lambda;
  std::vector<int> m_candidates;
  double p_target = 0.05;
  int jobs = 1;

  /// Throws ParameterError for empty or degenerate ranges, unsorted candidates, or a target
  /// outside (0, 1].
  void validate() const;
};

/// Around the best cell: mu 0.262..0.282 (step 0.002), lambda 0.92..0.96 (step 0.004), m = 270..300.
GridSpec fine_grid_default();
/// Wide view: mu 0.25..0.30 (step 0.005), lambda 0.93..0.96 (step 0.0025), m in {290, 300}.
/// Outside lambda ~ 0.935..0.955 no cell reaches 300.
GridSpec rough_grid_default();

enum class CellStatus : std::uint8_t { OutsideRegion, NotFound, Found };

struct GridCell {
  int i;  // mu index
  int j;  // lambda index
  Rational mu;
  Rational lambda;
  CellStatus status;
  int m;  // valid when status == Found

  /// "OUTSIDE", "NOT_FOUND" or the decimal m.
  std::string verdict() const;
};

/// Cells in row-major order (mu outer, lambda inner) regardless of jobs.
std::vector<GridCell> grid_search(const GridSpec& g);

}  // namespace wbc
