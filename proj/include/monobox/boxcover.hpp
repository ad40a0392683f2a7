// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "monobox/funcs.hpp"
#include "monobox/measure.hpp"

namespace monobox {

/// [x_minus, x_plus] x [y_minus, y_plus].
struct Box {
  double x_minus = 0.0;
  double x_plus = 1.0;
  double y_minus = 0.0;
  double y_plus = 1.0;
};

/// A_p(B) = ((y+ - y-)^p mu((x-, x+)))^(1/p).
double generalized_area(const Box& b, int p, const Measure& m);

/// mu((x-, x+)).
double width(const Box& b, const Measure& m);

/// Adjacent boxes sharing breakpoints c_0 = 0 < ... < c_t = 1. Box j spans
/// (c_j, c_{j+1}) with value band bands[j].
struct BoxCover {
  std::vector<double> breakpoints;
  std::vector<std::pair<double, double>> bands;

  std::size_t size() const { return bands.size(); }
  Box box(std::size_t j) const {
    return {breakpoints[j], breakpoints[j + 1], bands[j].first, bands[j].second};
  }
  /// Throws DomainError when the breakpoints or bands are malformed.
  void validate() const;
};

/// (sum_j A_p(B_j)^p)^(1/p).
double cover_total(const BoxCover& c, int p, const Measure& m);

/// Level-set cover with breakpoints x_i = sup{x : f(x) <= i/n} located by
/// bisection. Zero-width boxes are dropped and each band is tightened to the
/// values of f just inside its piece, so the result has at most n boxes and
/// cover_total <= 1/n.
BoxCover constructive_cover(const MonotoneFunction& f, std::size_t n, int p, const Measure& m);

/// Splits box j into k_j = floor(n A_p(B_j)^p / eps^p) + 1 pieces at its
/// conditional quantiles, keeping the band. When cover_total(c) <= eps and
/// n >= c.size(), the result has at most 2n boxes, each of area at most
/// eps / n^(1/p). Quantile ties at atoms are merged.
BoxCover split_cover(const BoxCover& c, std::size_t n, int p, const Measure& m, double eps);

/// Step functions (f-, f+) taking the lower and upper band on each open
/// piece. At a breakpoint both take the same value whenever adjacent bands do
/// not overlap.
std::pair<FunctionPtr, FunctionPtr> bracketing_pair(const BoxCover& c);

/// f sampled on a grid together with its one-sided limits, approximated by
/// the neighbouring doubles.
struct GridSample {
  std::vector<double> grid;
  std::vector<double> right_limit;  // f(g_i+)
  std::vector<double> left_limit;   // f(g_i-)
};

/// Uniform grid of `points` nodes merged with f's breakpoints (when f has
/// metadata) and the measure's breakpoints.
std::vector<double> breakpoint_grid(const MonotoneFunction& f, const Measure& m,
                                    std::size_t points = 257);

GridSample sample_on_grid(const MonotoneFunction& f, std::span<const double> grid);

enum class CoverMode { Total, PerBox };
std::string_view to_string(CoverMode mode);
CoverMode cover_mode_from_string(std::string_view name);

inline constexpr std::size_t kMaxOracleGrid = 1025;

/// Minimum number of boxes with breakpoints on the grid such that
/// sum A_p^p <= eps^p (Total) or every A_p <= eps (PerBox), each box using
/// the tightest band of f on its open piece. nullopt when no grid cover
/// qualifies. Throws ResourceError above kMaxOracleGrid grid points.
std::optional<std::size_t> oracle_N(const GridSample& s, double eps, int p, const Measure& m,
                                    CoverMode mode);

}  // namespace monobox
