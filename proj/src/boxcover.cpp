// SPDX-License-Identifier: Apache-2.0
#include "monobox/boxcover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "monobox/error.hpp"
#include "monobox/refine.hpp"

namespace monobox {

double width(const Box& b, const Measure& m) { return m.mass_open(b.x_minus, b.x_plus); }

double generalized_area(const Box& b, int p, const Measure& m) {
  if (!(b.x_minus < b.x_plus) || b.y_minus > b.y_plus) throw DomainError("malformed box");
  const double ap = ipow(b.y_plus - b.y_minus, p) * width(b, m);
  return std::pow(ap, 1.0 / p);
}

void BoxCover::validate() const {
  if (breakpoints.size() != bands.size() + 1 || bands.empty())
    throw DomainError("box cover: breakpoint and band counts disagree");
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
    throw DomainError("box cover: breakpoints must run from 0 to 1");
  for (std::size_t j = 0; j < bands.size(); ++j) {
    if (!(breakpoints[j] < breakpoints[j + 1]))
      throw DomainError("box cover: breakpoints must increase strictly");
    if (bands[j].first > bands[j].second) throw DomainError("box cover: inverted band");
  }
}

namespace {

double cover_sum_p(const BoxCover& c, int p, const Measure& m) {
  double total = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const Box b = c.box(j);
    total += ipow(b.y_plus - b.y_minus, p) * width(b, m);
  }
  return total;
}

// sup{x : f(x) <= level}. Bisection ends on adjacent doubles lo < hi with
// f(lo) <= level < f(hi); lo is the sup when the level is attained there.
double level_sup(const MonotoneFunction& f, double level) {
  if (f(1.0) <= level) return 1.0;
  if (f(0.0) > level) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) <= level ? lo : hi) = mid;
  }
  return f(lo) == level ? lo : hi;
}

std::pair<double, double> tight_band(const MonotoneFunction& f, double a, double b) {
  const double lo = f(std::nextafter(a, 2.0));
  const double hi = f(std::nextafter(b, -1.0));
  return {lo, std::max(lo, hi)};
}

}  // namespace

double cover_total(const BoxCover& c, int p, const Measure& m) {
  c.validate();
  return std::pow(cover_sum_p(c, p, m), 1.0 / p);
}

BoxCover constructive_cover(const MonotoneFunction& f, std::size_t n, int p, const Measure& m) {
  if (n < 1) throw DomainError("constructive_cover: n must be at least 1");
  if (p < 1 || p > kMaxP) throw DomainError("p must be an integer in [1, 8]");
  (void)m;
  BoxCover c;
  c.breakpoints.push_back(0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = level_sup(f, static_cast<double>(i) / static_cast<double>(n));
    if (x > c.breakpoints.back() && x < 1.0) c.breakpoints.push_back(x);
  }
  c.breakpoints.push_back(1.0);
  for (std::size_t j = 0; j + 1 < c.breakpoints.size(); ++j)
    c.bands.push_back(tight_band(f, c.breakpoints[j], c.breakpoints[j + 1]));
  return c;
}

BoxCover split_cover(const BoxCover& c, std::size_t n, int p, const Measure& m, double eps) {
  c.validate();
  if (n < 1) throw DomainError("split_cover: n must be at least 1");
  if (!(eps > 0.0)) throw DomainError("split_cover: eps must be positive");
  const double cap = ipow(eps, p);
  BoxCover out;
  out.breakpoints.push_back(0.0);
  for (std::size_t j = 0; j < c.size(); ++j) {
    const Box b = c.box(j);
    const double w = width(b, m);
    const double ap = ipow(b.y_plus - b.y_minus, p) * w;
    const double ratio = static_cast<double>(n) * ap / cap;
    std::size_t k = 1;
    if (w > 0.0 && ratio >= 1.0) {
      if (ratio > 1e9) throw ResourceError("split_cover: eps too small for this cover");
      k = static_cast<std::size_t>(std::floor(ratio)) + 1;
    }
    for (std::size_t q = 1; q < k; ++q) {
      const double x = m.conditional_quantile(b.x_minus, b.x_plus,
                                              static_cast<double>(q) / static_cast<double>(k));
      if (x > out.breakpoints.back() && x < b.x_plus) {
        out.breakpoints.push_back(x);
        out.bands.push_back(c.bands[j]);
      }
    }
    out.breakpoints.push_back(b.x_plus);
    out.bands.push_back(c.bands[j]);
  }
  return out;
}

std::pair<FunctionPtr, FunctionPtr> bracketing_pair(const BoxCover& c) {
  c.validate();
  const std::size_t t = c.size();
  std::vector<double> lower(t);
  std::vector<double> upper(t);
  for (std::size_t j = 0; j < t; ++j) {
    lower[j] = c.bands[j].first;
    upper[j] = c.bands[j].second;
  }
  std::vector<double> at_minus(t + 1);
  std::vector<double> at_plus(t + 1);
  at_minus[0] = at_plus[0] = lower[0];
  at_minus[t] = at_plus[t] = upper[t - 1];
  for (std::size_t j = 1; j < t; ++j) {
    if (upper[j - 1] <= lower[j]) {
      at_minus[j] = at_plus[j] = upper[j - 1];
    } else {
      at_minus[j] = lower[j];
      at_plus[j] = upper[j - 1];
    }
  }
  return {step_function("cover_minus", c.breakpoints, std::move(lower), std::move(at_minus)),
          step_function("cover_plus", c.breakpoints, std::move(upper), std::move(at_plus))};
}

std::vector<double> breakpoint_grid(const MonotoneFunction& f, const Measure& m,
                                    std::size_t points) {
  if (points < 2) throw DomainError("breakpoint_grid: need at least two points");
  std::vector<double> g;
  for (std::size_t i = 0; i < points; ++i)
    g.push_back(static_cast<double>(i) / static_cast<double>(points - 1));
  if (f.meterable()) {
    const auto& meta = f.metadata();
    g.insert(g.end(), meta.breakpoints.begin(), meta.breakpoints.end());
  }
  const auto mb = m.breakpoints();
  g.insert(g.end(), mb.begin(), mb.end());
  std::ranges::sort(g);
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

GridSample sample_on_grid(const MonotoneFunction& f, std::span<const double> grid) {
  if (grid.size() < 2 || grid.front() != 0.0 || grid.back() != 1.0)
    throw DomainError("sample_on_grid: grid must contain 0 and 1");
  GridSample s;
  s.grid.assign(grid.begin(), grid.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("sample_on_grid: grid not increasing");
    s.right_limit.push_back(grid[i] < 1.0 ? f(std::nextafter(grid[i], 2.0)) : f(1.0));
    s.left_limit.push_back(grid[i] > 0.0 ? f(std::nextafter(grid[i], -1.0)) : f(0.0));
  }
  return s;
}

std::string_view to_string(CoverMode mode) { return mode == CoverMode::Total ? "total" : "per_box"; }

CoverMode cover_mode_from_string(std::string_view name) {
  if (name == "total") return CoverMode::Total;
  if (name == "per_box") return CoverMode::PerBox;
  throw ConfigError("unknown cover mode '" + std::string(name) + "'");
}

std::optional<std::size_t> oracle_N(const GridSample& s, double eps, int p, const Measure& m,
                                    CoverMode mode) {
  const std::size_t g = s.grid.size();
  if (g > kMaxOracleGrid)
    throw ResourceError("oracle_N: grid of " + std::to_string(g) + " points exceeds " +
                        std::to_string(kMaxOracleGrid));
  if (g < 2) throw DomainError("oracle_N: grid too small");
  if (!(eps > 0.0)) throw DomainError("oracle_N: eps must be positive");
  if (p < 1 || p > kMaxP) throw DomainError("p must be an integer in [1, 8]");
  const double cap = ipow(eps, p) * (1.0 + 1e-12);

  // mu((g_i, g_j)) from prefix sums of open gaps and interior atoms.
  std::vector<double> gap_prefix(g, 0.0);
  std::vector<double> atom_prefix(g, 0.0);
  for (std::size_t i = 1; i < g; ++i) {
    gap_prefix[i] = gap_prefix[i - 1] + m.mass_open(s.grid[i - 1], s.grid[i]);
    atom_prefix[i] = atom_prefix[i - 1] + m.atom_mass(s.grid[i]);
  }
  auto area = [&](std::size_t i, std::size_t j) {
    const double mass = std::max(0.0, gap_prefix[j] - gap_prefix[i] + atom_prefix[j - 1] - atom_prefix[i]);
    const double h = std::max(0.0, s.left_limit[j] - s.right_limit[i]);
    return ipow(h, p) * mass;
  };

  if (mode == CoverMode::PerBox) {
    std::size_t i = 0;
    std::size_t count = 0;
    while (i + 1 < g) {
      std::size_t j = i + 1;
      if (area(i, j) > cap) return std::nullopt;
      while (j + 1 < g && area(i, j + 1) <= cap) ++j;
      i = j;
      ++count;
    }
    return count;
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(g, kInf);
  std::vector<double> cur(g, kInf);
  prev[0] = 0.0;
  for (std::size_t boxes = 1; boxes < g; ++boxes) {
    std::fill(cur.begin(), cur.end(), kInf);
    for (std::size_t j = boxes; j < g; ++j) {
      double best = kInf;
      for (std::size_t i = boxes - 1; i < j; ++i) {
        if (prev[i] == kInf) continue;
        best = std::min(best, prev[i] + area(i, j));
      }
      cur[j] = best;
    }
    if (cur[g - 1] <= cap) return boxes;
    std::swap(prev, cur);
  }
  return std::nullopt;
}

}  // namespace monobox
