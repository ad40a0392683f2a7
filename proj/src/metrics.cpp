// SPDX-License-Identifier: Apache-2.0
#include "monobox/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <queue>

#include "monobox/error.hpp"
#include "monobox/refine.hpp"

namespace monobox {

namespace {

// Kronrod abscissae and weights; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<double(double)>& h, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const double fc = h(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = r * kXgk[j];
    const double s = h(c - dx) + h(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kron * r, std::abs((kron - gauss) * r)};
}

bool unsplittable(const Piece& p) {
  const double mid = 0.5 * (p.a + p.b);
  return !(mid > p.a && mid < p.b) || (p.b - p.a) <= 1e-15 * std::max(1.0, std::abs(p.a));
}

double atoms_pow(const Measure& m, const std::function<double(double)>& diff, int p, double lo,
                 double hi, bool closed) {
  double total = 0.0;
  for (const auto& at : m.atoms()) {
    const bool inside = closed ? (at.location >= lo && at.location <= hi)
                               : (at.location > lo && at.location < hi);
    if (inside) total += at.mass * ipow(std::abs(diff(at.location)), p);
  }
  return total;
}

// int_(lo,hi) |diff|^p dmu without atoms. `splits` must contain lo, hi and
// every density breakpoint in between.
double density_part(const std::function<double(double)>& diff, int p, const Measure& m,
                    const std::vector<double>& splits, const QuadratureSpec& q) {
  if (p < 1 || p > kMaxP) throw DomainError("p must be an integer in [1, 8]");
  std::function<double(double)> h;
  if (m.is_lebesgue()) {
    h = [&](double x) { return ipow(std::abs(diff(x)), p); };
  } else {
    h = [&](double x) { return m.density_at(x) * ipow(std::abs(diff(x)), p); };
  }
  return integrate_adaptive(h, splits, q).value;
}

void sort_unique(std::vector<double>& v) {
  std::ranges::sort(v);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& h,
                                    std::span<const double> splits, const QuadratureSpec& q) {
  if (splits.size() < 2) throw DomainError("integrate_adaptive: need at least two split points");
  if (!(q.tolerance > 0.0)) throw DomainError("integrate_adaptive: tolerance must be positive");
  std::priority_queue<Piece> heap;
  QuadratureResult r;
  double frozen_value = 0.0;
  double frozen_error = 0.0;
  for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
    if (!(splits[i] < splits[i + 1])) continue;
    const Piece p = gk15(h, splits[i], splits[i + 1]);
    r.value += p.value;
    r.error_estimate += p.error;
    heap.push(p);
  }
  r.subintervals = heap.size();
  while (r.error_estimate - frozen_error > q.tolerance && !heap.empty()) {
    if (r.subintervals >= q.max_subintervals) {
      r.converged = false;
      break;
    }
    const Piece top = heap.top();
    heap.pop();
    if (unsplittable(top)) {
      frozen_value += top.value;
      frozen_error += top.error;
      continue;
    }
    const double mid = 0.5 * (top.a + top.b);
    const Piece left = gk15(h, top.a, mid);
    const Piece right = gk15(h, mid, top.b);
    r.value += left.value + right.value - top.value;
    r.error_estimate += left.error + right.error - top.error;
    heap.push(left);
    heap.push(right);
    ++r.subintervals;
  }
  // Resum to drop the drift of the running totals.
  r.value = frozen_value;
  r.error_estimate = frozen_error;
  while (!heap.empty()) {
    r.value += heap.top().value;
    r.error_estimate += heap.top().error;
    heap.pop();
  }
  return r;
}

std::vector<double> split_set(const MonotoneFunction& f, const Measure& m,
                              std::span<const double> extra) {
  const auto& meta = f.metadata();
  std::vector<double> s{0.0, 1.0};
  s.insert(s.end(), meta.breakpoints.begin(), meta.breakpoints.end());
  s.insert(s.end(), meta.c1_singularities.begin(), meta.c1_singularities.end());
  s.insert(s.end(), meta.discontinuities.begin(), meta.discontinuities.end());
  const auto mb = m.breakpoints();
  s.insert(s.end(), mb.begin(), mb.end());
  s.insert(s.end(), extra.begin(), extra.end());
  std::erase_if(s, [](double x) { return !(x >= 0.0 && x <= 1.0); });
  sort_unique(s);
  return s;
}

double lp_error_pow(const PiecewiseLinearEstimator& e, const MonotoneFunction& f, int p,
                    const Measure& m, const QuadratureSpec& q) {
  const auto splits = split_set(f, m, e.breakpoints());
  auto diff = [&](double x) { return e(x) - f(x); };
  return density_part(diff, p, m, splits, q) + atoms_pow(m, diff, p, 0.0, 1.0, true);
}

double lp_error(const PiecewiseLinearEstimator& e, const MonotoneFunction& f, int p,
                const Measure& m, const QuadratureSpec& q) {
  return std::pow(lp_error_pow(e, f, p, m, q), 1.0 / p);
}

double lp_distance_pow(const MonotoneFunction& a, const MonotoneFunction& b, int p,
                       const Measure& m, const QuadratureSpec& q) {
  auto splits = split_set(a, m, split_set(b, m));
  auto diff = [&](double x) { return a(x) - b(x); };
  return density_part(diff, p, m, splits, q) + atoms_pow(m, diff, p, 0.0, 1.0, true);
}

double lp_distance(const MonotoneFunction& a, const MonotoneFunction& b, int p, const Measure& m,
                   const QuadratureSpec& q) {
  return std::pow(lp_distance_pow(a, b, p, m, q), 1.0 / p);
}

double chord_error_pow(const MonotoneFunction& f, double a, double fa, double b, double fb, int p,
                       const Measure& m, const QuadratureSpec& q) {
  if (!(a < b)) throw DomainError("chord_error_pow: empty interval");
  const double slope = (fb - fa) / (b - a);
  auto diff = [&](double x) { return fa + slope * (x - a) - f(x); };
  std::vector<double> splits{a, b};
  for (double x : split_set(f, m)) {
    if (x > a && x < b) splits.push_back(x);
  }
  sort_unique(splits);
  return density_part(diff, p, m, splits, q) + atoms_pow(m, diff, p, a, b, false);
}

double integral(const MonotoneFunction& f, const Measure& m, const QuadratureSpec& q) {
  const auto splits = split_set(f, m);
  auto value = [&](double x) { return f(x); };
  return density_part(value, 1, m, splits, q) + atoms_pow(m, value, 1, 0.0, 1.0, true);
}

AffineErrorCheck affine_error_bound_check(const Quadratic& f, double a, double b, int p) {
  if (!(a < b)) throw DomainError("affine_error_bound_check: empty interval");
  if (p < 1 || p > kMaxP) throw DomainError("p must be an integer in [1, 8]");
  const double fa = f(a);
  const double fb = f(b);
  const double slope = (fb - fa) / (b - a);
  auto h = [&](double x) { return ipow(std::abs(fa + slope * (x - a) - f(x)), p); };
  const std::array<double, 2> ends{a, b};
  QuadratureSpec spec;
  spec.tolerance = 1e-14;
  AffineErrorCheck r;
  r.error = integrate_adaptive(h, ends, spec).value;
  const double m2 = 2.0 * std::abs(f.c2);
  r.bound = ipow(1.5 * m2, p) * ipow(b - a, 2 * p + 1);
  r.holds = r.error <= r.bound + spec.tolerance;  // roundoff when f is affine
  return r;
}

double loglog_slope(std::span<const std::pair<double, double>> series) {
  if (series.size() < 4) throw DomainError("loglog_slope: need at least four points");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [n, err] : series) {
    if (!(n > 0.0 && err > 0.0) || !std::isfinite(n) || !std::isfinite(err))
      throw DomainError("loglog_slope: values must be positive and finite");
    xs.push_back(std::log(n));
    ys.push_back(-std::log(err));
  }
  const double k = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx <= 0.0) throw DomainError("loglog_slope: all n are equal");
  return sxy / sxx;
}

}  // namespace monobox
