// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "monobox/estimator.hpp"
#include "monobox/funcs.hpp"
#include "monobox/measure.hpp"

namespace monobox {

/// Global adaptive Gauss-Kronrod (7/15) settings. The tolerance is absolute
/// and applies to the integral of |.|^p, not to its p-th root.
struct QuadratureSpec {
  double tolerance = 1e-11;
  std::size_t max_subintervals = std::size_t{1} << 20;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t subintervals = 0;
  bool converged = true;
};

/// Integrates h over [splits.front(), splits.back()], starting from the
/// pieces between consecutive split points and always bisecting the piece
/// with the largest error estimate. h is only evaluated strictly inside each
/// piece, so jumps at split points are harmless.
QuadratureResult integrate_adaptive(const std::function<double(double)>& h,
                                    std::span<const double> splits, const QuadratureSpec& q = {});

/// Breakpoints, C1-singularities and discontinuities of f, the measure's
/// breakpoints, `extra`, 0 and 1; sorted and deduplicated. Throws Unmeterable
/// when f has no metadata.
std::vector<double> split_set(const MonotoneFunction& f, const Measure& m,
                              std::span<const double> extra = {});

/// int |e - f|^p dmu, atoms included.
double lp_error_pow(const PiecewiseLinearEstimator& e, const MonotoneFunction& f, int p,
                    const Measure& m, const QuadratureSpec& q = {});
/// (int |e - f|^p dmu)^(1/p).
double lp_error(const PiecewiseLinearEstimator& e, const MonotoneFunction& f, int p,
                const Measure& m, const QuadratureSpec& q = {});

/// Same for two meterable functions.
double lp_distance_pow(const MonotoneFunction& a, const MonotoneFunction& b, int p,
                       const Measure& m, const QuadratureSpec& q = {});
double lp_distance(const MonotoneFunction& a, const MonotoneFunction& b, int p, const Measure& m,
                   const QuadratureSpec& q = {});

/// Contribution of one estimator piece: int over (a,b) of |chord - f|^p dmu,
/// where the chord joins (a, fa) and (b, fb). Atoms strictly inside count;
/// atoms at a or b do not, since the estimator is exact there.
double chord_error_pow(const MonotoneFunction& f, double a, double fa, double b, double fb, int p,
                       const Measure& m, const QuadratureSpec& q = {});

/// int f dmu.
double integral(const MonotoneFunction& f, const Measure& m, const QuadratureSpec& q = {});

/// c0 + c1 x + c2 x^2.
struct Quadratic {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double operator()(double x) const { return c0 + x * (c1 + x * c2); }
};

struct AffineErrorCheck {
  double error = 0.0;  // int_a^b |chord - f|^p dx, by quadrature
  double bound = 0.0;  // (3M/2)^p (b-a)^(2p+1) with M = |f''|
  bool holds = true;
};

/// Compares the chord interpolation error of a quadratic piece on [a,b]
/// against (3M/2)^p (b-a)^(2p+1).
AffineErrorCheck affine_error_bound_check(const Quadratic& f, double a, double b, int p);

/// Least-squares slope of log(1/err) against log(n). Needs at least four
/// points, all positive.
double loglog_slope(std::span<const std::pair<double, double>> series);

}  // namespace monobox
