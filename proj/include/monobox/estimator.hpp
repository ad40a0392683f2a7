// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace monobox {

/// Piecewise-affine interpolant of observed points (b_k, f(b_k)), with
/// b_0 = 0 < ... < b_t = 1.
class PiecewiseLinearEstimator {
 public:
  PiecewiseLinearEstimator(std::vector<double> xs, std::vector<double> ys);

  /// Linear interpolation; exact at every breakpoint.
  double operator()(double x) const;

  std::span<const double> breakpoints() const { return xs_; }
  std::span<const double> values() const { return ys_; }
  std::size_t pieces() const { return xs_.size() - 1; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

}  // namespace monobox
