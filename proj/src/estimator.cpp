// SPDX-License-Identifier: Apache-2.0
#include "monobox/estimator.hpp"

#include <algorithm>

#include "monobox/error.hpp"

namespace monobox {

PiecewiseLinearEstimator::PiecewiseLinearEstimator(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size())
    throw DomainError("estimator needs at least two points and matching values");
  if (xs_.front() != 0.0 || xs_.back() != 1.0)
    throw DomainError("estimator breakpoints must span [0,1]");
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (!(xs_[i] > xs_[i - 1])) throw DomainError("estimator breakpoints must increase strictly");
    if (ys_[i] < ys_[i - 1]) throw DomainError("estimator values must be non-decreasing");
  }
}

double PiecewiseLinearEstimator::operator()(double x) const {
  if (x <= 0.0) return ys_.front();
  if (x >= 1.0) return ys_.back();
  const auto k = static_cast<std::size_t>(std::ranges::upper_bound(xs_, x) - xs_.begin());
  const double x0 = xs_[k - 1];
  const double x1 = xs_[k];
  const double y0 = ys_[k - 1];
  const double y1 = ys_[k];
  if (x == x0) return y0;
  return (y1 - y0) / (x1 - x0) * (x - x0) + y0;
}

}  // namespace monobox
