// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monobox/estimator.hpp"
#include "monobox/funcs.hpp"
#include "monobox/measure.hpp"
#include "monobox/refine.hpp"

namespace monobox {

/// Deterministic phase of the stochastic integrator: p = 1 area refinement
/// stopped once 1/2 sqrt(sum a_k^2) <= eps. Identical for every seed.
struct IntegralPlan {
  RunTrace trace;
  std::vector<double> breakpoints;  // b_0 = 0 < ... < b_tau = 1
  std::vector<double> values;       // f(b_k)
  std::vector<double> stratum_mass;  // mu((b_{k-1}, b_k)), one per box
  double certificate = 0.0;
  double atom_term = 0.0;  // sum_k mu({b_k}) f(b_k)
  std::size_t evaluations = 0;
};

struct IntegralRun {
  IntegralPlan plan;
  std::uint64_t seed = 0;
  std::vector<double> samples;         // X_k, one per positive-mass stratum
  std::vector<double> sample_values;   // f(X_k)
  std::vector<std::size_t> strata;     // box index of each sample
  double estimate = 0.0;
  std::size_t evaluations = 0;  // tau + 1 + |S|
};

IntegralPlan plan_integral(FunctionOracle& f, double eps, const Measure& m,
                           TieBreak tie = TieBreak::Rightmost,
                           std::size_t max_iters = std::size_t{1} << 22);

/// One stratified draw per positive-mass stratum of `plan`. Stratum k uses
/// the independent stream CounterRng(seed, k).
IntegralRun sample_integral(const IntegralPlan& plan, FunctionOracle& f, const Measure& m,
                            std::uint64_t seed);

/// plan_integral followed by sample_integral on the same oracle.
IntegralRun run_integral(FunctionOracle& f, double eps, const Measure& m, std::uint64_t seed,
                         TieBreak tie = TieBreak::Rightmost);

/// Exact int e dmu for a piecewise-affine estimator.
double deterministic_integral(const PiecewiseLinearEstimator& e, const Measure& m);

}  // namespace monobox
