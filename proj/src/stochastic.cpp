// SPDX-License-Identifier: Apache-2.0
#include "monobox/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include "monobox/error.hpp"
#include "monobox/rng.hpp"

namespace monobox {

IntegralPlan plan_integral(FunctionOracle& f, double eps, const Measure& m, TieBreak tie,
                           std::size_t max_iters) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  CoverState state(f, 1, m, tie);
  auto xi = [&state] { return 0.5 * std::sqrt(state.sum_squared_areas()); };
  IntegralPlan plan;
  auto record = [&] {
    StepRecord r = state.last_step();
    r.certificate = xi();
    plan.trace.records.push_back(r);
  };
  record();
  plan.trace.stop = StopReason::CertificateReached;
  while (xi() > eps) {
    if (state.boxes() >= max_iters) {
      plan.trace.stop = StopReason::MaxIterations;
      break;
    }
    state.step(SelectionPolicy::LargestArea);
    record();
  }
  plan.trace.tau = state.boxes();
  plan.certificate = xi();
  plan.evaluations = state.evaluations();
  const auto boxes = state.boxes_in_order();
  plan.breakpoints.push_back(0.0);
  plan.values.push_back(boxes.front().f_left);
  for (const auto& b : boxes) {
    plan.breakpoints.push_back(b.right);
    plan.values.push_back(b.f_right);
    plan.stratum_mass.push_back(b.width);
  }
  for (std::size_t k = 0; k < plan.breakpoints.size(); ++k)
    plan.atom_term += m.atom_mass(plan.breakpoints[k]) * plan.values[k];
  return plan;
}

IntegralRun sample_integral(const IntegralPlan& plan, FunctionOracle& f, const Measure& m,
                            std::uint64_t seed) {
  IntegralRun run;
  run.plan = plan;
  run.seed = seed;
  double estimate = plan.atom_term;
  for (std::size_t k = 0; k < plan.stratum_mass.size(); ++k) {
    const double w = plan.stratum_mass[k];
    if (w <= 0.0) continue;
    CounterRng rng(seed, k);
    const double x = m.sample_conditional(plan.breakpoints[k], plan.breakpoints[k + 1], rng);
    const double v = f.evaluate(x);
    run.samples.push_back(x);
    run.sample_values.push_back(v);
    run.strata.push_back(k);
    estimate += w * v;
  }
  run.estimate = std::clamp(estimate, 0.0, 1.0);
  run.evaluations = plan.evaluations + run.samples.size();
  return run;
}

IntegralRun run_integral(FunctionOracle& f, double eps, const Measure& m, std::uint64_t seed,
                         TieBreak tie) {
  const IntegralPlan plan = plan_integral(f, eps, m, tie);
  return sample_integral(plan, f, m, seed);
}

double deterministic_integral(const PiecewiseLinearEstimator& e, const Measure& m) {
  const auto xs = e.breakpoints();
  const auto ys = e.values();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double x0 = xs[i];
    const double x1 = xs[i + 1];
    const double slope = (ys[i + 1] - ys[i]) / (x1 - x0);
    for (const auto& piece : m.pieces()) {
      const double lo = std::max(x0, piece.left);
      const double hi = std::min(x1, piece.right);
      if (!(hi > lo) || piece.density == 0.0) continue;
      const double mid = 0.5 * (lo + hi);
      total += piece.density * (hi - lo) * (ys[i] + slope * (mid - x0));
    }
  }
  for (const auto& at : m.atoms()) total += at.mass * e(at.location);
  return total;
}

}  // namespace monobox
