// SPDX-License-Identifier: Apache-2.0
// Acceptance harness: one PASS/FAIL line per criterion.
//   monobox_acceptance [--criterion N]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monobox/boxcover.hpp"
#include "monobox/error.hpp"
#include "monobox/metrics.hpp"
#include "monobox/refine.hpp"
#include "monobox/rng.hpp"
#include "monobox/stochastic.hpp"

using namespace monobox;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

const Measure& lebesgue() {
  static const Measure m = Measure::lebesgue();
  return m;
}

const Measure& two_piece() {
  static const Measure m({{0.0, 0.5, 1.5}, {0.5, 1.0, 0.5}}, {});
  return m;
}

FunctionPtr ramp() {
  return piecewise("ramp", {{0.0, PieceKind::Constant, {0.1}},
                            {0.25, PieceKind::Affine, {-0.15, 1.0}},
                            {0.75, PieceKind::Constant, {0.9}}});
}

std::vector<FunctionPtr> sweep_suite() {
  return {catalog("square"), catalog("power_tenth"), catalog("step_03"),
          catalog("fig2_composite"), catalog("identity"), catalog("worst_case(2)")};
}

std::vector<FunctionPtr> piecewise_suite() {
  return {catalog("identity"), catalog("step_03"), catalog("constant(0.5)"), ramp()};
}

// Per-t certificate and measured error^p of a GreedyBox run up to t_max
// boxes. The error is kept per box and updated only where a split happens.
struct SweepTrace {
  std::vector<double> xi;
  std::vector<double> err_p;
  bool truncated = false;
};

SweepTrace sweep_run(const FunctionPtr& f, int p, const Measure& m, std::size_t t_max) {
  FunctionOracle oracle(f);
  CoverState s(oracle, p, m);
  QuadratureSpec q;
  q.tolerance = 1e-13;
  std::map<double, double> box_err;  // keyed by left endpoint
  auto piece = [&](double a, double fa, double b, double fb) {
    return chord_error_pow(*f, a, fa, b, fb, p, m, q);
  };
  const auto first = s.boxes_in_order().front();
  box_err[0.0] = piece(0.0, first.f_left, 1.0, first.f_right);
  double total = box_err[0.0];
  SweepTrace tr;
  tr.xi.push_back(s.certificate());
  tr.err_p.push_back(total);
  while (s.boxes() < t_max) {
    if (s.top_area() <= 0.0) break;
    try {
      s.step(SelectionPolicy::LargestArea);
    } catch (const ResolutionExhausted&) {
      tr.truncated = true;
      break;
    }
    const auto& rec = s.last_step();
    const double fx = oracle.reference()(rec.x_new);
    const double fa = oracle.reference()(rec.split_left);
    const double fb = oracle.reference()(rec.split_right);
    total -= box_err[rec.split_left];
    const double left = piece(rec.split_left, fa, rec.x_new, fx);
    const double right = piece(rec.x_new, fx, rec.split_right, fb);
    box_err[rec.split_left] = left;
    box_err[rec.x_new] = right;
    total += left + right;
    tr.xi.push_back(s.certificate());
    tr.err_p.push_back(std::max(0.0, total));
  }
  return tr;
}

struct SweepCase {
  std::string fname;
  int p;
  bool leb;
  SweepTrace trace;
};

const std::vector<SweepCase>& sweep_cases() {
  static const std::vector<SweepCase> cases = [] {
    std::vector<SweepCase> out;
    for (const auto& f : sweep_suite()) {
      for (int p : {1, 2, 3}) {
        for (bool leb : {true, false}) {
          out.push_back({f->name(), p, leb, sweep_run(f, p, leb ? lebesgue() : two_piece(), 512)});
        }
      }
    }
    return out;
  }();
  return cases;
}

Verdict ac1() {
  const auto t0 = Clock::now();
  const auto& cases = sweep_cases();
  Verdict v;
  double worst = -1e300;
  std::size_t checks = 0;
  for (const auto& c : cases) {
    for (std::size_t i = 0; i < c.trace.xi.size(); ++i) {
      ++checks;
      const double slack = c.trace.err_p[i] - c.trace.xi[i];
      worst = std::max(worst, slack);
      if (slack > 1e-9 && v.pass) {
        v.pass = false;
        v.detail = fmt("%s p=%d %s t=%zu err^p=%.3e xi=%.3e; ", c.fname.c_str(), c.p,
                       c.leb ? "lebesgue" : "two_piece", i + 1, c.trace.err_p[i], c.trace.xi[i]);
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60.0) v.pass = false;
  v.detail += fmt("%zu (f,p,mu,t) checks, max(err^p - xi) = %.3e, %.1f s", checks, worst, secs);
  return v;
}

Verdict ac2() {
  const auto& cases = sweep_cases();
  Verdict v;
  double worst = -1e300;
  std::size_t checks = 0;
  for (const auto& c : cases) {
    if (!c.leb) continue;
    for (std::size_t i = 0; i < c.trace.xi.size(); ++i) {
      ++checks;
      const double slack = c.trace.err_p[i] - c.trace.xi[i] / (1.0 + c.p);
      worst = std::max(worst, slack);
      if (slack > 1e-9 && v.pass) {
        v.pass = false;
        v.detail = fmt("%s p=%d t=%zu; ", c.fname.c_str(), c.p, i + 1);
      }
    }
  }
  v.detail += fmt("%zu checks, max(err^p - xi/(1+p)) = %.3e", checks, worst);
  return v;
}

Verdict ac3() {
  const auto& cases = sweep_cases();
  Verdict v;
  std::size_t checks = 0;
  double worst = -1e300;
  for (const auto& c : cases) {
    const auto& xi = c.trace.xi;
    for (std::size_t t = 1; 2 * t <= xi.size(); ++t) {
      ++checks;
      const double slack = xi[2 * t - 1] - xi[t - 1] / 2.0;
      worst = std::max(worst, slack);
      if (slack > 1e-12 && v.pass) {
        v.pass = false;
        v.detail = fmt("%s p=%d %s t=%zu; ", c.fname.c_str(), c.p, c.leb ? "lebesgue" : "two_piece", t);
      }
    }
  }
  v.detail += fmt("%zu checks, max(xi_2t - xi_t/2) = %.3e", checks, worst);
  return v;
}

// tau_eps and the grid oracle for the piecewise suite, shared by 4 and 5.
struct ComplexityRow {
  std::string fname;
  int p;
  double eps;
  std::size_t tau;
  std::optional<std::size_t> n_eps;
  std::optional<std::size_t> n_2eps;
  double sandwich;  // max(||f_hat - g-||_p, ||f_hat - g+||_p)
};

const std::vector<ComplexityRow>& complexity_rows() {
  static const std::vector<ComplexityRow> rows = [] {
    std::vector<ComplexityRow> out;
    const auto& m = lebesgue();
    for (const auto& f : piecewise_suite()) {
      const auto sample = sample_on_grid(*f, breakpoint_grid(*f, m, 257));
      for (int p : {1, 2}) {
        for (int k = 2; k <= 8; ++k) {
          const double eps = std::ldexp(1.0, -k);
          FunctionOracle oracle(f);
          const auto r = run(oracle, eps, p, m);
          auto [g_minus, g_plus] = surrounding_pair(r.queries, *f);
          const double sandwich = std::max(lp_error(r.estimator, *g_minus, p, m),
                                           lp_error(r.estimator, *g_plus, p, m));
          out.push_back({f->name(), p, eps, r.trace.tau,
                         oracle_N(sample, eps, p, m, CoverMode::Total),
                         oracle_N(sample, 2.0 * eps, p, m, CoverMode::Total), sandwich});
        }
      }
    }
    return out;
  }();
  return rows;
}

Verdict ac4() {
  Verdict v;
  double tightest = 0.0;
  for (const auto& r : complexity_rows()) {
    if (!r.n_eps) {
      v.pass = false;
      v.detail += fmt("%s eps=%g: grid oracle found no cover; ", r.fname.c_str(), r.eps);
      continue;
    }
    const double l = std::log2(2.0 / (r.eps * r.eps)) + 2.0;
    const double bound = 32.0 * r.p * r.p * l * l * static_cast<double>(*r.n_eps);
    tightest = std::max(tightest, static_cast<double>(r.tau) / bound);
    if (static_cast<double>(r.tau) > bound) {
      v.pass = false;
      v.detail += fmt("%s p=%d eps=%g tau=%zu bound=%.0f; ", r.fname.c_str(), r.p, r.eps, r.tau, bound);
    }
  }
  v.detail += fmt("%zu rows, max tau/bound = %.4f", complexity_rows().size(), tightest);
  return v;
}

Verdict ac5() {
  Verdict v;
  long margin = 1L << 30;
  double sandwich = 0.0;
  for (const auto& r : complexity_rows()) {
    if (!r.n_2eps) {
      v.pass = false;
      v.detail += fmt("%s eps=%g: grid oracle found no cover at 2eps; ", r.fname.c_str(), r.eps);
      continue;
    }
    const long gap = static_cast<long>(r.tau) - (static_cast<long>(*r.n_2eps) - 1);
    margin = std::min(margin, gap);
    if (gap < 0) {
      v.pass = false;
      v.detail += fmt("%s p=%d eps=%g tau=%zu N(2eps)=%zu; ", r.fname.c_str(), r.p, r.eps, r.tau,
                      *r.n_2eps);
    }
    sandwich = std::max(sandwich, r.sandwich / r.eps);
    if (r.sandwich > r.eps + 1e-12) {
      v.pass = false;
      v.detail += fmt("%s p=%d eps=%g surrounding pair gap %.3e; ", r.fname.c_str(), r.p, r.eps,
                      r.sandwich);
    }
  }
  v.detail += fmt("min tau - (N(2eps) - 1) = %ld, max ||f_hat - g+-|| / eps = %.4f", margin, sandwich);
  return v;
}

Verdict ac6() {
  FunctionOracle f(worst_case_f(OscillatorParams(2)));
  const auto r = run_fixed_budget(f, 40, 1, lebesgue(), SelectionPolicy::LargestArea);
  const double err = lp_error(r.estimator, f.reference(), 1, lebesgue());
  const double want = 1.0 / 3072.0;
  Verdict v;
  v.pass = std::abs(err - want) <= 1e-6;
  v.detail = fmt("L1 error %.12e, 1/3072 = %.12e, |diff| = %.2e", err, want, std::abs(err - want));
  return v;
}

Verdict ac7() {
  auto error_after_12 = [](SelectionPolicy policy, TieBreak tie) {
    FunctionOracle f(catalog("fig2_composite"));
    const auto r = run_fixed_budget(f, 12, 1, lebesgue(), policy, tie);
    return lp_error(r.estimator, f.reference(), 1, lebesgue());
  };
  const double greedy = error_after_12(SelectionPolicy::LargestArea, TieBreak::Rightmost);
  const double trap = error_after_12(SelectionPolicy::LargestWidth, TieBreak::Rightmost);
  const double trap_left = error_after_12(SelectionPolicy::LargestWidth, TieBreak::Leftmost);
  Verdict v;
  v.pass = greedy >= 0.003 && greedy <= 0.007 && trap >= 0.012 && trap <= 0.018;
  v.detail = fmt("GreedyBox %.6f in [0.003,0.007]; online trapezoid %.6f in [0.012,0.018] "
                 "(leftmost ties: %.6f)", greedy, trap, trap_left);
  return v;
}

Verdict ac8() {
  Verdict v;
  std::size_t checks = 0;
  double worst_ratio = 0.0;
  auto suite = sweep_suite();
  suite.push_back(ramp());
  suite.push_back(catalog("constant(0.5)"));
  for (const auto& f : suite) {
    for (int p : {1, 2, 3}) {
      for (const Measure* m : {&lebesgue(), &two_piece()}) {
        for (std::size_t n = 1; n <= 256; n *= 2) {
          const auto c = constructive_cover(*f, n, p, *m);
          const double eps = std::max(cover_total(c, p, *m), 1e-300);
          const auto s = split_cover(c, n, p, *m, eps);
          const double cap = eps / std::pow(static_cast<double>(n), 1.0 / p);
          double max_area = 0.0;
          for (std::size_t j = 0; j < s.size(); ++j)
            max_area = std::max(max_area, generalized_area(s.box(j), p, *m));
          ++checks;
          if (cap > 1e-300) worst_ratio = std::max(worst_ratio, max_area / cap);
          if (s.size() > 2 * n || max_area > cap * (1.0 + 1e-12)) {
            v.pass = false;
            v.detail += fmt("%s p=%d n=%zu count=%zu area=%.3e cap=%.3e; ", f->name().c_str(), p, n,
                            s.size(), max_area, cap);
          }
        }
      }
    }
  }
  v.detail += fmt("%zu covers, max area / (eps/n^(1/p)) = %.6f", checks, worst_ratio);
  return v;
}

Verdict ac9() {
  Verdict v;
  CounterRng rng(9, 9);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Quadratic q{rng.uniform_open() - 0.5, 4.0 * rng.uniform_open() - 2.0,
                      8.0 * rng.uniform_open() - 4.0};
    const double a = rng.uniform_open() * 0.9;
    const double b = a + (1.0 - a) * (0.01 + 0.99 * rng.uniform_open());
    for (int p : {1, 2}) {
      const auto r = affine_error_bound_check(q, a, b, p);
      if (r.bound > 0.0) worst = std::max(worst, r.error / r.bound);
      if (!r.holds) {
        v.pass = false;
        v.detail += fmt("case %d p=%d error %.3e bound %.3e; ", i, p, r.error, r.bound);
      }
    }
  }
  v.detail += fmt("200 cases, max error/bound = %.4f", worst);
  return v;
}

Verdict ac10() {
  const auto t0 = Clock::now();
  Verdict v;
  constexpr int kSeeds = 10000;
  for (const char* name : {"identity", "fig2_composite"}) {
    const auto f = catalog(name);
    const double exact = integral(*f, lebesgue());
    for (double eps : {0.05, 0.02}) {
      FunctionOracle oracle(f);
      const auto plan = plan_integral(oracle, eps, lebesgue());
      double sum = 0.0;
      double sum_sq = 0.0;
      double abs_err = 0.0;
      for (int s = 0; s < kSeeds; ++s) {
        FunctionOracle draw(f);
        const double est = sample_integral(plan, draw, lebesgue(), static_cast<std::uint64_t>(s)).estimate;
        sum += est;
        sum_sq += est * est;
        abs_err += std::abs(est - exact);
      }
      const double mean = sum / kSeeds;
      const double se = std::sqrt(std::max(0.0, sum_sq / kSeeds - mean * mean) / kSeeds);
      const double mae = abs_err / kSeeds;
      const bool ok = mae <= plan.certificate && std::abs(mean - exact) <= 3.0 * se;
      v.pass = v.pass && ok;
      v.detail += fmt("%s eps=%.2f tau=%zu mean|I_hat-I|=%.3e xi=%.3e bias=%.1fse; ", name, eps,
                      plan.trace.tau, mae, plan.certificate, se > 0 ? std::abs(mean - exact) / se : 0.0);
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 120.0) v.pass = false;
  v.detail += fmt("%.1f s", secs);
  return v;
}

Verdict ac11() {
  Verdict v;
  std::vector<std::pair<double, double>> trap;
  for (int k = 4; k <= 10; ++k) {
    const std::size_t t = std::size_t{1} << k;
    FunctionOracle f(catalog("square"));
    const auto r = run_fixed_budget(f, t, 1, lebesgue(), SelectionPolicy::LargestWidth);
    trap.emplace_back(static_cast<double>(t + 1), lp_error(r.estimator, f.reference(), 1, lebesgue()));
  }
  const double trap_slope = loglog_slope(trap);

  std::size_t evals_needed = 0;
  for (std::size_t t = 1; t < 100 && evals_needed == 0; ++t) {
    FunctionOracle f(catalog("step_03"));
    const auto r = run_fixed_budget(f, t, 1, lebesgue(), SelectionPolicy::LargestArea);
    if (lp_error(r.estimator, f.reference(), 1, lebesgue()) <= 1e-6) evals_needed = t + 1;
  }

  std::vector<std::pair<double, double>> taus;
  for (int k = 3; k <= 9; ++k) {
    const double eps = std::ldexp(1.0, -k);
    FunctionOracle f(catalog("identity"));
    const auto plan = plan_integral(f, eps, lebesgue());
    // Slope of tau against 1/eps: feed (1/eps, 1/tau) to the log(1/err) fit.
    taus.emplace_back(1.0 / eps, 1.0 / static_cast<double>(plan.trace.tau));
  }
  const double stoch_slope = loglog_slope(taus);

  const bool ok_trap = trap_slope >= 1.85 && trap_slope <= 2.15;
  const bool ok_step = evals_needed > 0 && evals_needed <= 100;
  const bool ok_stoch = stoch_slope >= 0.55 && stoch_slope <= 0.80;
  v.pass = ok_trap && ok_step && ok_stoch;
  v.detail = fmt("trapezoid slope on square %.4f in [1.85,2.15]; GreedyBox on step_03 reaches 1e-6 "
                 "after %zu evaluations (<= 100); stochastic tau slope %.4f in [0.55,0.80]",
                 trap_slope, evals_needed, stoch_slope);
  return v;
}

Verdict ac12() {
  auto best_time = [](std::size_t t) {
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      FunctionOracle f(catalog("identity"));
      const auto t0 = Clock::now();
      const auto r = run_fixed_budget(f, t, 1, lebesgue(), SelectionPolicy::LargestArea);
      best = std::min(best, seconds_since(t0));
      if (r.trace.tau != t) return -1.0;
    }
    return best;
  };
  const double t13 = best_time(1u << 13);
  const double t14 = best_time(1u << 14);
  const double t15 = best_time(1u << 15);
  Verdict v;
  const double r1 = t14 / t13;
  const double r2 = t15 / t14;
  v.pass = t13 > 0 && t15 > 0 && t15 < 1.0 && r1 <= 2.5 && r2 <= 2.5;
  v.detail = fmt("t=2^13 %.4f s, 2^14 %.4f s, 2^15 %.4f s; ratios %.3f, %.3f (<= 2.5)", t13, t14,
                 t15, r1, r2);
  return v;
}

const std::vector<std::pair<const char*, std::function<Verdict()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Verdict()>>> list = {
      {"certificate validity", ac1},
      {"lebesgue refinement", ac2},
      {"halving", ac3},
      {"sample complexity upper bound", ac4},
      {"lower bound and surrounding pair", ac5},
      {"worst-case oscillator at t=40", ac6},
      {"composite figure errors after 12 iterations", ac7},
      {"quantile splitter", ac8},
      {"affine interpolation bound", ac9},
      {"stochastic integral", ac10},
      {"rate corridors", ac11},
      {"heap performance", ac12},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  const auto& list = criteria();
  if (only < 0 || only > static_cast<int>(list.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", list.size());
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Verdict v;
    try {
      v = list[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("AC%-2zu %s  %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", list[i].first,
                v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
