// SPDX-License-Identifier: Apache-2.0
#include "monobox/refine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monobox/error.hpp"

namespace monobox {

std::string_view to_string(SelectionPolicy policy) {
  switch (policy) {
    case SelectionPolicy::LargestArea: return "area";
    case SelectionPolicy::LargestWidth: return "width";
    case SelectionPolicy::AlternateWidthArea: return "alternate";
  }
  return "unknown";
}

SelectionPolicy policy_from_string(std::string_view name) {
  if (name == "area" || name == "greedybox") return SelectionPolicy::LargestArea;
  if (name == "width" || name == "trapezoid") return SelectionPolicy::LargestWidth;
  if (name == "alternate" || name == "greedywidthbox") return SelectionPolicy::AlternateWidthArea;
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

std::string_view to_string(TieBreak tie) {
  return tie == TieBreak::Rightmost ? "rightmost" : "leftmost";
}

TieBreak tie_break_from_string(std::string_view name) {
  if (name == "rightmost") return TieBreak::Rightmost;
  if (name == "leftmost") return TieBreak::Leftmost;
  throw ConfigError("unknown tie-break '" + std::string(name) + "'");
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::CertificateReached: return "certificate";
    case StopReason::BudgetReached: return "budget";
    case StopReason::ZeroCertificate: return "zero_certificate";
    case StopReason::MaxIterations: return "max_iters";
  }
  return "unknown";
}

double ipow(double x, int p) {
  if (p < 1 || p > kMaxP) throw DomainError("p must be an integer in [1, 8]");
  double r = x;
  for (int i = 1; i < p; ++i) r *= x;
  return r;
}

CoverState::CoverState(FunctionOracle& f, int p, const Measure& m, TieBreak tie)
    : oracle_(&f), measure_(&m), p_(p), tie_(tie) {
  if (p < 1 || p > kMaxP) throw DomainError("p must be an integer in [1, 8]");
  const double f0 = oracle_->evaluate(0.0);
  const double f1 = oracle_->evaluate(1.0);
  double width = 0.0;
  const double area = box_area_p(f0, f1, 0.0, 1.0, &width);
  nodes_.push_back({0.0, 1.0, f0, f1, area, width, -1, -1, 0});
  queries_ = {0.0, 1.0};
  live_ = 1;
  certificate_ = area;
  sum_sq_ = area * area;
  last_ = {1, 2, 1.0, 0.0, 1.0, certificate_};
}

void CoverState::reserve(std::size_t boxes) {
  nodes_.reserve(boxes);
  queries_.reserve(boxes + 1);
}

double CoverState::box_area_p(double fa, double fb, double a, double b, double* width) const {
  *width = measure_->mass_open(a, b);
  return ipow(fb - fa, p_) * *width;
}

bool CoverState::entry_less(const Entry& a, const Entry& b) const {
  if (a.score != b.score) return a.score < b.score;
  return tie_ == TieBreak::Rightmost ? a.left < b.left : a.left > b.left;
}

void CoverState::push(std::vector<Entry>& heap, const Entry& e) {
  heap.push_back(e);
  std::push_heap(heap.begin(), heap.end(),
                 [this](const Entry& a, const Entry& b) { return entry_less(a, b); });
}

std::vector<CoverState::Entry>& CoverState::heap_for(bool by_width) const {
  auto& heap = by_width ? width_heap_ : area_heap_;
  bool& active = by_width ? width_active_ : area_active_;
  if (!active) {
    heap.clear();
    for (std::int32_t i = 0; i >= 0; i = nodes_[static_cast<std::size_t>(i)].next) {
      const Node& n = nodes_[static_cast<std::size_t>(i)];
      heap.push_back({by_width ? n.width : n.area_p, n.left, i, n.generation});
    }
    std::make_heap(heap.begin(), heap.end(),
                   [this](const Entry& a, const Entry& b) { return entry_less(a, b); });
    active = true;
  }
  return heap;
}

std::int32_t CoverState::purge_and_peek(std::vector<Entry>& heap) const {
  auto less = [this](const Entry& a, const Entry& b) { return entry_less(a, b); };
  while (!heap.empty()) {
    const Entry& top = heap.front();
    if (nodes_[static_cast<std::size_t>(top.id)].generation == top.generation) return top.id;
    std::pop_heap(heap.begin(), heap.end(), less);
    heap.pop_back();
  }
  return -1;
}

double CoverState::top_area() const {
  const auto id = purge_and_peek(heap_for(false));
  return id < 0 ? 0.0 : nodes_[static_cast<std::size_t>(id)].area_p;
}

double CoverState::top_width() const {
  const auto id = purge_and_peek(heap_for(true));
  return id < 0 ? 0.0 : nodes_[static_cast<std::size_t>(id)].width;
}

void CoverState::step(SelectionPolicy policy) {
  const bool by_width = policy == SelectionPolicy::LargestWidth ||
                        (policy == SelectionPolicy::AlternateWidthArea && live_ % 2 == 0);
  auto& heap = heap_for(by_width);
  const std::int32_t id = purge_and_peek(heap);
  if (id < 0) throw ResolutionExhausted("no box left to split");
  if (policy == SelectionPolicy::LargestArea && nodes_[static_cast<std::size_t>(id)].area_p <= 0.0)
    throw DomainError("every box has zero area; GreedyBox has nothing to split");

  const Node parent = nodes_[static_cast<std::size_t>(id)];
  const double a = parent.left;
  const double b = parent.right;
  double x = measure_->conditional_median(a, b);
  if (!(x > a && x < b)) x = 0.5 * (a + b);
  if (!(x > a && x < b)) throw ResolutionExhausted("box [" + std::to_string(a) + ", " +
                                                   std::to_string(b) +
                                                   "] is at floating-point resolution");

  auto less = [this](const Entry& l, const Entry& r) { return entry_less(l, r); };
  std::pop_heap(heap.begin(), heap.end(), less);
  heap.pop_back();

  const double fx = oracle_->evaluate(x);
  queries_.push_back(x);

  double w_left = 0.0;
  double w_right = 0.0;
  const double area_left = box_area_p(parent.f_left, fx, a, x, &w_left);
  const double area_right = box_area_p(fx, parent.f_right, x, b, &w_right);

  const auto right_id = static_cast<std::int32_t>(nodes_.size());
  Node& left = nodes_[static_cast<std::size_t>(id)];
  left.right = x;
  left.f_right = fx;
  left.area_p = area_left;
  left.width = w_left;
  left.next = right_id;
  left.generation += 1;
  const std::uint32_t left_gen = left.generation;
  nodes_.push_back({x, b, fx, parent.f_right, area_right, w_right, id, parent.next, 0});
  if (parent.next >= 0) nodes_[static_cast<std::size_t>(parent.next)].prev = right_id;

  if (area_active_) {
    push(area_heap_, {area_left, a, id, left_gen});
    push(area_heap_, {area_right, x, right_id, 0});
  }
  if (width_active_) {
    push(width_heap_, {w_left, a, id, left_gen});
    push(width_heap_, {w_right, x, right_id, 0});
  }
  ++live_;

  if (++steps_since_recompute_ >= kRecomputeEvery) {
    steps_since_recompute_ = 0;
    certificate_ = 0.0;
    sum_sq_ = 0.0;
    for (std::int32_t i = 0; i >= 0; i = nodes_[static_cast<std::size_t>(i)].next) {
      const double ap = nodes_[static_cast<std::size_t>(i)].area_p;
      certificate_ += ap;
      sum_sq_ += ap * ap;
    }
  } else {
    certificate_ = std::max(0.0, certificate_ + area_left + area_right - parent.area_p);
    sum_sq_ = std::max(0.0, sum_sq_ + area_left * area_left + area_right * area_right -
                                parent.area_p * parent.area_p);
  }
  last_ = {live_, live_ + 1, x, a, b, certificate_};
}

double CoverState::recompute_certificate() const {
  double total = 0.0;
  for (std::int32_t i = 0; i >= 0; i = nodes_[static_cast<std::size_t>(i)].next)
    total += nodes_[static_cast<std::size_t>(i)].area_p;
  return total;
}

std::vector<BoxView> CoverState::boxes_in_order() const {
  std::vector<BoxView> out;
  out.reserve(live_);
  for (std::int32_t i = 0; i >= 0; i = nodes_[static_cast<std::size_t>(i)].next) {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    out.push_back({n.left, n.right, n.f_left, n.f_right, n.area_p, n.width});
  }
  return out;
}

PiecewiseLinearEstimator CoverState::estimator() const {
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(live_ + 1);
  ys.reserve(live_ + 1);
  for (std::int32_t i = 0; i >= 0; i = nodes_[static_cast<std::size_t>(i)].next) {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    xs.push_back(n.left);
    ys.push_back(n.f_left);
    if (n.next < 0) {
      xs.push_back(n.right);
      ys.push_back(n.f_right);
    }
  }
  return {std::move(xs), std::move(ys)};
}

namespace {

RunResult finish(const CoverState& state, RunTrace trace) {
  trace.tau = state.boxes();
  return {std::move(trace), state.estimator(), state.queries(), state.certificate()};
}

}  // namespace

RunResult run(FunctionOracle& f, double eps, int p, const Measure& m, const RunOptions& opts,
              const Observer& observer) {
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("eps must lie in (0, 1]");
  if (opts.max_iters < 1) throw DomainError("max_iters must be at least 1");
  const double target = ipow(eps, p);
  CoverState state(f, p, m, opts.tie);
  RunTrace trace;
  trace.records.push_back(state.last_step());
  if (observer) observer(state);
  while (state.certificate() > target) {
    if (state.boxes() >= opts.max_iters) {
      trace.stop = StopReason::MaxIterations;
      return finish(state, std::move(trace));
    }
    state.step(opts.policy);
    trace.records.push_back(state.last_step());
    if (observer) observer(state);
  }
  trace.stop = StopReason::CertificateReached;
  return finish(state, std::move(trace));
}

RunResult run_fixed_budget(FunctionOracle& f, std::size_t t_target, int p, const Measure& m,
                           SelectionPolicy policy, TieBreak tie, const Observer& observer) {
  if (t_target < 1) throw DomainError("t_target must be at least 1");
  CoverState state(f, p, m, tie);
  state.reserve(t_target);
  RunTrace trace;
  trace.records.reserve(t_target);
  trace.records.push_back(state.last_step());
  if (observer) observer(state);
  trace.stop = StopReason::BudgetReached;
  while (state.boxes() < t_target) {
    if (policy == SelectionPolicy::LargestArea && state.top_area() <= 0.0) {
      trace.stop = StopReason::ZeroCertificate;
      break;
    }
    state.step(policy);
    trace.records.push_back(state.last_step());
    if (observer) observer(state);
  }
  return finish(state, std::move(trace));
}

}  // namespace monobox
