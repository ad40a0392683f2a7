// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "monobox/estimator.hpp"
#include "monobox/funcs.hpp"
#include "monobox/measure.hpp"

namespace monobox {

/// Which box the next evaluation splits.
///  - LargestArea: GreedyBox.
///  - LargestWidth: online trapezoidal rule.
///  - AlternateWidthArea: GreedyWidthBox (width when t is even, area when odd).
enum class SelectionPolicy { LargestArea, LargestWidth, AlternateWidthArea };

/// Resolution of equal scores. Rightmost picks the box with the larger left
/// endpoint.
enum class TieBreak { Rightmost, Leftmost };

std::string_view to_string(SelectionPolicy policy);
SelectionPolicy policy_from_string(std::string_view name);
std::string_view to_string(TieBreak tie);
TieBreak tie_break_from_string(std::string_view name);

/// Largest supported norm exponent.
inline constexpr int kMaxP = 8;

/// x^p for integer p in [1, kMaxP], by repeated multiplication.
double ipow(double x, int p);

/// Snapshot of one box of the current cover.
struct BoxView {
  double left = 0.0;
  double right = 1.0;
  double f_left = 0.0;
  double f_right = 0.0;
  double area_p = 0.0;  // (f_right - f_left)^p * mu((left, right))
  double width = 0.0;   // mu((left, right))
};

/// One refinement iteration. `t` is the box count after the iteration.
struct StepRecord {
  std::size_t t = 1;
  std::size_t evaluations = 2;
  double x_new = 1.0;
  double split_left = 0.0;
  double split_right = 1.0;
  double certificate = 0.0;
};

/// The adaptive box-cover maintained by the refinement algorithms.
///
/// Boxes live in a doubly linked list ordered by x; up to two max-heaps (area
/// and width) hold immutable (score, left, id, generation) entries, and
/// entries whose generation no longer matches their box are discarded on pop. The
/// certificate sum_k a_k^p is updated incrementally and recomputed from
/// scratch every kRecomputeEvery steps.
class CoverState {
 public:
  static constexpr std::size_t kRecomputeEvery = 1024;

  /// Evaluates f(0) and f(1) and sets the certificate to the single box's
  /// area.
  CoverState(FunctionOracle& f, int p, const Measure& m, TieBreak tie = TieBreak::Rightmost);

  /// Splits one box at the conditional median of its x-interval. Throws
  /// DomainError when `policy` is LargestArea and every area is zero, and
  /// ResolutionExhausted when the chosen box cannot be split.
  void step(SelectionPolicy policy);

  /// Pre-allocates storage for `boxes` boxes.
  void reserve(std::size_t boxes);

  std::size_t boxes() const { return live_; }
  std::size_t evaluations() const { return live_ + 1; }
  int p() const { return p_; }
  const Measure& measure() const { return *measure_; }
  TieBreak tie_break() const { return tie_; }

  /// xi_t = sum_k a_k^p (incrementally maintained).
  double certificate() const { return certificate_; }
  /// Same quantity summed afresh over the live boxes.
  double recompute_certificate() const;
  /// sum_k (a_k^p)^2; for p = 1 this is the sum of squared areas.
  double sum_squared_areas() const { return sum_sq_; }

  /// Largest live score in the area or width heap.
  double top_area() const;
  double top_width() const;

  std::vector<BoxView> boxes_in_order() const;
  PiecewiseLinearEstimator estimator() const;

  /// Query points in evaluation order: 0, 1, x_2, x_3, ...
  const std::vector<double>& queries() const { return queries_; }

  const StepRecord& last_step() const { return last_; }

 private:
  struct Node {
    double left, right, f_left, f_right, area_p, width;
    std::int32_t prev, next;
    std::uint32_t generation;
  };
  struct Entry {
    double score;
    double left;
    std::int32_t id;
    std::uint32_t generation;
  };

  bool entry_less(const Entry& a, const Entry& b) const;
  void push(std::vector<Entry>& heap, const Entry& e);
  std::int32_t purge_and_peek(std::vector<Entry>& heap) const;
  // Heaps are built on first use, so single-policy runs maintain only one.
  std::vector<Entry>& heap_for(bool by_width) const;
  double box_area_p(double fa, double fb, double a, double b, double* width) const;

  FunctionOracle* oracle_;
  const Measure* measure_;
  int p_;
  TieBreak tie_;
  std::vector<Node> nodes_;
  mutable std::vector<Entry> area_heap_;
  mutable std::vector<Entry> width_heap_;
  mutable bool area_active_ = false;
  mutable bool width_active_ = false;
  std::vector<double> queries_;
  std::size_t live_ = 0;
  std::size_t steps_since_recompute_ = 0;
  double certificate_ = 0.0;
  double sum_sq_ = 0.0;
  StepRecord last_;
};

enum class StopReason { CertificateReached, BudgetReached, ZeroCertificate, MaxIterations };
std::string_view to_string(StopReason reason);

struct RunTrace {
  std::vector<StepRecord> records;  // one per t = 1..tau
  std::size_t tau = 1;
  StopReason stop = StopReason::CertificateReached;
};

struct RunResult {
  RunTrace trace;
  PiecewiseLinearEstimator estimator;
  std::vector<double> queries;
  double certificate = 0.0;
};

struct RunOptions {
  SelectionPolicy policy = SelectionPolicy::LargestArea;
  std::size_t max_iters = std::size_t{1} << 22;
  TieBreak tie = TieBreak::Rightmost;
};

/// Called after initialisation and after every step.
using Observer = std::function<void(const CoverState&)>;

/// Refines until the certificate drops to eps^p or max_iters boxes exist.
/// Hitting max_iters is reported through trace.stop, not thrown.
RunResult run(FunctionOracle& f, double eps, int p, const Measure& m, const RunOptions& opts = {},
              const Observer& observer = {});

/// Refines until `t_target` boxes exist. Under LargestArea the run also stops
/// once the certificate is exactly zero, since the estimator is then final.
RunResult run_fixed_budget(FunctionOracle& f, std::size_t t_target, int p, const Measure& m,
                           SelectionPolicy policy, TieBreak tie = TieBreak::Rightmost,
                           const Observer& observer = {});

}  // namespace monobox
