// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace monobox {

enum class PieceKind { Constant, Affine, Power, Quadratic };

std::string_view to_string(PieceKind kind);
PieceKind piece_kind_from_string(std::string_view name);

/// Exact description of a reference function, used only for error metering.
/// `kinds` has one entry per interval of [0, breakpoints..., 1].
struct FunctionMetadata {
  std::vector<double> breakpoints;
  std::vector<PieceKind> kinds;
  std::vector<double> c1_singularities;
  std::vector<double> discontinuities;
};

/// A non-decreasing map [0,1] -> [0,1]. Immutable and shareable.
class MonotoneFunction {
 public:
  using Evaluator = std::function<double(double)>;

  MonotoneFunction(std::string name, Evaluator eval, std::optional<FunctionMetadata> meta = {});

  /// Uncounted evaluation for reference and metering code.
  double operator()(double x) const { return eval_(x); }

  const std::string& name() const { return name_; }
  bool meterable() const { return meta_.has_value(); }

  /// Throws Unmeterable when the function was built without metadata.
  const FunctionMetadata& metadata() const;

 private:
  std::string name_;
  Evaluator eval_;
  std::optional<FunctionMetadata> meta_;
};

using FunctionPtr = std::shared_ptr<const MonotoneFunction>;

/// Black-box view of a function handed to the algorithms. Counts calls,
/// rejects values outside [0,1] and checks monotonicity against every earlier
/// query. One oracle belongs to one run.
class FunctionOracle {
 public:
  explicit FunctionOracle(FunctionPtr f);

  double evaluate(double x);
  double operator()(double x) { return evaluate(x); }

  std::size_t call_count() const { return calls_; }

  /// Metering access path. Algorithms never call this.
  const MonotoneFunction& reference() const { return *f_; }
  const FunctionPtr& shared_reference() const { return f_; }

 private:
  FunctionPtr f_;
  std::size_t calls_ = 0;
  std::map<double, double> log_;
};

/// Parameters of the oscillating worst-case construction:
/// s' = 2^(2k), s = 2^(3k), t = (s + s') / 2.
struct OscillatorParams {
  int k = 1;

  explicit OscillatorParams(int k_);

  long long s_prime() const { return 1LL << (2 * k); }
  long long s() const { return 1LL << (3 * k); }
  long long t() const { return (s() + s_prime()) / 2; }
};

/// Recursive oscillator: x^2 on [0,1/s'], the mirrored parabola on
/// [1/s', 2/s'], then shifted copies lifted by 2i/s'^2.
double oscillator_g(const OscillatorParams& params, double x);

/// Oscillator on [0,1/2] followed by the affine tail x - 1/2 + 1/(2s').
FunctionPtr worst_case_f(const OscillatorParams& params);

/// x -> f(2x)/2 on [0,1/2] and 1 beyond, with f = worst_case_f(params).
FunctionPtr experiment_g(const OscillatorParams& params);

/// Largest k >= 1 whose oscillator horizon t(k) does not exceed
/// budget^exponent; used for the budget-dependent g^t family.
int oscillator_k_for_budget(long long budget, double exponent);

/// One piece of a user-defined piecewise function, active from `start` up to
/// the next piece's start. Coefficients:
///   constant  [c]                   -> c
///   affine    [c0, c1]              -> c0 + c1 x
///   quadratic [c0, c1, c2]          -> c0 + c1 x + c2 x^2
///   power     [c0, c1, e (, shift)] -> c0 + c1 (x - shift)^e
struct PieceSpec {
  double start = 0.0;
  PieceKind kind = PieceKind::Constant;
  std::vector<double> coeffs;
};

/// Right-continuous piecewise function; validated to be non-decreasing and
/// [0,1]-valued on a 10^4-point grid.
FunctionPtr piecewise(std::string name, std::vector<PieceSpec> pieces);

/// Built-in functions: square, power_tenth, step_03, fig2_composite,
/// identity, constant(c), worst_case(k), experiment_g(k).
FunctionPtr catalog(std::string_view name);

/// Names accepted by catalog() without parameters.
std::vector<std::string> catalog_names();

/// Step function with `piece_values[j]` on (cuts[j], cuts[j+1]) and
/// `point_values[j]` at cuts[j]. Cuts must start at 0 and end at 1.
FunctionPtr step_function(std::string name, std::vector<double> cuts,
                          std::vector<double> piece_values, std::vector<double> point_values);

/// Lower and upper piecewise-constant functions agreeing with g on the query
/// points: g_minus = g(x_i) on [x_i, x_{i+1}), g_plus = g(x_{i+1}) on
/// (x_i, x_{i+1}]. 0 and 1 are added to the queries when absent.
std::pair<FunctionPtr, FunctionPtr> surrounding_pair(std::span<const double> queries,
                                                     const MonotoneFunction& g);

}  // namespace monobox
