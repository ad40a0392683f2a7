// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monobox/funcs.hpp"
#include "monobox/measure.hpp"
#include "monobox/refine.hpp"

namespace monobox::cli {

/// Parsed value of the TOML subset: numbers, booleans, basic strings, arrays
/// and inline tables.
struct ConfigValue {
  enum class Kind { Number, Bool, String, Array, Table };
  Kind kind = Kind::Number;
  double number = 0.0;
  bool boolean = false;
  std::string text;
  std::vector<ConfigValue> items;
  std::vector<std::pair<std::string, ConfigValue>> fields;

  const ConfigValue* find(std::string_view key) const;
  double as_number(std::string_view what) const;
  long long as_integer(std::string_view what) const;
  bool as_bool(std::string_view what) const;
  const std::string& as_string(std::string_view what) const;
  const std::vector<ConfigValue>& as_array(std::string_view what) const;
};

/// Parses a whole document into a table. `[section]` headers prefix the
/// following keys with "section.". Throws ConfigError with a line number.
ConfigValue parse_document(std::string_view text);

/// Parses a single value, as given on the command line. Text that does not
/// start like a TOML value is taken as a bare string.
ConfigValue parse_value(std::string_view text);

ConfigValue load_document(const std::string& path);

/// Function given by name, by inline table {name, pieces}, or the
/// budget-dependent family "g_t".
struct FunctionSpec {
  std::string name = "square";
  std::vector<PieceSpec> pieces;
  bool custom = false;

  bool budget_family() const { return !custom && name == "g_t"; }
  /// `budget` is the evaluation budget; only the g_t family depends on it.
  FunctionPtr make(long long budget, double gt_exponent) const;
  std::string label() const;
};

FunctionSpec function_from_value(const ConfigValue& v);
Measure measure_from_value(const ConfigValue& v);

struct ExperimentConfig {
  FunctionSpec function;
  std::vector<FunctionSpec> functions;  // complexity sweep
  Measure measure = Measure::lebesgue();
  std::string measure_label = "lebesgue";
  int p = 1;
  std::vector<int> ps;  // complexity sweep
  std::vector<std::string> algorithms;
  std::vector<long long> budgets;  // evaluation counts
  std::vector<double> eps;
  std::size_t seeds = 1;
  std::uint64_t seed_base = 0;
  std::string csv;
  std::string svg;
  std::string trace_out;
  double gt_exponent = 1.0;
  TieBreak tie = TieBreak::Rightmost;
  SelectionPolicy policy = SelectionPolicy::LargestArea;
  std::size_t max_iters = std::size_t{1} << 22;
  std::size_t iterations = 12;
  std::vector<int> ks;
  std::size_t grid_points = 257;
  bool true_error = false;
  bool check = false;
};

/// Applies every recognised key of `doc`; unknown keys are config errors.
void apply_document(ExperimentConfig& cfg, const ConfigValue& doc);

/// Schedule strictly increasing, algorithms known and non-empty, p in range.
void validate(const ExperimentConfig& cfg, bool needs_algorithms);

bool is_stochastic(std::string_view algorithm);
SelectionPolicy algorithm_policy(std::string_view algorithm);

}  // namespace monobox::cli
