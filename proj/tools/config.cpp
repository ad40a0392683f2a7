// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "monobox/error.hpp"

namespace monobox::cli {

const ConfigValue* ConfigValue::find(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

double ConfigValue::as_number(std::string_view what) const {
  if (kind != Kind::Number) throw ConfigError(std::string(what) + " must be a number");
  return number;
}

long long ConfigValue::as_integer(std::string_view what) const {
  const double x = as_number(what);
  if (x != std::floor(x) || std::abs(x) > 9.0e15)
    throw ConfigError(std::string(what) + " must be an integer");
  return static_cast<long long>(x);
}

bool ConfigValue::as_bool(std::string_view what) const {
  if (kind != Kind::Bool) throw ConfigError(std::string(what) + " must be true or false");
  return boolean;
}

const std::string& ConfigValue::as_string(std::string_view what) const {
  if (kind != Kind::String) throw ConfigError(std::string(what) + " must be a string");
  return text;
}

const std::vector<ConfigValue>& ConfigValue::as_array(std::string_view what) const {
  if (kind != Kind::Array) throw ConfigError(std::string(what) + " must be an array");
  return items;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ConfigValue document() {
    ConfigValue root;
    root.kind = ConfigValue::Kind::Table;
    std::string section;
    while (true) {
      skip_blank(true);
      if (done()) break;
      if (peek() == '[') {
        ++pos_;
        skip_blank(false);
        section = key();
        skip_blank(false);
        expect(']');
        end_of_line();
        continue;
      }
      std::string k = key();
      if (!section.empty()) k = section + "." + k;
      skip_blank(false);
      expect('=');
      skip_blank(false);
      if (root.find(k)) fail("duplicate key '" + k + "'");
      root.fields.emplace_back(k, value());
      end_of_line();
    }
    return root;
  }

  ConfigValue single() {
    skip_blank(true);
    ConfigValue v = value();
    skip_blank(true);
    if (!done()) fail("trailing characters after value");
    return v;
  }

 private:
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    const auto line = 1 + std::count(s_.begin(), s_.begin() + static_cast<long>(pos_), '\n');
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_blank(bool newlines) {
    while (!done()) {
      const char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void end_of_line() {
    skip_blank(false);
    if (done()) return;
    if (peek() != '\n') fail("expected end of line");
    ++pos_;
  }

  std::string key() {
    if (peek() == '"') return quoted();
    const auto start = pos_;
    while (!done()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')
        ++pos_;
      else
        break;
    }
    if (pos_ == start) fail("expected a key");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string quoted() {
    expect('"');
    std::string out;
    while (true) {
      if (done() || peek() == '\n') fail("unterminated string");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (done()) fail("unterminated string");
      const char e = s_[pos_++];
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        default: fail(std::string("unsupported escape \\") + e);
      }
    }
    return out;
  }

  ConfigValue value() {
    ConfigValue v;
    const char c = peek();
    if (c == '"') {
      v.kind = ConfigValue::Kind::String;
      v.text = quoted();
    } else if (c == '[') {
      v.kind = ConfigValue::Kind::Array;
      ++pos_;
      while (true) {
        skip_blank(true);
        if (peek() == ']') break;
        v.items.push_back(value());
        skip_blank(true);
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() != ']') fail("expected ',' or ']'");
      }
      ++pos_;
    } else if (c == '{') {
      v.kind = ConfigValue::Kind::Table;
      ++pos_;
      skip_blank(false);
      while (peek() != '}') {
        std::string k = key();
        skip_blank(false);
        expect('=');
        skip_blank(false);
        if (v.find(k)) fail("duplicate key '" + k + "'");
        v.fields.emplace_back(k, value());
        skip_blank(false);
        if (peek() == ',') {
          ++pos_;
          skip_blank(false);
        } else if (peek() != '}') {
          fail("expected ',' or '}'");
        }
      }
      ++pos_;
    } else if (s_.substr(pos_, 4) == "true") {
      v.kind = ConfigValue::Kind::Bool;
      v.boolean = true;
      pos_ += 4;
    } else if (s_.substr(pos_, 5) == "false") {
      v.kind = ConfigValue::Kind::Bool;
      pos_ += 5;
    } else {
      const auto start = pos_;
      while (!done()) {
        const char d = peek();
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '+' || d == '-' || d == '.' ||
            d == '_')
          ++pos_;
        else
          break;
      }
      std::string tok(s_.substr(start, pos_ - start));
      tok.erase(std::remove(tok.begin(), tok.end(), '_'), tok.end());
      if (tok.empty()) fail("expected a value");
      char* end = nullptr;
      v.number = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size() || !std::isfinite(v.number))
        fail("malformed number '" + tok + "'");
    }
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

PieceSpec piece_from_value(const ConfigValue& v) {
  const auto& row = v.as_array("function piece");
  if (row.size() < 3) throw ConfigError("function piece needs [start, kind, coefficients...]");
  PieceSpec p;
  p.start = row[0].as_number("piece start");
  p.kind = piece_kind_from_string(row[1].as_string("piece kind"));
  for (std::size_t i = 2; i < row.size(); ++i) p.coeffs.push_back(row[i].as_number("coefficient"));
  return p;
}

std::vector<double> number_list(const ConfigValue& v, std::string_view what) {
  std::vector<double> out;
  if (v.kind == ConfigValue::Kind::Number) return {v.number};
  for (const auto& x : v.as_array(what)) out.push_back(x.as_number(what));
  return out;
}

std::vector<long long> integer_list(const ConfigValue& v, std::string_view what) {
  std::vector<long long> out;
  if (v.kind == ConfigValue::Kind::Number) return {v.as_integer(what)};
  for (const auto& x : v.as_array(what)) out.push_back(x.as_integer(what));
  return out;
}

std::size_t positive(long long x, std::string_view what) {
  if (x < 1) throw ConfigError(std::string(what) + " must be at least 1");
  return static_cast<std::size_t>(x);
}

template <class T>
bool strictly_increasing(const std::vector<T>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](T a, T b) { return !(a < b); }) == v.end();
}

}  // namespace

ConfigValue parse_document(std::string_view text) { return Parser(text).document(); }

ConfigValue parse_value(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) throw ConfigError("empty value");
  const char c = text[first];
  const bool structured = c == '"' || c == '[' || c == '{' || c == '-' || c == '+' || c == '.' ||
                          std::isdigit(static_cast<unsigned char>(c)) || text == "true" ||
                          text == "false";
  if (!structured) {
    ConfigValue v;
    v.kind = ConfigValue::Kind::String;
    v.text = std::string(text);
    return v;
  }
  return Parser(text).single();
}

ConfigValue load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

FunctionPtr FunctionSpec::make(long long budget, double gt_exponent) const {
  if (custom) return piecewise(name, pieces);
  if (budget_family())
    return experiment_g(OscillatorParams(oscillator_k_for_budget(budget, gt_exponent)));
  return catalog(name);
}

std::string FunctionSpec::label() const { return name; }

FunctionSpec function_from_value(const ConfigValue& v) {
  FunctionSpec spec;
  if (v.kind == ConfigValue::Kind::String) {
    spec.name = v.text;
    if (spec.budget_family()) return spec;
    try {
      (void)catalog(spec.name);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("invalid function: ") + e.what());
    }
    return spec;
  }
  if (v.kind != ConfigValue::Kind::Table)
    throw ConfigError("function must be a name or {name = ..., pieces = [...]}");
  for (const auto& [k, x] : v.fields)
    if (k != "name" && k != "pieces") throw ConfigError("unknown function key '" + k + "'");
  spec.name = v.find("name") ? v.find("name")->as_string("function name") : "custom";
  const ConfigValue* pieces = v.find("pieces");
  if (!pieces) throw ConfigError("custom function needs pieces");
  for (const auto& row : pieces->as_array("pieces")) spec.pieces.push_back(piece_from_value(row));
  spec.custom = true;
  (void)piecewise(spec.name, spec.pieces);
  return spec;
}

Measure measure_from_value(const ConfigValue& v) {
  if (v.kind == ConfigValue::Kind::String) {
    if (v.text == "lebesgue") return Measure::lebesgue();
    throw ConfigError("unknown measure '" + v.text + "'");
  }
  if (v.kind != ConfigValue::Kind::Table)
    throw ConfigError("measure must be \"lebesgue\" or {pieces = [...], atoms = [...]}");
  std::vector<DensityPiece> pieces;
  std::vector<Atom> atoms;
  for (const auto& [k, x] : v.fields) {
    if (k == "pieces") {
      for (const auto& row : x.as_array("measure pieces")) {
        const auto n = number_list(row, "measure piece");
        if (n.size() != 3) throw ConfigError("measure piece must be [a, b, density]");
        pieces.push_back({n[0], n[1], n[2]});
      }
    } else if (k == "atoms") {
      for (const auto& row : x.as_array("measure atoms")) {
        const auto n = number_list(row, "measure atom");
        if (n.size() != 2) throw ConfigError("measure atom must be [x, mass]");
        atoms.push_back({n[0], n[1]});
      }
    } else {
      throw ConfigError("unknown measure key '" + k + "'");
    }
  }
  try {
    return Measure(std::move(pieces), std::move(atoms));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid measure: ") + e.what());
  }
}

void apply_document(ExperimentConfig& cfg, const ConfigValue& doc) {
  for (const auto& [k, v] : doc.fields) {
    if (k == "function") {
      cfg.function = function_from_value(v);
    } else if (k == "functions") {
      cfg.functions.clear();
      for (const auto& f : v.as_array("functions")) cfg.functions.push_back(function_from_value(f));
    } else if (k == "measure") {
      cfg.measure = measure_from_value(v);
      cfg.measure_label = v.kind == ConfigValue::Kind::String ? v.text : "custom";
    } else if (k == "p") {
      const auto ps = integer_list(v, "p");
      if (v.kind == ConfigValue::Kind::Array) {
        cfg.ps.assign(ps.begin(), ps.end());
        if (!ps.empty()) cfg.p = static_cast<int>(ps.front());
      } else {
        cfg.p = static_cast<int>(ps.front());
        cfg.ps = {cfg.p};
      }
    } else if (k == "algorithms") {
      cfg.algorithms.clear();
      for (const auto& a : v.as_array("algorithms")) cfg.algorithms.push_back(a.as_string("algorithm"));
    } else if (k == "budgets") {
      cfg.budgets = integer_list(v, "budgets");
    } else if (k == "eps") {
      cfg.eps = number_list(v, "eps");
    } else if (k == "seeds") {
      cfg.seeds = positive(v.as_integer("seeds"), "seeds");
    } else if (k == "seed_base") {
      cfg.seed_base = static_cast<std::uint64_t>(v.as_integer("seed_base"));
    } else if (k == "csv") {
      cfg.csv = v.as_string("csv");
    } else if (k == "svg") {
      cfg.svg = v.as_string("svg");
    } else if (k == "trace_out") {
      cfg.trace_out = v.as_string("trace_out");
    } else if (k == "gt_exponent") {
      cfg.gt_exponent = v.as_number("gt_exponent");
    } else if (k == "tie") {
      cfg.tie = tie_break_from_string(v.as_string("tie"));
    } else if (k == "policy") {
      cfg.policy = policy_from_string(v.as_string("policy"));
    } else if (k == "max_iters") {
      cfg.max_iters = positive(v.as_integer("max_iters"), "max_iters");
    } else if (k == "iterations") {
      cfg.iterations = positive(v.as_integer("iterations"), "iterations");
    } else if (k == "k") {
      cfg.ks.clear();
      for (long long x : integer_list(v, "k")) cfg.ks.push_back(static_cast<int>(x));
    } else if (k == "grid_points") {
      cfg.grid_points = positive(v.as_integer("grid_points"), "grid_points");
    } else if (k == "true_error") {
      cfg.true_error = v.as_bool("true_error");
    } else if (k == "check") {
      cfg.check = v.as_bool("check");
    } else {
      throw ConfigError("unknown config key '" + k + "'");
    }
  }
  if (doc.find("function") && !doc.find("functions")) cfg.functions.clear();
}

bool is_stochastic(std::string_view algorithm) { return algorithm == "stochastic"; }

SelectionPolicy algorithm_policy(std::string_view algorithm) {
  return policy_from_string(algorithm);
}

void validate(const ExperimentConfig& cfg, bool needs_algorithms) {
  const auto check_p = [](int p) {
    if (p < 1 || p > kMaxP) throw ConfigError("p must be an integer in [1, 8]");
  };
  check_p(cfg.p);
  for (int p : cfg.ps) check_p(p);
  if (!strictly_increasing(cfg.budgets)) throw ConfigError("budgets must increase strictly");
  if (!strictly_increasing(cfg.eps)) throw ConfigError("eps must increase strictly");
  for (long long b : cfg.budgets)
    if (b < 2) throw ConfigError("budgets count evaluations and must be at least 2");
  for (double e : cfg.eps)
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("eps values must lie in (0, 1]");
  if (!(cfg.gt_exponent > 0.0)) throw ConfigError("gt_exponent must be positive");
  for (int k : cfg.ks)
    if (k < 1 || k > 6) throw ConfigError("k must lie in [1, 6]");
  if (cfg.grid_points < 2) throw ConfigError("grid_points must be at least 2");
  if (!needs_algorithms) return;
  if (cfg.algorithms.empty()) throw ConfigError("at least one algorithm is required");
  if (cfg.budgets.empty() == cfg.eps.empty())
    throw ConfigError("give exactly one schedule: budgets or eps");
  for (const auto& a : cfg.algorithms) {
    if (is_stochastic(a)) {
      if (cfg.eps.empty()) throw ConfigError("stochastic runs need an eps schedule");
      if (cfg.p != 1) throw ConfigError("stochastic runs estimate integrals and need p = 1");
      continue;
    }
    (void)algorithm_policy(a);
  }
  if (cfg.function.budget_family() && cfg.budgets.empty())
    throw ConfigError("g_t depends on the budget and needs a budgets schedule");
}

}  // namespace monobox::cli
