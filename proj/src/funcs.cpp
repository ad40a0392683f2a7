// SPDX-License-Identifier: Apache-2.0
#include "monobox/funcs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "monobox/error.hpp"

namespace monobox {

std::string_view to_string(PieceKind kind) {
  switch (kind) {
    case PieceKind::Constant: return "constant";
    case PieceKind::Affine: return "affine";
    case PieceKind::Power: return "power";
    case PieceKind::Quadratic: return "quadratic";
  }
  return "unknown";
}

PieceKind piece_kind_from_string(std::string_view name) {
  if (name == "constant") return PieceKind::Constant;
  if (name == "affine") return PieceKind::Affine;
  if (name == "power") return PieceKind::Power;
  if (name == "quadratic") return PieceKind::Quadratic;
  throw ConfigError("unknown piece kind '" + std::string(name) + "'");
}

MonotoneFunction::MonotoneFunction(std::string name, Evaluator eval,
                                   std::optional<FunctionMetadata> meta)
    : name_(std::move(name)), eval_(std::move(eval)), meta_(std::move(meta)) {}

const FunctionMetadata& MonotoneFunction::metadata() const {
  if (!meta_) throw Unmeterable("function '" + name_ + "' has no exact metadata");
  return *meta_;
}

FunctionOracle::FunctionOracle(FunctionPtr f) : f_(std::move(f)) {
  if (!f_) throw DomainError("FunctionOracle: null function");
}

double FunctionOracle::evaluate(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("oracle queried outside [0,1]");
  const double v = (*f_)(x);
  ++calls_;
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << "function '" << f_->name() << "' returned " << v << " at x=" << x
        << ", outside [0,1]";
    throw ValidationError(msg.str());
  }
  auto [it, inserted] = log_.emplace(x, v);
  if (inserted) {
    const bool bad_prev = it != log_.begin() && std::prev(it)->second > v;
    const bool bad_next = std::next(it) != log_.end() && std::next(it)->second < v;
    if (bad_prev || bad_next) {
      std::ostringstream msg;
      msg << "function '" << f_->name() << "' is not non-decreasing near x=" << x;
      throw ValidationError(msg.str());
    }
  }
  return v;
}

OscillatorParams::OscillatorParams(int k_) : k(k_) {
  if (k < 1 || k > 10) throw DomainError("oscillator parameter k must lie in [1, 10]");
}

double oscillator_g(const OscillatorParams& params, double x) {
  const double sp = static_cast<double>(params.s_prime());
  const double h = 1.0 / sp;
  if (x <= h) return x * x;
  if (x <= 2.0 * h) {
    const double u = x - h;
    return -u * u + 2.0 * h * u + h * h;
  }
  // x in [2i/s', 2(i+1)/s'] with i in {1, ..., s'/2 - 1}
  const long long half = params.s_prime() / 2;
  long long i = static_cast<long long>(std::floor(x * sp / 2.0));
  i = std::clamp(i, 1LL, half - 1);
  const double shift = 2.0 * static_cast<double>(i) * h;
  return oscillator_g(params, x - shift) + shift * h;
}

FunctionPtr worst_case_f(const OscillatorParams& params) {
  const double sp = static_cast<double>(params.s_prime());
  const long long half = params.s_prime() / 2;
  FunctionMetadata meta;
  for (long long i = 1; i <= half; ++i) meta.breakpoints.push_back(static_cast<double>(i) / sp);
  meta.kinds.assign(static_cast<std::size_t>(half), PieceKind::Quadratic);
  meta.kinds.push_back(PieceKind::Affine);
  meta.c1_singularities = {0.5};
  auto eval = [params, sp](double x) {
    return x <= 0.5 ? oscillator_g(params, x) : x - 0.5 + 1.0 / (2.0 * sp);
  };
  return std::make_shared<MonotoneFunction>("worst_case(" + std::to_string(params.k) + ")", eval,
                                            std::move(meta));
}

FunctionPtr experiment_g(const OscillatorParams& params) {
  const double sp = static_cast<double>(params.s_prime());
  const long long half = params.s_prime() / 2;
  FunctionMetadata meta;
  for (long long i = 1; i <= half; ++i)
    meta.breakpoints.push_back(static_cast<double>(i) / (2.0 * sp));
  meta.breakpoints.push_back(0.5);
  meta.kinds.assign(static_cast<std::size_t>(half), PieceKind::Quadratic);
  meta.kinds.push_back(PieceKind::Affine);
  meta.kinds.push_back(PieceKind::Constant);
  meta.c1_singularities = {0.25, 0.5};
  meta.discontinuities = {0.5};
  auto eval = [params, sp](double x) {
    if (x > 0.5) return 1.0;
    const double y = 2.0 * x;
    const double inner = y <= 0.5 ? oscillator_g(params, y) : y - 0.5 + 1.0 / (2.0 * sp);
    return 0.5 * inner;
  };
  return std::make_shared<MonotoneFunction>("experiment_g(" + std::to_string(params.k) + ")",
                                            eval, std::move(meta));
}

int oscillator_k_for_budget(long long budget, double exponent) {
  const double horizon = std::pow(static_cast<double>(std::max(budget, 1LL)), exponent);
  int best = 1;
  for (int k = 1; k <= 10; ++k) {
    if (static_cast<double>(OscillatorParams(k).t()) <= horizon) best = k;
  }
  return best;
}

namespace {

double eval_piece(const PieceSpec& p, double x) {
  const auto& c = p.coeffs;
  switch (p.kind) {
    case PieceKind::Constant: return c[0];
    case PieceKind::Affine: return c[0] + c[1] * x;
    case PieceKind::Quadratic: return c[0] + x * (c[1] + x * c[2]);
    case PieceKind::Power: {
      const double shift = c.size() > 3 ? c[3] : 0.0;
      return c[0] + c[1] * std::pow(std::max(x - shift, 0.0), c[2]);
    }
  }
  return 0.0;
}

std::size_t required_coeffs(PieceKind kind) {
  switch (kind) {
    case PieceKind::Constant: return 1;
    case PieceKind::Affine: return 2;
    case PieceKind::Quadratic: return 3;
    case PieceKind::Power: return 3;
  }
  return 0;
}

void check_monotone_on_grid(const MonotoneFunction& f) {
  constexpr int kGrid = 10000;
  double prev = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double x = static_cast<double>(i) / kGrid;
    const double v = f(x);
    if (!(v >= 0.0 && v <= 1.0))
      throw ConfigError("function '" + f.name() + "' leaves [0,1]");
    if (v < prev - 1e-15) throw ConfigError("function '" + f.name() + "' is not non-decreasing");
    prev = v;
  }
}

}  // namespace

FunctionPtr piecewise(std::string name, std::vector<PieceSpec> pieces) {
  if (pieces.empty()) throw ConfigError("piecewise function needs at least one piece");
  std::ranges::sort(pieces, {}, &PieceSpec::start);
  if (pieces.front().start != 0.0) throw ConfigError("first piece must start at 0");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (p.coeffs.size() < required_coeffs(p.kind))
      throw ConfigError("piece " + std::to_string(i) + ": too few coefficients for " +
                        std::string(to_string(p.kind)));
    if (i > 0 && !(p.start > pieces[i - 1].start && p.start < 1.0))
      throw ConfigError("piece starts must be strictly increasing inside [0,1)");
  }

  FunctionMetadata meta;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    meta.kinds.push_back(pieces[i].kind);
    if (i == 0) continue;
    const double b = pieces[i].start;
    meta.breakpoints.push_back(b);
    const double left = eval_piece(pieces[i - 1], b);
    const double right = eval_piece(pieces[i], b);
    if (std::abs(right - left) > 1e-12) meta.discontinuities.push_back(b);
    meta.c1_singularities.push_back(b);
  }

  std::vector<double> starts;
  for (const auto& p : pieces) starts.push_back(p.start);
  auto eval = [pieces = std::move(pieces), starts = std::move(starts)](double x) {
    auto it = std::ranges::upper_bound(starts, x);
    const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - starts.begin() - 1));
    return eval_piece(pieces[idx], x);
  };
  auto f = std::make_shared<MonotoneFunction>(std::move(name), std::move(eval), std::move(meta));
  check_monotone_on_grid(*f);
  return f;
}

FunctionPtr step_function(std::string name, std::vector<double> cuts,
                          std::vector<double> piece_values, std::vector<double> point_values) {
  if (cuts.size() < 2 || cuts.front() != 0.0 || cuts.back() != 1.0)
    throw DomainError("step_function: cuts must run from 0 to 1");
  if (piece_values.size() + 1 != cuts.size() || point_values.size() != cuts.size())
    throw DomainError("step_function: value counts do not match cuts");
  FunctionMetadata meta;
  meta.breakpoints.assign(cuts.begin() + 1, cuts.end() - 1);
  meta.kinds.assign(piece_values.size(), PieceKind::Constant);
  for (std::size_t j = 1; j + 1 < cuts.size(); ++j) {
    if (piece_values[j] != piece_values[j - 1]) meta.discontinuities.push_back(cuts[j]);
  }
  meta.c1_singularities = meta.discontinuities;
  auto eval = [cuts = std::move(cuts), pv = std::move(piece_values),
               qv = std::move(point_values)](double x) {
    auto it = std::ranges::upper_bound(cuts, x);
    const auto j = static_cast<std::size_t>(it - cuts.begin()) - 1;
    if (j >= pv.size()) return qv.back();
    return cuts[j] == x ? qv[j] : pv[j];
  };
  return std::make_shared<MonotoneFunction>(std::move(name), std::move(eval), std::move(meta));
}

std::pair<FunctionPtr, FunctionPtr> surrounding_pair(std::span<const double> queries,
                                                     const MonotoneFunction& g) {
  std::vector<double> pts(queries.begin(), queries.end());
  pts.push_back(0.0);
  pts.push_back(1.0);
  for (double x : pts) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("surrounding_pair: query outside [0,1]");
  }
  std::ranges::sort(pts);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<double> at(pts.size());
  std::ranges::transform(pts, at.begin(), [&](double x) { return g(x); });
  std::vector<double> lower(at.begin(), at.end() - 1);
  std::vector<double> upper(at.begin() + 1, at.end());

  auto g_minus = step_function(g.name() + "_minus", pts, std::move(lower), at);
  auto g_plus = step_function(g.name() + "_plus", std::move(pts), std::move(upper), std::move(at));
  return {std::move(g_minus), std::move(g_plus)};
}

namespace {

FunctionPtr make_simple(std::string name, MonotoneFunction::Evaluator eval, PieceKind kind) {
  FunctionMetadata meta;
  meta.kinds = {kind};
  return std::make_shared<MonotoneFunction>(std::move(name), std::move(eval), std::move(meta));
}

// Parses "name(arg)"; returns nullopt when the name does not match.
std::optional<std::string_view> call_argument(std::string_view text, std::string_view fn) {
  if (!text.starts_with(fn) || text.size() < fn.size() + 2) return std::nullopt;
  if (text[fn.size()] != '(' || text.back() != ')') return std::nullopt;
  return text.substr(fn.size() + 1, text.size() - fn.size() - 2);
}

double parse_double(std::string_view s, std::string_view context) {
  try {
    std::size_t used = 0;
    const std::string owned(s);
    const double v = std::stod(owned, &used);
    if (used != owned.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric argument '" + std::string(s) + "' in " + std::string(context));
  }
}

int parse_int(std::string_view s, std::string_view context) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("bad integer argument '" + std::string(s) + "' in " + std::string(context));
  return v;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"square", "power_tenth", "step_03", "fig2_composite", "identity"};
}

FunctionPtr catalog(std::string_view name) {
  if (name == "square") return make_simple("square", [](double x) { return x * x; }, PieceKind::Quadratic);
  if (name == "identity") return make_simple("identity", [](double x) { return x; }, PieceKind::Affine);
  if (name == "power_tenth")
    return make_simple("power_tenth", [](double x) { return std::pow(x, 0.1); }, PieceKind::Power);
  if (name == "step_03") {
    FunctionMetadata meta{{0.3}, {PieceKind::Constant, PieceKind::Constant}, {0.3}, {0.3}};
    return std::make_shared<MonotoneFunction>(
        "step_03", [](double x) { return x >= 0.3 ? 1.0 : 0.0; }, std::move(meta));
  }
  if (name == "fig2_composite") {
    constexpr double kKnee = 2.0 / 3.0;
    FunctionMetadata meta{{kKnee}, {PieceKind::Power, PieceKind::Affine}, {kKnee}, {kKnee}};
    return std::make_shared<MonotoneFunction>(
        "fig2_composite",
        [](double x) { return x <= kKnee ? 0.5 * std::pow(x, 0.3) : x; }, std::move(meta));
  }
  if (auto arg = call_argument(name, "constant")) {
    const double c = parse_double(*arg, name);
    if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("constant value must lie in [0,1]");
    return make_simple(std::string(name), [c](double) { return c; }, PieceKind::Constant);
  }
  if (auto arg = call_argument(name, "worst_case"))
    return worst_case_f(OscillatorParams(parse_int(*arg, name)));
  if (auto arg = call_argument(name, "experiment_g"))
    return experiment_g(OscillatorParams(parse_int(*arg, name)));
  throw ConfigError("unknown function '" + std::string(name) + "'");
}

}  // namespace monobox
