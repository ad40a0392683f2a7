// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "monobox/error.hpp"

namespace {

using monobox::ConfigError;
using monobox::cli::ConfigValue;
using monobox::cli::ExperimentConfig;

// Flag values as given; applied over the config file afterwards.
struct Overrides {
  std::string config;
  std::map<std::string, std::string> raw;  // config key -> value text
  std::vector<std::string> algorithms;
  std::vector<long long> budgets;
  std::vector<double> eps;
  std::vector<std::string> functions;
  std::vector<int> ps;
  std::vector<int> ks;
  bool true_error = false;
  bool check = false;
};

struct Command {
  std::string name;
  std::string help;
  std::function<int(const ExperimentConfig&)> run;
  std::function<void(ExperimentConfig&)> defaults;
  bool needs_algorithms = false;
};

void add_value(CLI::App* sub, Overrides& o, const std::string& flag, const std::string& key,
               const std::string& help) {
  sub->add_option_function<std::string>(
      flag, [&o, key](const std::string& v) { o.raw[key] = v; }, help);
}

bool given(CLI::App* sub, const std::string& flag) {
  const CLI::Option* opt = sub->get_option_no_throw(flag);
  return opt != nullptr && opt->count() > 0;
}

ExperimentConfig build_config(const Command& cmd, const Overrides& o, CLI::App* sub) {
  ExperimentConfig cfg;
  cmd.defaults(cfg);
  const bool flag_budgets = given(sub, "--budgets");
  const bool flag_eps = given(sub, "--eps");
  bool doc_budgets = false;
  bool doc_eps = false;
  if (!o.config.empty()) {
    const ConfigValue doc = monobox::cli::load_document(o.config);
    doc_budgets = doc.find("budgets") != nullptr;
    doc_eps = doc.find("eps") != nullptr;
    apply_document(cfg, doc);
  }
  // A schedule chosen by flag, else by the file, replaces the other kind.
  if (cmd.needs_algorithms) {
    const bool budgets = flag_budgets || (!flag_eps && doc_budgets);
    const bool eps = flag_eps || (!flag_budgets && doc_eps);
    if (eps && !budgets) cfg.budgets.clear();
    if (budgets && !eps) cfg.eps.clear();
  }

  for (const auto& [key, text] : o.raw) {
    ConfigValue doc;
    doc.kind = ConfigValue::Kind::Table;
    ConfigValue v = monobox::cli::parse_value(text);
    doc.fields.emplace_back(key, std::move(v));
    apply_document(cfg, doc);
  }
  if (given(sub, "--algorithms")) cfg.algorithms = o.algorithms;
  if (given(sub, "--budgets")) cfg.budgets = o.budgets;
  if (given(sub, "--eps")) cfg.eps = o.eps;
  if (given(sub, "--p")) {
    cfg.ps = o.ps;
    cfg.p = o.ps.front();
  }
  if (given(sub, "--k")) cfg.ks = o.ks;
  if (given(sub, "--functions")) {
    cfg.functions.clear();
    for (const auto& f : o.functions)
      cfg.functions.push_back(monobox::cli::function_from_value(monobox::cli::parse_value(f)));
  }
  if (given(sub, "--true-error")) cfg.true_error = o.true_error;
  if (given(sub, "--check")) cfg.check = o.check;
  monobox::cli::validate(cfg, cmd.needs_algorithms);
  return cfg;
}

std::vector<double> powers_of_two_eps() {
  std::vector<double> e;
  for (int k = 8; k >= 2; --k) e.push_back(std::ldexp(1.0, -k));
  return e;
}

std::vector<long long> default_budgets() {
  std::vector<long long> b;
  for (int k = 3; k <= 10; ++k) b.push_back(1LL << k);
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive approximation of non-decreasing functions with certified error"};
  app.require_subcommand(1);
  Overrides o;

  const std::vector<Command> commands = {
      {"run", "Refine one function until the certificate reaches eps^p",
       monobox::cli::cmd_run, [](ExperimentConfig& c) { c.eps = {0.01}; }},
      {"integrate", "Stochastic integral estimates over seeds",
       monobox::cli::cmd_integrate, [](ExperimentConfig& c) { c.eps = {0.05}; c.seeds = 100; }},
      {"complexity", "Constructive and oracle box-covering numbers",
       monobox::cli::cmd_complexity, [](ExperimentConfig& c) {
         c.functions = {monobox::cli::function_from_value(monobox::cli::parse_value("identity")),
                        monobox::cli::function_from_value(monobox::cli::parse_value("step_03")),
                        monobox::cli::function_from_value(monobox::cli::parse_value("square"))};
         c.eps = powers_of_two_eps();
         c.ps = {1, 2};
       }},
      {"rates", "Error against evaluations for each algorithm",
       monobox::cli::cmd_rates, [](ExperimentConfig& c) {
         c.algorithms = {"greedybox", "greedywidthbox", "trapezoid"};
         c.budgets = default_budgets();
       }, true},
      {"certificates", "Certificate and error against evaluations",
       monobox::cli::cmd_certificates, [](ExperimentConfig& c) {
         c.algorithms = {"greedybox", "trapezoid"};
         c.budgets = default_budgets();
       }, true},
      {"fig2", "GreedyBox against the online trapezoid after a few iterations",
       monobox::cli::cmd_fig2, [](ExperimentConfig& c) {
         c.function = monobox::cli::function_from_value(monobox::cli::parse_value("fig2_composite"));
       }},
      {"adversary", "Oscillating worst case and surrounding pairs",
       monobox::cli::cmd_adversary, [](ExperimentConfig& c) { c.ks = {1, 2, 3}; }},
  };

  std::vector<CLI::App*> subs;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    subs.push_back(sub);
    sub->add_option("--config", o.config, "TOML-style config file; flags override it");
    add_value(sub, o, "--function", "function", "Catalog name, g_t, or {name=..., pieces=[...]}");
    add_value(sub, o, "--measure", "measure", "lebesgue or {pieces=[[a,b,d],...], atoms=[[x,m],...]}");
    sub->add_option("--p", o.ps, "Norm exponent(s), integers in [1, 8]");
    sub->add_option("--eps", o.eps, "Target accuracy or accuracy schedule");
    add_value(sub, o, "--tie", "tie", "rightmost or leftmost");
    add_value(sub, o, "--csv", "csv", "CSV output path (stdout when absent)");
    add_value(sub, o, "--svg", "svg", "SVG chart output path");
    add_value(sub, o, "--max-iters", "max_iters", "Box limit for eps-driven runs");
    add_value(sub, o, "--gt-exponent", "gt_exponent", "Budget exponent of the g_t family");
    sub->add_flag("--check", o.check, "Exit with status 3 when a checked bound fails");
    if (cmd.name == "run") {
      add_value(sub, o, "--policy", "policy", "area, width or alternate");
      add_value(sub, o, "--trace-out", "trace_out", "Per-iteration trace CSV");
      sub->add_flag("--true-error", o.true_error, "Meter the true error at every iteration");
    }
    if (cmd.name == "integrate" || cmd.needs_algorithms) {
      add_value(sub, o, "--seeds", "seeds", "Number of seeds");
      add_value(sub, o, "--seed-base", "seed_base", "First seed");
    }
    if (cmd.needs_algorithms) {
      sub->add_option("--algorithms", o.algorithms,
                      "Subset of greedybox, greedywidthbox, trapezoid, stochastic");
      sub->add_option("--budgets", o.budgets, "Evaluation budgets");
    }
    if (cmd.name == "complexity") {
      sub->add_option("--functions", o.functions, "Functions to tabulate");
      add_value(sub, o, "--grid-points", "grid_points", "Uniform grid size for the oracle");
    }
    if (cmd.name == "fig2") add_value(sub, o, "--iterations", "iterations", "Boxes to build");
    if (cmd.name == "adversary") sub->add_option("--k", o.ks, "Oscillator parameters");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : monobox::cli::kExitConfig;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      const ExperimentConfig cfg = build_config(commands[i], o, subs[i]);
      return commands[i].run(cfg);
    } catch (const ConfigError& e) {
      std::fprintf(stderr, "config error: %s\n", e.what());
      return monobox::cli::kExitConfig;
    } catch (const monobox::ResourceError& e) {
      std::fprintf(stderr, "resource error: %s\n", e.what());
      return monobox::cli::kExitConfig;
    } catch (const monobox::Error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  return 1;
}
