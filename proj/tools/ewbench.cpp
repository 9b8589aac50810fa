#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ewbench/run.hpp"

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s)) out.push_back(std::stod(item));
  return out;
}

// Flag values live here; they are copied into the config only when given, so
// flags override the JSON config file.
struct Flags {
  std::string config, case_name, beta, F, K, Phi, H, A, B, gauge, psi_c, psi_k, checks, chart, ells, expr, vars, at,
      out;
  std::vector<std::string> guards;
  double ell = 0, c = 0, tol = 0;
  int points = 0, order = 0;
  std::uint64_t seed = 0;
  bool fixed_base = false;
};

using Apply = std::function<void(ewb::RunConfig&)>;

void add_options(CLI::App* sub, Flags& f, std::vector<std::pair<CLI::Option*, Apply>>& opts) {
  const auto str = [&](const char* name, std::string& var, std::string ewb::RunConfig::*field, const char* help) {
    opts.emplace_back(sub->add_option(name, var, help), [&var, field](ewb::RunConfig& c) { c.*field = var; });
  };
  sub->add_option("--config", f.config, "JSON config file; flags override its keys");
  str("--case", f.case_name, &ewb::RunConfig::case_name, "heisenberg|class-a|class-b|class-c|from-H|from-G");
  str("--beta", f.beta, &ewb::RunConfig::beta, "Class A heat solution beta(y, t)");
  str("--F", f.F, &ewb::RunConfig::F, "Class B function F(p, y, t)");
  str("--K", f.K, &ewb::RunConfig::K, "Class C function K(s)");
  str("--Phi", f.Phi, &ewb::RunConfig::Phi, "Class C function Phi(s)");
  str("--H", f.H, &ewb::RunConfig::H, "potential H(x, y, t)");
  str("--A", f.A, &ewb::RunConfig::A, "generator part A(p, t)");
  str("--B", f.B, &ewb::RunConfig::B, "generator part B(y, t)");
  str("--f,--gauge", f.gauge, &ewb::RunConfig::gauge, "gauge factor applied to the base");
  str("--psi-c", f.psi_c, &ewb::RunConfig::psi_c, "psi = c omega + d(c + k): c");
  str("--psi-k", f.psi_k, &ewb::RunConfig::psi_k, "psi = c omega + d(c + k): k");
  str("--chart", f.chart, &ewb::RunConfig::chart, "lift chart: alpha|regular|both");
  str("--expr", f.expr, &ewb::RunConfig::expr, "eval: expression");
  str("--vars", f.vars, &ewb::RunConfig::vars, "eval: comma-separated variables");
  str("--out", f.out, &ewb::RunConfig::out, "report path (default stdout)");
  opts.emplace_back(sub->add_option("--ell", f.ell, "scale l"), [&f](ewb::RunConfig& c) {
    c.ell = f.ell;
    c.ell_set = true;
  });
  opts.emplace_back(sub->add_option("--c", f.c, "psi = c omega"), [&f](ewb::RunConfig& c) { c.c = f.c; });
  opts.emplace_back(sub->add_option("--tol", f.tol, "tolerance"), [&f](ewb::RunConfig& c) { c.tol = f.tol; });
  opts.emplace_back(sub->add_option("--points,--count", f.points, "sample size"),
                    [&f](ewb::RunConfig& c) { c.points = f.points; });
  opts.emplace_back(sub->add_option("--seed", f.seed, "sampling seed"), [&f](ewb::RunConfig& c) { c.seed = f.seed; });
  opts.emplace_back(sub->add_option("--order", f.order, "eval: jet order"),
                    [&f](ewb::RunConfig& c) { c.order = f.order; });
  opts.emplace_back(sub->add_option("--checks", f.checks, "comma-separated checks"),
                    [&f](ewb::RunConfig& c) { c.checks = split(f.checks); });
  opts.emplace_back(sub->add_option("--ells", f.ells, "limit: comma-separated l values"),
                    [&f](ewb::RunConfig& c) { c.ells = split_doubles(f.ells); });
  opts.emplace_back(sub->add_option("--at", f.at, "eval: comma-separated point"),
                    [&f](ewb::RunConfig& c) { c.at = split_doubles(f.at); });
  opts.emplace_back(sub->add_option("--guard", f.guards, "extra guard expr > 0 (repeatable)"),
                    [&f](ewb::RunConfig& c) { c.guards = f.guards; });
  opts.emplace_back(sub->add_flag("--fixed-base", f.fixed_base, "limit: l-independent base"),
                    [&f](ewb::RunConfig& c) { c.fixed_base = f.fixed_base; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Einstein-Weyl and Einstein-Maxwell verification bench"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<CLI::Option*, Apply>> opts;
  std::vector<CLI::App*> subs;
  for (const char* name : {"verify", "lift", "limit", "eval"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_options(sub, flags, opts);
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ewb::RunStatus::ConfigError);
  }

  ewb::RunConfig cfg;
  try {
    if (!flags.config.empty()) {
      std::ifstream in(flags.config);
      if (!in) throw std::runtime_error("cannot read config file " + flags.config);
      ewb::apply_json_config(cfg, nlohmann::json::parse(in));
    }
    for (auto& [opt, apply] : opts)
      if (opt->count() > 0) apply(cfg);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return static_cast<int>(ewb::RunStatus::ConfigError);
  }
  for (CLI::App* sub : subs)
    if (sub->parsed()) cfg.command = sub->get_name();

  const ewb::RunResult res = ewb::run(cfg);
  const std::string text = ewb::serialize(res.report);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out);
    if (!out) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return static_cast<int>(ewb::RunStatus::ConfigError);
    }
    out << text;
  }
  return static_cast<int>(res.status);
}
