#include <iostream>
#include <map>
#include <string>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "aoi/cli/run.hpp"
#include "aoi/error.hpp"

namespace aoi::cli {

namespace {

struct Flags {
  std::string config;
  int T = 0;
  int T1 = 0;
  int T2 = 0;
  std::string policy;
  std::string adversary;
  std::string p;
  std::uint64_t seed = 0;
  int cap = 0;
  std::uint64_t searchCap = 0;
  bool noSingleUpdate = false;
  std::string method;
  std::uint64_t samples = 0;
  int workers = 1;
  std::string grid;
  std::string out;
  std::string trace;
};

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config, "JSON experiment config; flags override its fields");
  sub.add_option("--T", f.T, "horizon length");
  sub.add_option("--T1", f.T1, "direct user update budget");
  sub.add_option("--T2", f.T2, "cache update budget");
  sub.add_option("--policy", f.policy, "hat|check|clairvoyant|idle|uniform or a .CU string");
  sub.add_option("--adversary", f.adversary,
                 "zeros|ones|bernoulli|enumerate|worst or a 0/1 string");
  sub.add_option("--p", f.p, "forward probability, e.g. 1/2 or 0.25");
  sub.add_option("--seed", f.seed, "random seed");
  sub.add_option("--cap", f.cap, "largest T for exhaustive sequence enumeration");
  sub.add_option("--search-cap", f.searchCap, "largest number of schedules to search");
  sub.add_flag("--no-single-update-constraint", f.noSingleUpdate,
               "allow several direct updates between cache updates");
  sub.add_option("--method", f.method, "propagation|enumeration|monte-carlo");
  sub.add_option("--samples", f.samples, "Monte Carlo sample count");
  sub.add_option("--workers", f.workers, "worker threads for sweeps");
  sub.add_option("--grid", f.grid, "audit grid name");
  sub.add_option("--out", f.out, "report file (JSON; CSV for audit)");
  sub.add_option("--trace", f.trace, "per-slot CSV trace (simulate)");
}

ExperimentConfig to_config(const CLI::App& sub, const Flags& f, Mode mode) {
  ExperimentConfig c;
  if (sub.count("--config") != 0U) c = config_from_json(load_config_document(f.config), false);
  c.mode = mode;
  auto given = [&](const char* name) { return sub.count(name) != 0U; };
  if (given("--T")) c.params.T = f.T;
  if (given("--T1")) c.params.T1 = f.T1;
  if (given("--T2")) c.params.T2 = f.T2;
  if (given("--policy")) c.policy = parse_policy(f.policy);
  if (given("--adversary")) c.adversary = parse_adversary(f.adversary);
  if (given("--p")) c.p = parse_rational(f.p);
  if (given("--seed")) c.seed = f.seed;
  if (given("--cap")) c.cap = f.cap;
  if (given("--search-cap")) c.searchCap = f.searchCap;
  if (f.noSingleUpdate) c.singleUpdate = false;
  if (given("--method")) c.method = parse_expectation_method(f.method);
  if (given("--samples")) c.samples = f.samples;
  if (given("--workers")) c.workers = f.workers;
  if (given("--grid")) c.grid = f.grid;
  if (given("--out")) c.out = f.out;
  if (given("--trace")) c.trace = f.trace;
  return c;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Age of information with a cache and a timestomping adversary"};
  app.require_subcommand(1);
  Flags flags;
  const std::map<std::string, std::pair<Mode, std::string>> commands{
      {"simulate", {Mode::Simulate, "run one schedule against one adversary sequence"}},
      {"expect", {Mode::Expect, "expected average age under random forwarding"}},
      {"ratio", {Mode::Ratio, "exact competitive ratio by full enumeration"}},
      {"worst", {Mode::Worst, "worst adversary sequence for a schedule"}},
      {"oracle", {Mode::Oracle, "offline optimal schedule for known sequences"}},
      {"yao", {Mode::Yao, "empirical minimax lower bound under fair coin flips"}},
      {"audit", {Mode::Audit, "closed forms against exact oracles, as CSV"}},
      {"search-best", {Mode::SearchBest, "best deterministic schedule under fair coin flips"}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.second);
    add_flags(*sub, flags);
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      return run(to_config(*sub, flags, commands.at(name).first), out, err);
    } catch (const ValidationError& e) {
      err << "error: " << e.what() << "\n";
      return kExitValidation;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitFailure;
    }
  }
  return kExitValidation;
}

}  // namespace aoi::cli
