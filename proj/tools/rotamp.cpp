#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotamp/cli/commands.hpp"
#include "rotamp/cli/experiment_config.hpp"
#include "rotamp/error.hpp"

namespace {

// Flag values seen on the command line; only these override the config file.
struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  std::string out, prior, law, init;
  int threads = 0, quad_order = 0, quad2_order = 0, n = 0, m = 0, T = 0, reps = 0, seeds = 0, max_iter = 0;
  double tol = 0, gamma2_1 = 0;
  std::uint64_t max_configs = 0;
  std::vector<int> ns;
  bool resume = false, average_over_A = false;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file");
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--threads", f.threads, "worker threads (0: all cores)");
  sub->add_option("--quad-order", f.quad_order, "Gauss-Hermite nodes for scalar expectations");
  sub->add_option("--quad2-order", f.quad2_order, "Gauss-Hermite nodes per axis for the overlap map");
  sub->add_option("--tol", f.tol, "fixed-point tolerance");
  sub->add_option("--max-iter", f.max_iter, "fixed-point iteration limit");
  sub->add_option("--prior", f.prior, "prior preset, e.g. rademacher or three_point(0.5)");
  sub->add_option("--law", f.law, "spectral law preset, e.g. two_point(1, 0.05)");
  sub->add_option("-n,--n", f.n, "signal dimension");
  sub->add_option("-m,--m", f.m, "observations (0: ceil(1.2 n))");
  sub->add_option("--ns", f.ns, "signal dimensions for the oracle sweep");
  sub->add_option("-T,--T", f.T, "iterations");
  sub->add_option("--reps", f.reps, "oracle replicates");
  sub->add_option("--seeds", f.seeds, "number of instance seeds, starting at --seed");
  sub->add_option("--init", f.init, "noninformative or stationary");
  sub->add_option("--gamma2-1", f.gamma2_1, "initial gamma_{2,1} (0: 1/rho*)");
  sub->add_option("--max-configs", f.max_configs, "enumeration budget");
  sub->add_flag("--resume", f.resume, "keep finished seeds of an existing simulate.csv");
  sub->add_flag("--average-over-A", f.average_over_A, "fresh design per oracle replicate");
}

nlohmann::json overrides(const CLI::App* sub, const Flags& f) {
  nlohmann::json j = nlohmann::json::object();
  auto given = [&](const char* flag) { return sub->count(flag) > 0; };
  if (given("--seed")) j["seed"] = f.seed;
  if (given("--out")) j["out"] = f.out;
  if (given("--threads")) j["threads"] = f.threads;
  if (given("--quad-order")) j["quad_order"] = f.quad_order;
  if (given("--quad2-order")) j["quad2_order"] = f.quad2_order;
  if (given("--tol")) j["tol"] = f.tol;
  if (given("--max-iter")) j["max_iter"] = f.max_iter;
  if (given("--prior")) j["prior"] = f.prior;
  if (given("--law")) j["law"] = f.law;
  if (given("--n")) j["n"] = f.n;
  if (given("--m")) j["m"] = f.m;
  if (given("--ns")) j["ns"] = f.ns;
  if (given("--T")) j["T"] = f.T;
  if (given("--reps")) j["reps"] = f.reps;
  if (given("--seeds")) j["seeds"] = f.seeds;
  if (given("--init")) j["init"] = f.init;
  if (given("--gamma2-1")) j["gamma2_1"] = f.gamma2_1;
  if (given("--max-configs")) j["max_configs"] = f.max_configs;
  if (given("--resume")) j["resume"] = f.resume;
  if (given("--average-over-A")) j["average_over_A"] = f.average_over_A;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replica-symmetric predictions and VAMP experiments for rotationally invariant linear models"};
  app.require_subcommand(1, 1);
  Flags flags;
  const std::map<std::string, std::string> about{
      {"fixed-point", "solve the replica-symmetric fixed point and report derived quantities"},
      {"state-evolution", "VAMP state-evolution recursion"},
      {"delta-table", "predicted overlap table delta_{s,t}"},
      {"simulate", "run VAMP on sampled instances and compare with state evolution"},
      {"stationary", "VAMP started at the fixed point; Gram blocks of the iterates"},
      {"oracle", "exact Bayes posterior by enumeration; Nishimori and mutual information"},
      {"gaussian-ref", "Gaussian-prior reference computed in closed form"},
      {"identities", "fixed-point identities and the small-spread expansion"}};
  for (const auto& name : rotamp::cli::command_names()) add_flags(app.add_subcommand(name, about.at(name)), flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rotamp::cli::kExitUsage;
  }
  const CLI::App* sub = app.get_subcommands().front();
  rotamp::cli::ExperimentConfig cfg;
  try {
    const nlohmann::json file = flags.config.empty() ? nlohmann::json() : rotamp::cli::read_config_file(flags.config);
    cfg = rotamp::cli::resolve_config(file, overrides(sub, flags));
  } catch (const rotamp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return rotamp::cli::kExitUsage;
  }
  return rotamp::cli::run_command(sub->get_name(), cfg, std::cout, std::cerr);
}
