#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotamp/prior.hpp"
#include "rotamp/quadrature.hpp"
#include "rotamp/replica.hpp"
#include "rotamp/spectrum.hpp"

namespace rotamp::cli {

// Every key a config file may hold. Unknown keys are a ConfigError.
struct ExperimentConfig {
  nlohmann::json prior = "rademacher";
  nlohmann::json law = "two_point(1, 0.05)";
  int n = 1000;
  int m = 0;  // 0: ceil(1.2 n)
  std::vector<int> ns{8, 12, 16};
  int T = 10;
  int reps = 400;
  int seeds = 10;
  std::uint64_t seed = 1;
  std::string init = "noninformative";  // or "stationary"
  double gamma2_1 = 0.0;                // 0: 1 / rho*
  double tol = 1e-13;
  int max_iter = 10000;
  double damping = 1.0;
  std::vector<double> starts;
  int quad_order = kDefaultQuadOrder;
  int quad2_order = kDefaultQuad2Order;
  int threads = 0;  // 0: machine parallelism
  std::string out = ".";
  bool resume = false;
  bool average_over_A = false;
  std::uint64_t max_configs = std::uint64_t{1} << 20;
  double divergence_factor = 1e3;

  AtomPrior make_prior() const;
  SpectralLaw make_law() const;
  FixedPointOptions fixed_point_options() const;
  int m_for(int n_) const;  // m, or the default aspect for n_
  int thread_count() const;
};

// Reads a JSON file; parse errors carry line and column.
nlohmann::json read_config_file(const std::string& path);

// Applies `file` then `overrides` (flags win) over the defaults and validates.
ExperimentConfig resolve_config(const nlohmann::json& file, const nlohmann::json& overrides = nlohmann::json::object());

nlohmann::json to_json(const ExperimentConfig& c);

}  // namespace rotamp::cli
