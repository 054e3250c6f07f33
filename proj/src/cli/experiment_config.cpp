#include "rotamp/cli/experiment_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "rotamp/config.hpp"
#include "rotamp/error.hpp"

namespace rotamp::cli {

using nlohmann::json;

namespace {

template <class T>
void take(const json& j, const char* key, T& dst) {
  try {
    dst = j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("field '") + key + "': wrong type (" + j.dump() + ")");
  }
}

void take_int(const json& j, const char* key, int& dst) {
  if (!j.is_number_integer()) throw ConfigError(std::string("field '") + key + "': expected an integer");
  take(j, key, dst);
}

void take_u64(const json& j, const char* key, std::uint64_t& dst) {
  if (!j.is_number_unsigned())
    throw ConfigError(std::string("field '") + key + "': expected a non-negative integer");
  take(j, key, dst);
}

void take_double(const json& j, const char* key, double& dst) {
  if (!j.is_number()) throw ConfigError(std::string("field '") + key + "': expected a number");
  take(j, key, dst);
}

void apply(ExperimentConfig& c, const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [key, v] : j.items()) {
    const char* k = key.c_str();
    if (key == "prior") c.prior = v;
    else if (key == "law") c.law = v;
    else if (key == "n") take_int(v, k, c.n);
    else if (key == "m") take_int(v, k, c.m);
    else if (key == "ns") {
      if (!v.is_array()) throw ConfigError("field 'ns': expected an array of integers");
      c.ns.clear();
      for (const auto& e : v) {
        int x = 0;
        take_int(e, k, x);
        c.ns.push_back(x);
      }
    } else if (key == "T") take_int(v, k, c.T);
    else if (key == "reps") take_int(v, k, c.reps);
    else if (key == "seeds") take_int(v, k, c.seeds);
    else if (key == "seed") take_u64(v, k, c.seed);
    else if (key == "init") {
      if (!v.is_string()) throw ConfigError("field 'init': expected a string");
      c.init = v.get<std::string>();
    } else if (key == "gamma2_1") take_double(v, k, c.gamma2_1);
    else if (key == "tol") take_double(v, k, c.tol);
    else if (key == "max_iter") take_int(v, k, c.max_iter);
    else if (key == "damping") take_double(v, k, c.damping);
    else if (key == "starts") {
      if (!v.is_array()) throw ConfigError("field 'starts': expected an array of numbers");
      c.starts.clear();
      for (const auto& e : v) {
        double x = 0;
        take_double(e, k, x);
        c.starts.push_back(x);
      }
    } else if (key == "quad_order") take_int(v, k, c.quad_order);
    else if (key == "quad2_order") take_int(v, k, c.quad2_order);
    else if (key == "threads") take_int(v, k, c.threads);
    else if (key == "out") {
      if (!v.is_string()) throw ConfigError("field 'out': expected a string");
      c.out = v.get<std::string>();
    } else if (key == "resume") {
      if (!v.is_boolean()) throw ConfigError("field 'resume': expected true or false");
      c.resume = v.get<bool>();
    } else if (key == "average_over_A") {
      if (!v.is_boolean()) throw ConfigError("field 'average_over_A': expected true or false");
      c.average_over_A = v.get<bool>();
    } else if (key == "max_configs") take_u64(v, k, c.max_configs);
    else if (key == "divergence_factor") take_double(v, k, c.divergence_factor);
    else throw ConfigError("unknown key '" + key + "'");
  }
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void validate(const ExperimentConfig& c) {
  c.make_prior();
  c.make_law();
  require(c.n >= 1, "field 'n': must be >= 1");
  require(c.m >= 0, "field 'm': must be >= 1 (or 0 for ceil(1.2 n))");
  require(!c.ns.empty(), "field 'ns': must not be empty");
  for (int x : c.ns) require(x >= 1, "field 'ns': sizes must be >= 1");
  require(c.T >= 1, "field 'T': must be >= 1");
  require(c.reps >= 2, "field 'reps': must be >= 2");
  require(c.seeds >= 1, "field 'seeds': must be >= 1");
  require(c.init == "noninformative" || c.init == "stationary", "field 'init': expected 'noninformative' or 'stationary'");
  require(c.gamma2_1 >= 0.0, "field 'gamma2_1': must be positive (or 0 for 1/rho*)");
  require(c.tol > 0.0, "field 'tol': must be positive");
  require(c.max_iter >= 1, "field 'max_iter': must be >= 1");
  require(c.damping > 0.0 && c.damping <= 1.0, "field 'damping': must lie in (0, 1]");
  require(c.quad_order >= 2, "field 'quad_order': must be >= 2");
  require(c.quad2_order >= 2, "field 'quad2_order': must be >= 2");
  require(c.threads >= 0, "field 'threads': must be >= 0");
  require(!c.out.empty(), "field 'out': must not be empty");
  require(c.max_configs >= 1, "field 'max_configs': must be >= 1");
  require(c.divergence_factor > 0.0, "field 'divergence_factor': must be positive");
}

}  // namespace

AtomPrior ExperimentConfig::make_prior() const { return parse_prior(prior); }

SpectralLaw ExperimentConfig::make_law() const { return parse_law(law); }

FixedPointOptions ExperimentConfig::fixed_point_options() const {
  FixedPointOptions o;
  o.tol = tol;
  o.max_iter = max_iter;
  o.damping = damping;
  o.starts = starts;
  return o;
}

int ExperimentConfig::m_for(int n_) const { return m > 0 ? m : (6 * n_ + 4) / 5; }

int ExperimentConfig::thread_count() const {
  return threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

ExperimentConfig resolve_config(const json& file, const json& overrides) {
  ExperimentConfig c;
  if (!file.is_null()) apply(c, file);
  apply(c, overrides);
  validate(c);
  return c;
}

json to_json(const ExperimentConfig& c) {
  return json{{"prior", c.prior},
              {"law", c.law},
              {"n", c.n},
              {"m", c.m},
              {"ns", c.ns},
              {"T", c.T},
              {"reps", c.reps},
              {"seeds", c.seeds},
              {"seed", c.seed},
              {"init", c.init},
              {"gamma2_1", c.gamma2_1},
              {"tol", c.tol},
              {"max_iter", c.max_iter},
              {"damping", c.damping},
              {"starts", c.starts},
              {"quad_order", c.quad_order},
              {"quad2_order", c.quad2_order},
              {"threads", c.threads},
              {"out", c.out},
              {"resume", c.resume},
              {"average_over_A", c.average_over_A},
              {"max_configs", c.max_configs},
              {"divergence_factor", c.divergence_factor}};
}

}  // namespace rotamp::cli
