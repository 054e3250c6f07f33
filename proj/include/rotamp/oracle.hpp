#pragma once

#include <cstdint>

#include "rotamp/model.hpp"

namespace rotamp {

// Enumeration-oracle statistics over reps draws of (beta*, eps) at one design.
struct OracleReport {
  int n = 0;
  int m = 0;
  int reps = 0;
  double i_n_hat = 0.0;
  double i_n_stderr = 0.0;
  double mmse_n_hat = 0.0;           // mean of n^-1 |beta* - <sigma>|^2
  double mmse_n_stderr = 0.0;
  double half_self_overlap_hat = 0.0;  // mean of (2n)^-1 <|sigma - beta*|^2>
  double nishimori_diff = 0.0;         // mean of the paired difference of the two
  double nishimori_stderr = 0.0;
  double tap_mean = 0.0;               // TAP residual of the exact posterior mean
  double tap_stderr = 0.0;
};

struct OracleOptions {
  bool average_over_A = false;
  int threads = 1;
  std::uint64_t max_configs = kDefaultMaxConfigs;
};

OracleReport run_oracle(const SpectralLaw& law, const AtomPrior& prior, int n, int m, int reps, std::uint64_t seed,
                        double gamma_star, const OracleOptions& opts = {});

}  // namespace rotamp
