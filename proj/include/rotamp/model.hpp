#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "rotamp/haar.hpp"
#include "rotamp/prior.hpp"
#include "rotamp/spectrum.hpp"

namespace rotamp {

// y = D O beta* + eps with D the m x n matrix carrying d_diag on its diagonal.
struct Instance {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  Eigen::VectorXd d_diag;  // length min(n, m)
  Eigen::VectorXd dsq;     // diagonal of D^T D, length n (zeros beyond min(n, m))
  HaarOrthogonal O;
  Eigen::VectorXd beta_star;
  Eigen::VectorXd eps;
  Eigen::VectorXd y;

  int k() const { return static_cast<int>(d_diag.size()); }
  Eigen::VectorXd apply_A(const Eigen::VectorXd& x) const;    // A x, length m
  Eigen::VectorXd apply_At(const Eigen::VectorXd& v) const;   // A^T v, length n
  Eigen::VectorXd apply_AtA(const Eigen::VectorXd& x) const;  // A^T A x
  Eigen::VectorXd dt_y() const;                               // D^T y, length n
  Eigen::MatrixXd dense_A() const;
};

// Diagonal of D^T D: largest-remainder quantile counts of the law atoms over n
// slots, randomly permuted. With m < n the law must supply n - m zero atoms,
// which occupy the slots without a singular value.
Eigen::VectorXd assign_spectrum(const SpectralLaw& law, int n, int m, Rng& rng);

Instance sample_instance(const SpectralLaw& law, const AtomPrior& prior, int n, int m, std::uint64_t seed);
// Redraws (beta*, eps) and y for replicate `rep` of the same design.
void resample_signal(Instance& inst, const AtomPrior& prior, std::uint64_t seed, std::uint64_t rep);
void recompute_y(Instance& inst);

struct ExactPosterior {
  double log_z = 0.0;
  Eigen::VectorXd mean;
  double self_overlap = 0.0;  // n^-1 <|sigma - beta*|^2>
  double mmse_n = 0.0;        // n^-1 |beta* - <sigma>|^2
  std::uint64_t config_count = 0;
};

inline constexpr std::uint64_t kDefaultMaxConfigs = std::uint64_t{1} << 20;

// Brute force over all prior configurations in reflected Gray-code order.
ExactPosterior exact_posterior(const Instance& inst, const AtomPrior& prior,
                               std::uint64_t max_configs = kDefaultMaxConfigs, int threads = 1);
// Same sums in lexicographic order with A sigma recomputed per configuration.
ExactPosterior exact_posterior_naive(const Instance& inst, const AtomPrior& prior,
                                     std::uint64_t max_configs = kDefaultMaxConfigs);
// Number of configurations, or 0 on overflow past max_configs.
std::uint64_t config_count(const AtomPrior& prior, int n, std::uint64_t max_configs);

// -n^-1 (log Z + |eps|^2 / 2): unbiased for the normalized mutual information
// I(beta*; y | A) / n whatever the aspect ratio.
double mutual_info_sample(const Instance& inst, const ExactPosterior& post);

struct MutualInfoEstimate {
  double i_n_hat = 0.0;
  double stderr_ = 0.0;
  int reps = 0;
};

// Fixes one design (or a fresh one per replicate when average_over_A) and
// averages the per-replicate mutual information over reps draws of (beta*, eps).
MutualInfoEstimate mutual_info_mc(const SpectralLaw& law, const AtomPrior& prior, int n, int m, int reps,
                                  std::uint64_t seed, bool average_over_A = false, int threads = 1,
                                  std::uint64_t max_configs = kDefaultMaxConfigs);

struct GaussianReference {
  double log_z = 0.0;
  Eigen::VectorXd mean;
  double mmse_n = 0.0;
};

// Posterior of beta ~ N(0, rho I) through the SVD factors.
GaussianReference gaussian_reference(const Instance& inst, double rho_star);

// Versioned binary container: magic, version, n, m, seed, then factor arrays.
void write_instance(const std::string& path, const Instance& inst);
Instance read_instance(const std::string& path);

}  // namespace rotamp
