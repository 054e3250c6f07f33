#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rotamp/channel.hpp"
#include "rotamp/model.hpp"
#include "rotamp/replica.hpp"

namespace rotamp {

struct VampRecord {
  int t = 0;
  double mse1 = 0.0;  // n^-1 |f(r_1^t, gamma_{1,t}) - beta*|^2
  double mse2 = 0.0;  // n^-1 |beta_hat_2^t - beta*|^2
  double eta1_inv_pred = 0.0;
  double eta2_inv_pred = 0.0;
};

struct VampRun {
  int T = 0;
  std::vector<VampRecord> records;
  Eigen::VectorXd beta_hat1;
  Eigen::VectorXd beta_hat2;
  // Columns r^1..r^T, filled only when keep_history is set.
  Eigen::MatrixXd r1_history;
  Eigen::MatrixXd r2_history;
};

struct VampOptions {
  bool keep_history = false;
  // Abort once an mse exceeds this multiple of rho*.
  double divergence_factor = 1e3;
};

// VAMP with the deterministic parameters of `se`, T = se.T() iterations.
VampRun run_vamp(const Instance& inst, const ScalarChannel& ch, const StateEvolution& se,
                 const Eigen::VectorXd& r2_1, const VampOptions& opts = {});
// Computes the schedule from gamma2_1 first.
VampRun run_vamp(const Instance& inst, const ScalarChannel& ch, const SpectralLaw& law, int T,
                 const Eigen::VectorXd& r2_1, double gamma2_1, const VampOptions& opts = {});

// r_2^1 produced by r_1^0 = beta* + p0 at gamma_{1,0} = gamma*.
Eigen::VectorXd stationary_r2_init(const ScalarChannel& ch, const FixedPoint& fp, const Eigen::VectorXd& beta_star,
                                   const Eigen::VectorXd& p0);
// p0 ~ N(0, I / gamma*) from the labelled stream of `seed`.
Eigen::VectorXd sample_p0(int n, double gamma_star, std::uint64_t seed);

struct StationaryRun {
  int T = 0;
  Eigen::MatrixXd X;  // n x T, columns x^1..x^T
  Eigen::MatrixXd S;  // O X
  Eigen::MatrixXd Y;  // O^T Lambda S
  Eigen::VectorXd e;
  Eigen::VectorXd e_b;
  Eigen::VectorXd p0;
  Eigen::VectorXd diag_lambda;
};

StationaryRun run_stationary_vamp(const Instance& inst, const ScalarChannel& ch, const FixedPoint& fp,
                                  std::uint64_t seed, int T);

struct EmpiricalOverlaps {
  Eigen::MatrixXd xtx;  // X^T X / n
  Eigen::MatrixXd yty;  // Y^T Y / n
  Eigen::VectorXd xte;  // X^T e / n
  Eigen::VectorXd yte;  // Y^T e / n
  Eigen::MatrixXd xty;  // X^T Y / n
  double ete = 0.0;     // e^T e / n
};

EmpiricalOverlaps empirical_overlaps(const StationaryRun& run);

// n^-1 |m - f(-(A^T A m - gamma m - A^T y) / gamma, gamma)|^2
double tap_residual(const Instance& inst, const ScalarChannel& ch, double gamma_star, const Eigen::VectorXd& m_vec);

}  // namespace rotamp
