#pragma once

#include <string>
#include <vector>

namespace rotamp {

// One solution (eta^-1, gamma) of the replica fixed-point system found from some start.
struct FixedPointCandidate {
  double start = 0.0;
  double eta_inv = 0.0;
  double gamma = 0.0;
  double i_rs = 0.0;
  int iterations = 0;
};

// Solution of  eta^-1 = mmse(gamma),  gamma = -R(eta^-1),  with every scalar
// derived from it. eta = 1/eta_inv_star.
struct FixedPoint {
  double eta_inv_star = 0.0;
  double gamma_star = 0.0;
  double residual = 0.0;

  double delta_star = 0.0;     // 1/(eta - gamma)
  double kappa_star = 0.0;     // E[L^2]
  double sigma_sq_star = 0.0;  // delta * kappa
  double b_star = 0.0;         // 1/gamma - kappa/(eta - gamma)

  double a_star = 0.0;
  double c_star = 0.0;
  double e_star = 0.0;
  double alpha_A = 0.0;
  double alpha_B = 0.0;
  double pi_star = 0.0;

  double i_rs = 0.0;
  double psi_rs = 0.0;

  // The spectral law has zero variance: kappa_star = 0 and alpha_A is infinite.
  bool degenerate = false;
  int iterations = 0;
  std::string method;
  std::vector<FixedPointCandidate> candidates;

  double eta_star() const { return 1.0 / eta_inv_star; }
  double eta_minus_gamma() const { return eta_star() - gamma_star; }
  bool valid() const { return eta_inv_star > 0.0 && gamma_star > 0.0 && eta_star() > gamma_star; }
};

}  // namespace rotamp
