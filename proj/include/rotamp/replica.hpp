#pragma once

#include <string>
#include <vector>

#include "rotamp/channel.hpp"
#include "rotamp/fixed_point.hpp"
#include "rotamp/prior.hpp"
#include "rotamp/spectrum.hpp"

namespace rotamp {

struct FixedPointOptions {
  // Weight on h(x) in x <- (1 - damping) x + damping h(x).
  double damping = 1.0;
  double tol = 1e-13;
  int max_iter = 10000;
  // Starting points in [0, rho*]; empty means {rho*}.
  std::vector<double> starts;
};

// Solves eta^-1 = mmse(gamma), gamma = -R(eta^-1) through h(x) = mmse(-R(x)).
FixedPoint solve_fixed_point(const ScalarChannel& ch, const SpectralLaw& law, const FixedPointOptions& opts = {});
FixedPoint solve_fixed_point(const AtomPrior& prior, const SpectralLaw& law, const FixedPointOptions& opts = {},
                             const Quadrature& quad = gauss_hermite());

// Fills every derived field of a FixedPoint from (eta_inv, gamma).
FixedPoint complete_fixed_point(const ScalarChannel& ch, const SpectralLaw& law, double eta_inv, double gamma);

double i_rs(const ScalarChannel& ch, const SpectralLaw& law, double eta_inv, double gamma);
double i_rs(const AtomPrior& prior, const SpectralLaw& law, double eta_inv, double gamma,
            const Quadrature& quad = gauss_hermite());
// Gradient of i_rs in (eta_inv, gamma).
struct Gradient2 {
  double d_eta_inv = 0.0;
  double d_gamma = 0.0;
};
Gradient2 i_rs_gradient(const ScalarChannel& ch, const SpectralLaw& law, double eta_inv, double gamma);

double psi_rs(const ScalarChannel& ch, const SpectralLaw& law, const FixedPoint& fp);
double psi_rs(const AtomPrior& prior, const SpectralLaw& law, const FixedPoint& fp,
              const Quadrature& quad = gauss_hermite());

// Absolute residuals of the resolvent-moment identities at a fixed point.
struct IdentityReport {
  double d_a = 0.0;
  double d_b = 0.0;
  double d_c = 0.0;
  double d_d = 0.0;
  double d_e = 0.0;
  double mean_l = 0.0;       // E L
  double second_l = 0.0;     // E L^2 - kappa
  double second_eb = 0.0;    // E E_b^2 - b
  double d2_l = 0.0;         // E D^2 L - a
  double d2_l2 = 0.0;        // E D^2 L^2 - c
  double d2_eb2 = 0.0;       // E D^2 E_b^2 - e
  double b_plus_sigma = 0.0; // b + sigma^2 - 1/gamma
  bool degenerate = false;

  double max_lemma() const;
  double max_all() const;
};
IdentityReport check_identities(const FixedPoint& fp, const SpectralLaw& law);

struct SmallEpsBound {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
};
struct SmallEpsReport {
  double constant = 0.0;
  std::vector<SmallEpsBound> bounds;
  bool all_pass() const;
};
inline constexpr double kSmallEpsConstant = 10.0;
SmallEpsReport small_eps_report(const FixedPoint& fp, const SpectralLaw& law, double constant = kSmallEpsConstant);

enum class SeInitMode { noninformative, stationary };

// Row t holds gamma_{1,t}, eta_{1,t+1}, gamma_{2,t}, eta_{2,t}: the two precisions
// predicted for f(r_1^t) and for the ridge estimate at iteration t.
struct SeStep {
  double gamma1 = 0.0;
  double eta1 = 0.0;
  double gamma2 = 0.0;
  double eta2 = 0.0;
};

struct StateEvolution {
  std::vector<SeStep> steps;
  SeInitMode init_mode = SeInitMode::noninformative;
  int T() const { return static_cast<int>(steps.size()); }
};

struct SeInit {
  SeInitMode mode = SeInitMode::noninformative;
  double gamma2_1 = 0.0;
  FixedPoint fp;

  static SeInit noninformative(double gamma2_1);
  static SeInit stationary(const FixedPoint& fp);
};

StateEvolution state_evolution(const ScalarChannel& ch, const SpectralLaw& law, const SeInit& init, int T);
// Constant sequences (gamma*, eta*, eta* - gamma*, eta*) without recomputation.
StateEvolution stationary_state_evolution(const FixedPoint& fp, int T);

}  // namespace rotamp
