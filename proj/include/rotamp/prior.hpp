#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rotamp/fixed_point.hpp"
#include "rotamp/quadrature.hpp"

namespace rotamp {

struct Atom {
  double value = 0.0;
  double weight = 0.0;
};

// Finite-support signal prior. The constructor normalizes the weights, merges
// repeated values and recenters the atoms to mean zero.
class AtomPrior {
 public:
  explicit AtomPrior(std::vector<Atom> atoms);

  static AtomPrior rademacher();
  // Mass p0 at 0 and (1-p0)/2 at +-1/sqrt(1-p0); unit variance.
  static AtomPrior three_point(double p0);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double rho_star() const { return rho_star_; }
  // Smallest c with support inside [-sqrt(c), sqrt(c)].
  double c_bound() const { return c_bound_; }
  double entropy() const;
  double min_value() const;
  double max_value() const;

 private:
  std::vector<Atom> atoms_;
  double rho_star_ = 0.0;
  double c_bound_ = 0.0;
};

struct Denoised {
  double f = 0.0;        // E[X | Y = y]
  double f_prime = 0.0;  // gamma * V[X | Y = y]
};

// Posterior mean in the channel Y = X + Z/sqrt(gamma), and its y-derivative.
Denoised denoise(const AtomPrior& prior, double y, double gamma);

double mmse(const AtomPrior& prior, double gamma, const Quadrature& quad);
// -E[V[X|Y]^2]
double mmse_prime(const AtomPrior& prior, double gamma, const Quadrature& quad);
double mutual_info(const AtomPrior& prior, double gamma, const Quadrature& quad);

// log sum_i w_i exp(a x_i^2 + b x_i)
double log_cpi(const AtomPrior& prior, double a, double b);
// E log c_pi(-gamma/2, gamma X + sqrt(gamma) Z) over X ~ prior, Z ~ N(0,1).
double expected_log_cpi(const AtomPrior& prior, double gamma, const Quadrature& quad);

// Nonlinearity of the stationary VAMP recursion (x -> F(y + e, beta)).
double f_stationary(const AtomPrior& prior, double p, double beta, const FixedPoint& fp);
double f_stationary_prime(const AtomPrior& prior, double p, double beta, const FixedPoint& fp);

}  // namespace rotamp
