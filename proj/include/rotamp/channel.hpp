#pragma once

#include <functional>
#include <string>

#include "rotamp/prior.hpp"
#include "rotamp/quadrature.hpp"

namespace rotamp {

// Scalar Gaussian channel Y = X + Z/sqrt(gamma) for a given signal law. The
// replica and state-evolution code only sees this interface, so the Gaussian
// reference prior and atomic priors share one solver.
class ScalarChannel {
 public:
  virtual ~ScalarChannel() = default;

  virtual double rho_star() const = 0;
  virtual Denoised denoise(double y, double gamma) const = 0;
  virtual double mmse(double gamma) const = 0;
  virtual double mmse_prime(double gamma) const = 0;
  // E log c_pi(-gamma/2, gamma X + sqrt(gamma) Z)
  virtual double expected_log_cpi(double gamma) const = 0;
  // E fn(X) over the signal law.
  virtual double expect_signal(const std::function<double(double)>& fn) const = 0;
  virtual std::string name() const = 0;
  // Rule used for expectations over the channel noise.
  virtual const Quadrature& quadrature() const = 0;

  double mutual_info(double gamma) const { return 0.5 * gamma * rho_star() - expected_log_cpi(gamma); }
};

class PriorChannel final : public ScalarChannel {
 public:
  explicit PriorChannel(AtomPrior prior, Quadrature quad = gauss_hermite());

  const AtomPrior& prior() const { return prior_; }
  const Quadrature& quadrature() const override { return quad_; }

  double rho_star() const override { return prior_.rho_star(); }
  Denoised denoise(double y, double gamma) const override { return rotamp::denoise(prior_, y, gamma); }
  double mmse(double gamma) const override { return rotamp::mmse(prior_, gamma, quad_); }
  double mmse_prime(double gamma) const override { return rotamp::mmse_prime(prior_, gamma, quad_); }
  double expected_log_cpi(double gamma) const override { return rotamp::expected_log_cpi(prior_, gamma, quad_); }
  double expect_signal(const std::function<double(double)>& fn) const override;
  std::string name() const override { return "atoms"; }

 private:
  AtomPrior prior_;
  Quadrature quad_;
};

// N(0, rho) signal: every channel quantity is closed form.
class GaussianChannel final : public ScalarChannel {
 public:
  explicit GaussianChannel(double rho, Quadrature quad = gauss_hermite());

  double rho_star() const override { return rho_; }
  Denoised denoise(double y, double gamma) const override;
  double mmse(double gamma) const override;
  double mmse_prime(double gamma) const override;
  double expected_log_cpi(double gamma) const override;
  double expect_signal(const std::function<double(double)>& fn) const override;
  std::string name() const override { return "gaussian"; }
  const Quadrature& quadrature() const override { return quad_; }

 private:
  double rho_;
  Quadrature quad_;
};

// Stationary nonlinearity F(p, beta) and its p-derivative.
double f_stationary(const ScalarChannel& ch, double p, double beta, const FixedPoint& fp);
double f_stationary_prime(const ScalarChannel& ch, double p, double beta, const FixedPoint& fp);

}  // namespace rotamp
