#include "rotamp/channel.hpp"

#include <cmath>

#include "rotamp/error.hpp"

namespace rotamp {

namespace {

void check_fp(const FixedPoint& fp) {
  if (!fp.valid()) throw DomainError("fixed point must satisfy eta > gamma > 0");
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("snr must be positive and finite");
}

}  // namespace

PriorChannel::PriorChannel(AtomPrior prior, Quadrature quad) : prior_(std::move(prior)), quad_(std::move(quad)) {}

double PriorChannel::expect_signal(const std::function<double(double)>& fn) const {
  double acc = 0.0;
  for (const auto& a : prior_.atoms()) acc += a.weight * fn(a.value);
  return acc;
}

GaussianChannel::GaussianChannel(double rho, Quadrature quad) : rho_(rho), quad_(std::move(quad)) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("gaussian prior: variance must be positive");
}

Denoised GaussianChannel::denoise(double y, double gamma) const {
  check_gamma(gamma);
  const double s = gamma * rho_ / (1.0 + gamma * rho_);
  return {s * y, s};
}

double GaussianChannel::mmse(double gamma) const {
  check_gamma(gamma);
  return rho_ / (1.0 + rho_ * gamma);
}

double GaussianChannel::mmse_prime(double gamma) const {
  const double v = mmse(gamma);
  return -v * v;
}

double GaussianChannel::expected_log_cpi(double gamma) const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("snr must be nonnegative and finite");
  return -0.5 * std::log1p(gamma * rho_) + 0.5 * gamma * rho_;
}

double GaussianChannel::expect_signal(const std::function<double(double)>& fn) const {
  const double s = std::sqrt(rho_);
  return quad_.expect([&](double z) { return fn(s * z); });
}

double f_stationary(const ScalarChannel& ch, double p, double beta, const FixedPoint& fp) {
  check_fp(fp);
  const double eta = fp.eta_star(), gamma = fp.gamma_star, s = eta - gamma;
  return (eta / s) * ch.denoise(p + beta, gamma).f - (gamma / s) * p - (eta / s) * beta;
}

double f_stationary_prime(const ScalarChannel& ch, double p, double beta, const FixedPoint& fp) {
  check_fp(fp);
  const double eta = fp.eta_star(), gamma = fp.gamma_star, s = eta - gamma;
  return (eta / s) * ch.denoise(p + beta, gamma).f_prime - gamma / s;
}

}  // namespace rotamp
