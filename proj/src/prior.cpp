#include "rotamp/prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rotamp/error.hpp"

namespace rotamp {

AtomPrior::AtomPrior(std::vector<Atom> atoms) {
  if (atoms.empty()) throw DomainError("prior: no atoms");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.value) || !std::isfinite(a.weight)) throw DomainError("prior: non-finite atom");
    if (!(a.weight > 0.0)) throw DomainError("prior: weights must be strictly positive");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("prior: weights must sum to 1");

  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.value < r.value; });
  for (const auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().value == a.value)
      atoms_.back().weight += a.weight;
    else
      atoms_.push_back(a);
  }
  if (atoms_.size() < 2) throw DomainError("prior: a single atom has zero variance");

  double mean = 0.0;
  for (auto& a : atoms_) {
    a.weight /= total;
    mean += a.weight * a.value;
  }
  for (auto& a : atoms_) {
    a.value -= mean;
    rho_star_ += a.weight * a.value * a.value;
    c_bound_ = std::max(c_bound_, a.value * a.value);
  }
}

AtomPrior AtomPrior::rademacher() { return AtomPrior({{-1.0, 0.5}, {1.0, 0.5}}); }

AtomPrior AtomPrior::three_point(double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw DomainError("three_point: p0 must lie in (0,1)");
  const double s = 1.0 / std::sqrt(1.0 - p0);
  const double w = 0.5 * (1.0 - p0);
  return AtomPrior({{-s, w}, {0.0, p0}, {s, w}});
}

double AtomPrior::entropy() const {
  double h = 0.0;
  for (const auto& a : atoms_) h -= a.weight * std::log(a.weight);
  return h;
}

double AtomPrior::min_value() const { return atoms_.front().value; }
double AtomPrior::max_value() const { return atoms_.back().value; }

namespace {

// Posterior weights are proportional to w_i exp(a x_i^2 + b x_i). Writes the
// shifted log-normalizer to *log_norm and returns mean and second moment.
struct Tilted {
  double log_norm;
  double m1;
  double m2;
};

Tilted tilt(const AtomPrior& prior, double a, double b) {
  const auto atoms = prior.atoms();
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& at : atoms) top = std::max(top, std::log(at.weight) + a * at.value * at.value + b * at.value);
  double z = 0.0, m1 = 0.0, m2 = 0.0;
  for (const auto& at : atoms) {
    const double p = std::exp(std::log(at.weight) + a * at.value * at.value + b * at.value - top);
    z += p;
    m1 += p * at.value;
    m2 += p * at.value * at.value;
  }
  return {top + std::log(z), m1 / z, m2 / z};
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("snr must be positive and finite");
}

}  // namespace

Denoised denoise(const AtomPrior& prior, double y, double gamma) {
  check_gamma(gamma);
  const Tilted t = tilt(prior, -0.5 * gamma, gamma * y);
  const double var = std::max(0.0, t.m2 - t.m1 * t.m1);
  return {t.m1, gamma * var};
}

double mmse(const AtomPrior& prior, double gamma, const Quadrature& quad) {
  check_gamma(gamma);
  const double s = 1.0 / std::sqrt(gamma);
  double acc = 0.0;
  for (const auto& x : prior.atoms())
    acc += x.weight * quad.expect([&](double z) { return denoise(prior, x.value + s * z, gamma).f_prime; });
  return acc / gamma;
}

double mmse_prime(const AtomPrior& prior, double gamma, const Quadrature& quad) {
  check_gamma(gamma);
  const double s = 1.0 / std::sqrt(gamma);
  double acc = 0.0;
  for (const auto& x : prior.atoms())
    acc += x.weight * quad.expect([&](double z) {
      const double v = denoise(prior, x.value + s * z, gamma).f_prime / gamma;
      return v * v;
    });
  return -acc;
}

double log_cpi(const AtomPrior& prior, double a, double b) { return tilt(prior, a, b).log_norm; }

double expected_log_cpi(const AtomPrior& prior, double gamma, const Quadrature& quad) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("snr must be nonnegative and finite");
  const double s = std::sqrt(gamma);
  double acc = 0.0;
  for (const auto& x : prior.atoms())
    acc += x.weight * quad.expect([&](double z) { return log_cpi(prior, -0.5 * gamma, gamma * x.value + s * z); });
  return acc;
}

double mutual_info(const AtomPrior& prior, double gamma, const Quadrature& quad) {
  return 0.5 * gamma * prior.rho_star() - expected_log_cpi(prior, gamma, quad);
}

double f_stationary(const AtomPrior& prior, double p, double beta, const FixedPoint& fp) {
  if (!fp.valid()) throw DomainError("fixed point must satisfy eta > gamma > 0");
  const double eta = fp.eta_star(), gamma = fp.gamma_star, s = eta - gamma;
  return (eta / s) * denoise(prior, p + beta, gamma).f - (gamma / s) * p - (eta / s) * beta;
}

double f_stationary_prime(const AtomPrior& prior, double p, double beta, const FixedPoint& fp) {
  if (!fp.valid()) throw DomainError("fixed point must satisfy eta > gamma > 0");
  const double eta = fp.eta_star(), gamma = fp.gamma_star, s = eta - gamma;
  return (eta / s) * denoise(prior, p + beta, gamma).f_prime - gamma / s;
}

}  // namespace rotamp
