#include "rotamp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rotamp/error.hpp"

namespace rotamp {

SpectralLaw::SpectralLaw(std::vector<SpectralAtom> atoms) {
  if (atoms.empty()) throw DomainError("spectral law: no atoms");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.dsq) || a.dsq < 0.0) throw DomainError("spectral law: D^2 atoms must be finite and >= 0");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) throw DomainError("spectral law: weights must be positive");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("spectral law: weights must sum to 1");
  std::sort(atoms.begin(), atoms.end(), [](const auto& l, const auto& r) { return l.dsq < r.dsq; });
  for (const auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().dsq == a.dsq)
      atoms_.back().weight += a.weight;
    else
      atoms_.push_back(a);
  }
  for (auto& a : atoms_) {
    a.weight /= total;
    d_star_ += a.weight * a.dsq;
  }
  if (!(d_star_ > 0.0)) throw DomainError("spectral law: mean of D^2 must be positive");
  for (const auto& a : atoms_) kappa2_ += a.weight * (a.dsq - d_star_) * (a.dsq - d_star_);
  eps_ = std::max(d_star_ - d_minus(), d_plus() - d_star_);
}

SpectralLaw SpectralLaw::point_mass(double d_star) { return SpectralLaw({{d_star, 1.0}}); }

SpectralLaw SpectralLaw::two_point(double d_star, double e) {
  if (!(e > 0.0) || e > d_star) throw DomainError("two_point: need 0 < e <= d_star");
  return SpectralLaw({{d_star - e, 0.5}, {d_star + e, 0.5}});
}

SpectralLaw SpectralLaw::uniform_grid(double d_star, double e, int k) {
  if (k < 2) throw DomainError("uniform_grid: need at least two atoms");
  if (!(e > 0.0) || e > d_star) throw DomainError("uniform_grid: need 0 < e <= d_star");
  std::vector<SpectralAtom> atoms;
  for (int i = 0; i < k; ++i) atoms.push_back({d_star - e + 2.0 * e * i / (k - 1), 1.0 / k});
  return SpectralLaw(std::move(atoms));
}

double SpectralLaw::weight_at(double dsq) const {
  for (const auto& a : atoms_)
    if (a.dsq == dsq) return a.weight;
  return 0.0;
}

namespace {

void check_g_domain(const SpectralLaw& law, double z) {
  if (!(z > -law.d_minus()) || !std::isfinite(z)) throw DomainError("cauchy transform: z must exceed -d_minus");
}

// Sum of w / (t + dsq - d_minus) with t = z + d_minus > 0.
double g_shifted(const SpectralLaw& law, double t) {
  double acc = 0.0;
  for (const auto& a : law.atoms()) acc += a.weight / (t + (a.dsq - law.d_minus()));
  return acc;
}

}  // namespace

double cauchy_g(const SpectralLaw& law, double z) {
  check_g_domain(law, z);
  double acc = 0.0;
  for (const auto& a : law.atoms()) acc += a.weight / (z + a.dsq);
  return acc;
}

double cauchy_g_prime(const SpectralLaw& law, double z) {
  check_g_domain(law, z);
  double acc = 0.0;
  for (const auto& a : law.atoms()) acc -= a.weight / ((z + a.dsq) * (z + a.dsq));
  return acc;
}

double cauchy_g_inverse(const SpectralLaw& law, double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("cauchy inverse: y must be positive");
  const double scale = std::max(1.0, law.d_plus());
  double lo = 1e-9 * scale;
  while (g_shifted(law, lo) <= y) lo *= 0.5;
  double hi = std::max(scale, 2.0 / y);
  while (g_shifted(law, hi) >= y) hi *= 2.0;
  for (int it = 0; it < 400 && hi - lo > 1e-13 * std::max(scale * 1e-3, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (g_shifted(law, mid) > y ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int k = 0; k < 2; ++k) {
    double g = 0.0, gp = 0.0;
    for (const auto& a : law.atoms()) {
      const double u = 1.0 / (t + (a.dsq - law.d_minus()));
      g += a.weight * u;
      gp -= a.weight * u * u;
    }
    const double next = t - (g - y) / gp;
    if (next > 0.0) t = next;
  }
  return t - law.d_minus();
}

namespace {

// phi(R) = E[c / (1 + z c)] with c = R + D^2; increasing in R, root is R(z).
struct RRoot {
  double r;
  double num;  // E c^2/(1+zc)^2
  double den;  // E 1/(1+zc)^2
};

RRoot r_root(const SpectralLaw& law, double z) {
  auto eval = [&](double r, double* dphi) {
    double phi = 0.0, d = 0.0;
    for (const auto& a : law.atoms()) {
      const double c = r + a.dsq;
      const double u = 1.0 / (1.0 + z * c);
      phi += a.weight * c * u;
      d += a.weight * u * u;
    }
    if (dphi) *dphi = d;
    return phi;
  };
  double lo = -law.d_star();
  const double pole = -1.0 / z - law.d_minus();
  if (lo <= pole) lo = pole + 1e-300 + std::abs(pole) * 4 * std::numeric_limits<double>::epsilon();
  double hi = 0.0;
  double r = -law.d_star() > pole ? -law.d_star() : 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double dphi = 0.0;
    const double phi = eval(r, &dphi);
    if (phi == 0.0) break;
    (phi < 0.0 ? lo : hi) = r;
    double next = r - phi / dphi;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 2 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(r))) {
      r = next;
      break;
    }
    r = next;
  }
  double num = 0.0, den = 0.0;
  for (const auto& a : law.atoms()) {
    const double c = r + a.dsq;
    const double u = 1.0 / (1.0 + z * c);
    num += a.weight * c * c * u * u;
    den += a.weight * u * u;
  }
  return {r, num, den};
}

void check_r_domain(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("R-transform: z must be >= 0 and finite");
}

}  // namespace

double r_transform(const SpectralLaw& law, double z) {
  check_r_domain(z);
  if (z == 0.0 || law.degenerate()) return -law.d_star();
  return r_root(law, z).r;
}

double r_transform_prime(const SpectralLaw& law, double z) {
  check_r_domain(z);
  if (law.degenerate()) return 0.0;
  if (z == 0.0) return law.kappa2();
  const RRoot rr = r_root(law, z);
  return rr.num / rr.den;
}

double r_integral(const SpectralLaw& law, double x) {
  check_r_domain(x);
  if (x == 0.0) return 0.0;
  if (law.degenerate()) return -law.d_star() * x;
  // Integrate R + d_star, which is O(z) and smooth, then add back the linear part.
  auto f = [&](double z) { return r_transform(law, z) + law.d_star(); };
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, x, 10, 1e-10, &err);
  return v - law.d_star() * x;
}

std::vector<double> central_moments(const SpectralLaw& law, int K) {
  if (K < 0) throw DomainError("central_moments: K must be >= 0");
  std::vector<double> mu(K + 1, 0.0);
  for (const auto& a : law.atoms()) {
    const double c = a.dsq - law.d_star();
    double p = 1.0;
    for (int k = 0; k <= K; ++k) {
      mu[k] += a.weight * p;
      p *= c;
    }
  }
  return mu;
}

std::vector<double> free_cumulants(const SpectralLaw& law, int K) {
  if (K < 1) throw DomainError("free_cumulants: K must be >= 1");
  // Moments of the centred variable X = -(D^2 - d_star).
  std::vector<double> m = central_moments(law, K);
  for (int k = 1; k <= K; k += 2) m[k] = -m[k];
  m[1] = 0.0;
  // M(z) = 1 + sum m_k z^k satisfies M(z) = 1 + sum_j kappa_j (z M(z))^j.
  std::vector<double> w(K + 1, 0.0);  // z M(z), truncated
  for (int k = 1; k <= K; ++k) w[k] = m[k - 1];
  std::vector<std::vector<double>> pw(K + 1);  // pw[j] = w^j
  pw[1] = w;
  for (int j = 2; j <= K; ++j) {
    pw[j].assign(K + 1, 0.0);
    for (int a = 1; a <= K; ++a)
      for (int b = 1; a + b <= K; ++b) pw[j][a + b] += pw[j - 1][a] * w[b];
  }
  std::vector<double> kappa(K + 1, 0.0);
  for (int k = 1; k <= K; ++k) {
    double acc = m[k];
    for (int j = 1; j < k; ++j) acc -= kappa[j] * pw[j][k];
    kappa[k] = acc;  // [z^k] w^k = 1
  }
  kappa[1] = -law.d_star();
  return {kappa.begin() + 1, kappa.end()};
}

}  // namespace rotamp
