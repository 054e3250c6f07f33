#include "rotamp/overlap.hpp"

#include <algorithm>
#include <cmath>

#include "rotamp/error.hpp"

namespace rotamp {

double overlap_map_g(const ScalarChannel& ch, const FixedPoint& fp, double delta, const Quadrature& quad2) {
  if (!fp.valid()) throw DomainError("overlap_map_g: invalid fixed point");
  const double ds = fp.delta_star;
  if (!(delta >= 0.0 && delta <= ds * (1.0 + 1e-12))) throw DomainError("overlap_map_g: delta must lie in [0, delta*]");
  delta = std::min(delta, ds);
  const double common = std::sqrt(fp.kappa_star * delta + fp.b_star);
  const double own = std::sqrt(std::max(0.0, fp.kappa_star * (ds - delta)));
  return ch.expect_signal([&](double x) {
    return quad2.expect([&](double g) {
      const double inner = quad2.expect([&](double z) { return f_stationary(ch, common * g + own * z, x, fp); });
      return inner * inner;
    });
  });
}

double overlap_map_g(const AtomPrior& prior, const FixedPoint& fp, double delta, const Quadrature& quad2) {
  return overlap_map_g(PriorChannel(prior), fp, delta, quad2);
}

double gprime_at_star(const ScalarChannel& ch, const FixedPoint& fp) {
  if (!fp.valid()) throw DomainError("gprime_at_star: invalid fixed point");
  const Quadrature& q = ch.quadrature();
  const double sd = 1.0 / std::sqrt(fp.gamma_star);
  const double m = ch.expect_signal([&](double x) {
    return q.expect([&](double z) {
      const double v = f_stationary_prime(ch, sd * z, x, fp);
      return v * v;
    });
  });
  return fp.kappa_star * m;
}

double gprime_at_star(const AtomPrior& prior, const FixedPoint& fp, const Quadrature& quad) {
  return gprime_at_star(PriorChannel(prior, quad), fp);
}

double delta_12(const ScalarChannel& ch, const FixedPoint& fp) {
  if (!fp.valid()) throw DomainError("delta_12: invalid fixed point");
  const Quadrature& q = ch.quadrature();
  const double sd = 1.0 / std::sqrt(fp.gamma_star);
  return ch.expect_signal([&](double x) {
    const double m = q.expect([&](double z) { return f_stationary(ch, sd * z, x, fp); });
    return m * m;
  });
}

double OverlapTable::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(delta, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

OverlapTable delta_table(const ScalarChannel& ch, const FixedPoint& fp, int T, const Quadrature& quad2) {
  if (T < 2) throw DomainError("delta_table: T must be >= 2");
  OverlapTable tab;
  tab.T = T;
  tab.delta_star = fp.delta_star;
  // delta_{s,t} for s < t depends only on s: chain[s-1] = g^{(s-1)}(delta_12).
  std::vector<double> chain(T);
  chain[0] = delta_12(ch, fp);
  // clamp: quadrature error can push g(delta) slightly past delta*, which Cauchy-Schwarz forbids
  chain[0] = std::min(chain[0], fp.delta_star);
  for (int s = 1; s < T; ++s) chain[s] = std::min(overlap_map_g(ch, fp, chain[s - 1], quad2), fp.delta_star);
  tab.delta.resize(T, T);
  for (int s = 0; s < T; ++s)
    for (int t = 0; t < T; ++t) tab.delta(s, t) = s == t ? fp.delta_star : chain[std::min(s, t)];
  return tab;
}

OverlapTable delta_table(const AtomPrior& prior, const FixedPoint& fp, int T, const Quadrature& quad2) {
  return delta_table(PriorChannel(prior), fp, T, quad2);
}

}  // namespace rotamp
