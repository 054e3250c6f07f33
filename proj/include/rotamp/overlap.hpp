#pragma once

#include <Eigen/Dense>

#include "rotamp/channel.hpp"
#include "rotamp/fixed_point.hpp"
#include "rotamp/quadrature.hpp"

namespace rotamp {

// g(delta) = E[F(P', X) F(P'', X)] where P', P'' ~ N(0, 1/gamma*) share the
// component sqrt(kappa* delta + b*) G. Evaluated as E[(E[F | G, X])^2].
double overlap_map_g(const ScalarChannel& ch, const FixedPoint& fp, double delta,
                     const Quadrature& quad2 = gauss_hermite(kDefaultQuad2Order));
double overlap_map_g(const AtomPrior& prior, const FixedPoint& fp, double delta,
                     const Quadrature& quad2 = gauss_hermite(kDefaultQuad2Order));

// kappa* E[F'(P, X)^2], P ~ N(0, 1/gamma*).
double gprime_at_star(const ScalarChannel& ch, const FixedPoint& fp);
double gprime_at_star(const AtomPrior& prior, const FixedPoint& fp, const Quadrature& quad = gauss_hermite());

// E_X[(E_P F(P, X))^2], the overlap of x^1 with every later iterate.
double delta_12(const ScalarChannel& ch, const FixedPoint& fp);

struct OverlapTable {
  int T = 0;
  Eigen::MatrixXd delta;
  double delta_star = 0.0;

  double min_eigenvalue() const;
};

OverlapTable delta_table(const ScalarChannel& ch, const FixedPoint& fp, int T,
                         const Quadrature& quad2 = gauss_hermite(kDefaultQuad2Order));
OverlapTable delta_table(const AtomPrior& prior, const FixedPoint& fp, int T,
                         const Quadrature& quad2 = gauss_hermite(kDefaultQuad2Order));

}  // namespace rotamp
