#pragma once

#include <cstddef>
#include <vector>

namespace rotamp {

// Gauss-Hermite rule for E[h(Z)], Z ~ N(0,1): sum_i weights[i] * h(nodes[i]).
// Probabilists' normalization, so the weights sum to one.
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;

  template <class Fn>
  double expect(Fn&& fn) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * fn(nodes[i]);
    return acc;
  }
};

inline constexpr int kDefaultQuadOrder = 61;
inline constexpr int kDefaultQuad2Order = 61;

Quadrature gauss_hermite(int order = kDefaultQuadOrder);

}  // namespace rotamp
