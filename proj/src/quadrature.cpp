#include "rotamp/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "rotamp/error.hpp"

namespace rotamp {

namespace {

// Orthonormal probabilists' Hermite polynomials psi_0..psi_{n}, evaluated at x.
// psi_{k+1} = (x psi_k - sqrt(k) psi_{k-1}) / sqrt(k+1).
void hermite_normalized(int n, double x, double& psi_n, double& psi_nm1, double& sum_sq) {
  double prev = 0.0;
  double cur = 1.0;
  sum_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    sum_sq += cur * cur;
    const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) / std::sqrt(k + 1.0);
    prev = cur;
    cur = next;
  }
  psi_n = cur;
  psi_nm1 = prev;
}

}  // namespace

Quadrature gauss_hermite(int order) {
  if (order < 1) throw DomainError("gauss_hermite: order must be positive");
  const int n = order;

  // Golub-Welsch: eigenvalues of the Jacobi matrix are the nodes.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi, Eigen::EigenvaluesOnly);
  Eigen::VectorXd x = eig.eigenvalues();

  Quadrature q;
  q.order = n;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi = x(i);
    double psi_n = 0, psi_nm1 = 0, sum_sq = 0;
    // Newton polish: psi_n'(x) = sqrt(n) psi_{n-1}(x).
    for (int it = 0; it < 3; ++it) {
      hermite_normalized(n, xi, psi_n, psi_nm1, sum_sq);
      const double deriv = std::sqrt(static_cast<double>(n)) * psi_nm1;
      if (deriv == 0.0) break;
      xi -= psi_n / deriv;
    }
    hermite_normalized(n, xi, psi_n, psi_nm1, sum_sq);
    q.nodes[i] = xi;
    q.weights[i] = 1.0 / sum_sq;  // Christoffel numbers
  }
  // Enforce exact symmetry of the rule about zero.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double node = 0.5 * (q.nodes[j] - q.nodes[i]);
    const double weight = 0.5 * (q.weights[i] + q.weights[j]);
    q.nodes[i] = -node;
    q.nodes[j] = node;
    q.weights[i] = q.weights[j] = weight;
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  double total = 0.0;
  for (double w : q.weights) total += w;
  for (double& w : q.weights) w /= total;
  return q;
}

}  // namespace rotamp
