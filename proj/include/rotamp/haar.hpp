#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "rotamp/rng.hpp"

namespace rotamp {

// Haar-distributed element of SO(n), kept as a product of n-1 Householder
// reflectors and a diagonal sign matrix: O = H_0 H_1 ... H_{n-2} S.
// The law is that of Q from the QR factorization of an n x n Gaussian matrix
// with the diagonal of R made positive, with column 0 negated when det = -1.
class HaarOrthogonal {
 public:
  HaarOrthogonal() = default;
  // Reflector k is built from n - k fresh standard normals drawn from rng.
  static HaarOrthogonal sample(int n, Rng& rng);
  // Rebuilds from stored factors (no validation beyond shapes).
  static HaarOrthogonal from_factors(Eigen::MatrixXd reflectors, Eigen::VectorXd signs);

  int n() const { return static_cast<int>(signs_.size()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;            // O x
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const;  // O^T x
  void apply_inplace(Eigen::Ref<Eigen::VectorXd> x) const;
  void apply_transpose_inplace(Eigen::Ref<Eigen::VectorXd> x) const;
  Eigen::MatrixXd to_dense() const;
  int determinant_sign() const;

  // Column k holds the unit reflector v_k in rows k..n-1.
  const Eigen::MatrixXd& reflectors() const { return v_; }
  const Eigen::VectorXd& signs() const { return signs_; }

 private:
  Eigen::MatrixXd v_;
  Eigen::VectorXd signs_;
};

}  // namespace rotamp
