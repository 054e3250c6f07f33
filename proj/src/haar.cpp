#include "rotamp/haar.hpp"

#include <cmath>

#include "rotamp/error.hpp"

namespace rotamp {

HaarOrthogonal HaarOrthogonal::sample(int n, Rng& rng) {
  if (n < 1) throw DomainError("haar: n must be >= 1");
  HaarOrthogonal o;
  o.v_ = Eigen::MatrixXd::Zero(n, std::max(n - 1, 0));
  o.signs_.resize(n);
  NormalStream normal(std::move(rng));
  int det = (n - 1) % 2 == 0 ? 1 : -1;
  for (int k = 0; k + 1 < n; ++k) {
    const int len = n - k;
    Eigen::VectorXd x(len);
    for (int i = 0; i < len; ++i) x[i] = normal();
    const double sgn = x[0] >= 0.0 ? 1.0 : -1.0;
    x[0] += sgn * x.norm();
    o.v_.col(k).tail(len) = x / x.norm();
    // H_k maps the draw to -sgn |x| e_0; R's diagonal entry has sign -sgn.
    o.signs_[k] = -sgn;
    if (o.signs_[k] < 0) det = -det;
  }
  o.signs_[n - 1] = normal() >= 0.0 ? 1.0 : -1.0;
  if (o.signs_[n - 1] < 0) det = -det;
  if (det < 0) o.signs_[0] = -o.signs_[0];
  rng = normal.engine();
  return o;
}

HaarOrthogonal HaarOrthogonal::from_factors(Eigen::MatrixXd reflectors, Eigen::VectorXd signs) {
  const auto n = signs.size();
  if (reflectors.rows() != n || reflectors.cols() != std::max<Eigen::Index>(n - 1, 0))
    throw DomainError("haar: factor shapes do not match");
  HaarOrthogonal o;
  o.v_ = std::move(reflectors);
  o.signs_ = std::move(signs);
  return o;
}

void HaarOrthogonal::apply_inplace(Eigen::Ref<Eigen::VectorXd> x) const {
  const int n = this->n();
  if (x.size() != n) throw DomainError("haar: dimension mismatch");
  x.array() *= signs_.array();
  for (int k = n - 2; k >= 0; --k) {
    const int len = n - k;
    auto v = v_.col(k).tail(len);
    auto seg = x.tail(len);
    seg.noalias() -= (2.0 * v.dot(seg)) * v;
  }
}

void HaarOrthogonal::apply_transpose_inplace(Eigen::Ref<Eigen::VectorXd> x) const {
  const int n = this->n();
  if (x.size() != n) throw DomainError("haar: dimension mismatch");
  for (int k = 0; k + 1 < n; ++k) {
    const int len = n - k;
    auto v = v_.col(k).tail(len);
    auto seg = x.tail(len);
    seg.noalias() -= (2.0 * v.dot(seg)) * v;
  }
  x.array() *= signs_.array();
}

Eigen::VectorXd HaarOrthogonal::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = x;
  apply_inplace(y);
  return y;
}

Eigen::VectorXd HaarOrthogonal::apply_transpose(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = x;
  apply_transpose_inplace(y);
  return y;
}

Eigen::MatrixXd HaarOrthogonal::to_dense() const {
  const int n = this->n();
  Eigen::MatrixXd m = signs_.asDiagonal();
  for (int k = n - 2; k >= 0; --k) {
    const int len = n - k;
    auto v = v_.col(k).tail(len);
    auto block = m.bottomRows(len);
    const Eigen::RowVectorXd w = v.transpose() * block;
    block.noalias() -= 2.0 * v * w;
  }
  return m;
}

int HaarOrthogonal::determinant_sign() const {
  int det = (n() - 1) % 2 == 0 ? 1 : -1;
  for (Eigen::Index i = 0; i < signs_.size(); ++i)
    if (signs_[i] < 0) det = -det;
  return det;
}

}  // namespace rotamp
