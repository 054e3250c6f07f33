#include <doctest.h>

#include <cmath>

#include "rotamp/haar.hpp"
#include "rotamp/rng.hpp"

using namespace rotamp;

TEST_CASE("orthogonal with unit determinant") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng = make_rng(seed, "haar");
    const HaarOrthogonal O = HaarOrthogonal::sample(30, rng);
    const Eigen::MatrixXd M = O.to_dense();
    CHECK((M.transpose() * M - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(M.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(O.determinant_sign() == 1);
  }
}

TEST_CASE("factored products match the dense matrix") {
  Rng rng = make_rng(7, "haar");
  const HaarOrthogonal O = HaarOrthogonal::sample(57, rng);
  const Eigen::MatrixXd M = O.to_dense();
  NormalStream z(7, "x");
  Eigen::VectorXd x(57);
  for (auto& v : x) v = z();
  CHECK((O.apply(x) - M * x).norm() < 1e-12);
  CHECK((O.apply_transpose(x) - M.transpose() * x).norm() < 1e-12);
  CHECK((O.apply_transpose(O.apply(x)) - x).norm() < 1e-12);
  Eigen::VectorXd w = x;
  O.apply_inplace(w);
  CHECK((w - M * x).norm() < 1e-12);
  O.apply_transpose_inplace(w);
  CHECK((w - x).norm() < 1e-12);
  const HaarOrthogonal R = HaarOrthogonal::from_factors(O.reflectors(), O.signs());
  CHECK((R.to_dense() - M).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("small sizes") {
  Rng rng = make_rng(3, "haar");
  const HaarOrthogonal one = HaarOrthogonal::sample(1, rng);
  CHECK(one.to_dense()(0, 0) == 1.0);
  const HaarOrthogonal two = HaarOrthogonal::sample(2, rng);
  CHECK(two.to_dense().determinant() == doctest::Approx(1.0));
}

TEST_CASE("reproducible from the seed") {
  Rng a = make_rng(11, "haar"), b = make_rng(11, "haar"), c = make_rng(12, "haar");
  const Eigen::MatrixXd A = HaarOrthogonal::sample(10, a).to_dense();
  CHECK((A - HaarOrthogonal::sample(10, b).to_dense()).norm() == 0.0);
  CHECK((A - HaarOrthogonal::sample(10, c).to_dense()).norm() > 0.1);
}

TEST_CASE("moments of the Haar measure on SO(n)") {
  // E tr O = 0 and E (tr O)^2 = 1 for n >= 3; E O_ij^2 = 1/n.
  const int n = 5, N = 20000;
  double s1 = 0, s2 = 0, e11 = 0, e23 = 0;
  Rng rng = make_rng(5, "haar");
  for (int r = 0; r < N; ++r) {
    const Eigen::MatrixXd M = HaarOrthogonal::sample(n, rng).to_dense();
    const double t = M.trace();
    s1 += t;
    s2 += t * t;
    e11 += M(0, 0) * M(0, 0);
    e23 += M(1, 2) * M(1, 2);
  }
  s1 /= N, s2 /= N, e11 /= N, e23 /= N;
  // sd of tr O is 1, of O_ij^2 about 0.18
  CHECK(std::abs(s1) < 4.0 / std::sqrt(N));
  CHECK(std::abs(s2 - 1.0) < 4.0 * std::sqrt(2.0 / N));
  CHECK(std::abs(e11 - 0.2) < 4.0 * 0.18 / std::sqrt(N));
  CHECK(std::abs(e23 - 0.2) < 4.0 * 0.18 / std::sqrt(N));
}

TEST_CASE("seed derivation separates labels and indices") {
  CHECK(derive_seed(1, "noise", 0) != derive_seed(1, "signal", 0));
  CHECK(derive_seed(1, "noise", 0) != derive_seed(1, "noise", 1));
  CHECK(derive_seed(1, "noise", 0) != derive_seed(2, "noise", 0));
  CHECK(derive_seed(1, "noise", 3) == derive_seed(1, "noise", 3));
}
