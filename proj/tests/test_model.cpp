#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>

#include "rotamp/error.hpp"
#include "rotamp/model.hpp"
#include "rotamp/oracle.hpp"
#include "rotamp/replica.hpp"

using namespace rotamp;

namespace {

const AtomPrior pm1 = AtomPrior::rademacher();
const SpectralLaw testbed_law = SpectralLaw::two_point(1.0, 0.05);

std::map<double, int> counts(const Eigen::VectorXd& v) {
  std::map<double, int> c;
  for (double x : v) ++c[x];
  return c;
}

}  // namespace

TEST_CASE("instance invariants") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = sample_instance(testbed_law, pm1, 40, 48, seed);
    CHECK(inst.O.determinant_sign() == 1);
    const Eigen::MatrixXd O = inst.O.to_dense();
    Rng pick = make_rng(seed, "pairs");
    std::uniform_int_distribution<int> col(0, 39);
    for (int r = 0; r < 20; ++r) {
      const int i = col(pick), j = col(pick);
      CHECK(std::abs(O.col(i).dot(O.col(j)) - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
    CHECK((inst.dense_A() * inst.beta_star + inst.eps - inst.y).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(inst.k() == 40);
    for (double b : inst.beta_star) CHECK(std::abs(b) == 1.0);
  }
}

TEST_CASE("operators agree with the dense design") {
  const Instance inst = sample_instance(SpectralLaw::uniform_grid(1.0, 0.3, 4), pm1, 25, 31, 9);
  const Eigen::MatrixXd A = inst.dense_A();
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(25, -1.0, 2.0);
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(31, 0.5, -0.7);
  CHECK((inst.apply_A(x) - A * x).norm() < 1e-12);
  CHECK((inst.apply_At(v) - A.transpose() * v).norm() < 1e-12);
  CHECK((inst.apply_AtA(x) - A.transpose() * (A * x)).norm() < 1e-12);
  CHECK_THROWS_AS(inst.apply_At(x), DomainError);
}

TEST_CASE("spectrum assignment") {
  const Instance pm = sample_instance(SpectralLaw::point_mass(2.0), pm1, 30, 30, 1);
  for (double d : pm.d_diag) CHECK(d == doctest::Approx(std::sqrt(2.0)));
  Rng rng = make_rng(1, "spectrum");
  const auto c = counts(assign_spectrum(testbed_law, 1000, 1000, rng));
  REQUIRE(c.size() == 2);
  CHECK(c.at(0.95) == 500);
  CHECK(c.at(1.05) == 500);
  // largest remainder: weights 1/3 each over 10 slots give 4/3/3
  const SpectralLaw three({{0.5, 1.0 / 3}, {1.0, 1.0 / 3}, {1.5, 1.0 / 3}});
  const auto c3 = counts(assign_spectrum(three, 10, 10, rng));
  for (const auto& [v, k] : c3) CHECK(std::abs(k - 10.0 / 3) < 1.0);
  // m < n needs a zero atom
  const SpectralLaw with_zero({{0.0, 0.5}, {2.0, 0.5}});
  const Instance wide = sample_instance(with_zero, pm1, 20, 10, 3);
  CHECK(wide.k() == 10);
  for (int i = 10; i < 20; ++i) CHECK(wide.dsq[i] == 0.0);
  CHECK(wide.d_diag.size() == 10);
  CHECK((wide.dense_A() * wide.beta_star + wide.eps - wide.y).norm() < 1e-10);
  CHECK_THROWS_AS(sample_instance(testbed_law, pm1, 20, 10, 3), DomainError);
  CHECK_THROWS_AS(sample_instance(testbed_law, pm1, 0, 10, 3), DomainError);
  // empirical mean of D^2 across seeds
  double s = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) s += sample_instance(testbed_law, pm1, 101, 101, seed).dsq.mean();
  CHECK(std::abs(s / 10 - 1.0) < 3 * 0.05 / std::sqrt(1010.0));
}

TEST_CASE("gray code and naive enumeration agree") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const Instance inst = sample_instance(testbed_law, pm1, 8, 10, seed);
    const ExactPosterior g = exact_posterior(inst, pm1);
    const ExactPosterior v = exact_posterior_naive(inst, pm1);
    CHECK(g.config_count == 256);
    CHECK(std::abs(g.log_z - v.log_z) < 1e-10);
    CHECK((g.mean - v.mean).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(g.self_overlap - v.self_overlap) < 1e-10);
    CHECK(std::abs(g.mmse_n - (inst.beta_star - g.mean).squaredNorm() / 8) < 1e-12);
    for (double x : g.mean) CHECK(std::abs(x) <= 1.0);
  }
  const AtomPrior tp = AtomPrior::three_point(0.4);
  const Instance inst = sample_instance(testbed_law, tp, 7, 9, 5);
  const ExactPosterior g = exact_posterior(inst, tp, kDefaultMaxConfigs, 2);
  const ExactPosterior v = exact_posterior_naive(inst, tp);
  CHECK(g.config_count == 2187);
  CHECK(std::abs(g.log_z - v.log_z) < 1e-10);
  CHECK((g.mean - v.mean).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(g.mmse_n >= 0.0);
}

TEST_CASE("threaded enumeration is deterministic") {
  const Instance inst = sample_instance(testbed_law, pm1, 12, 15, 4);
  const ExactPosterior a = exact_posterior(inst, pm1, kDefaultMaxConfigs, 1);
  const ExactPosterior b = exact_posterior(inst, pm1, kDefaultMaxConfigs, 4);
  CHECK(a.log_z == b.log_z);
  CHECK((a.mean - b.mean).norm() == 0.0);
}

TEST_CASE("single coordinate posterior") {
  const Instance inst = sample_instance(SpectralLaw::point_mass(2.0), pm1, 1, 1, 8);
  const double a = inst.dense_A()(0, 0), y = inst.y[0];
  const ExactPosterior p = exact_posterior(inst, pm1);
  CHECK(p.mean[0] == doctest::Approx(std::tanh(a * y)).epsilon(1e-14));
  const double lz = std::log(0.5 * std::exp(-0.5 * (y - a) * (y - a)) + 0.5 * std::exp(-0.5 * (y + a) * (y + a)));
  CHECK(p.log_z == doctest::Approx(lz).epsilon(1e-14));
}

TEST_CASE("noiseless well-conditioned design concentrates") {
  Instance inst = sample_instance(SpectralLaw::point_mass(400.0), pm1, 10, 12, 2);
  inst.eps.setZero();
  recompute_y(inst);
  const ExactPosterior p = exact_posterior(inst, pm1);
  CHECK((p.mean - inst.beta_star).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(p.mmse_n < 1e-20);
}

TEST_CASE("budget") {
  const Instance inst = sample_instance(testbed_law, pm1, 21, 21, 1);
  CHECK_THROWS_AS(exact_posterior(inst, pm1), BudgetError);
  CHECK_THROWS_AS(exact_posterior_naive(inst, pm1), BudgetError);
  CHECK(config_count(pm1, 20, kDefaultMaxConfigs) == (1u << 20));
  CHECK(config_count(pm1, 21, kDefaultMaxConfigs) == 0);
  CHECK(config_count(AtomPrior::three_point(0.5), 64, ~std::uint64_t{0}) == 0);
  CHECK_THROWS_AS(AtomPrior({{1.0, 1.0}}), DomainError);
}

TEST_CASE("nishimori identity at fixed design") {
  const FixedPoint fp = solve_fixed_point(pm1, testbed_law);
  const OracleReport r = run_oracle(testbed_law, pm1, 12, 15, 200, 17, fp.gamma_star);
  INFO("diff " << r.nishimori_diff << " se " << r.nishimori_stderr);
  CHECK(r.nishimori_stderr > 0.0);
  CHECK(std::abs(r.nishimori_diff) <= 3 * r.nishimori_stderr);
  CHECK(std::abs(r.i_n_hat - fp.i_rs) <= std::max(0.05, 3 * r.i_n_stderr));
}

TEST_CASE("mutual information estimate") {
  const MutualInfoEstimate e = mutual_info_mc(testbed_law, pm1, 8, 10, 50, 3);
  CHECK(e.reps == 50);
  CHECK(e.stderr_ > 0.0);
  CHECK(e.i_n_hat > 0.0);
  CHECK(e.i_n_hat < std::log(2.0));
  const MutualInfoEstimate again = mutual_info_mc(testbed_law, pm1, 8, 10, 50, 3, false, 3);
  CHECK(e.i_n_hat == again.i_n_hat);
  CHECK_THROWS_AS(mutual_info_mc(testbed_law, pm1, 8, 10, 1, 3), DomainError);
}

TEST_CASE("gaussian reference") {
  const double rho = 1.3;
  const Instance inst = sample_instance(SpectralLaw::uniform_grid(1.0, 0.4, 5), pm1, 50, 60, 4);
  const GaussianReference g = gaussian_reference(inst, rho);
  const Eigen::MatrixXd A = inst.dense_A();
  const Eigen::MatrixXd C = Eigen::MatrixXd::Identity(60, 60) + rho * A * A.transpose();
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(C);
  const double logdet = ldlt.vectorD().array().log().sum();
  const double lz = -0.5 * inst.y.dot(ldlt.solve(inst.y)) - 0.5 * logdet;
  CHECK(std::abs(g.log_z - lz) < 1e-8);
  const Eigen::VectorXd mean = rho * A.transpose() * ldlt.solve(inst.y);
  CHECK((g.mean - mean).cwiseAbs().maxCoeff() < 1e-10);
  const Eigen::MatrixXd cov = rho * Eigen::MatrixXd::Identity(50, 50) - rho * rho * A.transpose() * ldlt.solve(A);
  CHECK(std::abs(g.mmse_n - cov.trace() / 50) < 1e-10);

  const Instance sq = sample_instance(SpectralLaw::point_mass(2.0), pm1, 30, 30, 1);
  CHECK(gaussian_reference(sq, rho).mmse_n == doctest::Approx(rho / (1 + 2 * rho)).epsilon(1e-14));
  Instance zero = sq;
  zero.y.setZero();
  CHECK(gaussian_reference(zero, rho).mean.norm() == 0.0);
  const SpectralLaw wide({{0.0, 0.5}, {2.0, 0.5}});
  const Instance w = sample_instance(wide, pm1, 20, 10, 1);
  CHECK(gaussian_reference(w, rho).mmse_n == doctest::Approx(0.5 * rho + 0.5 * rho / (1 + 2 * rho)));
  CHECK_THROWS_AS(gaussian_reference(sq, 0.0), DomainError);
}

TEST_CASE("instance round trip") {
  const Instance inst = sample_instance(testbed_law, pm1, 17, 20, 99);
  const auto path = std::filesystem::temp_directory_path() / "rotamp_instance_test.bin";
  write_instance(path.string(), inst);
  const Instance back = read_instance(path.string());
  CHECK(back.n == 17);
  CHECK(back.m == 20);
  CHECK(back.seed == 99);
  CHECK((back.dense_A() - inst.dense_A()).norm() == 0.0);
  CHECK((back.y - inst.y).norm() == 0.0);
  CHECK((back.beta_star - inst.beta_star).norm() == 0.0);
  CHECK((back.eps - inst.eps).norm() == 0.0);
  CHECK((back.dsq - inst.dsq).norm() == 0.0);
  std::FILE* f = std::fopen(path.string().c_str(), "r+b");
  REQUIRE(f);
  std::fputc('X', f);
  std::fclose(f);
  CHECK_THROWS(read_instance(path.string()));
  std::filesystem::remove(path);
  CHECK_THROWS(read_instance(path.string()));
}

TEST_CASE("replicates are reproducible") {
  Instance a = sample_instance(testbed_law, pm1, 10, 12, 5);
  Instance b = a;
  resample_signal(a, pm1, 5, 3);
  resample_signal(b, pm1, 5, 3);
  CHECK((a.y - b.y).norm() == 0.0);
  resample_signal(b, pm1, 5, 4);
  CHECK((a.eps - b.eps).norm() > 0.0);
}
