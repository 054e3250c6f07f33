#include <doctest.h>

#include <cmath>

#include "reference_values.hpp"
#include "rotamp/channel.hpp"
#include "rotamp/error.hpp"
#include "rotamp/prior.hpp"

using namespace rotamp;

namespace {
const Quadrature q61 = gauss_hermite(61);
const Quadrature q122 = gauss_hermite(122);
// 61 nodes under-resolve the posterior-variance peaks once gamma exceeds ~2.
const Quadrature q301 = gauss_hermite(301);

AtomPrior skewed() { return AtomPrior({{-1.0, 0.2}, {0.0, 0.5}, {2.5, 0.3}}); }
}  // namespace

TEST_CASE("construction centres and caches moments") {
  const AtomPrior p = skewed();
  double mean = 0.0, wsum = 0.0;
  for (const auto& a : p.atoms()) {
    mean += a.weight * a.value;
    wsum += a.weight;
    CHECK(a.value * a.value <= p.c_bound() + 1e-15);
  }
  CHECK(std::abs(mean) < 1e-12);
  CHECK(std::abs(wsum - 1.0) < 1e-12);
  CHECK(p.rho_star() == doctest::Approx(0.2 * 1.55 * 1.55 + 0.5 * 0.55 * 0.55 + 0.3 * 1.95 * 1.95));
}

TEST_CASE("invalid priors are rejected") {
  CHECK_THROWS_AS(AtomPrior({{1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(AtomPrior({{1.0, 0.5}, {1.0, 0.5}}), DomainError);
  CHECK_THROWS_AS(AtomPrior({{1.0, 0.7}, {-1.0, 0.7}}), DomainError);
  CHECK_THROWS_AS(AtomPrior({{1.0, 1.2}, {-1.0, -0.2}}), DomainError);
  CHECK_THROWS_AS(AtomPrior({}), DomainError);
  CHECK_THROWS_AS(AtomPrior::three_point(1.0), DomainError);
}

TEST_CASE("presets") {
  const AtomPrior t = AtomPrior::three_point(0.4);
  CHECK(t.size() == 3);
  CHECK(t.rho_star() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(AtomPrior::rademacher().rho_star() == doctest::Approx(1.0));
  CHECK(AtomPrior::rademacher().entropy() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("rademacher denoiser is tanh") {
  const AtomPrior p = AtomPrior::rademacher();
  for (double g : {0.01, 0.5, 1.0, 3.0, 20.0})
    for (double y = -4.0; y <= 4.0; y += 0.37) {
      const Denoised d = denoise(p, y, g);
      const double th = std::tanh(g * y);
      CHECK(std::abs(d.f - th) < 4e-16);
      CHECK(std::abs(d.f_prime - g * (1 - th * th)) < 1e-14 * std::max(1.0, g));
    }
}

TEST_CASE("denoiser basics") {
  const AtomPrior sym = AtomPrior::three_point(0.3);
  CHECK(std::abs(denoise(sym, 0.0, 2.0).f) < 1e-15);
  const AtomPrior p = skewed();
  for (const auto& a : p.atoms()) CHECK(denoise(p, a.value, 1e4).f == doctest::Approx(a.value).epsilon(1e-10));
  CHECK_THROWS_AS(denoise(p, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(denoise(p, 0.0, -1.0), DomainError);
  // huge arguments stay finite
  const Denoised far = denoise(p, 1e6, 50.0);
  CHECK(far.f == doctest::Approx(p.max_value()));
  CHECK(far.f_prime >= 0.0);
}

TEST_CASE("denoiser lies in the convex hull and f' matches finite differences") {
  const AtomPrior p = skewed();
  int checked = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double y = -3.0 + 0.6 * i + 0.013 * j;
      const double g = 0.2 + 0.5 * j;
      const Denoised d = denoise(p, y, g);
      CHECK(d.f >= p.min_value());
      CHECK(d.f <= p.max_value());
      CHECK(d.f_prime >= 0.0);
      const double h = 1e-5;
      const double fd = (denoise(p, y + h, g).f - denoise(p, y - h, g).f) / (2 * h);
      CHECK(std::abs(fd - d.f_prime) <= 1e-6 * std::max(1.0, std::abs(d.f_prime)));
      ++checked;
    }
  CHECK(checked == 100);
}

TEST_CASE("Lipschitz bound |f'| <= c gamma") {
  const AtomPrior p = skewed();
  double worst = 0.0;
  for (double g = 0.1; g <= 10.0; g += 0.3)
    for (double y = -5.0; y <= 5.0; y += 0.05) worst = std::max(worst, denoise(p, y, g).f_prime / (g * p.c_bound()));
  CHECK(worst <= 1.0);
}

TEST_CASE("mmse against the rademacher oracle") {
  const AtomPrior p = AtomPrior::rademacher();
  CHECK(std::abs(mmse(p, 1.0, q61) - ref::kMmsePm1At1) < 1e-9);
  CHECK(std::abs(mmse(p, 1.0, q301) - ref::kMmsePm1At1) < 1e-13);
  CHECK(std::abs(mmse_prime(p, 1.0, q122) - ref::kMmsePrimePm1At1) < 1e-11);
  CHECK(std::abs(mmse_prime(p, 1.0, q61) - ref::kMmsePrimePm1At1) < 1e-7);
  CHECK_THROWS_AS(mmse(p, 0.0, q61), DomainError);
}

TEST_CASE("mmse limits and monotonicity") {
  const AtomPrior p = skewed();
  CHECK(mmse(p, 1e-8, q61) == doctest::Approx(p.rho_star()).epsilon(1e-6));
  CHECK(mmse(p, 200.0, q61) < 1e-6);
  double prev = p.rho_star();
  for (double g = 0.1; g <= 10.0 + 1e-12; g += 0.1) {
    const double v = mmse(p, g, q61);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("mmse' is negative and matches central differences") {
  for (const AtomPrior& p : {AtomPrior::rademacher(), skewed(), AtomPrior::three_point(0.6)})
    for (double g : {0.3, 1.0, 2.0, 5.0}) {
      const double d = mmse_prime(p, g, q301);
      CHECK(d < 0.0);
      CHECK(std::abs(d) <= p.c_bound() * p.c_bound());
      const double h = 1e-4;
      const double fd = (mmse(p, g + h, q301) - mmse(p, g - h, q301)) / (2 * h);
      CHECK(std::abs(fd - d) < 1e-6);
    }
}

TEST_CASE("mutual information") {
  const AtomPrior p = AtomPrior::rademacher();
  CHECK(mutual_info(p, 0.0, q61) == 0.0);
  CHECK(std::abs(mutual_info(p, 1.0, q61) - ref::kMiPm1At1) < 1e-12);
  CHECK(std::abs(mutual_info(p, 2.5, q61) - ref::kMiPm1At2p5) < 1e-7);
  CHECK(std::abs(mutual_info(p, 2.5, q301) - ref::kMiPm1At2p5) < 1e-13);
  CHECK(mutual_info(p, 60.0, q61) == doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK_THROWS_AS(mutual_info(p, -0.1, q61), DomainError);
  const AtomPrior s = skewed();
  double prev = 0.0;
  for (double g = 0.25; g <= 8.0; g += 0.25) {
    const double v = mutual_info(s, g, q61);
    CHECK(v >= prev);
    CHECK(v <= s.entropy() + 1e-12);
    prev = v;
  }
}

TEST_CASE("I-MMSE: i(gamma) = 1/2 int_0^gamma mmse") {
  for (const AtomPrior& p : {AtomPrior::rademacher(), skewed()}) {
    // composite Gauss-Legendre rule on [0, gamma]
    const double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
    const double ws[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                          0.2369268850561891};
    double integral = 0.0, last = 0.0;
    for (double g = 0.25; g <= 5.0 + 1e-12; g += 0.25) {
      const double a = last, b = g, half = 0.5 * (b - a);
      for (int i = 0; i < 5; ++i) integral += half * ws[i] * mmse(p, a + half * (xs[i] + 1.0), q61);
      last = g;
      CHECK(std::abs(mutual_info(p, g, q61) - 0.5 * integral) < 1e-5);
    }
  }
}

TEST_CASE("log c_pi") {
  const AtomPrior p = AtomPrior::rademacher();
  CHECK(log_cpi(p, 0.0, 0.0) == doctest::Approx(0.0));
  for (double a : {-2.0, -0.5, 0.0, 1.0})
    for (double b : {-40.0, -1.0, 0.3, 5.0, 700.0})
      CHECK(log_cpi(p, a, b) == doctest::Approx(a + std::abs(b) + std::log1p(std::exp(-2 * std::abs(b))) -
                                                std::log(2.0)).epsilon(1e-14));
  const AtomPrior s = skewed();
  // d/db log c_pi(-gamma/2, gamma y) = f(y) / ... in the scale b = gamma y
  for (double g : {0.5, 2.0})
    for (double y : {-1.0, 0.2, 1.7}) {
      const double h = 1e-6;
      const double d = (log_cpi(s, -0.5 * g, g * y + h) - log_cpi(s, -0.5 * g, g * y - h)) / (2 * h);
      CHECK(std::abs(d - denoise(s, y, g).f) < 1e-8);
    }
}

TEST_CASE("stationary nonlinearity moment identities") {
  for (const AtomPrior& p : {AtomPrior::rademacher(), skewed()}) {
    const PriorChannel ch(p);
    // Build a valid (eta, gamma) pair from mmse(gamma) = 1/eta.
    const double gamma = 0.9;
    FixedPoint fp;
    fp.gamma_star = gamma;
    fp.eta_inv_star = mmse(p, gamma, q61);
    const double eta = fp.eta_star();
    const double sd = 1.0 / std::sqrt(gamma);
    auto E = [&](auto fn) {
      double acc = 0.0;
      for (const auto& a : p.atoms()) acc += a.weight * q61.expect([&](double z) { return fn(sd * z, a.value); });
      return acc;
    };
    CHECK(std::abs(E([&](double pp, double x) { return f_stationary(p, pp, x, fp); })) < 1e-7);
    CHECK(std::abs(E([&](double pp, double x) { return f_stationary_prime(p, pp, x, fp); })) < 1e-7);
    CHECK(std::abs(E([&](double pp, double x) { return std::pow(f_stationary(p, pp, x, fp), 2); }) -
                   1.0 / (eta - gamma)) < 1e-7);
    CHECK(f_stationary(ch, 0.3, 0.1, fp) == f_stationary(p, 0.3, 0.1, fp));
  }
}

TEST_CASE("stationary nonlinearity spot values") {
  FixedPoint fp;
  fp.eta_inv_star = ref::e05::x;
  fp.gamma_star = ref::e05::gamma;
  const AtomPrior p = AtomPrior::rademacher();
  CHECK(std::abs(f_stationary(p, 0.3, 1.0, fp) - ref::e05::F_0p3_1) < 1e-13);
  FixedPoint cold;
  cold.eta_inv_star = 1.0 / 60.0;
  cold.gamma_star = 50.0;
  CHECK(std::abs(f_stationary(p, 0.0, 1.0, cold)) < 1e-10);
  FixedPoint bad;
  bad.eta_inv_star = 1.0;
  bad.gamma_star = 2.0;
  CHECK_THROWS_AS(f_stationary(p, 0.0, 1.0, bad), DomainError);
}

TEST_CASE("gaussian channel closed forms") {
  const GaussianChannel g(2.0);
  CHECK(g.mmse(1.5) == doctest::Approx(2.0 / 4.0));
  CHECK(g.mutual_info(1.5) == doctest::Approx(0.5 * std::log(4.0)));
  CHECK(g.mmse_prime(1.5) == doctest::Approx(-0.25));
  CHECK(g.denoise(1.0, 1.5).f == doctest::Approx(0.75));
  CHECK(g.expect_signal([](double x) { return x * x; }) == doctest::Approx(2.0));
}
