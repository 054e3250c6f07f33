#include <doctest.h>

#include <cmath>

#include "reference_values.hpp"
#include "rotamp/error.hpp"
#include "rotamp/spectrum.hpp"

using namespace rotamp;

namespace {

double g_inv_two_point(double y, double d, double e) { return (1 + std::sqrt(1 + 4 * y * y * e * e)) / (2 * y) - d; }

// Trapezoid with refinement doubling until two levels agree.
template <class Fn>
double trapezoid(Fn f, double a, double b) {
  int n = 1;
  double h = b - a, t = 0.5 * h * (f(a) + f(b));
  for (int level = 0; level < 22; ++level) {
    double mid = 0.0;
    for (int i = 0; i < n; ++i) mid += f(a + (i + 0.5) * h);
    const double next = 0.5 * t + 0.5 * h * mid;
    n *= 2;
    h *= 0.5;
    if (level > 4 && std::abs(next - t) < 1e-13) return next;
    t = next;
  }
  return t;
}

SpectralLaw skewed() { return SpectralLaw({{0.6, 0.3}, {1.0, 0.5}, {1.7, 0.2}}); }

}  // namespace

TEST_CASE("law summary statistics") {
  const SpectralLaw law = SpectralLaw::two_point(1.0, 0.05);
  CHECK(law.d_star() == doctest::Approx(1.0));
  CHECK(law.kappa2() == doctest::Approx(0.0025));
  CHECK(law.eps() == doctest::Approx(0.05));
  CHECK(law.d_minus() == doctest::Approx(0.95));
  CHECK(law.d_plus() == doctest::Approx(1.05));
  CHECK_FALSE(law.degenerate());
  CHECK(SpectralLaw::point_mass(2.0).degenerate());
  const SpectralLaw grid = SpectralLaw::uniform_grid(1.0, 0.1, 5);
  CHECK(grid.atoms().size() == 5);
  CHECK(grid.kappa2() == doctest::Approx(0.005));
  CHECK_THROWS_AS(SpectralLaw({{-1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(SpectralLaw({{0.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(SpectralLaw({{1.0, 0.5}, {2.0, 0.6}}), DomainError);
}

TEST_CASE("cauchy transform") {
  const SpectralLaw pm = SpectralLaw::point_mass(1.3);
  CHECK(cauchy_g(pm, 0.4) == doctest::Approx(1.0 / 1.7));
  const SpectralLaw tp = SpectralLaw::two_point(1.0, 0.05);
  CHECK(cauchy_g(tp, 0.3) == doctest::Approx(0.5 * (1 / 1.25 + 1 / 1.35)));
  CHECK(cauchy_g(tp, 1e12) < 1e-11);
  CHECK_THROWS_AS(cauchy_g(tp, -0.95), DomainError);
  CHECK_THROWS_AS(cauchy_g(tp, -2.0), DomainError);
  const SpectralLaw s = skewed();
  double prev = cauchy_g(s, -0.59);
  for (double z = -0.55; z < 10; z += 0.05) {
    const double v = cauchy_g(s, z);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("cauchy inverse") {
  const SpectralLaw pm = SpectralLaw::point_mass(1.3);
  for (double y : {0.01, 0.5, 3.0, 100.0}) CHECK(cauchy_g_inverse(pm, y) == doctest::Approx(1 / y - 1.3).epsilon(1e-13));
  const SpectralLaw tp = SpectralLaw::two_point(1.0, 0.05);
  for (double y : {0.05, 0.4, 0.9, 2.0, 50.0, 1e4})
    CHECK(std::abs(cauchy_g_inverse(tp, y) - g_inv_two_point(y, 1.0, 0.05)) < 1e-12 * std::max(1.0, 1 / y));
  for (const SpectralLaw& law : {tp, skewed(), SpectralLaw::uniform_grid(2.0, 0.3, 7)})
    for (double y = 0.02; y < 40; y *= 1.3) {
      const double z = cauchy_g_inverse(law, y);
      CHECK(std::abs(cauchy_g(law, z) - y) <= 1e-10 * std::max(1.0, y));
    }
  CHECK(tp.pole_at_left_edge());
  CHECK_THROWS_AS(cauchy_g_inverse(tp, 0.0), DomainError);
  CHECK_THROWS_AS(cauchy_g_inverse(tp, -1.0), DomainError);
}

TEST_CASE("R-transform") {
  const SpectralLaw pm = SpectralLaw::point_mass(1.3);
  for (double z : {0.0, 0.1, 1.0, 9.0}) CHECK(r_transform(pm, z) == doctest::Approx(-1.3));
  const SpectralLaw tp = SpectralLaw::two_point(1.0, 0.05);
  CHECK(std::abs(r_transform(tp, 0.5) - ref::kRTwoPointAtHalf) < 1e-14);
  CHECK(r_transform(tp, 0.0) == -1.0);
  CHECK(std::abs(r_transform(tp, 1e-9) + 1.0) < 1e-11);
  CHECK_THROWS_AS(r_transform(tp, -0.1), DomainError);
  const SpectralLaw s = skewed();
  double prev = r_transform(s, 0.0);
  for (double z = 0.02; z <= 5.0; z += 0.02) {
    const double r = r_transform(s, z);
    CHECK(r < 0.0);
    CHECK(r > prev);
    CHECK(std::abs(r - (cauchy_g_inverse(s, z) - 1 / z)) < 1e-10);
    prev = r;
  }
}

TEST_CASE("R' matches differences and kappa2 at 0") {
  const SpectralLaw s = skewed();
  CHECK(r_transform_prime(s, 0.0) == doctest::Approx(s.kappa2()));
  for (double z : {0.1, 0.5, 1.0, 2.0}) {
    const double h = 1e-5;
    const double fd = (r_transform(s, z + h) - r_transform(s, z - h)) / (2 * h);
    CHECK(std::abs(fd - r_transform_prime(s, z)) < 1e-8);
  }
}

TEST_CASE("R integral") {
  const SpectralLaw pm = SpectralLaw::point_mass(1.3);
  CHECK(r_integral(pm, 0.7) == doctest::Approx(-1.3 * 0.7));
  const SpectralLaw tp = SpectralLaw::two_point(1.0, 0.05);
  CHECK(r_integral(tp, 0.0) == 0.0);
  CHECK(std::abs(r_integral(tp, 0.4) - ref::kRIntegralTwoPointTo0p4) < 1e-13);
  const double trap = trapezoid([&](double z) { return r_transform(tp, z); }, 0.0, 0.4);
  CHECK(std::abs(r_integral(tp, 0.4) - trap) < 1e-9);
  const SpectralLaw s = skewed();
  const double trap2 = trapezoid([&](double z) { return r_transform(s, z); }, 0.0, 1.3);
  CHECK(std::abs(r_integral(s, 1.3) - trap2) < 1e-9);
  CHECK_THROWS_AS(r_integral(tp, -0.2), DomainError);
}

TEST_CASE("free cumulants") {
  const auto pm = free_cumulants(SpectralLaw::point_mass(1.3), 6);
  CHECK(pm[0] == doctest::Approx(-1.3));
  for (int k = 1; k < 6; ++k) CHECK(std::abs(pm[k]) < 1e-15);
  const SpectralLaw tp = SpectralLaw::two_point(1.0, 0.05);
  const auto kt = free_cumulants(tp, 12);
  CHECK(kt[1] == doctest::Approx(0.0025).epsilon(1e-13));
  CHECK(std::abs(kt[2]) < 1e-18);  // symmetric law
  // free cumulants of the symmetric Bernoulli are the Catalan-signed sequence
  CHECK(kt[3] == doctest::Approx(-std::pow(0.05, 4)).epsilon(1e-12));
  CHECK(kt[5] == doctest::Approx(2 * std::pow(0.05, 6)).epsilon(1e-12));
  for (const SpectralLaw& law : {tp, skewed(), SpectralLaw::uniform_grid(1.0, 0.2, 6)}) {
    const auto k = free_cumulants(law, 12);
    CHECK(k[0] == doctest::Approx(-law.d_star()));
    CHECK(k[1] == doctest::Approx(law.kappa2()).epsilon(1e-12));
    for (int i = 2; i <= 12; ++i) CHECK(std::abs(k[i - 1]) <= std::pow(16 * law.eps(), i));
    const double z = 0.1;
    double series = 0.0;
    for (int i = 12; i >= 1; --i) series = series * z + k[i - 1];
    if (law.eps() <= 0.2) CHECK(std::abs(series - r_transform(law, z)) < 1e-8);
  }
  CHECK_THROWS_AS(free_cumulants(tp, 0), DomainError);
}

TEST_CASE("central moment bound") {
  for (const SpectralLaw& law : {SpectralLaw::two_point(1.0, 0.05), skewed(), SpectralLaw::uniform_grid(1, 0.2, 6)}) {
    const auto mu = central_moments(law, 12);
    for (int k = 2; k <= 12; ++k) CHECK(std::abs(mu[k]) <= std::pow(law.eps(), k - 2) * law.kappa2() * (1 + 1e-12));
  }
}

TEST_CASE("small-e expansion of R") {
  // |R(z) + d - kappa2 z| <= C e kappa2 z^2 and |R'(z) - kappa2| <= C e^3 on (0, 1]
  const double C = 4.0;
  for (double e : {0.01, 0.05}) {
    const SpectralLaw law = SpectralLaw::two_point(1.0, e);
    for (double z = 0.05; z <= 1.0 + 1e-12; z += 0.05) {
      CHECK(std::abs(r_transform(law, z) + 1.0 - law.kappa2() * z) <= C * e * law.kappa2() * z * z);
      CHECK(std::abs(r_transform_prime(law, z) - law.kappa2()) <= C * e * e * e);
    }
  }
}
