#pragma once

#include <span>
#include <vector>

namespace rotamp {

struct SpectralAtom {
  double dsq = 0.0;
  double weight = 0.0;
};

// Atomic law of D^2. Support is [d_minus, d_plus]; eps is the half-width of the
// smallest window centred at d_star that contains it.
class SpectralLaw {
 public:
  explicit SpectralLaw(std::vector<SpectralAtom> atoms);

  static SpectralLaw point_mass(double d_star);
  static SpectralLaw two_point(double d_star, double e);
  // k equally weighted atoms evenly spaced on [d_star - e, d_star + e].
  static SpectralLaw uniform_grid(double d_star, double e, int k);

  std::span<const SpectralAtom> atoms() const { return atoms_; }
  double d_star() const { return d_star_; }
  double d_minus() const { return atoms_.front().dsq; }
  double d_plus() const { return atoms_.back().dsq; }
  double kappa2() const { return kappa2_; }
  double eps() const { return eps_; }
  double weight_at(double dsq) const;
  // Zero variance: only reachable through point_mass or a single atom.
  bool degenerate() const { return atoms_.size() == 1; }
  // Every law here is atomic with an atom at d_minus, so G(-d_minus) = +inf and
  // the domain of G^{-1} and R is the whole half-line y > 0.
  bool pole_at_left_edge() const { return true; }

 private:
  std::vector<SpectralAtom> atoms_;
  double d_star_ = 0.0;
  double kappa2_ = 0.0;
  double eps_ = 0.0;
};

// G(z) = E 1/(z + D^2), z > -d_minus.
double cauchy_g(const SpectralLaw& law, double z);
double cauchy_g_prime(const SpectralLaw& law, double z);
double cauchy_g_inverse(const SpectralLaw& law, double y);

// R(z) = G^{-1}(z) - 1/z, continued by -d_star at z = 0.
double r_transform(const SpectralLaw& law, double z);
double r_transform_prime(const SpectralLaw& law, double z);
double r_integral(const SpectralLaw& law, double x);

// Free cumulants kappa_1..kappa_K of -D^2.
std::vector<double> free_cumulants(const SpectralLaw& law, int K);
// Central moments E(D^2 - d_star)^k, k = 0..K.
std::vector<double> central_moments(const SpectralLaw& law, int K);

}  // namespace rotamp
