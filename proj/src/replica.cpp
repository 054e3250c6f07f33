#include "rotamp/replica.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotamp/error.hpp"

namespace rotamp {

namespace {

double h_map(const ScalarChannel& ch, const SpectralLaw& law, double x) { return ch.mmse(-r_transform(law, x)); }

struct IterResult {
  double x = 0.0;
  int iterations = 0;
  bool converged = false;
  bool oscillating = false;
  std::vector<double> trajectory;
};

IterResult iterate(const ScalarChannel& ch, const SpectralLaw& law, double x0, double damping, double tol,
                   int max_iter) {
  IterResult res;
  double x = x0, prev_step = 0.0;
  int flips = 0;
  res.trajectory.push_back(x);
  for (int k = 0; k < max_iter; ++k) {
    const double next = (1.0 - damping) * x + damping * h_map(ch, law, x);
    const double step = next - x;
    res.trajectory.push_back(next);
    res.iterations = k + 1;
    x = next;
    if (std::abs(step) < tol) {
      res.converged = true;
      break;
    }
    flips = (step * prev_step < 0.0 && std::abs(step) >= 0.95 * std::abs(prev_step)) ? flips + 1 : 0;
    if (flips >= 3) {
      res.oscillating = true;
      break;
    }
    prev_step = step;
  }
  res.x = x;
  return res;
}

IterResult bisect(const ScalarChannel& ch, const SpectralLaw& law, double tol) {
  IterResult res;
  double lo = 0.0, hi = ch.rho_star();
  int k = 0;
  for (; k < 200 && hi - lo > tol; ++k) {
    const double mid = 0.5 * (lo + hi);
    (mid - h_map(ch, law, mid) < 0.0 ? lo : hi) = mid;
    res.trajectory.push_back(mid);
  }
  res.x = 0.5 * (lo + hi);
  res.iterations = k;
  res.converged = true;
  return res;
}

}  // namespace

FixedPoint complete_fixed_point(const ScalarChannel& ch, const SpectralLaw& law, double eta_inv, double gamma) {
  FixedPoint fp;
  fp.eta_inv_star = eta_inv;
  fp.gamma_star = gamma;
  fp.residual = std::abs(ch.mmse(gamma) - eta_inv) + std::abs(gamma + r_transform(law, eta_inv));
  const double eta = 1.0 / eta_inv, s = eta - gamma, d = law.d_star();

  double ratio2 = 0.0;  // E (eta / (D^2 + s))^2
  for (const auto& a : law.atoms()) ratio2 += a.weight * std::pow(eta / (a.dsq + s), 2);
  fp.delta_star = 1.0 / s;
  fp.kappa_star = std::max(0.0, std::pow(s / gamma, 2) * (ratio2 - 1.0));
  fp.sigma_sq_star = fp.delta_star * fp.kappa_star;
  fp.b_star = 1.0 / gamma - fp.kappa_star / s;
  fp.a_star = s * (1.0 - d / gamma);
  fp.c_star = -s * fp.kappa_star + std::pow(s / gamma, 2) * (d - gamma);
  fp.e_star = 1.0 + fp.kappa_star;
  fp.degenerate = law.degenerate() || fp.kappa_star == 0.0;
  fp.alpha_A = fp.degenerate ? std::numeric_limits<double>::infinity() : (s / gamma) / std::sqrt(fp.kappa_star);
  fp.alpha_B = fp.degenerate ? std::numeric_limits<double>::infinity() : fp.alpha_A * fp.alpha_A * (gamma - d);

  fp.i_rs = i_rs(ch, law, eta_inv, gamma);
  if (fp.valid()) {
    const Quadrature& q = ch.quadrature();
    const double sd = 1.0 / std::sqrt(gamma);
    fp.pi_star = ch.expect_signal(
        [&](double x) { return x * q.expect([&](double z) { return f_stationary(ch, sd * z, x, fp); }); });
    fp.psi_rs = psi_rs(ch, law, fp);
  }
  return fp;
}

FixedPoint solve_fixed_point(const ScalarChannel& ch, const SpectralLaw& law, const FixedPointOptions& opts) {
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw DomainError("fixed point: damping must lie in (0,1]");
  if (!(opts.tol > 0.0)) throw DomainError("fixed point: tol must be positive");
  if (opts.max_iter < 1) throw DomainError("fixed point: max_iter must be >= 1");
  const double rho = ch.rho_star();
  std::vector<double> starts = opts.starts.empty() ? std::vector<double>{rho} : opts.starts;
  for (double s : starts)
    if (!(s >= 0.0 && s <= rho)) throw DomainError("fixed point: starts must lie in [0, rho*]");

  std::vector<FixedPointCandidate> cands;
  std::vector<std::string> methods;
  for (double x0 : starts) {
    std::string method = opts.damping == 1.0 ? "iterate" : "damped";
    IterResult r = iterate(ch, law, x0, opts.damping, opts.tol, opts.max_iter);
    if (r.oscillating && opts.damping > 0.5) {
      method = "damped";
      r = iterate(ch, law, x0, 0.5, opts.tol, opts.max_iter);
    }
    if (r.oscillating) {
      method = "bisection";
      r = bisect(ch, law, opts.tol);
    }
    if (!r.converged)
      throw ConvergenceError("fixed point iteration did not converge within max_iter", std::move(r.trajectory));
    const double gamma = -r_transform(law, r.x);
    cands.push_back({x0, r.x, gamma, i_rs(ch, law, r.x, gamma), r.iterations});
    methods.push_back(method);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    const bool distinct = std::abs(cands[i].eta_inv - cands[best].eta_inv) > 10.0 * opts.tol;
    if (distinct && cands[i].i_rs < cands[best].i_rs) best = i;
  }
  FixedPoint fp = complete_fixed_point(ch, law, cands[best].eta_inv, cands[best].gamma);
  fp.iterations = cands[best].iterations;
  fp.method = methods[best];
  fp.candidates = std::move(cands);
  return fp;
}

FixedPoint solve_fixed_point(const AtomPrior& prior, const SpectralLaw& law, const FixedPointOptions& opts,
                             const Quadrature& quad) {
  return solve_fixed_point(PriorChannel(prior, quad), law, opts);
}

double i_rs(const ScalarChannel& ch, const SpectralLaw& law, double eta_inv, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("i_rs: gamma must be positive");
  return ch.mutual_info(gamma) - 0.5 * r_integral(law, eta_inv) - 0.5 * gamma * eta_inv;
}

double i_rs(const AtomPrior& prior, const SpectralLaw& law, double eta_inv, double gamma, const Quadrature& quad) {
  return i_rs(PriorChannel(prior, quad), law, eta_inv, gamma);
}

Gradient2 i_rs_gradient(const ScalarChannel& ch, const SpectralLaw& law, double eta_inv, double gamma) {
  return {0.5 * (-r_transform(law, eta_inv) - gamma), 0.5 * (ch.mmse(gamma) - eta_inv)};
}

double psi_rs(const ScalarChannel& ch, const SpectralLaw& law, const FixedPoint& fp) {
  if (!fp.valid()) throw DomainError("psi_rs: invalid fixed point");
  const double g = fp.gamma_star, x = fp.eta_inv_star;
  return -0.5 - 0.5 * g * ch.rho_star() + 0.5 * g * x + 0.5 * r_integral(law, x) + ch.expected_log_cpi(g);
}

double psi_rs(const AtomPrior& prior, const SpectralLaw& law, const FixedPoint& fp, const Quadrature& quad) {
  return psi_rs(PriorChannel(prior, quad), law, fp);
}

double IdentityReport::max_lemma() const { return std::max({d_a, d_b, d_c, d_d, d_e}); }

double IdentityReport::max_all() const {
  return std::max({max_lemma(), mean_l, second_l, second_eb, d2_l, d2_l2, d2_eb2, b_plus_sigma});
}

IdentityReport check_identities(const FixedPoint& fp, const SpectralLaw& law) {
  IdentityReport rep;
  const double eta = fp.eta_star(), g = fp.gamma_star, s = eta - g, k = fp.kappa_star;
  double da = 0, db = 0, dc = 0, dd = 0, de = 0, el = 0, el2 = 0, eb2 = 0, d2l = 0, d2l2 = 0, d2eb2 = 0;
  for (const auto& a : law.atoms()) {
    const double w = a.weight, u = 1.0 / (a.dsq + s);
    const double l = (s / g) * (eta * u - 1.0);
    const double eb_sq = std::pow(eta / g, 2) * a.dsq * u * u;  // E over Xi of E_b^2
    da += w * u;
    db += w * a.dsq * u;
    dc += w * u * u;
    dd += w * a.dsq * u * u;
    de += w * a.dsq * a.dsq * u * u;
    el += w * l;
    el2 += w * l * l;
    eb2 += w * eb_sq;
    d2l += w * a.dsq * l;
    d2l2 += w * a.dsq * l * l;
    d2eb2 += w * a.dsq * eb_sq;
  }
  rep.d_a = std::abs(da - 1.0 / eta);
  rep.d_b = std::abs(db - g / eta);
  rep.d_c = std::abs(dc - (std::pow(g / s, 2) * k + 1.0) / (eta * eta));
  rep.d_d = std::abs(dd - (-(g * g) / (eta * eta) * (k / s) + g / (eta * eta)));
  rep.d_e = std::abs(de - (g * g) / (eta * eta) * (1.0 + k));
  rep.mean_l = std::abs(el);
  rep.second_l = std::abs(el2 - k);
  rep.second_eb = std::abs(eb2 - fp.b_star);
  rep.d2_l = std::abs(d2l - fp.a_star);
  rep.d2_l2 = std::abs(d2l2 - fp.c_star);
  rep.d2_eb2 = std::abs(d2eb2 - fp.e_star);
  rep.b_plus_sigma = std::abs(fp.b_star + fp.sigma_sq_star - 1.0 / g);
  rep.degenerate = fp.degenerate;
  return rep;
}

bool SmallEpsReport::all_pass() const {
  return std::all_of(bounds.begin(), bounds.end(), [](const SmallEpsBound& b) { return b.pass; });
}

SmallEpsReport small_eps_report(const FixedPoint& fp, const SpectralLaw& law, double constant) {
  if (!(fp.kappa_star > 0.0)) throw DomainError("small_eps_report: kappa* must be positive");
  const double d = law.d_star(), e = law.eps(), k2 = law.kappa2(), x = fp.eta_inv_star;
  SmallEpsReport rep;
  rep.constant = constant;
  auto add = [&](std::string name, double lhs, double rhs) {
    const double ratio = lhs / rhs;
    rep.bounds.push_back({std::move(name), lhs, rhs, ratio, ratio <= constant});
  };
  add("gamma", std::abs(fp.gamma_star - (d - k2 * x)), k2 * x * e);
  add("e_over_b", std::abs(fp.e_star / fp.b_star - d), e);
  add("a_over_sqrt_kappa", std::abs(fp.a_star / std::sqrt(fp.kappa_star)), e);
  add("c_over_kappa", std::abs(fp.c_star / fp.kappa_star - d), e);
  add("b", std::abs(fp.b_star - 1.0 / d), k2 / (d * d));
  return rep;
}

SeInit SeInit::noninformative(double gamma2_1) {
  SeInit s;
  s.mode = SeInitMode::noninformative;
  s.gamma2_1 = gamma2_1;
  return s;
}

SeInit SeInit::stationary(const FixedPoint& fp) {
  SeInit s;
  s.mode = SeInitMode::stationary;
  s.fp = fp;
  s.gamma2_1 = fp.eta_minus_gamma();
  return s;
}

StateEvolution state_evolution(const ScalarChannel& ch, const SpectralLaw& law, const SeInit& init, int T) {
  if (T < 1) throw DomainError("state_evolution: T must be >= 1");
  if (!(init.gamma2_1 > 0.0) || !std::isfinite(init.gamma2_1))
    throw DomainError("state_evolution: gamma_{2,1} must be positive");
  StateEvolution se;
  se.init_mode = init.mode;
  double g2 = init.gamma2_1;
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  for (int t = 1; t <= T; ++t) {
    SeStep st;
    st.gamma2 = g2;
    st.eta2 = 1.0 / cauchy_g(law, g2);
    st.gamma1 = st.eta2 - st.gamma2;
    if (!positive(st.eta2) || !positive(st.gamma1))
      throw DivergenceError("state evolution left (0, inf) at iteration " + std::to_string(t), t);
    st.eta1 = 1.0 / ch.mmse(st.gamma1);
    g2 = st.eta1 - st.gamma1;
    if (!positive(st.eta1) || !positive(g2))
      throw DivergenceError("state evolution left (0, inf) at iteration " + std::to_string(t), t);
    se.steps.push_back(st);
  }
  return se;
}

StateEvolution stationary_state_evolution(const FixedPoint& fp, int T) {
  if (T < 1) throw DomainError("state_evolution: T must be >= 1");
  if (!fp.valid()) throw DomainError("state_evolution: invalid fixed point");
  StateEvolution se;
  se.init_mode = SeInitMode::stationary;
  se.steps.assign(T, SeStep{fp.gamma_star, fp.eta_star(), fp.eta_minus_gamma(), fp.eta_star()});
  return se;
}

}  // namespace rotamp
