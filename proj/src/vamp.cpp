#include "rotamp/vamp.hpp"

#include <cmath>
#include <string>

#include "rotamp/error.hpp"
#include "rotamp/rng.hpp"

namespace rotamp {

namespace {

Eigen::VectorXd denoise_vec(const ScalarChannel& ch, const Eigen::VectorXd& r, double gamma) {
  Eigen::VectorXd out(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) out[i] = ch.denoise(r[i], gamma).f;
  return out;
}

}  // namespace

VampRun run_vamp(const Instance& inst, const ScalarChannel& ch, const StateEvolution& se,
                 const Eigen::VectorXd& r2_1, const VampOptions& opts) {
  const int n = inst.n, T = se.T();
  if (r2_1.size() != n) throw DomainError("run_vamp: r2_1 has the wrong length");
  if (T < 1) throw DomainError("run_vamp: T must be >= 1");
  VampRun run;
  run.T = T;
  if (opts.keep_history) {
    run.r1_history.resize(n, T);
    run.r2_history.resize(n, T);
  }
  const Eigen::VectorXd u = inst.dt_y();
  const double limit = opts.divergence_factor * ch.rho_star();
  Eigen::VectorXd r2 = r2_1, v(n), r1(n);
  for (int t = 1; t <= T; ++t) {
    const SeStep& st = se.steps[t - 1];
    if (!(st.gamma1 > 0 && st.gamma2 > 0 && st.eta1 > 0 && st.eta2 > 0))
      throw DivergenceError("run_vamp: non-positive state evolution parameter at t=" + std::to_string(t), t);
    if (opts.keep_history) run.r2_history.col(t - 1) = r2;
    // beta_hat2 = O^T (D^T D + gamma2)^{-1} (D^T y + gamma2 O r2)
    v = inst.O.apply(r2);
    v = (u.array() + st.gamma2 * v.array()) / (inst.dsq.array() + st.gamma2);
    inst.O.apply_transpose_inplace(v);
    run.beta_hat2 = v;
    r1 = (st.eta2 * v - st.gamma2 * r2) / st.gamma1;
    if (opts.keep_history) run.r1_history.col(t - 1) = r1;
    run.beta_hat1 = denoise_vec(ch, r1, st.gamma1);
    VampRecord rec;
    rec.t = t;
    rec.mse1 = (run.beta_hat1 - inst.beta_star).squaredNorm() / n;
    rec.mse2 = (run.beta_hat2 - inst.beta_star).squaredNorm() / n;
    rec.eta1_inv_pred = 1.0 / st.eta1;
    rec.eta2_inv_pred = 1.0 / st.eta2;
    run.records.push_back(rec);
    if (!(rec.mse1 <= limit && rec.mse2 <= limit))
      throw DivergenceError("run_vamp: mse exceeded " + std::to_string(limit) + " at t=" + std::to_string(t), t);
    const double gamma2_next = st.eta1 - st.gamma1;
    r2 = (st.eta1 * run.beta_hat1 - st.gamma1 * r1) / gamma2_next;
  }
  return run;
}

VampRun run_vamp(const Instance& inst, const ScalarChannel& ch, const SpectralLaw& law, int T,
                 const Eigen::VectorXd& r2_1, double gamma2_1, const VampOptions& opts) {
  return run_vamp(inst, ch, state_evolution(ch, law, SeInit::noninformative(gamma2_1), T), r2_1, opts);
}

Eigen::VectorXd sample_p0(int n, double gamma_star, std::uint64_t seed) {
  NormalStream normal(seed, "p0");
  const double sd = 1.0 / std::sqrt(gamma_star);
  Eigen::VectorXd p(n);
  for (int i = 0; i < n; ++i) p[i] = sd * normal();
  return p;
}

Eigen::VectorXd stationary_r2_init(const ScalarChannel& ch, const FixedPoint& fp, const Eigen::VectorXd& beta_star,
                                   const Eigen::VectorXd& p0) {
  if (!fp.valid()) throw DomainError("stationary init: invalid fixed point");
  const double eta = fp.eta_star(), g = fp.gamma_star;
  const Eigen::VectorXd r10 = beta_star + p0;
  return (eta * denoise_vec(ch, r10, g) - g * r10) / (eta - g);
}

StationaryRun run_stationary_vamp(const Instance& inst, const ScalarChannel& ch, const FixedPoint& fp,
                                  std::uint64_t seed, int T) {
  if (!fp.valid()) throw DomainError("run_stationary_vamp: invalid fixed point");
  if (T < 1) throw DomainError("run_stationary_vamp: T must be >= 1");
  const int n = inst.n, k = inst.k();
  const double eta = fp.eta_star(), g = fp.gamma_star, s = eta - g;
  StationaryRun run;
  run.T = T;
  run.diag_lambda = (s / g) * (eta / (inst.dsq.array() + s) - 1.0);
  Eigen::VectorXd dt_eps = Eigen::VectorXd::Zero(n);
  dt_eps.head(k) = inst.d_diag.array() * inst.eps.head(k).array();
  run.e_b = (eta / g) * (dt_eps.array() / (inst.dsq.array() + s)).matrix();
  run.e = inst.O.apply_transpose(run.e_b);
  run.p0 = sample_p0(n, g, seed);
  run.X.resize(n, T);
  run.S.resize(n, T);
  run.Y.resize(n, T);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = f_stationary(ch, run.p0[i], inst.beta_star[i], fp);
  for (int t = 0; t < T; ++t) {
    run.X.col(t) = x;
    Eigen::VectorXd sv = inst.O.apply(x);
    run.S.col(t) = sv;
    sv.array() *= run.diag_lambda.array();
    inst.O.apply_transpose_inplace(sv);
    run.Y.col(t) = sv;
    for (int i = 0; i < n; ++i) x[i] = f_stationary(ch, sv[i] + run.e[i], inst.beta_star[i], fp);
  }
  return run;
}

EmpiricalOverlaps empirical_overlaps(const StationaryRun& run) {
  const double n = static_cast<double>(run.X.rows());
  EmpiricalOverlaps ov;
  ov.xtx = run.X.transpose() * run.X / n;
  ov.yty = run.Y.transpose() * run.Y / n;
  ov.xte = run.X.transpose() * run.e / n;
  ov.yte = run.Y.transpose() * run.e / n;
  ov.xty = run.X.transpose() * run.Y / n;
  ov.ete = run.e.squaredNorm() / n;
  return ov;
}

double tap_residual(const Instance& inst, const ScalarChannel& ch, double gamma_star, const Eigen::VectorXd& m_vec) {
  if (!(gamma_star > 0.0)) throw DomainError("tap_residual: gamma* must be positive");
  if (m_vec.size() != inst.n) throw DomainError("tap_residual: m has the wrong length");
  Eigen::VectorXd arg = inst.apply_AtA(m_vec) - gamma_star * m_vec - inst.apply_At(inst.y);
  arg /= -gamma_star;
  return (m_vec - denoise_vec(ch, arg, gamma_star)).squaredNorm() / inst.n;
}

}  // namespace rotamp
