#include "rotamp/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "rotamp/channel.hpp"
#include "rotamp/cli/csv.hpp"
#include "rotamp/error.hpp"
#include "rotamp/model.hpp"
#include "rotamp/oracle.hpp"
#include "rotamp/overlap.hpp"
#include "rotamp/parallel.hpp"
#include "rotamp/replica.hpp"
#include "rotamp/vamp.hpp"

namespace rotamp::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kResidualLimit = 1e-10;
constexpr double kIdentityLimit = 1e-9;
constexpr double kFreeEnergyLimit = 1e-8;

std::string path_in(const ExperimentConfig& c, const std::string& file) {
  fs::create_directories(c.out);
  return (fs::path(c.out) / file).string();
}

void write_summary(const ExperimentConfig& c, const std::string& command, const json& results) {
  std::ofstream f(path_in(c, command + "_summary.json"));
  f << json{{"command", command}, {"config", to_json(c)}, {"results", results}}.dump(2) << "\n";
}

void kv(std::ostream& out, const std::string& key, double v) { out << key << ": " << format_number(v) << "\n"; }

struct Solved {
  AtomPrior prior;
  SpectralLaw law;
  Quadrature quad;
  FixedPoint fp;
};

Solved solve(const ExperimentConfig& c) {
  AtomPrior prior = c.make_prior();
  SpectralLaw law = c.make_law();
  Quadrature quad = gauss_hermite(c.quad_order);
  FixedPoint fp = solve_fixed_point(prior, law, c.fixed_point_options(), quad);
  return {std::move(prior), std::move(law), std::move(quad), std::move(fp)};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

json fp_json(const FixedPoint& fp) {
  json cands = json::array();
  for (const auto& k : fp.candidates)
    cands.push_back({{"start", k.start}, {"eta_inv", k.eta_inv}, {"gamma", k.gamma}, {"i_rs", k.i_rs},
                     {"iterations", k.iterations}});
  return {{"eta_inv_star", fp.eta_inv_star}, {"gamma_star", fp.gamma_star}, {"eta_star", fp.eta_star()},
          {"residual", fp.residual},         {"delta_star", fp.delta_star}, {"kappa_star", fp.kappa_star},
          {"sigma_sq_star", fp.sigma_sq_star}, {"b_star", fp.b_star},     {"a_star", fp.a_star},
          {"c_star", fp.c_star},             {"e_star", fp.e_star},
          {"alpha_A", std::isfinite(fp.alpha_A) ? json(fp.alpha_A) : json("inf")},
          {"alpha_B", std::isfinite(fp.alpha_B) ? json(fp.alpha_B) : json("inf")},
          {"pi_star", fp.pi_star},           {"i_rs", fp.i_rs},             {"psi_rs", fp.psi_rs},
          {"degenerate", fp.degenerate},     {"iterations", fp.iterations}, {"method", fp.method},
          {"candidates", cands}};
}

bool fp_ok(const Solved& s) {
  return s.fp.residual <= kResidualLimit && s.fp.eta_inv_star <= s.prior.rho_star() * (1 + 1e-12) &&
         s.fp.eta_minus_gamma() >= (1 - 1e-12) / s.prior.rho_star();
}

int cmd_fixed_point(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const Solved s = solve(c);
  const FixedPoint& fp = s.fp;
  json res = fp_json(fp);
  if (fp.degenerate) {
    err << "warning: spectral law is a point mass (kappa* = 0); identities skipped\n";
  } else {
    const IdentityReport rep = check_identities(fp, s.law);
    res["identity_max_residual"] = rep.max_all();
  }
  res["ok"] = fp_ok(s);
  CsvWriter csv(path_in(c, "fixed_point.csv"),
                {{"eta_inv_star", "fixed point eta*^-1 = mmse(gamma*)"},
                 {"gamma_star", "fixed point gamma* = -R(eta*^-1)"},
                 {"delta_star", "1/(eta*-gamma*)"},
                 {"kappa_star", "limit of n^-1 |y^t|^2 / delta*"},
                 {"b_star", "1/gamma* - kappa* delta*"},
                 {"i_rs", "replica-symmetric mutual information"},
                 {"psi_rs", "replica-symmetric free energy"},
                 {"residual", "|eta*^-1 - mmse(gamma*)|"}});
  csv.row(std::vector<double>{fp.eta_inv_star, fp.gamma_star, fp.delta_star, fp.kappa_star, fp.b_star, fp.i_rs,
                              fp.psi_rs, fp.residual});
  write_summary(c, "fixed_point", res);
  for (const char* k : {"eta_inv_star", "gamma_star", "eta_star", "delta_star", "kappa_star", "b_star", "i_rs",
                        "psi_rs", "residual"})
    kv(out, k, res[k].get<double>());
  if (res.contains("identity_max_residual")) kv(out, "identity_max_residual", res["identity_max_residual"]);
  out << "method: " << fp.method << "\n";
  if (fp.candidates.size() > 1) out << "candidates: " << fp.candidates.size() << "\n";
  if (!fp_ok(s)) {
    err << "fixed point failed its checks (residual " << format_number(fp.residual) << ")\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_identities(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const Solved s = solve(c);
  const FixedPoint& fp = s.fp;
  CsvWriter csv(path_in(c, "identities.csv"),
                {{"check", "identity or small-e bound"},
                 {"value", "absolute residual, or lhs/rhs for bounds"},
                 {"limit", "pass threshold"},
                 {"pass", "1 when value <= limit"}});
  json res = json::object();
  bool ok = true;
  auto emit = [&](const std::string& name, double v, double limit, bool exact) {
    const bool pass = v <= limit;
    if (exact) ok = ok && pass;
    csv.row(std::vector<std::string>{name, format_number(v), format_number(limit), pass ? "1" : "0"});
    res[name] = v;
    kv(out, name, v);
  };
  emit("free_energy", std::abs(fp.psi_rs + fp.i_rs + 0.5), kFreeEnergyLimit, true);
  if (fp.degenerate) {
    err << "warning: spectral law is a point mass (kappa* = 0); identities skipped\n";
  } else {
    const IdentityReport r = check_identities(fp, s.law);
    const std::pair<const char*, double> rows[] = {
        {"d_a", r.d_a},       {"d_b", r.d_b},         {"d_c", r.d_c},           {"d_d", r.d_d},
        {"d_e", r.d_e},       {"mean_l", r.mean_l},   {"second_l", r.second_l}, {"second_eb", r.second_eb},
        {"d2_l", r.d2_l},     {"d2_l2", r.d2_l2},     {"d2_eb2", r.d2_eb2},     {"b_plus_sigma", r.b_plus_sigma}};
    for (const auto& [name, v] : rows) emit(name, v, kIdentityLimit, true);
    const SmallEpsReport se = small_eps_report(fp, s.law);
    for (const auto& b : se.bounds) emit("small_eps:" + b.name, b.ratio, se.constant, false);
  }
  res["ok"] = ok;
  write_summary(c, "identities", res);
  if (!ok) {
    err << "identity check failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_state_evolution(const ExperimentConfig& c, std::ostream& out, std::ostream&) {
  const AtomPrior prior = c.make_prior();
  const SpectralLaw law = c.make_law();
  const PriorChannel ch(prior, gauss_hermite(c.quad_order));
  SeInit init = SeInit::noninformative(c.gamma2_1 > 0 ? c.gamma2_1 : 1.0 / prior.rho_star());
  if (c.init == "stationary") init = SeInit::stationary(solve_fixed_point(ch, law, c.fixed_point_options()));
  const StateEvolution se = state_evolution(ch, law, init, c.T);
  CsvWriter csv(path_in(c, "state_evolution.csv"),
                {{"t", "iteration, from 1"},
                 {"gamma1", "gamma_{1,t}"},
                 {"eta1", "eta_{1,t+1}, precision of f(r_1^t, gamma_{1,t})"},
                 {"gamma2", "gamma_{2,t}"},
                 {"eta2", "eta_{2,t}"},
                 {"eta1_inv", "predicted mse of beta_hat_1^t"},
                 {"eta2_inv", "predicted mse of beta_hat_2^t"}});
  for (int t = 0; t < se.T(); ++t) {
    const SeStep& st = se.steps[t];
    csv.row(std::vector<double>{double(t + 1), st.gamma1, st.eta1, st.gamma2, st.eta2, 1 / st.eta1, 1 / st.eta2});
  }
  const SeStep& last = se.steps.back();
  write_summary(c, "state_evolution", {{"T", se.T()}, {"final_eta1_inv", 1 / last.eta1}, {"final_eta2_inv", 1 / last.eta2}});
  kv(out, "T", se.T());
  kv(out, "final_eta1_inv", 1 / last.eta1);
  kv(out, "final_eta2_inv", 1 / last.eta2);
  return kExitOk;
}

int cmd_delta_table(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const Solved s = solve(c);
  const FixedPoint& fp = s.fp;
  if (fp.degenerate) {
    err << "warning: spectral law is a point mass; every overlap equals delta*\n";
  }
  const Quadrature q2 = gauss_hermite(c.quad2_order);
  const PriorChannel ch(s.prior, s.quad);
  const int T = std::max(2, c.T);
  const OverlapTable tab = delta_table(ch, fp, T, q2);
  CsvWriter csv(path_in(c, "delta_table.csv"),
                {{"s", "row index, from 1"}, {"t", "column index, from 1"}, {"delta", "limit of n^-1 <x^s, x^t>"}});
  for (int i = 0; i < T; ++i)
    for (int j = 0; j < T; ++j) csv.row(std::vector<double>{double(i + 1), double(j + 1), tab.delta(i, j)});
  json res{{"T", T},
           {"delta_star", fp.delta_star},
           {"g_at_delta_star_residual", std::abs(overlap_map_g(ch, fp, fp.delta_star, q2) - fp.delta_star)},
           {"gprime_at_star", gprime_at_star(ch, fp)},
           {"gprime_bound", std::pow(fp.gamma_star / fp.eta_star(), 2)},
           {"delta_12", tab.delta(0, 1)},
           {"last_superdiagonal_gap", fp.delta_star - tab.delta(T - 2, T - 1)},
           {"min_eigenvalue", tab.min_eigenvalue()}};
  write_summary(c, "delta_table", res);
  for (const auto& [k, v] : res.items()) kv(out, k, v.get<double>());
  return kExitOk;
}

const std::vector<Column>& simulate_columns() {
  static const std::vector<Column> cols{
      {"seed", "instance master seed"},
      {"t", "iteration, from 1"},
      {"mse1", "n^-1 |f(r_1^t) - beta*|^2"},
      {"mse2", "n^-1 |beta_hat_2^t - beta*|^2"},
      {"eta1_inv_pred", "state-evolution prediction for mse1"},
      {"eta2_inv_pred", "state-evolution prediction for mse2"},
      {"tap_residual", "n^-1 |m - f(-(A^T A m - gamma* m - A^T y)/gamma*)|^2 at m = f(r_1^t)"}};
  return cols;
}

int cmd_simulate(const ExperimentConfig& c, std::ostream& out, std::ostream&) {
  const AtomPrior prior = c.make_prior();
  const SpectralLaw law = c.make_law();
  const PriorChannel ch(prior, gauss_hermite(c.quad_order));
  const FixedPoint fp = solve_fixed_point(ch, law, c.fixed_point_options());
  const int n = c.n, m = c.m_for(n), T = c.T;
  const bool stationary = c.init == "stationary";
  const StateEvolution se = stationary ? stationary_state_evolution(fp, T)
                                       : state_evolution(ch, law, SeInit::noninformative(c.gamma2_1 > 0 ? c.gamma2_1 : 1.0 / prior.rho_star()), T);
  const std::string path = path_in(c, "simulate.csv");

  // rows already on disk, by seed
  std::map<std::uint64_t, std::vector<std::vector<double>>> done;
  if (c.resume && fs::exists(path)) {
    const CsvTable old = read_csv(path);
    std::vector<std::string> names;
    for (const auto& col : simulate_columns()) names.push_back(col.name);
    if (old.header != names) throw ConfigError("resume: '" + path + "' has a different header");
    for (const auto& r : old.rows) done[static_cast<std::uint64_t>(r[0])].push_back(r);
    for (const auto& [sd, rows] : done)
      if (static_cast<int>(rows.size()) != T)
        throw ConfigError("resume: seed " + std::to_string(sd) + " has " + std::to_string(rows.size()) +
                          " rows, expected T = " + std::to_string(T));
  }
  std::vector<std::uint64_t> todo;
  for (int i = 0; i < c.seeds; ++i)
    if (!done.count(c.seed + i)) todo.push_back(c.seed + i);

  std::vector<std::vector<std::vector<double>>> fresh(todo.size());
  parallel_for(todo.size(), c.thread_count(), [&](std::size_t k) {
    const std::uint64_t sd = todo[k];
    try {
      const Instance inst = sample_instance(law, prior, n, m, sd);
      VampOptions opts;
      opts.keep_history = true;
      opts.divergence_factor = c.divergence_factor;
      const Eigen::VectorXd r2 = stationary ? stationary_r2_init(ch, fp, inst.beta_star, sample_p0(n, fp.gamma_star, sd))
                                            : Eigen::VectorXd::Zero(n);
      const VampRun run = run_vamp(inst, ch, se, r2, opts);
      for (int t = 0; t < T; ++t) {
        Eigen::VectorXd b1(n);
        for (int i = 0; i < n; ++i) b1[i] = ch.denoise(run.r1_history(i, t), se.steps[t].gamma1).f;
        const VampRecord& r = run.records[t];
        fresh[k].push_back({double(sd), double(t + 1), r.mse1, r.mse2, r.eta1_inv_pred, r.eta2_inv_pred,
                            tap_residual(inst, ch, fp.gamma_star, b1)});
      }
    } catch (const DivergenceError& e) {
      throw DivergenceError("seed " + std::to_string(sd) + ": " + e.what(), e.iteration());
    }
  });
  {
    CsvWriter csv(path, simulate_columns(), c.resume);
    for (const auto& rows : fresh)
      for (const auto& r : rows) csv.row(r);
  }
  for (std::size_t k = 0; k < todo.size(); ++k) done[todo[k]] = fresh[k];

  // summary over the configured seeds
  CsvWriter sum(path_in(c, "simulate_summary.csv"),
                {{"t", "iteration, from 1"},
                 {"rel_err1_mean", "mean over seeds of |mse1 - eta1_inv_pred| / eta1_inv_pred"},
                 {"rel_err1_stderr", "standard error of the above"},
                 {"rel_err2_mean", "mean over seeds of |mse2 - eta2_inv_pred| / eta2_inv_pred"},
                 {"rel_err2_stderr", "standard error of the above"},
                 {"tap_residual_mean", "mean over seeds of tap_residual"}});
  double worst = 0.0;
  json per_t = json::array();
  for (int t = 0; t < T; ++t) {
    std::vector<double> e1, e2, tap;
    for (int i = 0; i < c.seeds; ++i) {
      const auto& r = done.at(c.seed + i)[t];
      e1.push_back(std::abs(r[2] - r[4]) / r[4]);
      e2.push_back(std::abs(r[3] - r[5]) / r[5]);
      tap.push_back(r[6]);
    }
    sum.row(std::vector<double>{double(t + 1), mean_of(e1), stderr_of(e1), mean_of(e2), stderr_of(e2), mean_of(tap)});
    worst = std::max({worst, mean_of(e1), mean_of(e2)});
    per_t.push_back({{"t", t + 1}, {"rel_err1_mean", mean_of(e1)}, {"rel_err2_mean", mean_of(e2)}});
  }
  write_summary(c, "simulate",
                {{"n", n}, {"m", m}, {"seeds_run", todo.size()}, {"max_mean_rel_err", worst}, {"per_t", per_t}});
  kv(out, "n", n);
  kv(out, "m", m);
  kv(out, "seeds_run", double(todo.size()));
  kv(out, "max_mean_rel_err", worst);
  return kExitOk;
}

int cmd_stationary(const ExperimentConfig& c, std::ostream& out, std::ostream&) {
  const Solved s = solve(c);
  const FixedPoint& fp = s.fp;
  const PriorChannel ch(s.prior, s.quad);
  const int n = c.n, m = c.m_for(n), T = c.T;
  const OverlapTable tab = delta_table(ch, fp, std::max(2, T), gauss_hermite(c.quad2_order));
  std::vector<EmpiricalOverlaps> ov(c.seeds);
  parallel_for(ov.size(), c.thread_count(), [&](std::size_t k) {
    const std::uint64_t sd = c.seed + k;
    ov[k] = empirical_overlaps(run_stationary_vamp(sample_instance(s.law, s.prior, n, m, sd), ch, fp, sd, T));
  });
  CsvWriter csv(path_in(c, "stationary.csv"),
                {{"seed", "instance master seed"},
                 {"block", "Gram block: xtx, yty, xty, xte, yte or ete (all divided by n)"},
                 {"s", "row iterate, from 1 (0 for e)"},
                 {"t", "column iterate, from 1 (0 for e)"},
                 {"empirical", "finite-n value"},
                 {"predicted", "large-n limit"}});
  auto cell = [](double v) { return format_number(v); };
  std::vector<double> rel_x, rel_y, rel_e;
  for (std::size_t k = 0; k < ov.size(); ++k) {
    const std::string sd = std::to_string(c.seed + k);
    const auto& o = ov[k];
    for (int i = 0; i < T; ++i)
      for (int j = 0; j < T; ++j) {
        const std::string si = std::to_string(i + 1), sj = std::to_string(j + 1);
        csv.row(std::vector<std::string>{sd, "xtx", si, sj, cell(o.xtx(i, j)), cell(tab.delta(i, j))});
        csv.row(std::vector<std::string>{sd, "yty", si, sj, cell(o.yty(i, j)), cell(fp.kappa_star * tab.delta(i, j))});
        csv.row(std::vector<std::string>{sd, "xty", si, sj, cell(o.xty(i, j)), "0"});
      }
    for (int i = 0; i < T; ++i) {
      const std::string si = std::to_string(i + 1);
      csv.row(std::vector<std::string>{sd, "xte", si, "0", cell(o.xte[i]), "0"});
      csv.row(std::vector<std::string>{sd, "yte", si, "0", cell(o.yte[i]), "0"});
    }
    csv.row(std::vector<std::string>{sd, "ete", "0", "0", cell(o.ete), cell(fp.b_star)});
    rel_x.push_back(std::abs(o.xtx(0, 0) - fp.delta_star) / fp.delta_star);
    rel_y.push_back(fp.kappa_star > 0 ? std::abs(o.yty(0, 0) - fp.kappa_star * fp.delta_star) / (fp.kappa_star * fp.delta_star) : 0.0);
    rel_e.push_back(std::abs(o.ete - fp.b_star) / fp.b_star);
  }
  json res{{"n", n}, {"m", m}, {"T", T}, {"xtx_rel_err_mean", mean_of(rel_x)}, {"yty_rel_err_mean", mean_of(rel_y)},
           {"ete_rel_err_mean", mean_of(rel_e)}};
  write_summary(c, "stationary", res);
  for (const auto& [k, v] : res.items()) kv(out, k, v.get<double>());
  return kExitOk;
}

int cmd_oracle(const ExperimentConfig& c, std::ostream& out, std::ostream&) {
  const AtomPrior prior = c.make_prior();
  const SpectralLaw law = c.make_law();
  for (int n : c.ns)
    if (config_count(prior, n, c.max_configs) == 0)
      throw BudgetError("oracle: n = " + std::to_string(n) + " needs " + std::to_string(prior.size()) + "^" +
                        std::to_string(n) + " configurations, above max_configs = " + std::to_string(c.max_configs));
  const PriorChannel ch(prior, gauss_hermite(c.quad_order));
  const FixedPoint fp = solve_fixed_point(ch, law, c.fixed_point_options());
  OracleOptions opts;
  opts.average_over_A = c.average_over_A;
  opts.threads = c.thread_count();
  opts.max_configs = c.max_configs;
  CsvWriter csv(path_in(c, "oracle.csv"),
                {{"n", "signal dimension"},
                 {"m", "number of observations"},
                 {"reps", "(beta*, eps) replicates"},
                 {"i_n_hat", "mean of -n^-1 (log Z + |eps|^2/2)"},
                 {"i_n_stderr", "standard error of i_n_hat"},
                 {"i_rs", "replica-symmetric prediction"},
                 {"mmse_n_hat", "mean of n^-1 |beta* - <sigma>|^2"},
                 {"mmse_n_stderr", "standard error of mmse_n_hat"},
                 {"eta_inv_star", "replica-symmetric mmse prediction"},
                 {"nishimori_diff", "mean of n^-1 |beta* - <sigma>|^2 - (2n)^-1 <|sigma - beta*|^2>"},
                 {"nishimori_stderr", "paired standard error of nishimori_diff"},
                 {"tap_residual_mean", "mean TAP residual of the exact posterior mean"},
                 {"tap_residual_stderr", "standard error of tap_residual_mean"}});
  json rows = json::array();
  for (int n : c.ns) {
    const OracleReport r = run_oracle(law, prior, n, c.m_for(n), c.reps, c.seed, fp.gamma_star, opts);
    csv.row(std::vector<double>{double(n), double(r.m), double(r.reps), r.i_n_hat, r.i_n_stderr, fp.i_rs, r.mmse_n_hat,
                                r.mmse_n_stderr, fp.eta_inv_star, r.nishimori_diff, r.nishimori_stderr, r.tap_mean,
                                r.tap_stderr});
    csv.flush();
    rows.push_back({{"n", n}, {"i_n_hat", r.i_n_hat}, {"i_n_gap", std::abs(r.i_n_hat - fp.i_rs)},
                    {"nishimori_z", r.nishimori_stderr > 0 ? r.nishimori_diff / r.nishimori_stderr : 0.0},
                    {"tap_residual_mean", r.tap_mean}});
    out << "n: " << n << " i_n_hat: " << format_number(r.i_n_hat) << " i_rs: " << format_number(fp.i_rs)
        << " tap: " << format_number(r.tap_mean) << "\n";
  }
  write_summary(c, "oracle", {{"i_rs", fp.i_rs}, {"eta_inv_star", fp.eta_inv_star}, {"sizes", rows}});
  return kExitOk;
}

int cmd_gaussian_ref(const ExperimentConfig& c, std::ostream& out, std::ostream&) {
  const AtomPrior prior = c.make_prior();
  const SpectralLaw law = c.make_law();
  const double rho = prior.rho_star();
  const GaussianChannel ch(rho);
  const FixedPoint fp = solve_fixed_point(ch, law, c.fixed_point_options());
  const int n = c.n, m = c.m_for(n);
  std::vector<GaussianReference> refs(c.seeds);
  parallel_for(refs.size(), c.thread_count(), [&](std::size_t k) {
    refs[k] = gaussian_reference(sample_instance(law, prior, n, m, c.seed + k), rho);
  });
  CsvWriter csv(path_in(c, "gaussian_ref.csv"),
                {{"seed", "instance master seed"},
                 {"n", "signal dimension"},
                 {"m", "number of observations"},
                 {"mmse_n", "closed-form posterior mmse under a N(0, rho*) prior"},
                 {"eta_inv_star", "fixed point with the Gaussian mmse"},
                 {"rel_err", "|mmse_n - eta_inv_star| / eta_inv_star"},
                 {"log_z", "log evidence with the (2 pi)^(-m/2) factor dropped"}});
  std::vector<double> rel;
  for (std::size_t k = 0; k < refs.size(); ++k) {
    rel.push_back(std::abs(refs[k].mmse_n - fp.eta_inv_star) / fp.eta_inv_star);
    csv.row(std::vector<double>{double(c.seed + k), double(n), double(m), refs[k].mmse_n, fp.eta_inv_star, rel.back(),
                                refs[k].log_z});
  }
  json res{{"n", n}, {"m", m}, {"rho_star", rho}, {"eta_inv_star", fp.eta_inv_star}, {"rel_err_mean", mean_of(rel)},
           {"rel_err_max", *std::max_element(rel.begin(), rel.end())}};
  write_summary(c, "gaussian_ref", res);
  for (const auto& [k, v] : res.items()) kv(out, k, v.get<double>());
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"fixed-point", "state-evolution", "delta-table", "simulate",
                                              "stationary",  "oracle",          "gaussian-ref", "identities"};
  return names;
}

int run_command(const std::string& name, const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (name == "fixed-point") return cmd_fixed_point(cfg, out, err);
    if (name == "identities") return cmd_identities(cfg, out, err);
    if (name == "state-evolution") return cmd_state_evolution(cfg, out, err);
    if (name == "delta-table") return cmd_delta_table(cfg, out, err);
    if (name == "simulate") return cmd_simulate(cfg, out, err);
    if (name == "stationary") return cmd_stationary(cfg, out, err);
    if (name == "oracle") return cmd_oracle(cfg, out, err);
    if (name == "gaussian-ref") return cmd_gaussian_ref(cfg, out, err);
    err << "unknown command '" << name << "'\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetError& e) {
    err << "budget error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace rotamp::cli
