#include "rotamp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rotamp/error.hpp"
#include "rotamp/parallel.hpp"

namespace rotamp {

Eigen::VectorXd Instance::apply_A(const Eigen::VectorXd& x) const {
  Eigen::VectorXd ox = O.apply(x);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m);
  out.head(k()) = d_diag.array() * ox.head(k()).array();
  return out;
}

Eigen::VectorXd Instance::apply_At(const Eigen::VectorXd& v) const {
  if (v.size() != m) throw DomainError("apply_At: dimension mismatch");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  u.head(k()) = d_diag.array() * v.head(k()).array();
  O.apply_transpose_inplace(u);
  return u;
}

Eigen::VectorXd Instance::apply_AtA(const Eigen::VectorXd& x) const {
  Eigen::VectorXd ox = O.apply(x);
  ox.array() *= dsq.array();
  O.apply_transpose_inplace(ox);
  return ox;
}

Eigen::VectorXd Instance::dt_y() const {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  u.head(k()) = d_diag.array() * y.head(k()).array();
  return u;
}

Eigen::MatrixXd Instance::dense_A() const {
  const Eigen::MatrixXd o = O.to_dense();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n);
  a.topRows(k()) = d_diag.asDiagonal() * o.topRows(k());
  return a;
}

Eigen::VectorXd assign_spectrum(const SpectralLaw& law, int n, int m, Rng& rng) {
  const auto atoms = law.atoms();
  std::vector<long> counts(atoms.size());
  std::vector<std::pair<double, std::size_t>> frac;
  long used = 0;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const double q = atoms[j].weight * n;
    counts[j] = static_cast<long>(std::floor(q));
    used += counts[j];
    frac.push_back({q - counts[j], j});
  }
  std::stable_sort(frac.begin(), frac.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
  for (long r = 0; r < n - used; ++r) ++counts[frac[r].second];

  long zeros_needed = std::max(0, n - m);
  std::vector<double> values;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    long c = counts[j];
    if (atoms[j].dsq == 0.0) {
      const long take = std::min(c, zeros_needed);
      zeros_needed -= take;
      c -= take;
    }
    values.insert(values.end(), c, atoms[j].dsq);
  }
  if (zeros_needed > 0)
    throw DomainError("spectral law: with m < n the law needs mass >= (n-m)/n at D^2 = 0");
  std::shuffle(values.begin(), values.end(), rng);
  Eigen::VectorXd dsq = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < values.size(); ++i) dsq[static_cast<Eigen::Index>(i)] = values[i];
  return dsq;
}

namespace {

Eigen::VectorXd draw_signal(const AtomPrior& prior, int n, Rng rng) {
  std::vector<double> w;
  for (const auto& a : prior.atoms()) w.push_back(a.weight);
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  Eigen::VectorXd beta(n);
  for (int i = 0; i < n; ++i) beta[i] = prior.atoms()[pick(rng)].value;
  return beta;
}

Eigen::VectorXd draw_noise(int m, Rng rng) {
  NormalStream normal(std::move(rng));
  Eigen::VectorXd eps(m);
  for (int i = 0; i < m; ++i) eps[i] = normal();
  return eps;
}

}  // namespace

void recompute_y(Instance& inst) { inst.y = inst.apply_A(inst.beta_star) + inst.eps; }

Instance sample_instance(const SpectralLaw& law, const AtomPrior& prior, int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw DomainError("sample_instance: n and m must be >= 1");
  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.seed = seed;
  Rng spec_rng = make_rng(seed, "spectrum");
  inst.dsq = assign_spectrum(law, n, m, spec_rng);
  inst.d_diag = inst.dsq.head(std::min(n, m)).cwiseSqrt();
  Rng haar_rng = make_rng(seed, "haar");
  inst.O = HaarOrthogonal::sample(n, haar_rng);
  inst.beta_star = draw_signal(prior, n, make_rng(seed, "signal"));
  inst.eps = draw_noise(m, make_rng(seed, "noise"));
  recompute_y(inst);
  return inst;
}

void resample_signal(Instance& inst, const AtomPrior& prior, std::uint64_t seed, std::uint64_t rep) {
  inst.beta_star = draw_signal(prior, inst.n, make_rng(seed, "signal", rep + 1));
  inst.eps = draw_noise(inst.m, make_rng(seed, "noise", rep + 1));
  recompute_y(inst);
}

std::uint64_t config_count(const AtomPrior& prior, int n, std::uint64_t max_configs) {
  std::uint64_t c = 1;
  for (int i = 0; i < n; ++i) {
    if (c > max_configs / prior.size()) return 0;
    c *= prior.size();
  }
  return c <= max_configs ? c : 0;
}

namespace {

// Streaming max-shifted sums over configurations: weights exp(E - top).
struct Accumulator {
  double top = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  Eigen::VectorXd mean;  // unnormalized
  double dist = 0.0;     // unnormalized sum of |sigma - beta*|^2
  std::uint64_t count = 0;

  explicit Accumulator(int n) : mean(Eigen::VectorXd::Zero(n)) {}

  void add(double e, const Eigen::VectorXd& sigma, double d2) {
    if (e > top) {
      const double scale = std::exp(top - e);
      sum *= scale;
      mean *= scale;
      dist *= scale;
      top = e;
    }
    const double w = std::exp(e - top);
    sum += w;
    mean.noalias() += w * sigma;
    dist += w * d2;
    ++count;
  }

  void merge(const Accumulator& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double t = std::max(top, o.top);
    const double a = std::exp(top - t), b = std::exp(o.top - t);
    sum = a * sum + b * o.sum;
    mean = a * mean + b * o.mean;
    dist = a * dist + b * o.dist;
    top = t;
    count += o.count;
  }
};

ExactPosterior finish(const Accumulator& acc, const Instance& inst) {
  ExactPosterior post;
  post.log_z = acc.top + std::log(acc.sum);
  post.mean = acc.mean / acc.sum;
  post.self_overlap = acc.dist / acc.sum / inst.n;
  post.mmse_n = (inst.beta_star - post.mean).squaredNorm() / inst.n;
  post.config_count = acc.count;
  return post;
}

std::uint64_t require_budget(const AtomPrior& prior, int n, std::uint64_t max_configs) {
  const std::uint64_t c = config_count(prior, n, max_configs);
  if (c == 0)
    throw BudgetError("exact enumeration needs " + std::to_string(prior.size()) + "^" + std::to_string(n) +
                      " configurations, above the limit of " + std::to_string(max_configs));
  return c;
}

}  // namespace

ExactPosterior exact_posterior(const Instance& inst, const AtomPrior& prior, std::uint64_t max_configs, int threads) {
  require_budget(prior, inst.n, max_configs);
  const int n = inst.n;
  const int K = static_cast<int>(prior.size());
  const Eigen::MatrixXd A = inst.dense_A();
  std::vector<double> xs, lw;
  for (const auto& a : prior.atoms()) {
    xs.push_back(a.value);
    lw.push_back(std::log(a.weight));
  }
  // One chunk per value of the last digit; digits 0..n-2 run through a
  // reflected mixed-radix Gray code inside each chunk.
  std::vector<Accumulator> parts(K, Accumulator(n));
  parallel_for(static_cast<std::size_t>(K), threads, [&](std::size_t c) {
    Accumulator& acc = parts[c];
    std::vector<int> digit(n, 0), dir(n, 1);
    digit[n - 1] = static_cast<int>(c);
    Eigen::VectorXd sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = xs[digit[i]];
    auto fresh = [&](Eigen::VectorXd& r, double& logw, double& d2) {
      r = inst.y - A * sigma;
      logw = 0.0;
      for (int i = 0; i < n; ++i) logw += lw[digit[i]];
      d2 = (sigma - inst.beta_star).squaredNorm();
    };
    Eigen::VectorXd r;
    double logw = 0.0, d2 = 0.0;
    fresh(r, logw, d2);
    for (std::uint64_t step = 1;; ++step) {
      acc.add(-0.5 * r.squaredNorm() + logw, sigma, d2);
      int j = 0;
      while (j < n - 1 && (digit[j] + dir[j] < 0 || digit[j] + dir[j] >= K)) ++j;
      if (j >= n - 1) break;
      for (int i = 0; i < j; ++i) dir[i] = -dir[i];
      const int old = digit[j];
      digit[j] += dir[j];
      const double delta = xs[digit[j]] - xs[old];
      const double b = inst.beta_star[j];
      d2 += (xs[digit[j]] - b) * (xs[digit[j]] - b) - (xs[old] - b) * (xs[old] - b);
      logw += lw[digit[j]] - lw[old];
      sigma[j] = xs[digit[j]];
      r.noalias() -= delta * A.col(j);
      if (step % 4096 == 0) fresh(r, logw, d2);
    }
  });
  Accumulator total(n);
  for (const auto& p : parts) total.merge(p);
  return finish(total, inst);
}

ExactPosterior exact_posterior_naive(const Instance& inst, const AtomPrior& prior, std::uint64_t max_configs) {
  const std::uint64_t count = require_budget(prior, inst.n, max_configs);
  const int n = inst.n;
  const std::uint64_t K = prior.size();
  const Eigen::MatrixXd A = inst.dense_A();
  Accumulator acc(n);
  Eigen::VectorXd sigma(n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    double logw = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto& atom = prior.atoms()[rest % K];
      rest /= K;
      sigma[i] = atom.value;
      logw += std::log(atom.weight);
    }
    const double e = -0.5 * (inst.y - A * sigma).squaredNorm() + logw;
    acc.add(e, sigma, (sigma - inst.beta_star).squaredNorm());
  }
  return finish(acc, inst);
}

double mutual_info_sample(const Instance& inst, const ExactPosterior& post) {
  return -(post.log_z + 0.5 * inst.eps.squaredNorm()) / inst.n;
}

MutualInfoEstimate mutual_info_mc(const SpectralLaw& law, const AtomPrior& prior, int n, int m, int reps,
                                  std::uint64_t seed, bool average_over_A, int threads, std::uint64_t max_configs) {
  if (reps < 2) throw DomainError("mutual_info_mc: reps must be >= 2");
  require_budget(prior, n, max_configs);
  const Instance base = sample_instance(law, prior, n, m, seed);
  std::vector<double> samples(reps);
  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
    Instance inst = average_over_A ? sample_instance(law, prior, n, m, derive_seed(seed, "design", r)) : base;
    resample_signal(inst, prior, seed, r);
    samples[r] = mutual_info_sample(inst, exact_posterior(inst, prior, max_configs, 1));
  });
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / reps;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  return {mean, std::sqrt(ss / (reps - 1) / reps), reps};
}

GaussianReference gaussian_reference(const Instance& inst, double rho) {
  if (!(rho > 0.0)) throw DomainError("gaussian_reference: rho must be positive");
  GaussianReference ref;
  const int k = inst.k();
  double logz = 0.0;
  for (int i = 0; i < inst.m; ++i) {
    const double dsq = i < k ? inst.d_diag[i] * inst.d_diag[i] : 0.0;
    logz += -0.5 * inst.y[i] * inst.y[i] / (1.0 + rho * dsq) - 0.5 * std::log1p(rho * dsq);
  }
  ref.log_z = logz;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(inst.n);
  for (int i = 0; i < k; ++i) {
    const double d = inst.d_diag[i];
    u[i] = rho * d * inst.y[i] / (1.0 + rho * d * d);
  }
  inst.O.apply_transpose_inplace(u);
  ref.mean = std::move(u);
  double tr = 0.0;
  for (int i = 0; i < k; ++i) tr += rho / (1.0 + rho * inst.d_diag[i] * inst.d_diag[i]);
  tr += static_cast<double>(inst.n - k) * rho;
  ref.mmse_n = tr / inst.n;
  return ref;
}

}  // namespace rotamp
