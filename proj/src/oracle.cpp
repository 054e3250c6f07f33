#include "rotamp/oracle.hpp"

#include <cmath>
#include <vector>

#include "rotamp/channel.hpp"
#include "rotamp/error.hpp"
#include "rotamp/parallel.hpp"
#include "rotamp/vamp.hpp"

namespace rotamp {

namespace {

void mean_se(const std::vector<double>& v, double& mean, double& se) {
  mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  se = v.size() > 1 ? std::sqrt(ss / (v.size() - 1) / v.size()) : 0.0;
}

}  // namespace

OracleReport run_oracle(const SpectralLaw& law, const AtomPrior& prior, int n, int m, int reps, std::uint64_t seed,
                        double gamma_star, const OracleOptions& opts) {
  if (reps < 2) throw DomainError("run_oracle: reps must be >= 2");
  if (config_count(prior, n, opts.max_configs) == 0)
    throw BudgetError("exact enumeration at n=" + std::to_string(n) + " exceeds the limit of " +
                      std::to_string(opts.max_configs) + " configurations");
  const PriorChannel ch(prior);
  const Instance base = sample_instance(law, prior, n, m, seed);
  std::vector<double> info(reps), mm(reps), half(reps), diff(reps), tap(reps);
  parallel_for(static_cast<std::size_t>(reps), opts.threads, [&](std::size_t r) {
    Instance inst = opts.average_over_A ? sample_instance(law, prior, n, m, derive_seed(seed, "design", r)) : base;
    resample_signal(inst, prior, seed, r);
    const ExactPosterior post = exact_posterior(inst, prior, opts.max_configs, 1);
    info[r] = mutual_info_sample(inst, post);
    mm[r] = post.mmse_n;
    half[r] = 0.5 * post.self_overlap;
    diff[r] = mm[r] - half[r];
    tap[r] = tap_residual(inst, ch, gamma_star, post.mean);
  });
  OracleReport rep;
  rep.n = n;
  rep.m = m;
  rep.reps = reps;
  double unused = 0.0;
  mean_se(info, rep.i_n_hat, rep.i_n_stderr);
  mean_se(mm, rep.mmse_n_hat, rep.mmse_n_stderr);
  mean_se(half, rep.half_self_overlap_hat, unused);
  mean_se(diff, rep.nishimori_diff, rep.nishimori_stderr);
  mean_se(tap, rep.tap_mean, rep.tap_stderr);
  return rep;
}

}  // namespace rotamp
