#include "mvpb/oracle.hpp"

#include <cmath>

#include "mvpb/rng.hpp"

namespace mvpb {

namespace {

// Kahan-compensated accumulator so oracle error stays below the fast path's.
class CompensatedSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

void check_instance(const HierarchicalDistribution& dist, const VoterPool& pool,
                    const MultiviewSample& sample) {
  validate_hierarchy(dist, pool);
  if (sample.examples.empty()) throw EmptySample("oracle called on an empty sample");
  if (sample.num_views() != pool.num_views())
    throw ShapeMismatch("sample/pool view count mismatch in oracle");
  int max_voters = 0;
  for (int v = 0; v < pool.num_views(); ++v) max_voters = std::max(max_voters, pool.num_voters(v));
  if (pool.num_views() * max_voters > 64)
    throw InstanceTooLarge("brute-force oracle limited to V * max(n_v) <= 64");
  if (sample.size() > 1000) throw InstanceTooLarge("brute-force oracle limited to m <= 1000");
}

}  // namespace

double brute_gibbs(const HierarchicalDistribution& dist, const VoterPool& pool,
                   const MultiviewSample& sample) {
  check_instance(dist, pool, sample);
  const double m = static_cast<double>(sample.size());
  CompensatedSum acc;
  for (int v = 0; v < pool.num_views(); ++v) {
    const auto& voters = pool.per_view[static_cast<std::size_t>(v)];
    for (std::size_t h = 0; h < voters.size(); ++h) {
      const double weight =
          dist.hyper.w[v] * dist.per_view[static_cast<std::size_t>(v)].w[static_cast<Eigen::Index>(h)];
      for (const MultiviewExample& ex : sample.examples)
        if (voters[h].predict_example(ex) != ex.label) acc.add(weight / m);
    }
  }
  return acc.value();
}

double brute_disagreement(const HierarchicalDistribution& dist, const VoterPool& pool,
                          const MultiviewSample& sample) {
  check_instance(dist, pool, sample);
  const double m = static_cast<double>(sample.size());
  CompensatedSum acc;
  for (const MultiviewExample& ex : sample.examples) {
    for (int v = 0; v < pool.num_views(); ++v) {
      const auto& hv = pool.per_view[static_cast<std::size_t>(v)];
      for (std::size_t h = 0; h < hv.size(); ++h) {
        const double wv =
            dist.hyper.w[v] * dist.per_view[static_cast<std::size_t>(v)].w[static_cast<Eigen::Index>(h)];
        const int pred = hv[h].predict_example(ex);
        for (int v2 = 0; v2 < pool.num_views(); ++v2) {
          const auto& hv2 = pool.per_view[static_cast<std::size_t>(v2)];
          for (std::size_t h2 = 0; h2 < hv2.size(); ++h2) {
            if (hv2[h2].predict_example(ex) == pred) continue;
            const double wv2 = dist.hyper.w[v2] *
                               dist.per_view[static_cast<std::size_t>(v2)].w[static_cast<Eigen::Index>(h2)];
            acc.add(wv * wv2 / m);
          }
        }
      }
    }
  }
  return acc.value();
}

double brute_joint_error(const HierarchicalDistribution& dist, const VoterPool& pool,
                         const MultiviewSample& sample) {
  check_instance(dist, pool, sample);
  const double m = static_cast<double>(sample.size());
  CompensatedSum acc;
  for (const MultiviewExample& ex : sample.examples) {
    for (int v = 0; v < pool.num_views(); ++v) {
      const auto& hv = pool.per_view[static_cast<std::size_t>(v)];
      for (std::size_t h = 0; h < hv.size(); ++h) {
        if (hv[h].predict_example(ex) == ex.label) continue;
        const double wv =
            dist.hyper.w[v] * dist.per_view[static_cast<std::size_t>(v)].w[static_cast<Eigen::Index>(h)];
        for (int v2 = 0; v2 < pool.num_views(); ++v2) {
          const auto& hv2 = pool.per_view[static_cast<std::size_t>(v2)];
          for (std::size_t h2 = 0; h2 < hv2.size(); ++h2) {
            if (hv2[h2].predict_example(ex) == ex.label) continue;
            const double wv2 = dist.hyper.w[v2] *
                               dist.per_view[static_cast<std::size_t>(v2)].w[static_cast<Eigen::Index>(h2)];
            acc.add(wv * wv2 / m);
          }
        }
      }
    }
  }
  return acc.value();
}

RiskProfile population_truth(const HierarchicalDistribution& dist, const VoterPool& pool,
                             const MultiviewSample& population) {
  return risk_profile(dist, pool, population);
}

SoundnessReport bound_soundness_trial(const SynthConfig& cfg, std::size_t m, double delta,
                                      int trials, PosteriorRule rule, std::uint64_t seed) {
  if (trials < 30) throw DomainError("soundness harness requires at least 30 trials");
  if (m < 1) throw DomainError("soundness harness requires m >= 1");
  cfg.validate();

  const MultiviewSample population = synth_population(cfg);

  // Pool and prior are fixed from the population before any trial is drawn;
  // only the posterior is data-dependent.
  TrainConfig pool_cfg;
  pool_cfg.stumps_per_feature = 2;
  pool_cfg.max_features_per_view = 4;
  const VoterPool pool = build_pool(population, pool_cfg).pool;
  const HierarchicalDistribution prior = uniform_hierarchy(pool);
  const VoteTable population_table = tabulate_votes(pool, population);

  TrainConfig learn_cfg;
  learn_cfg.optimizer =
      rule == PosteriorRule::RiskMinimize ? Optimizer::RiskMinimize : Optimizer::CboundMinimize;
  const std::vector<double> grid = default_catoni_grid();

  SoundnessReport report;
  report.trials = trials;
  report.m = m;
  report.delta = delta;
  report.rule = rule;

  int violations_mc = 0, violations_cat = 0, violations_se = 0, covered = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
    MultiviewSample trial_sample;
    trial_sample.view_dims = population.view_dims;
    trial_sample.examples.reserve(m);
    // i.i.d. with replacement: the uniform measure on the population is the
    // data distribution here.
    for (std::size_t i = 0; i < m; ++i)
      trial_sample.examples.push_back(
          population.examples[static_cast<std::size_t>(rng.next_below(population.size()))]);

    HierarchicalDistribution posterior =
        rule == PosteriorRule::Uniform
            ? uniform_hierarchy(pool)
            : learn_posterior(pool, trial_sample, prior, learn_cfg);

    const RiskProfile profile = risk_profile(posterior, pool, trial_sample);
    const KlBudget budget = kl_budget(posterior, prior);
    const BoundInputs inputs{profile, budget, m, delta};
    const double mc = mcallester_bound(inputs);
    const double cat = catoni_bound_best_c(inputs, grid).first;
    const double se = seeger_bound(inputs);

    const RiskProfile truth = risk_profile(population_table, posterior);
    if (mc < truth.gibbs_risk) ++violations_mc;
    if (cat < truth.gibbs_risk) ++violations_cat;
    if (se < truth.gibbs_risk) ++violations_se;

    const auto [d_lo, d_hi] = disagreement_interval(profile.disagreement, budget, m, delta);
    if (d_lo <= truth.disagreement && truth.disagreement <= d_hi) ++covered;

    report.mean_mcallester += mc;
    report.mean_catoni += cat;
    report.mean_seeger += se;
    report.mean_true_gibbs += truth.gibbs_risk;
    report.mean_empirical_gibbs += 0.5 * profile.disagreement + profile.joint_error;
  }

  const double n = static_cast<double>(trials);
  report.violation_mcallester = violations_mc / n;
  report.violation_catoni = violations_cat / n;
  report.violation_seeger = violations_se / n;
  report.mean_mcallester /= n;
  report.mean_catoni /= n;
  report.mean_seeger /= n;
  report.mean_true_gibbs /= n;
  report.mean_empirical_gibbs /= n;
  report.disagreement_coverage = covered / n;
  return report;
}

std::string posterior_rule_name(PosteriorRule rule) {
  switch (rule) {
    case PosteriorRule::Uniform:
      return "uniform";
    case PosteriorRule::CboundMinimize:
      return "cbound-minimize";
    case PosteriorRule::RiskMinimize:
      return "risk-minimize";
  }
  return "unknown";
}

}  // namespace mvpb
