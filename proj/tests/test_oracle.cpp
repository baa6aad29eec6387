#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mvpb/oracle.hpp"
#include "support.hpp"

using namespace mvpb;

TEST_CASE("fast estimators agree with the brute-force triple/quintuple sums") {
  Rng rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = mvpb::testing::random_instance(rng);
    const double fast_g = gibbs_risk(inst.dist, inst.pool, inst.sample);
    const double fast_d = disagreement_mv(inst.dist, inst.pool, inst.sample);
    const double fast_e = joint_error_mv(inst.dist, inst.pool, inst.sample);
    CHECK(std::abs(fast_g - brute_gibbs(inst.dist, inst.pool, inst.sample)) <= 1e-12);
    CHECK(std::abs(fast_d - brute_disagreement(inst.dist, inst.pool, inst.sample)) <= 1e-12);
    CHECK(std::abs(fast_e - brute_joint_error(inst.dist, inst.pool, inst.sample)) <= 1e-12);
    // The decomposition also holds inside the oracle itself.
    CHECK(std::abs(brute_gibbs(inst.dist, inst.pool, inst.sample) -
                   0.5 * brute_disagreement(inst.dist, inst.pool, inst.sample) -
                   brute_joint_error(inst.dist, inst.pool, inst.sample)) <= 1e-12);
  }
}

TEST_CASE("point-mass hierarchies reduce the oracle to voter-level quantities") {
  const auto inst = mvpb::testing::fixture_a();
  auto point = inst.dist;
  point.hyper.w = Eigen::Vector2d(0.0, 1.0);
  point.per_view[1].w = Eigen::Vector2d(1.0, 0.0);
  const Stump voter = inst.pool.per_view[1][0];
  CHECK(brute_gibbs(point, inst.pool, inst.sample) ==
        doctest::Approx(voter_risk(voter, inst.sample)).epsilon(1e-12));
  CHECK(brute_disagreement(point, inst.pool, inst.sample) ==
        doctest::Approx(pair_disagreement(voter, voter, inst.sample)).epsilon(1e-12));
}

TEST_CASE("instance guard rejects large problems") {
  Rng rng(8);
  auto inst = mvpb::testing::random_instance(rng);
  // Blow up one view's voter list beyond the V * max(n_v) <= 64 guard.
  auto& voters = inst.pool.per_view[0];
  auto& weights = inst.dist.per_view[0];
  while (inst.pool.num_views() * static_cast<int>(voters.size()) <= 64)
    voters.push_back(Stump{0, 0, 0.0, 1});
  weights.w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(voters.size()),
                                        1.0 / static_cast<double>(voters.size()));
  CHECK_THROWS_AS(brute_gibbs(inst.dist, inst.pool, inst.sample), InstanceTooLarge);

  MultiviewSample big;
  big.view_dims = {1};
  big.examples.resize(1001);
  for (auto& ex : big.examples) {
    ex.label = 1;
    ex.views.resize(1);
  }
  VoterPool small;
  small.per_view = {{Stump{0, 0, 0.0, 1}}};
  CHECK_THROWS_AS(brute_disagreement(uniform_hierarchy(small), small, big), InstanceTooLarge);
}

TEST_CASE("population_truth equals the profile and is affine in the population") {
  SynthConfig cfg;
  cfg.views = 2;
  cfg.dims = {3, 3};
  cfg.separation = 3.0;
  cfg.noise = 1.0;
  cfg.population = 400;
  cfg.seed = 99;
  const auto population = synth_population(cfg);
  TrainConfig pool_cfg;
  pool_cfg.stumps_per_feature = 2;
  pool_cfg.max_features_per_view = 2;
  const auto pool = build_pool(population, pool_cfg).pool;
  const auto dist = uniform_hierarchy(pool);

  const auto whole = population_truth(dist, pool, population);
  const auto direct = risk_profile(dist, pool, population);
  CHECK(whole.gibbs_risk == direct.gibbs_risk);
  CHECK(whole.disagreement == direct.disagreement);

  MultiviewSample first_half, second_half;
  first_half.view_dims = second_half.view_dims = population.view_dims;
  for (std::size_t i = 0; i < population.size(); ++i)
    (i < population.size() / 2 ? first_half : second_half).examples.push_back(population.examples[i]);
  const auto a = population_truth(dist, pool, first_half);
  const auto b = population_truth(dist, pool, second_half);
  CHECK(0.5 * (a.gibbs_risk + b.gibbs_risk) == doctest::Approx(whole.gibbs_risk).epsilon(1e-12));
  CHECK(0.5 * (a.disagreement + b.disagreement) ==
        doctest::Approx(whole.disagreement).epsilon(1e-12));
  CHECK(0.5 * (a.joint_error + b.joint_error) == doctest::Approx(whole.joint_error).epsilon(1e-12));
}

TEST_CASE("soundness smoke run: small population, 30 trials") {
  SynthConfig cfg;
  cfg.views = 2;
  cfg.dims = {4, 4};
  cfg.separation = 2.0;
  cfg.noise = 1.0;
  cfg.redundancy = 0.5;
  cfg.flip_noise = 0.1;
  cfg.population = 2000;
  cfg.seed = 6;

  for (auto rule : {PosteriorRule::Uniform, PosteriorRule::CboundMinimize}) {
    const auto report = bound_soundness_trial(cfg, 60, 0.05, 30, rule, 12);
    CHECK(report.trials == 30);
    CHECK(report.violation_mcallester <= 0.2);
    CHECK(report.violation_catoni <= 0.2);
    CHECK(report.violation_seeger <= 0.2);
    CHECK(report.mean_mcallester >= report.mean_true_gibbs);
    CHECK(report.mean_catoni >= report.mean_true_gibbs);
    CHECK(report.mean_seeger >= report.mean_true_gibbs);
    CHECK(report.disagreement_coverage >= 0.8);
  }

  CHECK_THROWS_AS(bound_soundness_trial(cfg, 60, 0.05, 10, PosteriorRule::Uniform), DomainError);
}

TEST_CASE("single-view degenerate mode: point-mass hyper collapses to classic bounds") {
  // Both prior and posterior put all hyper mass on view 0, so the hyper KL
  // is 0 and every multiview quantity reduces to its single-view form.
  SynthConfig cfg;
  cfg.views = 2;
  cfg.dims = {4, 4};
  cfg.separation = 2.0;
  cfg.noise = 1.0;
  cfg.flip_noise = 0.1;
  cfg.population = 2000;
  cfg.seed = 17;
  const auto population = synth_population(cfg);
  TrainConfig pool_cfg;
  pool_cfg.stumps_per_feature = 2;
  pool_cfg.max_features_per_view = 3;
  const auto pool = build_pool(population, pool_cfg).pool;

  auto single_view = uniform_hierarchy(pool);
  single_view.hyper.w = Eigen::Vector2d(1.0, 0.0);
  const auto prior = single_view;
  const auto budget = kl_budget(single_view, prior);
  CHECK(budget.hyper_kl == 0.0);
  CHECK(budget.total == 0.0);

  const auto table = tabulate_votes(pool, population);
  const auto truth = risk_profile(table, single_view);
  // Expected disagreement with one effective view equals that view's own.
  CHECK(truth.disagreement ==
        doctest::Approx(truth.per_view_disagreement[0]).epsilon(1e-12));
  CHECK(truth.gibbs_risk == doctest::Approx(truth.per_view_gibbs[0]).epsilon(1e-12));

  const std::size_t m = 50;
  const int trials = 60;
  int violations = 0;
  double mean_seeger = 0.0, mean_true = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(23, static_cast<std::uint64_t>(t));
    MultiviewSample s;
    s.view_dims = population.view_dims;
    for (std::size_t i = 0; i < m; ++i)
      s.examples.push_back(population.examples[static_cast<std::size_t>(
          rng.next_below(population.size()))]);
    const auto profile = risk_profile(single_view, pool, s);
    const BoundInputs in{profile, budget, m, 0.05};
    const double bound = seeger_bound(in);
    if (bound < truth.gibbs_risk) ++violations;
    mean_seeger += bound;
    mean_true += truth.gibbs_risk;
  }
  CHECK(static_cast<double>(violations) / trials <= 0.15);
  CHECK(mean_seeger / trials >= mean_true / trials);
}

TEST_CASE("fault injection breaks oracle agreement (verify hook)") {
  const auto inst = mvpb::testing::fixture_a();
  const double clean = joint_error_mv(inst.dist, inst.pool, inst.sample);
  detail::fault_invert_joint_error.store(true);
  const double faulty = joint_error_mv(inst.dist, inst.pool, inst.sample);
  detail::fault_invert_joint_error.store(false);
  CHECK(std::abs(faulty - brute_joint_error(inst.dist, inst.pool, inst.sample)) > 1e-6);
  CHECK(std::abs(clean - brute_joint_error(inst.dist, inst.pool, inst.sample)) <= 1e-12);
}
