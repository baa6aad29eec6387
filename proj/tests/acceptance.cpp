// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Scales and tolerances are pinned in the constants below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mvpb/bounds.hpp"
#include "mvpb/dataio.hpp"
#include "mvpb/estimators.hpp"
#include "mvpb/fusion.hpp"
#include "mvpb/oracle.hpp"
#include "mvpb/rng.hpp"
#include "support.hpp"

using namespace mvpb;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& details) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), details.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

struct FullScaleRun {
  MultiviewSample sample;
  VoterPool pool;
  HierarchicalDistribution dist;
};

// Realistically sized instance: 2000 examples, 3 views, mixed random and
// learned-looking posteriors over a quantile-stump pool.
FullScaleRun full_scale_run(std::uint64_t seed) {
  SynthConfig cfg;
  cfg.views = 3;
  cfg.dims = {8, 8, 8};
  cfg.separation = 2.0;
  cfg.noise = 1.0;
  cfg.redundancy = 0.4;
  cfg.flip_noise = 0.05;
  cfg.population = 2000;
  cfg.seed = seed;
  FullScaleRun run;
  run.sample = synth_population(cfg);
  TrainConfig pool_cfg;
  pool_cfg.stumps_per_feature = 3;
  pool_cfg.max_features_per_view = 4;
  run.pool = build_pool(run.sample, pool_cfg).pool;
  Rng rng(seed ^ 0x5eedULL);
  run.dist.hyper = mvpb::testing::random_categorical(rng, run.pool.num_views(), false);
  run.dist.per_view.resize(static_cast<std::size_t>(run.pool.num_views()));
  for (int v = 0; v < run.pool.num_views(); ++v)
    run.dist.per_view[static_cast<std::size_t>(v)] =
        mvpb::testing::random_categorical(rng, run.pool.num_voters(v), false);
  return run;
}

constexpr int kSmallInstances = 200;
constexpr int kFullScaleRuns = 20;
constexpr int kSoundnessTrials = 200;
constexpr std::size_t kSoundnessPopulation = 50000;
constexpr std::size_t kSoundnessM = 100;
constexpr int kLearnSeeds = 20;

// ---------------------------------------------------------------------------

void criterion_decomposition_factor2_cbound_chain() {
  const auto start = std::chrono::steady_clock::now();
  double worst_decomposition = 0.0;
  int factor2_violations = 0;
  int chain_violations = 0;
  int jensen_violations = 0;
  int chain_comparisons = 0;

  auto inspect = [&](const RiskProfile& profile, const HierarchicalDistribution& dist) {
    worst_decomposition =
        std::max(worst_decomposition,
                 std::abs(profile.gibbs_risk - (0.5 * profile.disagreement + profile.joint_error)));
    if (profile.majority_vote_risk > 2.0 * profile.gibbs_risk + 1e-12) ++factor2_violations;
    const double within = dist.hyper.w.dot(profile.per_view_disagreement);
    if (profile.disagreement < within - 1e-12) ++jensen_violations;
    const auto overall = cbound_mv(profile.gibbs_risk, profile.disagreement);
    const auto per_view = cbound_mv_per_view(profile.per_view_gibbs,
                                             profile.per_view_disagreement, dist.hyper);
    if (!overall.vacuous && !per_view.vacuous) {
      ++chain_comparisons;
      if (overall.value > per_view.value + 1e-12) ++chain_violations;
    }
  };

  Rng rng(20240001);
  for (int i = 0; i < kSmallInstances; ++i) {
    const auto inst = mvpb::testing::random_instance(rng);
    inspect(risk_profile(inst.dist, inst.pool, inst.sample), inst.dist);
  }

  for (int i = 0; i < kFullScaleRuns; ++i) {
    const auto run = full_scale_run(static_cast<std::uint64_t>(1000 + i));
    inspect(risk_profile(run.dist, run.pool, run.sample), run.dist);
  }
  const double elapsed = seconds_since(start);

  report("decomposition-identity", worst_decomposition <= 1e-12 && elapsed < 10.0,
         "max |gibbs - (d/2 + e)| = " + fmt(worst_decomposition) + " over " +
             std::to_string(kSmallInstances) + " small + " + std::to_string(kFullScaleRuns) +
             " full-scale instances in " + fmt(elapsed) + "s");
  report("factor-2", factor2_violations == 0,
         std::to_string(factor2_violations) + " violations of mv_risk <= 2 gibbs");
  report("cbound-chain", chain_violations == 0 && jensen_violations == 0,
         "overall <= per-view C-bound on " + std::to_string(chain_comparisons) +
             " non-vacuous instances, " +
             std::to_string(jensen_violations) + " Jensen violations");
}

void criterion_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  Rng rng(20240002);
  for (int i = 0; i < kSmallInstances; ++i) {
    const auto inst = mvpb::testing::random_instance(rng);
    const auto profile = risk_profile(inst.dist, inst.pool, inst.sample);
    worst = std::max(worst, std::abs(profile.gibbs_risk -
                                     brute_gibbs(inst.dist, inst.pool, inst.sample)));
    worst = std::max(worst, std::abs(profile.disagreement -
                                     brute_disagreement(inst.dist, inst.pool, inst.sample)));
    worst = std::max(worst, std::abs(profile.joint_error -
                                     brute_joint_error(inst.dist, inst.pool, inst.sample)));
  }
  const double elapsed = seconds_since(start);
  report("oracle-equivalence", worst <= 1e-12 && elapsed < 30.0,
         "max |fast - brute| = " + fmt(worst) + " over " + std::to_string(kSmallInstances) +
             " instances in " + fmt(elapsed) + "s");
}

void criterion_kl_machinery() {
  const auto start = std::chrono::steady_clock::now();

  double worst_round_trip = 0.0;
  for (double a = 0.0; a <= 0.451; a += 0.05)
    for (double c = 0.001; c <= 1.0; c *= 2.0) {
      const double b = binary_kl_inverse_upper(a, c);
      if (b < 1.0) worst_round_trip = std::max(worst_round_trip, std::abs(binary_kl(a, b) - c));
    }

  const bool xi_exact = std::abs(xi(1) - 2.0) <= 1e-12 && std::abs(xi(2) - 2.5) <= 1e-12;
  bool xi_majorant = true;
  for (std::int64_t m = 1; m <= 100000; ++m)
    if (xi(m) > 2.0 * std::sqrt(static_cast<double>(m))) {
      xi_majorant = false;
      break;
    }

  bool pinsker = true;
  Rng rng(20240003);
  for (int i = 0; i < 1000; ++i) {
    BoundInputs in;
    in.profile.disagreement = rng.next_uniform();
    in.profile.joint_error = rng.next_uniform() * (1.0 - 0.5 * in.profile.disagreement);
    in.profile.gibbs_risk = 0.5 * in.profile.disagreement + in.profile.joint_error;
    in.kl.total = 3.0 * rng.next_uniform();
    in.m = 1 + rng.next_below(10000);
    in.delta = 0.01 + 0.99 * rng.next_uniform();
    pinsker = pinsker && seeger_bound(in) <= mcallester_bound(in) + 1e-12;
  }

  const double elapsed = seconds_since(start);
  report("kl-machinery",
         worst_round_trip <= 1e-8 && xi_exact && xi_majorant && pinsker && elapsed < 20.0,
         "round-trip " + fmt(worst_round_trip) + ", xi exact and <= 2 sqrt(m) on [1,1e5], Pinsker x1000, " +
             fmt(elapsed) + "s");
}

void criterion_soundness_and_coverage() {
  const auto start = std::chrono::steady_clock::now();
  SynthConfig cfg;
  cfg.views = 3;
  cfg.dims = {8, 8, 8};
  cfg.separation = 2.0;
  cfg.noise = 1.0;
  cfg.redundancy = 0.5;
  cfg.flip_noise = 0.1;
  cfg.population = kSoundnessPopulation;
  cfg.seed = 424242;

  const double tolerance =
      0.05 + 3.0 * std::sqrt(0.05 * 0.95 / static_cast<double>(kSoundnessTrials));

  bool violations_ok = true, expectation_ok = true, coverage_ok = true;
  std::string detail;
  for (auto rule : {PosteriorRule::Uniform, PosteriorRule::CboundMinimize}) {
    const auto rep = bound_soundness_trial(cfg, kSoundnessM, 0.05, kSoundnessTrials, rule, 99);
    const double worst =
        std::max({rep.violation_mcallester, rep.violation_catoni, rep.violation_seeger});
    violations_ok = violations_ok && worst <= tolerance;
    expectation_ok = expectation_ok && rep.mean_mcallester >= rep.mean_true_gibbs &&
                     rep.mean_catoni >= rep.mean_true_gibbs &&
                     rep.mean_seeger >= rep.mean_true_gibbs;
    coverage_ok = coverage_ok && rep.disagreement_coverage >= 0.95;
    detail += posterior_rule_name(rule) + " worst-violation " + fmt(worst) + " coverage " +
              fmt(rep.disagreement_coverage) + "; ";

    const auto plugin = bound_soundness_trial(cfg, kSoundnessM, 1.0, kSoundnessTrials, rule, 99);
    expectation_ok = expectation_ok && plugin.mean_mcallester >= plugin.mean_true_gibbs &&
                     plugin.mean_catoni >= plugin.mean_true_gibbs &&
                     plugin.mean_seeger >= plugin.mean_true_gibbs;
  }
  const double elapsed = seconds_since(start);
  report("bound-soundness", violations_ok && expectation_ok && elapsed < 300.0,
         detail + "delta in {0.05, 1.0}, " + fmt(elapsed) + "s");
  report("disagreement-interval-coverage", coverage_ok,
         ">= 95% coverage of the population disagreement at delta=0.05");
}

void criterion_end_to_end_learning() {
  const auto start = std::chrono::steady_clock::now();
  bool error_ok = true, objective_ok = true, trace_ok = true;
  double worst_error = 0.0;

  for (int s = 0; s < kLearnSeeds; ++s) {
    SynthConfig cfg;
    cfg.views = 3;
    cfg.dims = {8, 8, 8};
    cfg.separation = 10.0;
    cfg.noise = 0.1;
    cfg.redundancy = 0.5;
    cfg.flip_noise = 0.0;
    cfg.population = 300;
    cfg.seed = static_cast<std::uint64_t>(5000 + s);
    const auto train_sample = synth_population(cfg);
    cfg.population = 10000;
    cfg.seed = static_cast<std::uint64_t>(900000 + s);
    const auto test_sample = synth_population(cfg);

    TrainConfig tc;
    tc.seed = static_cast<std::uint64_t>(s + 1);
    const auto model = train(train_sample, tc);
    const auto metrics = evaluate(model, test_sample);
    worst_error = std::max(worst_error, metrics.majority_vote_risk);
    error_ok = error_ok && metrics.majority_vote_risk < 0.1;

    for (std::size_t i = 1; i < model.trace.objective.size(); ++i)
      trace_ok = trace_ok && model.trace.objective[i] <= model.trace.objective[i - 1] + 1e-12;

    const auto [s1, s2] = split_sample(train_sample, tc.s1_fraction, tc.seed);
    const auto learned = risk_profile(model.posterior, model.pool, s2);
    const auto uniform_profile = risk_profile(uniform_hierarchy(model.pool), model.pool, s2);
    const auto learned_cb = cbound_mv(learned.gibbs_risk, learned.disagreement);
    const auto uniform_cb = cbound_mv(uniform_profile.gibbs_risk, uniform_profile.disagreement);
    const double learned_value = learned_cb.vacuous ? 1.0 : learned_cb.value;
    const double uniform_value = uniform_cb.vacuous ? 1.0 : uniform_cb.value;
    objective_ok = objective_ok && learned_value <= uniform_value + 1e-12;
  }
  const double elapsed = seconds_since(start);
  report("end-to-end-learning", error_ok && objective_ok && trace_ok && elapsed < 120.0,
         "worst held-out error " + fmt(worst_error) + " over " + std::to_string(kLearnSeeds) +
             " seeds, objective vs uniform and monotone trace, " + fmt(elapsed) + "s");
}

void criterion_split_fidelity() {
  SynthConfig cfg;
  cfg.views = 2;
  cfg.dims = {2, 2};
  cfg.population = 100;
  cfg.seed = 31;
  const auto sample = synth_population(cfg);

  const auto [s1, s2] = split_sample(sample, 0.6, 77);
  int pos_total = 0, pos_s1 = 0;
  for (const auto& ex : sample.examples) pos_total += ex.label == 1 ? 1 : 0;
  for (const auto& ex : s1.examples) pos_s1 += ex.label == 1 ? 1 : 0;

  const auto [r1, r2] = split_sample(sample, 0.6, 77);
  bool deterministic = r1.size() == s1.size();
  for (std::size_t i = 0; deterministic && i < s1.size(); ++i)
    deterministic = r1.examples[i].views[0].at(0) == s1.examples[i].views[0].at(0);

  const bool sizes = s1.size() == 60 && s2.size() == 40;
  const bool stratified = std::abs(pos_s1 - 0.6 * pos_total) <= 1.0;
  report("split-fidelity", sizes && stratified && deterministic,
         "|S1|=" + std::to_string(s1.size()) + " |S2|=" + std::to_string(s2.size()) +
             ", class counts within 1 of the 3/5 share, deterministic per seed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void criterion_reproducibility() {
#ifndef MVPB_CLI_PATH
  report("cmd-train-reproducibility", false, "CLI path not wired into the build");
#else
  const auto dir = fs::temp_directory_path() / "mvpb_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string prefix = (dir / "data").string();
  const std::string cli = MVPB_CLI_PATH;

  auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };

  bool ok = run("synth --out-prefix " + prefix +
                " --views 2 --dims 4,4 --population 120 --separation 6 --noise 1 --seed 5") == 0;
  // Identical flags both times; outputs are copied aside between the runs.
  const std::string train_cmd = "train --view " + prefix + "_view0.txt --view " + prefix +
                                "_view1.txt --labels " + prefix + "_labels.txt --seed 3" +
                                " --model-out " + (dir / "model.txt").string() + " --report-out " +
                                (dir / "report.txt").string();
  ok = ok && run(train_cmd) == 0;
  const std::string model_first = read_file((dir / "model.txt").string());
  const std::string report_first = read_file((dir / "report.txt").string());
  ok = ok && run(train_cmd) == 0;

  const bool models_equal = model_first == read_file((dir / "model.txt").string());
  const bool reports_equal = report_first == read_file((dir / "report.txt").string());
  const bool nonempty = !model_first.empty() && !report_first.empty();
  report("cmd-train-reproducibility", ok && models_equal && reports_equal && nonempty,
         "two identical cmd_train invocations produced byte-identical model and report files");
  fs::remove_all(dir);
#endif
}

}  // namespace

int main() {
  criterion_decomposition_factor2_cbound_chain();
  criterion_oracle_equivalence();
  criterion_kl_machinery();
  criterion_soundness_and_coverage();
  criterion_end_to_end_learning();
  criterion_split_fidelity();
  criterion_reproducibility();
  if (g_failures > 0) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all criteria passed\n");
  return 0;
}
