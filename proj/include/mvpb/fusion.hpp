#ifndef MVPB_FUSION_HPP
#define MVPB_FUSION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mvpb/bounds.hpp"
#include "mvpb/estimators.hpp"
#include "mvpb/hierarchy.hpp"

namespace mvpb {

enum class Optimizer { CboundMinimize, Uniform, RiskMinimize };

struct TrainConfig {
  double s1_fraction = 0.6;  // |S1| share of the split: 3/5 by default
  int stumps_per_feature = 4;
  int max_features_per_view = 8;
  Optimizer optimizer = Optimizer::CboundMinimize;
  double learning_rate = 0.5;
  int max_iters = 500;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  double delta = 0.05;
  ComplexityTerm complexity = ComplexityTerm::TwoSqrtM;
  std::vector<double> catoni_grid;  // empty means default_catoni_grid()
  std::string prior_path;           // optional informative prior (prior file format)

  void validate() const;
};

// What happened inside learn_posterior. objective holds the accepted C-bound
// (or Gibbs risk, for risk-minimize) values, starting at the first finite
// evaluation; it is non-increasing by construction.
struct LearnTrace {
  std::vector<double> objective;
  int bootstrap_steps = 0;
  bool fell_back_to_risk_minimize = false;  // the NonFiniteObjective path
};

struct PoolBuild {
  VoterPool pool;
  std::vector<int> degenerate_views;  // views whose features were all constant on S1
};

struct FusionModel {
  VoterPool pool;
  HierarchicalDistribution posterior;
  HierarchicalDistribution prior;
  RiskProfile train_profile;  // on S2
  BoundReport train_report;   // on S2
  LearnTrace trace;
  std::vector<int> degenerate_views;
};

struct EvalMetrics {
  double accuracy = 0.0;
  double f1 = 0.0;  // +1 class; 0 when precision+recall = 0
  double majority_vote_risk = 0.0;
  double gibbs_risk = 0.0;
  double disagreement = 0.0;
  double joint_error = 0.0;
  std::size_t zero_margin_count = 0;
  bool factor2_ok = true;
};

// Label-stratified disjoint split: |S2| = floor(m*(1-s1_fraction)),
// |S1| = m - |S2|, per-class floors with leftovers to S1 by descending
// fractional part. Deterministic per seed.
std::pair<MultiviewSample, MultiviewSample> split_sample(const MultiviewSample& sample,
                                                         double s1_fraction, std::uint64_t seed);

// Quantile-threshold stumps, both polarities, on the highest-variance
// features of each view.
PoolBuild build_pool(const MultiviewSample& s1, const TrainConfig& cfg);

HierarchicalDistribution learn_posterior(const VoterPool& pool, const MultiviewSample& s2,
                                         const HierarchicalDistribution& prior,
                                         const TrainConfig& cfg, LearnTrace* trace = nullptr);

FusionModel train(const MultiviewSample& sample, const TrainConfig& cfg);

EvalMetrics evaluate(const FusionModel& model, const MultiviewSample& test);

// Versioned text model format; weights and thresholds carry 17 significant
// digits so load(save(m)) reproduces them bit-exactly.
void save_model(const FusionModel& model, const std::string& path);
FusionModel load_model(const std::string& path);  // train_profile/report stay empty

// Prior file: "mvpb-prior v1" header, then the same counts + weight block
// layout as the model format's distribution sections.
HierarchicalDistribution load_prior(const std::string& path, const VoterPool& pool);
void save_prior(const HierarchicalDistribution& prior, const std::string& path);

}  // namespace mvpb

#endif
