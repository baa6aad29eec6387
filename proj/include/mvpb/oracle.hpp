#ifndef MVPB_ORACLE_HPP
#define MVPB_ORACLE_HPP

#include <cstdint>
#include <string>

#include "mvpb/bounds.hpp"
#include "mvpb/dataio.hpp"
#include "mvpb/estimators.hpp"
#include "mvpb/fusion.hpp"

namespace mvpb {

// Literal nested-sum estimators with no margin shortcut, for cross-checking
// the fast paths. Guarded to small instances: V * max(n_v) <= 64, m <= 1000.
double brute_gibbs(const HierarchicalDistribution& dist, const VoterPool& pool,
                   const MultiviewSample& sample);
double brute_disagreement(const HierarchicalDistribution& dist, const VoterPool& pool,
                          const MultiviewSample& sample);
double brute_joint_error(const HierarchicalDistribution& dist, const VoterPool& pool,
                         const MultiviewSample& sample);

// Risk statistics over a finite population standing in for the data
// distribution, so "true" values are exactly computable.
RiskProfile population_truth(const HierarchicalDistribution& dist, const VoterPool& pool,
                             const MultiviewSample& population);

enum class PosteriorRule { Uniform, CboundMinimize, RiskMinimize };

struct SoundnessReport {
  int trials = 0;
  std::size_t m = 0;
  double delta = 0.0;
  PosteriorRule rule = PosteriorRule::Uniform;
  // Fraction of trials where bound < true Gibbs risk of that trial's posterior.
  double violation_mcallester = 0.0;
  double violation_catoni = 0.0;
  double violation_seeger = 0.0;
  // Trial averages, for the expectation reading of the bounds.
  double mean_mcallester = 0.0;
  double mean_catoni = 0.0;
  double mean_seeger = 0.0;
  double mean_true_gibbs = 0.0;
  double mean_empirical_gibbs = 0.0;
  // Fraction of trials whose disagreement interval contains the true value.
  double disagreement_coverage = 0.0;
};

// Builds a population and a fixed pool/prior from it, then repeatedly draws
// i.i.d. m-samples, forms the posterior by the given rule, and compares each
// bound at the given delta against the population-true Gibbs risk.
SoundnessReport bound_soundness_trial(const SynthConfig& cfg, std::size_t m, double delta,
                                      int trials, PosteriorRule rule, std::uint64_t seed = 7);

std::string posterior_rule_name(PosteriorRule rule);

}  // namespace mvpb

#endif
