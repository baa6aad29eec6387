#ifndef MVPB_ESTIMATORS_HPP
#define MVPB_ESTIMATORS_HPP

#include <Eigen/Core>
#include <atomic>
#include <cstddef>
#include <vector>

#include "mvpb/hierarchy.hpp"

namespace mvpb {

// Empirical statistics of a hierarchical majority vote on one sample.
// Invariant: gibbs_risk == disagreement/2 + joint_error up to 1e-12.
struct RiskProfile {
  double gibbs_risk = 0.0;
  double disagreement = 0.0;
  double joint_error = 0.0;
  double majority_vote_risk = 0.0;
  Eigen::VectorXd per_view_gibbs;
  Eigen::VectorXd per_view_disagreement;
  std::size_t m = 0;
  std::size_t zero_margin_count = 0;
};

// Complexity budget of all hierarchical bounds:
// expected_view_kl = E_{v~rho} KL(Q_v||P_v), hyper_kl = KL(rho||pi).
struct KlBudget {
  double expected_view_kl = 0.0;
  double hyper_kl = 0.0;
  double total = 0.0;
};

// Precomputed voter outputs: votes[v] is m x n_v with entries in {-1,+1},
// labels is the m-vector of {-1,+1} targets. All margin-based estimators run
// off this table so a sample is scanned once per (pool, sample) pair.
struct VoteTable {
  std::vector<Eigen::MatrixXd> votes;
  Eigen::VectorXd labels;
  std::size_t m = 0;

  int num_views() const { return static_cast<int>(votes.size()); }
};

VoteTable tabulate_votes(const VoterPool& pool, const MultiviewSample& sample);

// Per-example margin E_{v~rho} E_{h~Q_v} h(x^v), one entry per example.
Eigen::VectorXd margins(const VoteTable& table, const HierarchicalDistribution& dist);

double voter_risk(const Stump& h, const MultiviewSample& sample);
double pair_disagreement(const Stump& a, const Stump& b, const MultiviewSample& sample);

double gibbs_risk(const HierarchicalDistribution& dist, const VoterPool& pool,
                  const MultiviewSample& sample);
double disagreement_mv(const HierarchicalDistribution& dist, const VoterPool& pool,
                       const MultiviewSample& sample);
double joint_error_mv(const HierarchicalDistribution& dist, const VoterPool& pool,
                      const MultiviewSample& sample);
double majority_vote_margin(const HierarchicalDistribution& dist, const VoterPool& pool,
                            const MultiviewExample& x);
// sign(0) counts as +1, so a zero margin on a negative example is an error.
double majority_vote_risk(const HierarchicalDistribution& dist, const VoterPool& pool,
                          const MultiviewSample& sample);

// sum_i Q_i ln(Q_i/P_i) with the 0 ln 0 = 0 convention.
double kl_categorical(const Categorical& q, const Categorical& p);
KlBudget kl_budget(const HierarchicalDistribution& posterior,
                   const HierarchicalDistribution& prior);

RiskProfile risk_profile(const HierarchicalDistribution& dist, const VoterPool& pool,
                         const MultiviewSample& sample);
// Same statistics from an existing table; dist must match the table shapes.
RiskProfile risk_profile(const VoteTable& table, const HierarchicalDistribution& dist);

namespace detail {
// Verification hook: when set, the fast joint-error path flips the sign of
// y*margin, which breaks agreement with the brute-force oracle. Used by the
// CLI verify command's fault mode only.
extern std::atomic<bool> fault_invert_joint_error;
}  // namespace detail

}  // namespace mvpb

#endif
