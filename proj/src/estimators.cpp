#include "mvpb/estimators.hpp"

#include <cmath>
#include <string>

namespace mvpb {

namespace detail {
std::atomic<bool> fault_invert_joint_error{false};
}

namespace {

void check_inputs(const HierarchicalDistribution& dist, const VoterPool& pool,
                  const MultiviewSample& sample) {
  validate_hierarchy(dist, pool);
  if (sample.examples.empty()) throw EmptySample("estimator called on an empty sample");
  if (sample.num_views() != pool.num_views())
    throw ShapeMismatch("sample has " + std::to_string(sample.num_views()) + " views, pool has " +
                        std::to_string(pool.num_views()));
}

// Mean voter risk of each view under its conditional weights, plus the
// rho-average. Accumulation order is fixed: views outer, voters inner,
// examples innermost (inside the vote/label products).
Eigen::VectorXd per_view_gibbs_risks(const VoteTable& table, const HierarchicalDistribution& dist) {
  const int V = table.num_views();
  const double m = static_cast<double>(table.m);
  Eigen::VectorXd g(V);
  for (int v = 0; v < V; ++v) {
    const Eigen::VectorXd agreement = table.votes[static_cast<std::size_t>(v)].transpose() * table.labels;
    const Eigen::VectorXd risks = (1.0 - agreement.array() / m) * 0.5;
    g[v] = dist.per_view[static_cast<std::size_t>(v)].w.dot(risks);
  }
  return g;
}

Eigen::VectorXd conditional_view_margins(const VoteTable& table,
                                         const HierarchicalDistribution& dist, int v) {
  return table.votes[static_cast<std::size_t>(v)] * dist.per_view[static_cast<std::size_t>(v)].w;
}

}  // namespace

VoteTable tabulate_votes(const VoterPool& pool, const MultiviewSample& sample) {
  pool.validate();
  if (sample.examples.empty()) throw EmptySample("cannot tabulate votes on an empty sample");
  if (sample.num_views() != pool.num_views())
    throw ShapeMismatch("sample has " + std::to_string(sample.num_views()) + " views, pool has " +
                        std::to_string(pool.num_views()));
  VoteTable table;
  table.m = sample.size();
  table.labels.resize(static_cast<Eigen::Index>(table.m));
  for (std::size_t i = 0; i < table.m; ++i)
    table.labels[static_cast<Eigen::Index>(i)] = static_cast<double>(sample.examples[i].label);
  table.votes.reserve(static_cast<std::size_t>(pool.num_views()));
  for (int v = 0; v < pool.num_views(); ++v) {
    const auto& voters = pool.per_view[static_cast<std::size_t>(v)];
    Eigen::MatrixXd votes(static_cast<Eigen::Index>(table.m),
                          static_cast<Eigen::Index>(voters.size()));
    for (std::size_t i = 0; i < table.m; ++i) {
      const SparseFeatures& x = sample.examples[i].views[static_cast<std::size_t>(v)];
      for (std::size_t h = 0; h < voters.size(); ++h)
        votes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(h)) =
            static_cast<double>(voters[h].predict(x));
    }
    table.votes.push_back(std::move(votes));
  }
  return table;
}

Eigen::VectorXd margins(const VoteTable& table, const HierarchicalDistribution& dist) {
  if (dist.num_views() != table.num_views())
    throw ShapeMismatch("distribution/table view count mismatch");
  Eigen::VectorXd margin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(table.m));
  for (int v = 0; v < table.num_views(); ++v)
    margin += dist.hyper.w[v] * conditional_view_margins(table, dist, v);
  return margin;
}

double voter_risk(const Stump& h, const MultiviewSample& sample) {
  if (sample.examples.empty()) throw EmptySample("voter_risk on an empty sample");
  std::size_t errors = 0;
  for (const MultiviewExample& ex : sample.examples)
    if (h.predict_example(ex) != ex.label) ++errors;
  return static_cast<double>(errors) / static_cast<double>(sample.size());
}

double pair_disagreement(const Stump& a, const Stump& b, const MultiviewSample& sample) {
  if (sample.examples.empty()) throw EmptySample("pair_disagreement on an empty sample");
  std::size_t differ = 0;
  for (const MultiviewExample& ex : sample.examples)
    if (a.predict_example(ex) != b.predict_example(ex)) ++differ;
  return static_cast<double>(differ) / static_cast<double>(sample.size());
}

double gibbs_risk(const HierarchicalDistribution& dist, const VoterPool& pool,
                  const MultiviewSample& sample) {
  check_inputs(dist, pool, sample);
  const VoteTable table = tabulate_votes(pool, sample);
  return dist.hyper.w.dot(per_view_gibbs_risks(table, dist));
}

double disagreement_mv(const HierarchicalDistribution& dist, const VoterPool& pool,
                       const MultiviewSample& sample) {
  check_inputs(dist, pool, sample);
  const VoteTable table = tabulate_votes(pool, sample);
  const Eigen::VectorXd margin = margins(table, dist);
  // Binary voters: the pair expectation collapses to 1/2 (1 - margin^2).
  double acc = 0.0;
  for (Eigen::Index i = 0; i < margin.size(); ++i) acc += 0.5 * (1.0 - margin[i] * margin[i]);
  return acc / static_cast<double>(table.m);
}

double joint_error_mv(const HierarchicalDistribution& dist, const VoterPool& pool,
                      const MultiviewSample& sample) {
  check_inputs(dist, pool, sample);
  const VoteTable table = tabulate_votes(pool, sample);
  const Eigen::VectorXd margin = margins(table, dist);
  const double sign = detail::fault_invert_joint_error.load() ? -1.0 : 1.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < margin.size(); ++i) {
    // Conditional Gibbs error on example i, squared (independent pair draw).
    const double eps = 0.5 * (1.0 - sign * table.labels[i] * margin[i]);
    acc += eps * eps;
  }
  return acc / static_cast<double>(table.m);
}

double majority_vote_margin(const HierarchicalDistribution& dist, const VoterPool& pool,
                            const MultiviewExample& x) {
  validate_hierarchy(dist, pool);
  if (x.num_views() != pool.num_views())
    throw ShapeMismatch("example has " + std::to_string(x.num_views()) + " views, pool has " +
                        std::to_string(pool.num_views()));
  double margin = 0.0;
  for (int v = 0; v < pool.num_views(); ++v) {
    const auto& voters = pool.per_view[static_cast<std::size_t>(v)];
    const Eigen::VectorXd& q = dist.per_view[static_cast<std::size_t>(v)].w;
    double view_margin = 0.0;
    for (std::size_t h = 0; h < voters.size(); ++h)
      view_margin += q[static_cast<Eigen::Index>(h)] *
                     static_cast<double>(voters[h].predict(x.views[static_cast<std::size_t>(v)]));
    margin += dist.hyper.w[v] * view_margin;
  }
  return margin;
}

double majority_vote_risk(const HierarchicalDistribution& dist, const VoterPool& pool,
                          const MultiviewSample& sample) {
  check_inputs(dist, pool, sample);
  const VoteTable table = tabulate_votes(pool, sample);
  const Eigen::VectorXd margin = margins(table, dist);
  std::size_t errors = 0;
  for (Eigen::Index i = 0; i < margin.size(); ++i) {
    const double predicted = margin[i] >= 0.0 ? 1.0 : -1.0;  // sign(0) = +1
    if (predicted != table.labels[i]) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(table.m);
}

double kl_categorical(const Categorical& q, const Categorical& p) {
  if (q.size() != p.size())
    throw ShapeMismatch("kl_categorical on vectors of length " + std::to_string(q.size()) +
                        " and " + std::to_string(p.size()));
  double kl = 0.0;
  for (Eigen::Index i = 0; i < q.w.size(); ++i) {
    const double qi = q.w[i];
    if (qi == 0.0) continue;  // 0 ln 0 = 0
    const double pi = p.w[i];
    if (pi == 0.0)
      throw AbsoluteContinuityViolation("posterior puts weight " + std::to_string(qi) +
                                        " on an entry with zero prior weight");
    kl += qi * std::log(qi / pi);
  }
  return kl;
}

KlBudget kl_budget(const HierarchicalDistribution& posterior,
                   const HierarchicalDistribution& prior) {
  if (posterior.num_views() != prior.num_views() || posterior.hyper.size() != prior.hyper.size())
    throw ShapeMismatch("posterior/prior hierarchy shapes differ");
  KlBudget budget;
  for (int v = 0; v < posterior.num_views(); ++v)
    budget.expected_view_kl +=
        posterior.hyper.w[v] * kl_categorical(posterior.per_view[static_cast<std::size_t>(v)],
                                              prior.per_view[static_cast<std::size_t>(v)]);
  budget.hyper_kl = kl_categorical(posterior.hyper, prior.hyper);
  budget.total = budget.expected_view_kl + budget.hyper_kl;
  return budget;
}

RiskProfile risk_profile(const VoteTable& table, const HierarchicalDistribution& dist) {
  if (dist.num_views() != table.num_views())
    throw ShapeMismatch("distribution/table view count mismatch");
  const int V = table.num_views();
  const double m = static_cast<double>(table.m);
  RiskProfile profile;
  profile.m = table.m;
  profile.per_view_gibbs = per_view_gibbs_risks(table, dist);
  profile.gibbs_risk = dist.hyper.w.dot(profile.per_view_gibbs);

  profile.per_view_disagreement.resize(V);
  Eigen::VectorXd margin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(table.m));
  for (int v = 0; v < V; ++v) {
    const Eigen::VectorXd view_margin = conditional_view_margins(table, dist, v);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < view_margin.size(); ++i)
      acc += 0.5 * (1.0 - view_margin[i] * view_margin[i]);
    profile.per_view_disagreement[v] = acc / m;
    margin += dist.hyper.w[v] * view_margin;
  }

  const double fault_sign = detail::fault_invert_joint_error.load() ? -1.0 : 1.0;
  double dis = 0.0, joint = 0.0;
  std::size_t mv_errors = 0;
  for (Eigen::Index i = 0; i < margin.size(); ++i) {
    dis += 0.5 * (1.0 - margin[i] * margin[i]);
    const double eps = 0.5 * (1.0 - fault_sign * table.labels[i] * margin[i]);
    joint += eps * eps;
    if (margin[i] == 0.0) ++profile.zero_margin_count;
    const double predicted = margin[i] >= 0.0 ? 1.0 : -1.0;
    if (predicted != table.labels[i]) ++mv_errors;
  }
  profile.disagreement = dis / m;
  profile.joint_error = joint / m;
  profile.majority_vote_risk = static_cast<double>(mv_errors) / m;
  return profile;
}

RiskProfile risk_profile(const HierarchicalDistribution& dist, const VoterPool& pool,
                         const MultiviewSample& sample) {
  check_inputs(dist, pool, sample);
  return risk_profile(tabulate_votes(pool, sample), dist);
}

}  // namespace mvpb
