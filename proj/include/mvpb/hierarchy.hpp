#ifndef MVPB_HIERARCHY_HPP
#define MVPB_HIERARCHY_HPP

#include <Eigen/Core>
#include <cstddef>
#include <vector>

#include "mvpb/errors.hpp"

namespace mvpb {

// Tolerance on |sum(weights) - 1| accepted by distribution validation.
// Construction helpers normalize exactly; validation only checks.
inline constexpr double kDistributionTol = 1e-9;

// Sparse feature vector: strictly increasing indices, finite values,
// absent index means value 0.
struct SparseFeatures {
  std::vector<int> indices;
  std::vector<double> values;

  double at(int feature) const;
  int max_index() const;  // -1 when empty
  void push(int index, double value) {
    indices.push_back(index);
    values.push_back(value);
  }
};

struct MultiviewExample {
  std::vector<SparseFeatures> views;
  int label = 1;  // -1 or +1

  int num_views() const { return static_cast<int>(views.size()); }
};

struct MultiviewSample {
  std::vector<MultiviewExample> examples;
  std::vector<int> view_dims;

  std::size_t size() const { return examples.size(); }
  int num_views() const { return static_cast<int>(view_dims.size()); }

  // Checks all type invariants: V >= 1, shared V, strictly increasing finite
  // features within view_dims, labels in {-1,+1}, m >= 1.
  void validate() const;
};

// Threshold voter on a single feature of a single view.
// predict(x) = polarity if x[feature] > threshold, else -polarity.
struct Stump {
  int view = 0;
  int feature = 0;
  double threshold = 0.0;
  int polarity = 1;

  int predict(const SparseFeatures& x) const {
    return x.at(feature) > threshold ? polarity : -polarity;
  }
  int predict_example(const MultiviewExample& x) const;
};

struct VoterPool {
  std::vector<std::vector<Stump>> per_view;

  int num_views() const { return static_cast<int>(per_view.size()); }
  int num_voters(int view) const { return static_cast<int>(per_view[view].size()); }
  int total_voters() const;

  // n_v >= 1 for all v and every stump's view index matches its list.
  void validate() const;
};

// Finite distribution as a weight vector.
struct Categorical {
  Eigen::VectorXd w;

  int size() const { return static_cast<int>(w.size()); }
  bool is_distribution(double tol = kDistributionTol) const;

  static Categorical uniform(int n);
  // Scales a non-negative vector to sum exactly to 1.
  static Categorical normalized(const Eigen::VectorXd& raw);
};

// Two-level weights: one categorical over views, one per view over its
// voters. Serves as both prior (pi, {P_v}) and posterior (rho, {Q_v}).
struct HierarchicalDistribution {
  Categorical hyper;
  std::vector<Categorical> per_view;

  int num_views() const { return static_cast<int>(per_view.size()); }
};

// Throws ShapeMismatch when lengths disagree with the pool, NotADistribution
// when a level has a negative weight or sums off by more than 1e-9.
void validate_hierarchy(const HierarchicalDistribution& dist, const VoterPool& pool);

// hyper weight 1/V, per-view weight 1/n_v.
HierarchicalDistribution uniform_hierarchy(const VoterPool& pool);

}  // namespace mvpb

#endif
