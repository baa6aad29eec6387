#include "mvpb/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mvpb {

double SparseFeatures::at(int feature) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), feature);
  if (it == indices.end() || *it != feature) return 0.0;
  return values[static_cast<std::size_t>(it - indices.begin())];
}

int SparseFeatures::max_index() const { return indices.empty() ? -1 : indices.back(); }

int Stump::predict_example(const MultiviewExample& x) const {
  if (view < 0 || view >= x.num_views())
    throw ShapeMismatch("stump view " + std::to_string(view) + " out of range for example with " +
                        std::to_string(x.num_views()) + " views");
  return predict(x.views[static_cast<std::size_t>(view)]);
}

void MultiviewSample::validate() const {
  const int V = num_views();
  if (V < 1) throw ShapeMismatch("sample must have at least one view");
  if (examples.empty()) throw EmptySample("sample must contain at least one example");
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const MultiviewExample& ex = examples[i];
    if (ex.num_views() != V)
      throw ShapeMismatch("example " + std::to_string(i) + " has " + std::to_string(ex.num_views()) +
                          " views, sample declares " + std::to_string(V));
    if (ex.label != 1 && ex.label != -1)
      throw LabelDomainError("example " + std::to_string(i) + " has label " +
                             std::to_string(ex.label) + ", expected -1 or +1");
    for (int v = 0; v < V; ++v) {
      const SparseFeatures& f = ex.views[static_cast<std::size_t>(v)];
      if (f.indices.size() != f.values.size())
        throw ShapeMismatch("example " + std::to_string(i) + " view " + std::to_string(v) +
                            ": index/value length mismatch");
      int prev = -1;
      for (std::size_t k = 0; k < f.indices.size(); ++k) {
        if (f.indices[k] <= prev)
          throw ShapeMismatch("example " + std::to_string(i) + " view " + std::to_string(v) +
                              ": feature indices must be strictly increasing");
        if (f.indices[k] >= view_dims[static_cast<std::size_t>(v)])
          throw ShapeMismatch("example " + std::to_string(i) + " view " + std::to_string(v) +
                              ": feature index " + std::to_string(f.indices[k]) +
                              " outside view dimension " +
                              std::to_string(view_dims[static_cast<std::size_t>(v)]));
        if (!std::isfinite(f.values[k]))
          throw ShapeMismatch("example " + std::to_string(i) + " view " + std::to_string(v) +
                              ": non-finite feature value");
        prev = f.indices[k];
      }
    }
  }
}

int VoterPool::total_voters() const {
  int n = 0;
  for (const auto& hv : per_view) n += static_cast<int>(hv.size());
  return n;
}

void VoterPool::validate() const {
  if (per_view.empty()) throw ShapeMismatch("voter pool must have at least one view");
  for (int v = 0; v < num_views(); ++v) {
    const auto& hv = per_view[static_cast<std::size_t>(v)];
    if (hv.empty())
      throw ShapeMismatch("view " + std::to_string(v) + " has an empty voter set");
    for (const Stump& h : hv) {
      if (h.view != v)
        throw ShapeMismatch("stump with view index " + std::to_string(h.view) +
                            " stored under view " + std::to_string(v));
      if (h.polarity != 1 && h.polarity != -1)
        throw ShapeMismatch("stump polarity must be -1 or +1");
    }
  }
}

bool Categorical::is_distribution(double tol) const {
  if (w.size() == 0) return false;
  if ((w.array() < 0.0).any()) return false;
  return std::abs(w.sum() - 1.0) <= tol;
}

Categorical Categorical::uniform(int n) {
  Categorical c;
  c.w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  return c;
}

Categorical Categorical::normalized(const Eigen::VectorXd& raw) {
  if (raw.size() == 0) throw ShapeMismatch("cannot normalize an empty weight vector");
  if ((raw.array() < 0.0).any()) throw NotADistribution("negative weight in normalization input");
  const double s = raw.sum();
  if (!(s > 0.0)) throw NotADistribution("weights sum to zero");
  Categorical c;
  c.w = raw / s;
  return c;
}

void validate_hierarchy(const HierarchicalDistribution& dist, const VoterPool& pool) {
  pool.validate();
  const int V = pool.num_views();
  if (dist.hyper.size() != V)
    throw ShapeMismatch("hyper level has " + std::to_string(dist.hyper.size()) +
                        " entries, pool has " + std::to_string(V) + " views");
  if (dist.num_views() != V)
    throw ShapeMismatch("distribution has " + std::to_string(dist.num_views()) +
                        " view levels, pool has " + std::to_string(V));
  if (!dist.hyper.is_distribution())
    throw NotADistribution("hyper-level weights are not a distribution");
  for (int v = 0; v < V; ++v) {
    const Categorical& qv = dist.per_view[static_cast<std::size_t>(v)];
    if (qv.size() != pool.num_voters(v))
      throw ShapeMismatch("view " + std::to_string(v) + " has " + std::to_string(qv.size()) +
                          " weights for " + std::to_string(pool.num_voters(v)) + " voters");
    if (!qv.is_distribution())
      throw NotADistribution("view " + std::to_string(v) + " weights are not a distribution");
  }
}

HierarchicalDistribution uniform_hierarchy(const VoterPool& pool) {
  pool.validate();
  HierarchicalDistribution dist;
  dist.hyper = Categorical::uniform(pool.num_views());
  dist.per_view.reserve(static_cast<std::size_t>(pool.num_views()));
  for (int v = 0; v < pool.num_views(); ++v)
    dist.per_view.push_back(Categorical::uniform(pool.num_voters(v)));
  return dist;
}

}  // namespace mvpb
