#ifndef MVPB_TESTS_SUPPORT_HPP
#define MVPB_TESTS_SUPPORT_HPP

#include <vector>

#include "mvpb/hierarchy.hpp"
#include "mvpb/rng.hpp"

namespace mvpb::testing {

// Dense construction helper: values[v][i] is the single feature of view v in
// example i (every view is 1-dimensional unless stated otherwise).
inline MultiviewSample make_sample(const std::vector<std::vector<double>>& values_per_view,
                                   const std::vector<int>& labels) {
  MultiviewSample sample;
  const std::size_t num_views = values_per_view.size();
  sample.view_dims.assign(num_views, 1);
  sample.examples.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    sample.examples[i].label = labels[i];
    sample.examples[i].views.resize(num_views);
    for (std::size_t v = 0; v < num_views; ++v) sample.examples[i].views[v].push(0, values_per_view[v][i]);
  }
  return sample;
}

struct Instance {
  MultiviewSample sample;
  VoterPool pool;
  HierarchicalDistribution dist;
};

// Hand-enumerated 4-example, 2-view fixture. Expected values (worked out by
// direct enumeration of the 4x4 vote table):
//   voter risks: h00=0, h01=1/4, h10=1/2, h11=1/4
//   gibbs = 0.29375, disagreement = 0.3884375, joint = 0.09953125
//   per-view gibbs (0.125, 0.35), per-view disagreement (0.125, 0.36)
//   margins (0.4, -0.1, 0.75, -0.4), majority-vote risk 0
inline Instance fixture_a() {
  Instance inst;
  inst.sample = make_sample({{2.0, -2.0, 1.0, -1.0}, {3.0, 1.0, -1.0, -3.0}}, {1, -1, 1, -1});
  inst.pool.per_view = {
      {Stump{0, 0, 0.0, 1}, Stump{0, 0, 1.5, 1}},
      {Stump{1, 0, 0.0, -1}, Stump{1, 0, -2.0, 1}},
  };
  inst.dist.hyper.w = Eigen::Vector2d(0.25, 0.75);
  inst.dist.per_view.resize(2);
  inst.dist.per_view[0].w = Eigen::Vector2d(0.5, 0.5);
  inst.dist.per_view[1].w = Eigen::Vector2d(0.4, 0.6);
  return inst;
}

inline Categorical random_categorical(Rng& rng, int n, bool allow_point_mass = true) {
  if (allow_point_mass && rng.next_uniform() < 0.15) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    w[static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n)))] = 1.0;
    Categorical c;
    c.w = w;
    return c;
  }
  Eigen::VectorXd raw(n);
  for (int i = 0; i < n; ++i) raw[i] = rng.next_uniform() + 0.01;
  return Categorical::normalized(raw);
}

// Random small instance within the brute-force oracle guard:
// V <= 3, n_v <= 4, m <= 8, feature dims <= 3, sparse with dropped entries.
inline Instance random_instance(Rng& rng) {
  Instance inst;
  const int num_views = 1 + static_cast<int>(rng.next_below(3));
  const std::size_t m = 1 + rng.next_below(8);
  std::vector<int> dims(static_cast<std::size_t>(num_views));
  for (auto& d : dims) d = 1 + static_cast<int>(rng.next_below(3));

  inst.sample.view_dims = dims;
  inst.sample.examples.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto& ex = inst.sample.examples[i];
    ex.label = rng.next_uniform() < 0.5 ? 1 : -1;
    ex.views.resize(static_cast<std::size_t>(num_views));
    for (int v = 0; v < num_views; ++v)
      for (int j = 0; j < dims[static_cast<std::size_t>(v)]; ++j)
        if (rng.next_uniform() < 0.8)
          ex.views[static_cast<std::size_t>(v)].push(j, 4.0 * rng.next_uniform() - 2.0);
  }

  inst.pool.per_view.resize(static_cast<std::size_t>(num_views));
  inst.dist.per_view.resize(static_cast<std::size_t>(num_views));
  for (int v = 0; v < num_views; ++v) {
    const int n_v = 1 + static_cast<int>(rng.next_below(4));
    for (int h = 0; h < n_v; ++h) {
      Stump stump;
      stump.view = v;
      stump.feature = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(dims[static_cast<std::size_t>(v)])));
      stump.threshold = 3.0 * rng.next_uniform() - 1.5;
      stump.polarity = rng.next_uniform() < 0.5 ? 1 : -1;
      inst.pool.per_view[static_cast<std::size_t>(v)].push_back(stump);
    }
    inst.dist.per_view[static_cast<std::size_t>(v)] = random_categorical(rng, n_v);
  }
  inst.dist.hyper = random_categorical(rng, num_views);
  return inst;
}

}  // namespace mvpb::testing

#endif
