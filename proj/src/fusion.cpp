#include "mvpb/fusion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "mvpb/rng.hpp"

namespace mvpb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxBacktracks = 30;
constexpr int kBootstrapIters = 50;

// ---------------------------------------------------------------------------
// Split

struct ClassIndices {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
};

ClassIndices indices_by_class(const MultiviewSample& sample) {
  ClassIndices ix;
  for (std::size_t i = 0; i < sample.size(); ++i)
    (sample.examples[i].label == 1 ? ix.pos : ix.neg).push_back(i);
  return ix;
}

MultiviewSample take(const MultiviewSample& sample, const std::vector<std::size_t>& rows) {
  MultiviewSample out;
  out.view_dims = sample.view_dims;
  out.examples.reserve(rows.size());
  for (std::size_t r : rows) out.examples.push_back(sample.examples[r]);
  return out;
}

// ---------------------------------------------------------------------------
// Exponentiated-gradient machinery

struct EgState {
  Eigen::VectorXd rho;
  std::vector<Eigen::VectorXd> q;
};

struct EgGradient {
  Eigen::VectorXd rho;
  std::vector<Eigen::VectorXd> q;
};

// Everything the objective and gradients need at one point.
struct EgWork {
  std::vector<Eigen::VectorXd> view_margins;  // M_v = H_v q_v
  Eigen::VectorXd margin;                     // sum_v rho_v M_v
  double margin_mean = 0.0;                   // N = mean(y * margin)
  double margin_second = 0.0;                 // s = mean(margin^2)
};

EgState state_from(const HierarchicalDistribution& dist) {
  EgState st;
  st.rho = dist.hyper.w;
  st.q.reserve(dist.per_view.size());
  for (const auto& qv : dist.per_view) st.q.push_back(qv.w);
  return st;
}

HierarchicalDistribution state_to_dist(const EgState& st) {
  HierarchicalDistribution dist;
  dist.hyper.w = st.rho;
  dist.per_view.resize(st.q.size());
  for (std::size_t v = 0; v < st.q.size(); ++v) dist.per_view[v].w = st.q[v];
  return dist;
}

EgWork compute_work(const VoteTable& table, const EgState& st) {
  EgWork w;
  const double m = static_cast<double>(table.m);
  w.view_margins.reserve(st.q.size());
  w.margin = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(table.m));
  for (std::size_t v = 0; v < st.q.size(); ++v) {
    w.view_margins.push_back(table.votes[v] * st.q[v]);
    w.margin += st.rho[static_cast<Eigen::Index>(v)] * w.view_margins.back();
  }
  w.margin_mean = table.labels.dot(w.margin) / m;
  w.margin_second = w.margin.squaredNorm() / m;
  return w;
}

// Empirical C-bound 1 - N^2/s. Outside its valid region (N <= 0 or s <= 0)
// the value is reported as +inf so such candidates are never accepted.
double cbound_objective(const EgWork& w) {
  if (!(w.margin_mean > 0.0) || !(w.margin_second > 0.0)) return kInf;
  return 1.0 - w.margin_mean * w.margin_mean / w.margin_second;
}

double risk_objective(const EgWork& w) { return 0.5 * (1.0 - w.margin_mean); }

// d(objective)/d(N), d(objective)/d(s) for the two objectives.
struct Chain {
  double dn = 0.0;
  double ds = 0.0;
};

Chain cbound_chain(const EgWork& w) {
  const double n = w.margin_mean, s = w.margin_second;
  return {-2.0 * n / s, n * n / (s * s)};
}

Chain risk_chain(const EgWork&) { return {-0.5, 0.0}; }

EgGradient gradient(const VoteTable& table, const EgState& st, const EgWork& w,
                    const std::vector<Eigen::VectorXd>& votes_t_labels, const Chain& chain) {
  const double m = static_cast<double>(table.m);
  EgGradient g;
  g.rho.resize(st.rho.size());
  g.q.resize(st.q.size());
  for (std::size_t v = 0; v < st.q.size(); ++v) {
    const Eigen::Index vi = static_cast<Eigen::Index>(v);
    const double dn_rho = table.labels.dot(w.view_margins[v]) / m;
    const double ds_rho = 2.0 * w.margin.dot(w.view_margins[v]) / m;
    g.rho[vi] = chain.dn * dn_rho + chain.ds * ds_rho;
    const Eigen::VectorXd dn_q = (st.rho[vi] / m) * votes_t_labels[v];
    const Eigen::VectorXd ds_q = (2.0 * st.rho[vi] / m) * (table.votes[v].transpose() * w.margin);
    g.q[v] = chain.dn * dn_q + chain.ds * ds_q;
  }
  return g;
}

// Multiplicative-weights step w <- w * exp(-eta * g) / Z. The exponent is
// shifted by its max over supported entries; zero weights stay zero, so the
// posterior support never leaves the prior support.
Eigen::VectorXd eg_update(const Eigen::VectorXd& w, const Eigen::VectorXd& g, double eta) {
  double shift = -kInf;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] > 0.0) shift = std::max(shift, -eta * g[i]);
  Eigen::VectorXd out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    out[i] = w[i] > 0.0 ? w[i] * std::exp(-eta * g[i] - shift) : 0.0;
  const double z = out.sum();
  return out / z;
}

EgState eg_step(const EgState& st, const EgGradient& g, double eta) {
  EgState out;
  out.rho = eg_update(st.rho, g.rho, eta);
  out.q.reserve(st.q.size());
  for (std::size_t v = 0; v < st.q.size(); ++v) out.q.push_back(eg_update(st.q[v], g.q[v], eta));
  return out;
}

template <typename Objective, typename ChainFn>
void descend(const VoteTable& table, EgState& st, const std::vector<Eigen::VectorXd>& vty,
             const TrainConfig& cfg, int max_iters, Objective objective, ChainFn chain_fn,
             std::vector<double>* trace, const std::function<bool(const EgState&)>& stop_early) {
  EgWork work = compute_work(table, st);
  double obj = objective(work);
  if (trace && std::isfinite(obj)) trace->push_back(obj);
  for (int iter = 0; iter < max_iters; ++iter) {
    const EgGradient g = gradient(table, st, work, vty, chain_fn(work));
    double eta = cfg.learning_rate;
    bool accepted = false;
    EgState candidate;
    EgWork candidate_work;
    double candidate_obj = kInf;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      candidate = eg_step(st, g, eta);
      candidate_work = compute_work(table, candidate);
      candidate_obj = objective(candidate_work);
      if (candidate_obj < obj) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    const double decrease = obj - candidate_obj;
    st = std::move(candidate);
    work = std::move(candidate_work);
    obj = candidate_obj;
    if (trace) trace->push_back(obj);
    if (stop_early && stop_early(st)) break;
    if (decrease < cfg.tol) break;
  }
}

// ---------------------------------------------------------------------------
// Model file plumbing

int parse_int_token(const std::string& tok, const std::string& path) {
  int value = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw IoError("bad integer '" + tok + "' in " + path);
  return value;
}

double parse_double_token(const std::string& tok, const std::string& path) {
  double value = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw IoError("bad number '" + tok + "' in " + path);
  return value;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

std::string next_line(std::istream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("unexpected end of " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

Eigen::VectorXd parse_weights_line(std::istream& in, int count, const std::string& path) {
  const auto toks = split_tokens(next_line(in, path));
  if (static_cast<int>(toks.size()) != count)
    throw IoError("expected " + std::to_string(count) + " weights, got " +
                  std::to_string(toks.size()) + " in " + path);
  Eigen::VectorXd w(count);
  for (int i = 0; i < count; ++i) w[i] = parse_double_token(toks[static_cast<std::size_t>(i)], path);
  return w;
}

void write_weights_line(std::ostream& out, const Eigen::VectorXd& w) {
  char buf[64];
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", w[i]);
    if (i) out << ' ';
    out << buf;
  }
  out << '\n';
}

void write_distribution(std::ostream& out, const HierarchicalDistribution& dist) {
  write_weights_line(out, dist.hyper.w);
  for (const auto& qv : dist.per_view) write_weights_line(out, qv.w);
}

HierarchicalDistribution read_distribution(std::istream& in, const std::vector<int>& voters,
                                           const std::string& path) {
  HierarchicalDistribution dist;
  dist.hyper.w = parse_weights_line(in, static_cast<int>(voters.size()), path);
  dist.per_view.resize(voters.size());
  for (std::size_t v = 0; v < voters.size(); ++v)
    dist.per_view[v].w = parse_weights_line(in, voters[v], path);
  return dist;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(s1_fraction > 0.0 && s1_fraction < 1.0))
    throw DomainError("split ratio must lie strictly between 0 and 1");
  if (stumps_per_feature < 1) throw DomainError("stumps_per_feature must be >= 1");
  if (max_features_per_view < 1) throw DomainError("max_features_per_view must be >= 1");
  if (!(learning_rate > 0.0)) throw DomainError("learning_rate must be positive");
  if (max_iters < 1) throw DomainError("max_iters must be >= 1");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0,1]");
}

std::pair<MultiviewSample, MultiviewSample> split_sample(const MultiviewSample& sample,
                                                         double s1_fraction, std::uint64_t seed) {
  if (!(s1_fraction > 0.0 && s1_fraction < 1.0))
    throw DomainError("split ratio must lie strictly between 0 and 1");
  const std::size_t m = sample.size();
  if (m < 5) throw TooFewExamples("split needs at least 5 examples, got " + std::to_string(m));

  ClassIndices ix = indices_by_class(sample);
  Rng rng(seed);
  rng.shuffle(ix.pos);
  rng.shuffle(ix.neg);

  const std::size_t n2 = static_cast<std::size_t>(
      std::floor(static_cast<double>(m) * (1.0 - s1_fraction)));
  const std::size_t n1 = m - n2;

  const double pos_ideal = static_cast<double>(ix.pos.size()) * s1_fraction;
  const double neg_ideal = static_cast<double>(ix.neg.size()) * s1_fraction;
  std::size_t pos1 = static_cast<std::size_t>(std::floor(pos_ideal));
  std::size_t neg1 = static_cast<std::size_t>(std::floor(neg_ideal));
  // Leftover S1 slots: at most one per class, larger fractional part first,
  // positives on ties. Keeps each class within +-1 of its exact share.
  std::size_t deficit = n1 - std::min(n1, pos1 + neg1);
  if (deficit == 2) {
    ++pos1;
    ++neg1;
  } else if (deficit == 1) {
    const double pos_frac = pos_ideal - std::floor(pos_ideal);
    const double neg_frac = neg_ideal - std::floor(neg_ideal);
    if ((pos_frac >= neg_frac && pos1 < ix.pos.size()) || neg1 >= ix.neg.size())
      ++pos1;
    else
      ++neg1;
  }

  std::vector<std::size_t> rows1(ix.pos.begin(), ix.pos.begin() + static_cast<std::ptrdiff_t>(pos1));
  rows1.insert(rows1.end(), ix.neg.begin(), ix.neg.begin() + static_cast<std::ptrdiff_t>(neg1));
  std::vector<std::size_t> rows2(ix.pos.begin() + static_cast<std::ptrdiff_t>(pos1), ix.pos.end());
  rows2.insert(rows2.end(), ix.neg.begin() + static_cast<std::ptrdiff_t>(neg1), ix.neg.end());

  if (pos1 == 0 || neg1 == 0 || pos1 == ix.pos.size() || neg1 == ix.neg.size())
    throw TooFewExamples("a class would have no examples in one side of the split");
  return {take(sample, rows1), take(sample, rows2)};
}

PoolBuild build_pool(const MultiviewSample& s1, const TrainConfig& cfg) {
  cfg.validate();
  if (s1.examples.empty()) throw EmptySample("cannot build a pool from an empty sample");
  const std::size_t m = s1.size();
  PoolBuild out;
  out.pool.per_view.resize(static_cast<std::size_t>(s1.num_views()));

  for (int v = 0; v < s1.num_views(); ++v) {
    const int dim = s1.view_dims[static_cast<std::size_t>(v)];
    // Column extraction with the sparse zero convention.
    std::vector<std::vector<double>> columns(static_cast<std::size_t>(dim),
                                             std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
      const SparseFeatures& f = s1.examples[i].views[static_cast<std::size_t>(v)];
      for (std::size_t k = 0; k < f.indices.size(); ++k)
        columns[static_cast<std::size_t>(f.indices[k])][i] = f.values[k];
    }

    std::vector<std::pair<double, int>> by_variance;  // (-variance, feature)
    for (int j = 0; j < dim; ++j) {
      const auto& col = columns[static_cast<std::size_t>(j)];
      double mean = 0.0;
      for (double x : col) mean += x;
      mean /= static_cast<double>(m);
      double var = 0.0;
      for (double x : col) var += (x - mean) * (x - mean);
      var /= static_cast<double>(m);
      if (var > 0.0) by_variance.emplace_back(-var, j);
    }
    std::sort(by_variance.begin(), by_variance.end());

    auto& voters = out.pool.per_view[static_cast<std::size_t>(v)];
    if (by_variance.empty()) {
      // Every feature constant on S1: one constant-output stump, flagged.
      const double c = columns[0][0];
      voters.push_back(Stump{v, 0, c, 1});
      out.degenerate_views.push_back(v);
      continue;
    }
    const int keep = std::min<int>(cfg.max_features_per_view, static_cast<int>(by_variance.size()));
    for (int rank = 0; rank < keep; ++rank) {
      const int j = by_variance[static_cast<std::size_t>(rank)].second;
      std::vector<double> sorted = columns[static_cast<std::size_t>(j)];
      std::sort(sorted.begin(), sorted.end());
      for (int t = 0; t < cfg.stumps_per_feature; ++t) {
        const double quantile =
            static_cast<double>(t + 1) / static_cast<double>(cfg.stumps_per_feature + 1);
        const std::size_t pos = static_cast<std::size_t>(
            std::floor(quantile * static_cast<double>(m - 1)));
        const double threshold = sorted[pos];
        voters.push_back(Stump{v, j, threshold, 1});
        voters.push_back(Stump{v, j, threshold, -1});
      }
    }
  }
  out.pool.validate();
  return out;
}

HierarchicalDistribution learn_posterior(const VoterPool& pool, const MultiviewSample& s2,
                                         const HierarchicalDistribution& prior,
                                         const TrainConfig& cfg, LearnTrace* trace) {
  cfg.validate();
  validate_hierarchy(prior, pool);
  if (s2.examples.empty()) throw EmptySample("learn_posterior on an empty sample");
  LearnTrace local;
  LearnTrace& tr = trace ? *trace : local;
  tr = LearnTrace{};

  if (cfg.optimizer == Optimizer::Uniform) return uniform_hierarchy(pool);

  const VoteTable table = tabulate_votes(pool, s2);
  std::vector<Eigen::VectorXd> vty;
  vty.reserve(table.votes.size());
  for (const auto& votes : table.votes) vty.push_back(votes.transpose() * table.labels);

  EgState st = state_from(prior);

  if (cfg.optimizer == Optimizer::RiskMinimize) {
    descend(table, st, vty, cfg, cfg.max_iters, risk_objective, risk_chain, &tr.objective, {});
    return state_to_dist(st);
  }

  // C-bound minimization. The uniform prior over a polarity-paired pool has
  // margin identically 0 (N = s = 0), where 1 - N^2/s is undefined; a short
  // risk descent first moves to a point where the C-bound objective is
  // finite. If no risk signal exists either, fall back to risk-minimize
  // (the NonFiniteObjective path).
  if (!std::isfinite(cbound_objective(compute_work(table, st)))) {
    int steps = 0;
    const auto escaped = [&](const EgState& cur) {
      ++steps;
      return std::isfinite(cbound_objective(compute_work(table, cur)));
    };
    descend(table, st, vty, cfg, kBootstrapIters, risk_objective, risk_chain, nullptr, escaped);
    tr.bootstrap_steps = steps;
  }
  if (!std::isfinite(cbound_objective(compute_work(table, st)))) {
    tr.fell_back_to_risk_minimize = true;
    descend(table, st, vty, cfg, cfg.max_iters, risk_objective, risk_chain, &tr.objective, {});
    return state_to_dist(st);
  }
  descend(table, st, vty, cfg, cfg.max_iters, cbound_objective, cbound_chain, &tr.objective, {});
  return state_to_dist(st);
}

FusionModel train(const MultiviewSample& sample, const TrainConfig& cfg) {
  cfg.validate();
  sample.validate();
  auto [s1, s2] = split_sample(sample, cfg.s1_fraction, cfg.seed);
  PoolBuild built = build_pool(s1, cfg);

  FusionModel model;
  model.pool = std::move(built.pool);
  model.degenerate_views = std::move(built.degenerate_views);
  model.prior = cfg.prior_path.empty() ? uniform_hierarchy(model.pool)
                                       : load_prior(cfg.prior_path, model.pool);
  model.posterior = learn_posterior(model.pool, s2, model.prior, cfg, &model.trace);
  model.train_profile = risk_profile(model.posterior, model.pool, s2);
  const KlBudget budget = kl_budget(model.posterior, model.prior);
  const BoundInputs inputs{model.train_profile, budget, s2.size(), cfg.delta};
  model.train_report = full_report(
      inputs, cfg.catoni_grid.empty() ? default_catoni_grid() : cfg.catoni_grid, cfg.complexity);
  return model;
}

EvalMetrics evaluate(const FusionModel& model, const MultiviewSample& test) {
  if (test.examples.empty()) throw EmptySample("evaluate on an empty sample");
  const VoteTable table = tabulate_votes(model.pool, test);
  const RiskProfile profile = risk_profile(table, model.posterior);
  const Eigen::VectorXd margin = margins(table, model.posterior);

  std::size_t tp = 0, fp = 0, fn = 0;
  for (Eigen::Index i = 0; i < margin.size(); ++i) {
    const bool predicted_pos = margin[i] >= 0.0;  // sign(0) = +1
    const bool actual_pos = table.labels[i] > 0.0;
    if (predicted_pos && actual_pos) ++tp;
    if (predicted_pos && !actual_pos) ++fp;
    if (!predicted_pos && actual_pos) ++fn;
  }
  EvalMetrics metrics;
  metrics.majority_vote_risk = profile.majority_vote_risk;
  metrics.accuracy = 1.0 - profile.majority_vote_risk;
  const double denom = static_cast<double>(2 * tp + fp + fn);
  metrics.f1 = denom > 0.0 ? 2.0 * static_cast<double>(tp) / denom : 0.0;
  metrics.gibbs_risk = profile.gibbs_risk;
  metrics.disagreement = profile.disagreement;
  metrics.joint_error = profile.joint_error;
  metrics.zero_margin_count = profile.zero_margin_count;
  metrics.factor2_ok = profile.majority_vote_risk <= 2.0 * profile.gibbs_risk + 1e-12;
  return metrics;
}

void save_model(const FusionModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "mvpb-model v1\n";
  out << "views " << model.pool.num_views() << '\n';
  out << "voters";
  for (int v = 0; v < model.pool.num_views(); ++v) out << ' ' << model.pool.num_voters(v);
  out << '\n';
  char buf[64];
  for (const auto& voters : model.pool.per_view)
    for (const Stump& h : voters) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g %d", h.view, h.feature, h.threshold, h.polarity);
      out << buf << '\n';
    }
  out << "posterior\n";
  write_distribution(out, model.posterior);
  out << "prior\n";
  write_distribution(out, model.prior);
}

FusionModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  if (next_line(in, path) != "mvpb-model v1")
    throw ModelVersionMismatch("expected header 'mvpb-model v1' in " + path);

  auto views_toks = split_tokens(next_line(in, path));
  if (views_toks.size() != 2 || views_toks[0] != "views")
    throw IoError("expected 'views <V>' in " + path);
  const int num_views = parse_int_token(views_toks[1], path);
  if (num_views < 1) throw IoError("bad view count in " + path);

  auto voter_toks = split_tokens(next_line(in, path));
  if (voter_toks.size() != static_cast<std::size_t>(num_views) + 1 || voter_toks[0] != "voters")
    throw IoError("expected 'voters <n_1..n_V>' in " + path);
  std::vector<int> voters(static_cast<std::size_t>(num_views));
  for (int v = 0; v < num_views; ++v) {
    voters[static_cast<std::size_t>(v)] = parse_int_token(voter_toks[static_cast<std::size_t>(v) + 1], path);
    if (voters[static_cast<std::size_t>(v)] < 1) throw IoError("bad voter count in " + path);
  }

  FusionModel model;
  model.pool.per_view.resize(static_cast<std::size_t>(num_views));
  for (int v = 0; v < num_views; ++v) {
    auto& list = model.pool.per_view[static_cast<std::size_t>(v)];
    list.reserve(static_cast<std::size_t>(voters[static_cast<std::size_t>(v)]));
    for (int h = 0; h < voters[static_cast<std::size_t>(v)]; ++h) {
      auto toks = split_tokens(next_line(in, path));
      if (toks.size() != 4) throw IoError("expected 'view feature threshold polarity' in " + path);
      Stump stump;
      stump.view = parse_int_token(toks[0], path);
      stump.feature = parse_int_token(toks[1], path);
      stump.threshold = parse_double_token(toks[2], path);
      stump.polarity = parse_int_token(toks[3], path);
      list.push_back(stump);
    }
  }
  model.pool.validate();

  if (next_line(in, path) != "posterior") throw IoError("expected 'posterior' marker in " + path);
  model.posterior = read_distribution(in, voters, path);
  if (next_line(in, path) != "prior") throw IoError("expected 'prior' marker in " + path);
  model.prior = read_distribution(in, voters, path);
  validate_hierarchy(model.posterior, model.pool);
  validate_hierarchy(model.prior, model.pool);
  return model;
}

HierarchicalDistribution load_prior(const std::string& path, const VoterPool& pool) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  if (next_line(in, path) != "mvpb-prior v1")
    throw ModelVersionMismatch("expected header 'mvpb-prior v1' in " + path);
  auto views_toks = split_tokens(next_line(in, path));
  if (views_toks.size() != 2 || views_toks[0] != "views")
    throw IoError("expected 'views <V>' in " + path);
  const int num_views = parse_int_token(views_toks[1], path);
  auto voter_toks = split_tokens(next_line(in, path));
  if (voter_toks.size() != static_cast<std::size_t>(num_views) + 1 || voter_toks[0] != "voters")
    throw IoError("expected 'voters <n_1..n_V>' in " + path);
  std::vector<int> voters(static_cast<std::size_t>(num_views));
  for (int v = 0; v < num_views; ++v)
    voters[static_cast<std::size_t>(v)] = parse_int_token(voter_toks[static_cast<std::size_t>(v) + 1], path);
  HierarchicalDistribution prior = read_distribution(in, voters, path);
  validate_hierarchy(prior, pool);
  return prior;
}

void save_prior(const HierarchicalDistribution& prior, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "mvpb-prior v1\n";
  out << "views " << prior.num_views() << '\n';
  out << "voters";
  for (const auto& qv : prior.per_view) out << ' ' << qv.size();
  out << '\n';
  write_distribution(out, prior);
}

}  // namespace mvpb
