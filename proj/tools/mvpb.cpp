// mvpb command line: synth / train / eval / bounds / verify.
// Exit codes: 0 success, 1 verification failure, 2 usage or IO error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "mvpb/bounds.hpp"
#include "mvpb/dataio.hpp"
#include "mvpb/estimators.hpp"
#include "mvpb/fusion.hpp"
#include "mvpb/oracle.hpp"
#include "mvpb/rng.hpp"

using json = nlohmann::json;

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// key: value lines with two-space nesting.
class Report {
 public:
  void section(const std::string& name) {
    out_ << name << ":\n";
    indent_ = 2;
  }
  void top(const std::string& key, const std::string& value) {
    indent_ = 0;
    kv(key, value);
  }
  void kv(const std::string& key, const std::string& value) {
    out_ << std::string(static_cast<std::size_t>(indent_), ' ') << key << ": " << value << '\n';
  }
  void kv(const std::string& key, double value) { kv(key, fmt(value)); }
  void kv(const std::string& key, std::size_t value) { kv(key, std::to_string(value)); }
  void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }
  void raw(const std::string& line) { out_ << line << '\n'; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  int indent_ = 0;
};

void emit(const Report& report, const std::string& path) {
  std::cout << report.str();
  if (!path.empty()) {
    std::ofstream out(path);
    if (!out) throw mvpb::IoError("cannot write " + path);
    out << report.str();
  }
}

void write_json(const json& j, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw mvpb::IoError("cannot write " + path);
  out << j.dump(2) << '\n';
}

json profile_json(const mvpb::RiskProfile& p) {
  json j;
  j["gibbs_risk"] = p.gibbs_risk;
  j["disagreement"] = p.disagreement;
  j["joint_error"] = p.joint_error;
  j["majority_vote_risk"] = p.majority_vote_risk;
  j["per_view_gibbs"] = std::vector<double>(p.per_view_gibbs.begin(), p.per_view_gibbs.end());
  j["per_view_disagreement"] =
      std::vector<double>(p.per_view_disagreement.begin(), p.per_view_disagreement.end());
  j["m"] = p.m;
  j["zero_margin_count"] = p.zero_margin_count;
  return j;
}

json kl_json(const mvpb::KlBudget& b) {
  return json{{"expected_view_kl", b.expected_view_kl}, {"hyper_kl", b.hyper_kl}, {"total", b.total}};
}

json bound_json(const mvpb::BoundReport& r) {
  json j;
  j["mcallester"] = r.mcallester;
  j["catoni"] = r.catoni;
  j["catoni_c"] = r.catoni_c;
  j["seeger"] = r.seeger;
  j["gibbs_upper"] = r.gibbs_upper;
  j["mv_factor2_upper"] = r.mv_factor2_upper;
  j["cbound"] = json{{"value", r.cbound.value}, {"vacuous", r.cbound.vacuous}};
  j["intermediates"] = r.intermediates;
  return j;
}

void profile_report(Report& rep, const mvpb::RiskProfile& p) {
  rep.section("risk_profile");
  rep.kv("gibbs_risk", p.gibbs_risk);
  rep.kv("disagreement", p.disagreement);
  rep.kv("joint_error", p.joint_error);
  rep.kv("majority_vote_risk", p.majority_vote_risk);
  for (Eigen::Index v = 0; v < p.per_view_gibbs.size(); ++v) {
    rep.kv("per_view_gibbs_" + std::to_string(v), p.per_view_gibbs[v]);
    rep.kv("per_view_disagreement_" + std::to_string(v), p.per_view_disagreement[v]);
  }
  rep.kv("m", p.m);
  rep.kv("zero_margin_count", p.zero_margin_count);
}

void kl_report(Report& rep, const mvpb::KlBudget& b) {
  rep.section("kl_budget");
  rep.kv("expected_view_kl", b.expected_view_kl);
  rep.kv("hyper_kl", b.hyper_kl);
  rep.kv("total", b.total);
}

void bounds_section(Report& rep, const mvpb::BoundReport& r) {
  rep.section("bounds");
  rep.kv("mcallester", r.mcallester);
  rep.kv("catoni", r.catoni);
  rep.kv("catoni_c", r.catoni_c);
  rep.kv("seeger", r.seeger);
  rep.kv("gibbs_upper", r.gibbs_upper);
  rep.kv("mv_factor2_upper", r.mv_factor2_upper);
  rep.kv("cbound", r.cbound.vacuous ? std::string("vacuous") : fmt(r.cbound.value));
  rep.section("intermediates");
  for (const auto& [key, value] : r.intermediates) rep.kv(key, value);
}

// ---------------------------------------------------------------------------
// Shared option bundles

struct DataOpts {
  std::vector<std::string> view_paths;
  std::string label_path;
  int positive_class = 0;
};

void add_data_options(CLI::App* cmd, DataOpts& opts) {
  cmd->add_option("--view", opts.view_paths, "view feature file (repeat per view)")
      ->required()
      ->expected(-1);
  cmd->add_option("--labels", opts.label_path, "label file")->required();
  cmd->add_option("--positive-class", opts.positive_class,
                  "map raw class ids one-vs-all against this id");
}

mvpb::MultiviewSample load_data(const CLI::App* cmd, const DataOpts& opts) {
  if (cmd->count("--positive-class") > 0)
    return mvpb::load_multiview_one_vs_all(opts.view_paths, opts.label_path, opts.positive_class);
  return mvpb::load_multiview(opts.view_paths, opts.label_path);
}

struct TrainOpts {
  mvpb::TrainConfig cfg;
  std::string optimizer = "cbound-minimize";
  bool xi_variant = false;
};

void add_train_options(CLI::App* cmd, TrainOpts& opts) {
  cmd->add_option("--split-ratio", opts.cfg.s1_fraction, "fraction of S assigned to S1 (default 3/5)");
  cmd->add_option("--stumps-per-feature", opts.cfg.stumps_per_feature, "quantile thresholds per feature");
  cmd->add_option("--max-features", opts.cfg.max_features_per_view, "features kept per view");
  cmd->add_option("--optimizer", opts.optimizer, "cbound-minimize | uniform | risk-minimize")
      ->check(CLI::IsMember({"cbound-minimize", "uniform", "risk-minimize"}));
  cmd->add_option("--learning-rate", opts.cfg.learning_rate, "EG step size before backtracking");
  cmd->add_option("--max-iters", opts.cfg.max_iters, "maximum accepted EG iterations");
  cmd->add_option("--tol", opts.cfg.tol, "stop when the objective decrease falls below this");
  cmd->add_option("--seed", opts.cfg.seed, "split seed");
  cmd->add_option("--delta", opts.cfg.delta, "confidence parameter in (0,1]");
  cmd->add_option("--prior", opts.cfg.prior_path, "informative prior file (mvpb-prior v1)");
  cmd->add_flag("--xi-variant", opts.xi_variant, "use ln(xi(m)/delta) in the Seeger bound");
}

mvpb::TrainConfig finish_train_config(const TrainOpts& opts) {
  mvpb::TrainConfig cfg = opts.cfg;
  if (opts.optimizer == "uniform")
    cfg.optimizer = mvpb::Optimizer::Uniform;
  else if (opts.optimizer == "risk-minimize")
    cfg.optimizer = mvpb::Optimizer::RiskMinimize;
  else
    cfg.optimizer = mvpb::Optimizer::CboundMinimize;
  cfg.complexity = opts.xi_variant ? mvpb::ComplexityTerm::XiM : mvpb::ComplexityTerm::TwoSqrtM;
  return cfg;
}

void config_echo(Report& rep, const mvpb::TrainConfig& cfg, const TrainOpts& opts) {
  rep.section("config");
  rep.kv("split_ratio", cfg.s1_fraction);
  rep.kv("stumps_per_feature", cfg.stumps_per_feature);
  rep.kv("max_features_per_view", cfg.max_features_per_view);
  rep.kv("optimizer", opts.optimizer);
  rep.kv("learning_rate", cfg.learning_rate);
  rep.kv("max_iters", cfg.max_iters);
  rep.kv("tol", cfg.tol);
  rep.kv("seed", cfg.seed);
  rep.kv("delta", cfg.delta);
  rep.kv("complexity_term", opts.xi_variant ? "xi" : "2sqrt(m)");
  rep.kv("prior", cfg.prior_path.empty() ? std::string("uniform") : cfg.prior_path);
}

// ---------------------------------------------------------------------------
// synth

struct SynthOpts {
  mvpb::SynthConfig cfg;
  std::string out_prefix;
  std::string manifest_in;
};

std::vector<std::string> view_paths_for(const std::string& prefix, int views) {
  std::vector<std::string> paths;
  for (int v = 0; v < views; ++v) paths.push_back(prefix + "_view" + std::to_string(v) + ".txt");
  return paths;
}

int run_synth(SynthOpts& opts) {
  if (!opts.manifest_in.empty()) {
    std::ifstream in(opts.manifest_in);
    if (!in) throw mvpb::IoError("cannot open " + opts.manifest_in);
    const json manifest = json::parse(in);
    opts.cfg.views = manifest.at("views").get<int>();
    opts.cfg.dims = manifest.at("dims").get<std::vector<int>>();
    opts.cfg.separation = manifest.at("separation").get<double>();
    opts.cfg.noise = manifest.at("noise").get<double>();
    opts.cfg.redundancy = manifest.at("redundancy").get<double>();
    opts.cfg.flip_noise = manifest.at("flip_noise").get<double>();
    opts.cfg.population = manifest.at("population").get<std::size_t>();
    opts.cfg.seed = manifest.at("seed").get<std::uint64_t>();
  }
  if (opts.cfg.dims.size() == 1 && opts.cfg.views > 1)
    opts.cfg.dims.assign(static_cast<std::size_t>(opts.cfg.views), opts.cfg.dims[0]);
  opts.cfg.validate();

  const auto sample = mvpb::synth_population(opts.cfg);
  const auto views = view_paths_for(opts.out_prefix, opts.cfg.views);
  const std::string labels = opts.out_prefix + "_labels.txt";
  mvpb::save_multiview(sample, views, labels);

  json manifest;
  manifest["views"] = opts.cfg.views;
  manifest["dims"] = opts.cfg.dims;
  manifest["separation"] = opts.cfg.separation;
  manifest["noise"] = opts.cfg.noise;
  manifest["redundancy"] = opts.cfg.redundancy;
  manifest["flip_noise"] = opts.cfg.flip_noise;
  manifest["population"] = opts.cfg.population;
  manifest["seed"] = opts.cfg.seed;
  manifest["view_files"] = views;
  manifest["label_file"] = labels;
  std::ofstream out(opts.out_prefix + "_manifest.json");
  if (!out) throw mvpb::IoError("cannot write " + opts.out_prefix + "_manifest.json");
  out << manifest.dump(2) << '\n';

  std::cout << "wrote " << views.size() << " view files, " << labels << ", and manifest\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train

int run_train(const CLI::App* cmd, const DataOpts& data_opts, const TrainOpts& train_opts,
              const std::string& model_out, const std::string& report_out,
              const std::string& json_out) {
  const auto sample = load_data(cmd, data_opts);
  const auto cfg = finish_train_config(train_opts);
  const auto model = mvpb::train(sample, cfg);
  mvpb::save_model(model, model_out);

  const mvpb::KlBudget budget = mvpb::kl_budget(model.posterior, model.prior);
  Report rep;
  rep.top("report", "train");
  rep.top("model_file", model_out);
  config_echo(rep, cfg, train_opts);
  rep.section("learning");
  rep.kv("bootstrap_steps", model.trace.bootstrap_steps);
  rep.kv("accepted_iterations", model.trace.objective.size());
  rep.kv("fell_back_to_risk_minimize", model.trace.fell_back_to_risk_minimize ? "true" : "false");
  if (!model.trace.objective.empty()) rep.kv("final_objective", model.trace.objective.back());
  if (!model.degenerate_views.empty()) {
    std::string views;
    for (int v : model.degenerate_views) views += (views.empty() ? "" : " ") + std::to_string(v);
    rep.kv("degenerate_views", views);
  }
  profile_report(rep, model.train_profile);
  kl_report(rep, budget);
  bounds_section(rep, model.train_report);
  emit(rep, report_out);

  json j;
  j["report"] = "train";
  j["risk_profile"] = profile_json(model.train_profile);
  j["kl_budget"] = kl_json(budget);
  j["bounds"] = bound_json(model.train_report);
  j["seed"] = cfg.seed;
  write_json(j, json_out);
  return 0;
}

// ---------------------------------------------------------------------------
// eval

int run_eval(const CLI::App* cmd, const DataOpts& data_opts, const std::string& model_path,
             const std::string& report_out, const std::string& json_out) {
  const auto model = mvpb::load_model(model_path);
  const auto sample = load_data(cmd, data_opts);
  const auto metrics = mvpb::evaluate(model, sample);

  Report rep;
  rep.top("report", "eval");
  rep.top("model_file", model_path);
  rep.section("metrics");
  rep.kv("accuracy", metrics.accuracy);
  rep.kv("f1", metrics.f1);
  rep.kv("majority_vote_risk", metrics.majority_vote_risk);
  rep.kv("gibbs_risk", metrics.gibbs_risk);
  rep.kv("disagreement", metrics.disagreement);
  rep.kv("joint_error", metrics.joint_error);
  rep.kv("zero_margin_count", metrics.zero_margin_count);
  rep.kv("factor2_ok", metrics.factor2_ok ? "true" : "false");
  emit(rep, report_out);

  json j;
  j["report"] = "eval";
  j["accuracy"] = metrics.accuracy;
  j["f1"] = metrics.f1;
  j["majority_vote_risk"] = metrics.majority_vote_risk;
  j["gibbs_risk"] = metrics.gibbs_risk;
  j["disagreement"] = metrics.disagreement;
  j["joint_error"] = metrics.joint_error;
  j["zero_margin_count"] = metrics.zero_margin_count;
  j["factor2_ok"] = metrics.factor2_ok;
  write_json(j, json_out);
  return 0;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsOpts {
  std::string model_path;
  double disagreement = -1.0;
  double joint_error = -1.0;
  double expected_view_kl = 0.0;
  double hyper_kl = 0.0;
  std::size_t m = 0;
  double delta = 0.05;
  bool xi_variant = false;
  std::vector<double> catoni_grid;
  std::vector<std::size_t> sweep_m;
};

int run_bounds(const CLI::App* cmd, const DataOpts& data_opts, BoundsOpts& opts,
               const std::string& report_out, const std::string& json_out) {
  mvpb::RiskProfile profile;
  mvpb::KlBudget budget;
  std::size_t m = 0;
  const bool from_model = !opts.model_path.empty();

  Report rep;
  rep.top("report", "bounds");
  if (from_model) {
    if (data_opts.view_paths.empty() || data_opts.label_path.empty())
      throw mvpb::DomainError("--model mode needs --view and --labels");
    const auto model = mvpb::load_model(opts.model_path);
    const auto sample = load_data(cmd, data_opts);
    profile = mvpb::risk_profile(model.posterior, model.pool, sample);
    budget = mvpb::kl_budget(model.posterior, model.prior);
    m = sample.size();
    rep.top("model_file", opts.model_path);
  } else {
    if (opts.disagreement < 0.0 || opts.joint_error < 0.0 || opts.m == 0)
      throw mvpb::DomainError(
          "direct mode needs --disagreement, --joint-error and --m (or use --model with data)");
    profile.disagreement = opts.disagreement;
    profile.joint_error = opts.joint_error;
    profile.gibbs_risk = 0.5 * opts.disagreement + opts.joint_error;
    profile.m = opts.m;
    budget.expected_view_kl = opts.expected_view_kl;
    budget.hyper_kl = opts.hyper_kl;
    budget.total = opts.expected_view_kl + opts.hyper_kl;
    m = opts.m;
  }

  const auto grid = opts.catoni_grid.empty() ? mvpb::default_catoni_grid() : opts.catoni_grid;
  const auto term = opts.xi_variant ? mvpb::ComplexityTerm::XiM : mvpb::ComplexityTerm::TwoSqrtM;
  const mvpb::BoundInputs inputs{profile, budget, m, opts.delta};
  const auto report = mvpb::full_report(inputs, grid, term);

  rep.top("delta", fmt(opts.delta));
  rep.top("complexity_term", opts.xi_variant ? "xi" : "2sqrt(m)");
  profile_report(rep, profile);
  kl_report(rep, budget);
  bounds_section(rep, report);

  if (!opts.sweep_m.empty()) {
    rep.section("sweep_csv");
    rep.raw("  m,mcallester,catoni,seeger,mv_factor2,cbound");
    for (std::size_t sweep : opts.sweep_m) {
      mvpb::BoundInputs swept{profile, budget, sweep, opts.delta};
      const auto r = mvpb::full_report(swept, grid, term);
      rep.raw("  " + std::to_string(sweep) + "," + fmt(r.mcallester) + "," + fmt(r.catoni) + "," +
              fmt(r.seeger) + "," + fmt(r.mv_factor2_upper) + "," +
              (r.cbound.vacuous ? "vacuous" : fmt(r.cbound.value)));
    }
  }
  emit(rep, report_out);

  json j;
  j["report"] = "bounds";
  j["risk_profile"] = profile_json(profile);
  j["kl_budget"] = kl_json(budget);
  j["bounds"] = bound_json(report);
  write_json(j, json_out);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  int instances = 200;
  int trials = 200;
  std::size_t population = 50000;
  std::size_t m = 100;
  double delta = 0.05;
  std::uint64_t seed = 7;
  bool quick = false;
  bool inject_fault = false;
};

struct SuiteResult {
  bool pass = true;
  std::vector<std::string> lines;

  void check(const std::string& name, bool ok, const std::string& details) {
    lines.push_back(std::string(ok ? "PASS " : "FAIL ") + name + ": " + details);
    pass = pass && ok;
  }
};

// Same small-instance generator as the test suites: V <= 3, n_v <= 4, m <= 8.
struct SmallInstance {
  mvpb::MultiviewSample sample;
  mvpb::VoterPool pool;
  mvpb::HierarchicalDistribution dist;
};

SmallInstance random_small_instance(mvpb::Rng& rng) {
  SmallInstance inst;
  const int num_views = 1 + static_cast<int>(rng.next_below(3));
  const std::size_t m = 1 + rng.next_below(8);
  std::vector<int> dims(static_cast<std::size_t>(num_views));
  for (auto& d : dims) d = 1 + static_cast<int>(rng.next_below(3));
  inst.sample.view_dims = dims;
  inst.sample.examples.resize(m);
  for (auto& ex : inst.sample.examples) {
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
    for (int h = 0; h < n_v; ++h)
      inst.pool.per_view[static_cast<std::size_t>(v)].push_back(mvpb::Stump{
          v, static_cast<int>(rng.next_below(static_cast<std::uint64_t>(dims[static_cast<std::size_t>(v)]))),
          3.0 * rng.next_uniform() - 1.5, rng.next_uniform() < 0.5 ? 1 : -1});
    Eigen::VectorXd raw(n_v);
    for (int h = 0; h < n_v; ++h) raw[h] = rng.next_uniform() + 0.01;
    inst.dist.per_view[static_cast<std::size_t>(v)] = mvpb::Categorical::normalized(raw);
  }
  Eigen::VectorXd raw(num_views);
  for (int v = 0; v < num_views; ++v) raw[v] = rng.next_uniform() + 0.01;
  inst.dist.hyper = mvpb::Categorical::normalized(raw);
  return inst;
}

int run_verify(const VerifyOpts& opts) {
  VerifyOpts scaled = opts;
  if (opts.quick) {
    scaled.instances = 60;
    scaled.trials = 40;
    scaled.population = 4000;
  }
  if (scaled.trials < 30) throw mvpb::DomainError("--trials must be at least 30");
  mvpb::detail::fault_invert_joint_error.store(opts.inject_fault);

  SuiteResult result;
  mvpb::Rng rng(scaled.seed);

  // Suite 1: fast estimators vs brute-force oracle, plus the structural
  // identities, on random small instances.
  {
    double worst = 0.0;
    bool identities = true;
    for (int i = 0; i < scaled.instances; ++i) {
      const auto inst = random_small_instance(rng);
      const auto profile = mvpb::risk_profile(inst.dist, inst.pool, inst.sample);
      worst = std::max(worst, std::abs(profile.gibbs_risk -
                                       mvpb::brute_gibbs(inst.dist, inst.pool, inst.sample)));
      worst = std::max(worst, std::abs(profile.disagreement -
                                       mvpb::brute_disagreement(inst.dist, inst.pool, inst.sample)));
      worst = std::max(worst, std::abs(profile.joint_error -
                                       mvpb::brute_joint_error(inst.dist, inst.pool, inst.sample)));
      identities = identities &&
                   std::abs(profile.gibbs_risk -
                            (0.5 * profile.disagreement + profile.joint_error)) <= 1e-12 &&
                   profile.majority_vote_risk <= 2.0 * profile.gibbs_risk + 1e-12 &&
                   profile.disagreement >=
                       inst.dist.hyper.w.dot(profile.per_view_disagreement) - 1e-12;
    }
    result.check("oracle-agreement", worst <= 1e-12,
                 "max |fast - brute| = " + fmt(worst) + " over " +
                     std::to_string(scaled.instances) + " instances");
    result.check("structural-identities", identities,
                 "decomposition, factor-2, Jensen step on the same instances");
  }

  // Suite 2: kl machinery.
  {
    double worst = 0.0;
    for (double a = 0.0; a <= 0.451; a += 0.05)
      for (double c = 0.001; c <= 1.0; c *= 2.0) {
        const double b = mvpb::binary_kl_inverse_upper(a, c);
        if (b < 1.0) worst = std::max(worst, std::abs(mvpb::binary_kl(a, b) - c));
      }
    result.check("kl-round-trip", worst <= 1e-8, "max |kl(a, klinv(a,c)) - c| = " + fmt(worst));

    bool xi_ok = std::abs(mvpb::xi(1) - 2.0) <= 1e-12 && std::abs(mvpb::xi(2) - 2.5) <= 1e-12;
    const std::size_t xi_limit = scaled.quick ? 2000 : 20000;
    for (std::size_t m = 1; m <= xi_limit && xi_ok; ++m)
      xi_ok = mvpb::xi(static_cast<std::int64_t>(m)) <= 2.0 * std::sqrt(static_cast<double>(m));
    for (std::int64_t m : {50000, 100000})
      xi_ok = xi_ok && mvpb::xi(m) <= 2.0 * std::sqrt(static_cast<double>(m));
    result.check("xi-bound", xi_ok, "xi(m) <= 2 sqrt(m), exact at m=1,2");

    bool pinsker = true;
    for (int i = 0; i < 1000; ++i) {
      mvpb::BoundInputs in;
      in.profile.disagreement = rng.next_uniform();
      in.profile.joint_error = rng.next_uniform() * (1.0 - 0.5 * in.profile.disagreement);
      in.kl.total = 3.0 * rng.next_uniform();
      in.m = 1 + rng.next_below(10000);
      in.delta = 0.01 + 0.99 * rng.next_uniform();
      pinsker = pinsker && mvpb::seeger_bound(in) <= mvpb::mcallester_bound(in) + 1e-12;
    }
    result.check("pinsker-ordering", pinsker, "seeger <= mcallester on 1000 random inputs");
  }

  // Suite 3: Monte-Carlo bound soundness on a synthetic population.
  {
    mvpb::SynthConfig cfg;
    cfg.views = 3;
    cfg.dims = {8, 8, 8};
    cfg.separation = 2.0;
    cfg.noise = 1.0;
    cfg.redundancy = 0.5;
    cfg.flip_noise = 0.1;
    cfg.population = scaled.population;
    cfg.seed = scaled.seed;

    const double tolerance =
        scaled.delta + 3.0 * std::sqrt(scaled.delta * (1.0 - scaled.delta) /
                                       static_cast<double>(scaled.trials));
    for (auto rule : {mvpb::PosteriorRule::Uniform, mvpb::PosteriorRule::CboundMinimize,
                      mvpb::PosteriorRule::RiskMinimize}) {
      const auto rep = mvpb::bound_soundness_trial(cfg, scaled.m, scaled.delta, scaled.trials, rule,
                                                   scaled.seed);
      const std::string name = mvpb::posterior_rule_name(rule);
      const double worst_violation = std::max(
          {rep.violation_mcallester, rep.violation_catoni, rep.violation_seeger});
      result.check("soundness-violation-" + name, worst_violation <= tolerance,
                   "worst violation rate " + fmt(worst_violation) + " <= " + fmt(tolerance));
      const bool expectation = rep.mean_mcallester >= rep.mean_true_gibbs &&
                               rep.mean_catoni >= rep.mean_true_gibbs &&
                               rep.mean_seeger >= rep.mean_true_gibbs;
      result.check("soundness-expectation-" + name, expectation,
                   "mean bound >= mean true Gibbs risk (" + fmt(rep.mean_true_gibbs) + ")");
      result.check("disagreement-coverage-" + name, rep.disagreement_coverage >= 0.95,
                   "coverage " + fmt(rep.disagreement_coverage));

      const auto plugin = mvpb::bound_soundness_trial(cfg, scaled.m, 1.0, scaled.trials, rule,
                                                      scaled.seed);
      const bool plugin_expectation = plugin.mean_mcallester >= plugin.mean_true_gibbs &&
                                      plugin.mean_catoni >= plugin.mean_true_gibbs &&
                                      plugin.mean_seeger >= plugin.mean_true_gibbs;
      result.check("soundness-expectation-delta1-" + name, plugin_expectation,
                   "delta=1 plug-in reading holds in trial means");
    }
  }

  mvpb::detail::fault_invert_joint_error.store(false);
  for (const auto& line : result.lines) std::cout << line << '\n';
  std::cout << (result.pass ? "VERIFY PASS" : "VERIFY FAIL") << '\n';
  return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical PAC-Bayesian bounds and late-fusion majority votes over multiview data"};
  app.require_subcommand(1);

  // synth
  SynthOpts synth_opts;
  auto* synth = app.add_subcommand("synth", "generate a synthetic multiview population");
  synth->add_option("--out-prefix", synth_opts.out_prefix, "output path prefix")->required();
  synth->add_option("--views", synth_opts.cfg.views, "number of views");
  synth->add_option("--dims", synth_opts.cfg.dims, "per-view dimensions")->delimiter(',');
  synth->add_option("--separation", synth_opts.cfg.separation, "class center separation");
  synth->add_option("--noise", synth_opts.cfg.noise, "per-view noise scale");
  synth->add_option("--redundancy", synth_opts.cfg.redundancy, "cross-view signal correlation in [0,1]");
  synth->add_option("--flip-noise", synth_opts.cfg.flip_noise, "label flip probability in [0,1/2)");
  synth->add_option("--population", synth_opts.cfg.population, "number of examples");
  synth->add_option("--seed", synth_opts.cfg.seed, "generator seed");
  synth->add_option("--from-manifest", synth_opts.manifest_in, "regenerate from a manifest file");

  // train
  DataOpts train_data;
  TrainOpts train_opts;
  std::string model_out, train_report_out, train_json_out;
  auto* train = app.add_subcommand("train", "two-level late-fusion training");
  add_data_options(train, train_data);
  add_train_options(train, train_opts);
  train->add_option("--model-out", model_out, "model file to write")->required();
  train->add_option("--report-out", train_report_out, "also write the text report here");
  train->add_option("--json-out", train_json_out, "write a JSON report here");

  // eval
  DataOpts eval_data;
  std::string eval_model, eval_report_out, eval_json_out;
  auto* eval = app.add_subcommand("eval", "evaluate a model on a test sample");
  add_data_options(eval, eval_data);
  eval->add_option("--model", eval_model, "model file")->required();
  eval->add_option("--report-out", eval_report_out, "also write the text report here");
  eval->add_option("--json-out", eval_json_out, "write a JSON report here");

  // bounds
  DataOpts bounds_data;
  BoundsOpts bounds_opts;
  std::string bounds_report_out, bounds_json_out;
  auto* bounds = app.add_subcommand("bounds", "evaluate all bounds on a profile or model+data");
  bounds->add_option("--model", bounds_opts.model_path, "model file (with --view/--labels)");
  bounds->add_option("--view", bounds_data.view_paths, "view feature file (repeat per view)")
      ->expected(-1);
  bounds->add_option("--labels", bounds_data.label_path, "label file");
  bounds->add_option("--positive-class", bounds_data.positive_class,
                     "map raw class ids one-vs-all against this id");
  bounds->add_option("--disagreement", bounds_opts.disagreement, "empirical disagreement (direct mode)");
  bounds->add_option("--joint-error", bounds_opts.joint_error, "empirical joint error (direct mode)");
  bounds->add_option("--expected-view-kl", bounds_opts.expected_view_kl, "E_v KL(Q_v||P_v)");
  bounds->add_option("--hyper-kl", bounds_opts.hyper_kl, "KL(rho||pi)");
  bounds->add_option("--m", bounds_opts.m, "sample size (direct mode)");
  bounds->add_option("--delta", bounds_opts.delta, "confidence parameter in (0,1]");
  bounds->add_flag("--xi-variant", bounds_opts.xi_variant, "use ln(xi(m)/delta) in the Seeger bound");
  bounds->add_option("--catoni-grid", bounds_opts.catoni_grid, "C grid")->delimiter(',');
  bounds->add_option("--sweep-m", bounds_opts.sweep_m, "emit a CSV table over these m")->delimiter(',');
  bounds->add_option("--report-out", bounds_report_out, "also write the text report here");
  bounds->add_option("--json-out", bounds_json_out, "write a JSON report here");

  // verify
  VerifyOpts verify_opts;
  auto* verify = app.add_subcommand("verify", "run the oracle and soundness suites");
  verify->add_option("--instances", verify_opts.instances, "random small instances");
  verify->add_option("--trials", verify_opts.trials, "Monte-Carlo trials (min 30)");
  verify->add_option("--population", verify_opts.population, "synthetic population size");
  verify->add_option("--m", verify_opts.m, "per-trial sample size");
  verify->add_option("--delta", verify_opts.delta, "confidence parameter");
  verify->add_option("--seed", verify_opts.seed, "master seed");
  verify->add_flag("--quick", verify_opts.quick, "reduced scale");
  verify->add_flag("--inject-fault", verify_opts.inject_fault)->group("");  // test hook, hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (synth->parsed()) return run_synth(synth_opts);
    if (train->parsed())
      return run_train(train, train_data, train_opts, model_out, train_report_out, train_json_out);
    if (eval->parsed()) return run_eval(eval, eval_data, eval_model, eval_report_out, eval_json_out);
    if (bounds->parsed())
      return run_bounds(bounds, bounds_data, bounds_opts, bounds_report_out, bounds_json_out);
    if (verify->parsed()) return run_verify(verify_opts);
  } catch (const mvpb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
