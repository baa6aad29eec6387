#include "mvpb/dataio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mvpb/rng.hpp"

namespace mvpb {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Parses one "index:value" token in place; column is 1-based and points at
// the token start for error reporting.
void parse_feature_token(const std::string& token, std::size_t line_no, std::size_t column,
                         int& index, double& value) {
  const std::size_t colon = token.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= token.size())
    throw ParseError("expected index:value, got '" + token + "'", line_no, column);
  const char* begin = token.data();
  auto idx_result = std::from_chars(begin, begin + colon, index);
  if (idx_result.ec != std::errc{} || idx_result.ptr != begin + colon || index < 0)
    throw ParseError("bad feature index in '" + token + "'", line_no, column);
  auto val_result = std::from_chars(begin + colon + 1, begin + token.size(), value);
  if (val_result.ec != std::errc{} || val_result.ptr != begin + token.size() ||
      !std::isfinite(value))
    throw ParseError("bad feature value in '" + token + "'", line_no, column);
}

SparseFeatures parse_feature_line(const std::string& line, std::size_t line_no) {
  SparseFeatures features;
  std::size_t pos = 0;
  int prev_index = -1;
  while (pos < line.size()) {
    if (line[pos] == ' ' || line[pos] == '\t') {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    int index = 0;
    double value = 0.0;
    parse_feature_token(line.substr(pos, end - pos), line_no, pos + 1, index, value);
    if (index <= prev_index)
      throw ParseError("feature indices must be strictly increasing", line_no, pos + 1);
    features.push(index, value);
    prev_index = index;
    pos = end;
  }
  return features;
}

int parse_label_line(const std::string& line, std::size_t line_no) {
  std::size_t begin = line.find_first_not_of(" \t");
  if (begin == std::string::npos) throw ParseError("empty label line", line_no, 1);
  std::size_t end = line.find_last_not_of(" \t") + 1;
  const char* data = line.data();
  int label = 0;
  std::size_t start = begin;
  if (line[start] == '+') ++start;  // from_chars rejects a leading '+'
  auto result = std::from_chars(data + start, data + end, label);
  if (result.ec != std::errc{} || result.ptr != data + end)
    throw ParseError("bad label '" + line.substr(begin, end - begin) + "'", line_no, begin + 1);
  return label;
}

}  // namespace

namespace {

MultiviewSample assemble_sample(const std::vector<std::string>& view_paths,
                                const std::string& label_path, const std::vector<int>& labels) {
  if (view_paths.empty()) throw ShapeMismatch("need at least one view file");
  std::vector<std::vector<std::string>> view_lines;
  view_lines.reserve(view_paths.size());
  for (const auto& path : view_paths) view_lines.push_back(read_lines(path));

  const std::size_t m = labels.size();
  for (std::size_t v = 0; v < view_paths.size(); ++v)
    if (view_lines[v].size() != m)
      throw LineCountMismatch(view_paths[v] + " has " + std::to_string(view_lines[v].size()) +
                              " lines, " + label_path + " has " + std::to_string(m));
  if (m == 0) throw EmptySample("no examples in " + label_path);

  MultiviewSample sample;
  sample.view_dims.assign(view_paths.size(), 0);
  sample.examples.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    MultiviewExample& ex = sample.examples[i];
    ex.views.resize(view_paths.size());
    for (std::size_t v = 0; v < view_paths.size(); ++v) {
      ex.views[v] = parse_feature_line(view_lines[v][i], i + 1);
      sample.view_dims[v] = std::max(sample.view_dims[v], ex.views[v].max_index() + 1);
    }
    if (labels[i] != 1 && labels[i] != -1)
      throw LabelDomainError("label " + std::to_string(labels[i]) + " on line " +
                             std::to_string(i + 1) + " is not -1 or +1");
    ex.label = labels[i];
  }
  for (auto& d : sample.view_dims) d = std::max(d, 1);
  sample.validate();
  return sample;
}

}  // namespace

MultiviewSample load_multiview(const std::vector<std::string>& view_paths,
                               const std::string& label_path) {
  return assemble_sample(view_paths, label_path, load_labels_raw(label_path));
}

MultiviewSample load_multiview_one_vs_all(const std::vector<std::string>& view_paths,
                                          const std::string& label_path, int positive_class) {
  const auto mapped = one_vs_all(load_labels_raw(label_path), positive_class);
  return assemble_sample(view_paths, label_path, mapped);
}

void save_multiview(const MultiviewSample& sample, const std::vector<std::string>& view_paths,
                    const std::string& label_path) {
  if (view_paths.size() != static_cast<std::size_t>(sample.num_views()))
    throw ShapeMismatch("need one output path per view");
  char buf[64];
  for (std::size_t v = 0; v < view_paths.size(); ++v) {
    std::ofstream out(view_paths[v]);
    if (!out) throw IoError("cannot write " + view_paths[v]);
    for (const MultiviewExample& ex : sample.examples) {
      const SparseFeatures& f = ex.views[v];
      for (std::size_t k = 0; k < f.indices.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%d:%.17g", f.indices[k], f.values[k]);
        if (k) out << ' ';
        out << buf;
      }
      out << '\n';
    }
  }
  std::ofstream out(label_path);
  if (!out) throw IoError("cannot write " + label_path);
  for (const MultiviewExample& ex : sample.examples) out << ex.label << '\n';
}

std::vector<int> load_labels_raw(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<int> labels;
  labels.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i)
    labels.push_back(parse_label_line(lines[i], i + 1));
  return labels;
}

std::vector<int> one_vs_all(const std::vector<int>& labels, int positive_class) {
  bool seen = false;
  std::vector<int> mapped;
  mapped.reserve(labels.size());
  for (int label : labels) {
    seen = seen || label == positive_class;
    mapped.push_back(label == positive_class ? 1 : -1);
  }
  if (!seen)
    throw UnknownClass("positive class " + std::to_string(positive_class) +
                       " does not occur in the labels");
  return mapped;
}

void SynthConfig::validate() const {
  if (views < 2) throw DomainError("synthetic data needs at least 2 views");
  if (dims.size() != static_cast<std::size_t>(views))
    throw DomainError("dims must list one dimension per view");
  for (int d : dims)
    if (d < 1) throw DomainError("every view dimension must be >= 1");
  if (!(separation > 0.0)) throw DomainError("separation must be positive");
  if (!(noise > 0.0)) throw DomainError("noise scale must be positive");
  if (!(redundancy >= 0.0 && redundancy <= 1.0)) throw DomainError("redundancy must lie in [0,1]");
  if (!(flip_noise >= 0.0 && flip_noise < 0.5)) throw DomainError("flip_noise must lie in [0,1/2)");
  if (population < 1) throw DomainError("population must be >= 1");
}

MultiviewSample synth_population(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const double shared_scale = std::sqrt(cfg.redundancy);
  const double own_scale = std::sqrt(1.0 - cfg.redundancy);
  const double half_sep = 0.5 * cfg.separation;

  MultiviewSample sample;
  sample.view_dims = cfg.dims;
  sample.examples.resize(cfg.population);
  // Draw order per example: label uniform, shared gaussian, then per view the
  // informative gaussian followed by dim-1 noise gaussians, then one flip
  // uniform (always consumed, even at flip_noise = 0).
  for (std::size_t i = 0; i < cfg.population; ++i) {
    MultiviewExample& ex = sample.examples[i];
    const int y_true = rng.next_uniform() < 0.5 ? 1 : -1;
    const double g_shared = rng.next_gaussian();
    ex.views.resize(static_cast<std::size_t>(cfg.views));
    for (int v = 0; v < cfg.views; ++v) {
      SparseFeatures& f = ex.views[static_cast<std::size_t>(v)];
      const int dim = cfg.dims[static_cast<std::size_t>(v)];
      f.indices.reserve(static_cast<std::size_t>(dim));
      f.values.reserve(static_cast<std::size_t>(dim));
      const double g_own = rng.next_gaussian();
      f.push(0, half_sep * y_true + cfg.noise * (shared_scale * g_shared + own_scale * g_own));
      for (int j = 1; j < dim; ++j) f.push(j, cfg.noise * rng.next_gaussian());
    }
    const bool flip = rng.next_uniform() < cfg.flip_noise;
    ex.label = flip ? -y_true : y_true;
  }
  return sample;
}

MultiviewSample subsample(const MultiviewSample& sample, std::size_t m, std::uint64_t seed,
                          bool stratified) {
  if (m > sample.size())
    throw RequestTooLarge("requested " + std::to_string(m) + " examples from a sample of " +
                          std::to_string(sample.size()));
  if (m == 0) throw EmptySample("cannot subsample zero examples");
  Rng rng(seed);
  std::vector<std::size_t> picked;
  picked.reserve(m);
  if (!stratified) {
    std::vector<std::size_t> order(sample.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    picked.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
  } else {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < sample.size(); ++i)
      (sample.examples[i].label == 1 ? pos : neg).push_back(i);
    rng.shuffle(pos);
    rng.shuffle(neg);
    std::size_t n_pos = static_cast<std::size_t>(std::floor(
        static_cast<double>(m) * static_cast<double>(pos.size()) / static_cast<double>(sample.size()) +
        0.5));
    n_pos = std::min(n_pos, pos.size());
    n_pos = std::max(n_pos, m > neg.size() ? m - neg.size() : std::size_t{0});
    const std::size_t n_neg = m - n_pos;
    picked.assign(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(n_pos));
    picked.insert(picked.end(), neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(n_neg));
  }
  MultiviewSample out;
  out.view_dims = sample.view_dims;
  out.examples.reserve(m);
  for (std::size_t idx : picked) out.examples.push_back(sample.examples[idx]);
  return out;
}

}  // namespace mvpb
