#ifndef MVPB_DATAIO_HPP
#define MVPB_DATAIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mvpb/hierarchy.hpp"

namespace mvpb {

// Synthetic two-class multiview population. Feature 0 of each view carries
// the class signal at +-separation/2; all other coordinates are pure noise.
// redundancy in [0,1] is the correlation of the informative-coordinate noise
// across views: 1 means every view sees the same draw, 0 independent draws.
struct SynthConfig {
  int views = 3;
  std::vector<int> dims = {8, 8, 8};
  double separation = 10.0;
  double noise = 0.1;
  double redundancy = 0.5;
  double flip_noise = 0.0;  // label flip probability, < 1/2
  std::size_t population = 50000;
  std::uint64_t seed = 1;

  void validate() const;
};

// One file per view (one example per line, space-separated index:value pairs,
// 0-based strictly increasing indices) plus a label file (one integer per
// line, -1 or +1). Line i of every file describes example i.
MultiviewSample load_multiview(const std::vector<std::string>& view_paths,
                               const std::string& label_path);
// Same, but the label file carries arbitrary class ids that are mapped
// one-vs-all against positive_class before assembly.
MultiviewSample load_multiview_one_vs_all(const std::vector<std::string>& view_paths,
                                          const std::string& label_path, int positive_class);
void save_multiview(const MultiviewSample& sample, const std::vector<std::string>& view_paths,
                    const std::string& label_path);

// Label file with arbitrary integer class ids, for one-vs-all mapping.
std::vector<int> load_labels_raw(const std::string& path);
std::vector<int> one_vs_all(const std::vector<int>& labels, int positive_class);

MultiviewSample synth_population(const SynthConfig& cfg);

// Without replacement; deterministic per seed. Stratified keeps class counts
// within +-1 of the exact ratio.
MultiviewSample subsample(const MultiviewSample& sample, std::size_t m, std::uint64_t seed,
                          bool stratified);

}  // namespace mvpb

#endif
