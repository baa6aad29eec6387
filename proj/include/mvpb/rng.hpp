#ifndef MVPB_RNG_HPP
#define MVPB_RNG_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace mvpb {

// Deterministic 64-bit generator used everywhere randomness is part of a
// contract (synthetic data, splits, subsampling, randomized suites).
//
// Algorithm: xoshiro256++ with its state filled by four successive outputs
// of splitmix64(seed). Both are the reference constructions of Blackman and
// Vigna, so streams are reproducible across platforms and compilers.
//
// Derived quantities and their call order are part of the contract:
//   next_uniform()  — one raw draw, top 53 bits, value in [0,1)
//   next_gaussian() — consumes exactly two uniforms u1, u2 and returns
//                     sqrt(-2 ln(1-u1)) * cos(2*pi*u2)   (Box-Muller, cosine
//                     branch only; the sine variate is discarded)
//   next_below(n)   — one raw draw reduced modulo n
//   shuffle(v)      — Fisher-Yates from the back, one next_below per step
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double next_uniform();
  double next_gaussian();
  std::uint64_t next_below(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i + 1));
      std::swap(v[i], v[j]);
    }
  }

  // Stream for independent unit of work i: seed_i = master ^ i, re-expanded
  // through splitmix64.
  static Rng derive(std::uint64_t master, std::uint64_t i) { return Rng(master ^ i); }

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace mvpb

#endif
