#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hampack {

// Counter-based splitmix64 stream. The i-th output is mix(key + i*gamma),
// so a stream is a pure function of (seed, substream path) and replays
// identically regardless of interleaving with sibling streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ kSeedSalt)) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t x = next_u64();
      if (x >= threshold) return x % bound;
    }
  }

  // Inclusive bounds.
  int uniform_int(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("Rng::uniform_int: empty range");
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Independent child stream selected by id.
  Rng substream(std::uint64_t id) const { return Rng(key_ ^ mix(id + kStreamSalt)); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  // Uniform permutation of {1,...,n}.
  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    shuffle(p);
    return p;
  }

  static constexpr std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }

 private:
  explicit Rng() = default;

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSeedSalt = 0x243f6a8885a308d3ULL;
  static constexpr std::uint64_t kStreamSalt = 0x452821e638d01377ULL;
};

}  // namespace hampack
