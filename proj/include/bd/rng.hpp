#pragma once

#include <cmath>
#include <cstdint>

namespace bd {

// Counter-based stream: output k is a mix of (key, k), so streams keyed by
// (seed, replica) are independent of evaluation order and of each other.
// Replica results are byte-identical for a given (config, seed) regardless of
// how replicas are scheduled across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(mix(seed + kGolden) ^ mix(stream + kLeaf))) {}

  // Independent child stream (per-particle substreams inside one replica).
  [[nodiscard]] RngStream fork(std::uint64_t child) const {
    return RngStream(key_, child + kFork);
  }

  std::uint64_t next_u64() {
    counter_ += kGolden;
    return mix(key_ ^ counter_);
  }

  // Uniform on [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe under log().
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kLeaf = 0xD1B54A32D192ED03ull;
  static constexpr std::uint64_t kFork = 0x8CB92BA72F3D8DD7ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Exact Poisson sampler (Knuth product method, chunked for large means so the
// running product never underflows).
inline long sample_poisson(RngStream& g, double mean) {
  long k = 0;
  while (mean > 0) {
    const double chunk = mean > 256.0 ? 256.0 : mean;
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double p = 1.0;
    long kk = -1;
    do {
      ++kk;
      p *= g.uniform_pos();
    } while (p > limit);
    k += kk;
  }
  return k;
}

// Binomial(n, p) by n Bernoulli draws; used for thinning couplings where n is
// a small Poisson count.
inline long sample_binomial(RngStream& g, long n, double p) {
  long k = 0;
  for (long j = 0; j < n; ++j) k += g.uniform() < p ? 1 : 0;
  return k;
}

}  // namespace bd
