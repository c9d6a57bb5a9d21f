#pragma once

#include <cstdint>

namespace cocoa {

// Derives the stream key for worker `worker` at round `round` of a run seeded
// with `seed`. Workers draw from disjoint streams, so rounds are reproducible
// regardless of how the workers are scheduled onto threads.
std::uint64_t rng_key(std::uint64_t seed, std::uint64_t round, std::uint64_t worker);

// xoshiro256++ with splitmix64 state expansion. Self-contained so that runs
// are bit-reproducible across standard libraries (std::uniform_*_distribution
// is not specified tightly enough for that).
class Rng {
 public:
  explicit Rng(std::uint64_t key);

  std::uint64_t next();

  // Uniform integer in [0, bound), unbiased via rejection. bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cocoa
