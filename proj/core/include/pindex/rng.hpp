#pragma once

#include <cstdint>
#include <random>

#include "pindex/types.hpp"

namespace pindex {

// Reproducible random source. The normal sampler is a fixed inverse-CDF
// implementation so that streams are identical across platforms and standard
// library versions; std::normal_distribution is implementation-defined and
// cannot be used for seeded studies.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  // Uniform on [0,1) with 53 random bits.
  double uniform();
  // Uniform on (lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via the inverse CDF applied to a (0,1) uniform.
  double normal();

  std::uint64_t next_u64();

private:
  std::mt19937_64 engine_;
};

// Derives the engine seed for one replication: base + index, scrambled so
// that consecutive seeds give unrelated streams.
std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t index);

// splitmix64 step; exposed for tests.
std::uint64_t splitmix64(std::uint64_t x);

// Inverse standard-normal CDF (Wichura's double-precision rational
// approximation). Accurate to ~1e-15 over (0,1); exposed for tests.
double normal_quantile(double p);

}  // namespace pindex
