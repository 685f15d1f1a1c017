#pragma once

#include <cstdint>
#include <random>

namespace sbfe {

/// One step of SplitMix64; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Independent stream seed for (seed, stream); used to split work across
/// Monte Carlo workers and lemma batches.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Portable seeded generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; the conversions below avoid the
/// implementation-defined std distributions so draws match across platforms.
///
///   engine seed = splitmix64 applied once to `seed`
///   uniform()   = (next() >> 11) * 2^-53, in [0, 1)
///   bernoulli(p)= uniform() < p
///   below(b)    = rejection sampling on next() against the largest multiple of b
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() { return engine_(); }
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sbfe
