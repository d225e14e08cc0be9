#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace lrsb {

/// Reproducible random source.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Everything layered on top is spelled out here rather than
/// delegated to std::*_distribution (whose algorithms are unspecified):
///   - Uniform01: top 53 bits of one draw, scaled by 2^-53, in [0, 1).
///   - Normal: basic Box-Muller on (1 - u1, u2); both outputs are used,
///     the second one cached for the next call.
///   - UniformIndex: rejection sampling on the top bits (no modulo bias).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  double Uniform01();
  double Normal(double mean = 0.0, double sd = 1.0);
  bool Bernoulli(double p) { return Uniform01() < p; }
  /// Uniform integer in [0, n). Requires n >= 1.
  std::uint64_t UniformIndex(std::uint64_t n);

  /// Fisher-Yates permutation of 0..n-1.
  std::vector<std::size_t> Permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

/// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

/// Derives an independent seed for a named stage: Mix64(seed ^ FNV-1a(stage)).
std::uint64_t StageSeed(std::uint64_t seed, std::string_view stage);

}  // namespace lrsb
