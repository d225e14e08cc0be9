#include "lrsb/random.hpp"

#include <cmath>
#include <numbers>

namespace lrsb {

double Rng::Uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::Normal(double mean, double sd) {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return mean + sd * cached_normal_;
  }
  const double u1 = 1.0 - Uniform01();  // (0, 1]
  const double u2 = Uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return mean + sd * radius * std::cos(angle);
}

std::uint64_t Rng::UniformIndex(std::uint64_t n) {
  if (n <= 1) return 0;
  // Smallest mask covering n - 1, then reject out-of-range draws.
  std::uint64_t mask = n - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  while (true) {
    const std::uint64_t v = engine_() & mask;
    if (v < n) return v;
  }
}

std::vector<std::size_t> Rng::Permutation(std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(UniformIndex(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t StageSeed(std::uint64_t seed, std::string_view stage) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stage) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return Mix64(seed ^ h);
}

}  // namespace lrsb
