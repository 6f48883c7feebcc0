#pragma once

#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string_view>

#include "mulam/vec.hpp"

namespace mulam {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive an independent stream seed from a run seed and a tag string, so
/// each check in a run owns a stable stream regardless of execution order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (char ch : tag) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return splitmix64(h);
}

/// Deterministic RNG. All randomness flows through explicit seeds, and the
/// transforms are implemented here rather than with std:: distribution types
/// so streams are stable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 1.0 - uniform01();  // (0, 1]
    double v = uniform01();
    double m = std::sqrt(-2.0 * std::log(u));
    double ang = 2.0 * std::numbers::pi * v;
    spare_ = m * std::sin(ang);
    have_spare_ = true;
    return m * std::cos(ang);
  }

  /// Unbiased uniform index in [0, n).
  std::size_t index(std::size_t n) {
    if (n == 0) throw InvalidArgumentError("Rng::index: n == 0");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
  }

  bool coin() { return (next_u64() & 1ULL) != 0; }

  Vec normal_vec(std::size_t d) {
    Vec v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = normal();
    return v;
  }

  Vec uniform_vec(std::size_t d, double a, double b) {
    Vec v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = uniform(a, b);
    return v;
  }

  Rng split() { return Rng(splitmix64(next_u64())); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mulam
