#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace mcpde {

// Counter-based generator: output n of a stream is mix(key + n*phi), the
// SplitMix64 sequence anchored at `key`. State is two u64 words, so streams
// fork cheaply and serialize bit-exactly, and stepping walkers in parallel
// gives the same draws as stepping them serially.
class Rng {
 public:
  Rng() = default;
  Rng(std::uint64_t key, std::uint64_t counter) : key_(key), ctr_(counter) {}

  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(mix(mix(seed + kPhi) ^ mix(stream_id + 0x94d049bb133111ebULL)), 0);
  }

  std::uint64_t next_u64() { return mix(key_ + (++ctr_) * kPhi); }

  // [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Box-Muller pair; two-dimensional steps consume exactly one call.
  std::pair<double, double> normal2() {
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform01();
    double rad = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * std::numbers::pi * u2;
    return {rad * std::cos(ang), rad * std::sin(ang)};
  }
  double normal() { return normal2().first; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return ctr_; }

 private:
  static constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t ctr_ = 0;
};

// Stream id namespaces, so adding one consumer never shifts another's draws.
namespace rng_stream {
inline constexpr std::uint64_t walker(std::uint64_t i) { return i; }
inline constexpr std::uint64_t param_walker(std::uint64_t i) { return (1ULL << 40) | i; }
inline constexpr std::uint64_t boundary() { return 2ULL << 40; }
inline constexpr std::uint64_t direct_sampler() { return 3ULL << 40; }
inline constexpr std::uint64_t misc(std::uint64_t i) { return (4ULL << 40) | i; }
}  // namespace rng_stream

}  // namespace mcpde
