#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace emonet {

__extension__ typedef unsigned __int128 uint128;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives the seed of an independent stream from a master seed. Streams with
// different ids are decorrelated; the mapping is fixed across platforms.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return mix64(master ^ mix64(stream ^ 0xD1B54A32D192ED03ULL));
}

// 64-bit FNV-1a. Used for stable fingerprints of files and configurations.
constexpr std::uint64_t fnv1a(std::string_view data,
                              std::uint64_t h = 0xcbf29ce484222325ULL) noexcept {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seeded generator with platform-independent derived distributions
// (std::uniform_int_distribution is implementation-defined, so it is avoided).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Lemire's nearly-divisionless method.
    std::uint64_t x = next();
    uint128 m = static_cast<uint128>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = next();
        m = static_cast<uint128>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Two independent uniform integers in [0, n) from one 64-bit draw.
  std::pair<std::uint32_t, std::uint32_t> two_below(std::uint32_t n) {
    const std::uint32_t threshold = (0u - n) % n;
    while (true) {
      const std::uint64_t x = next();
      const std::uint64_t a = (x & 0xFFFFFFFFu) * n;
      const std::uint64_t b = (x >> 32) * n;
      if (static_cast<std::uint32_t>(a) >= threshold && static_cast<std::uint32_t>(b) >= threshold) {
        return {static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b >> 32)};
      }
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  template <class T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace emonet
