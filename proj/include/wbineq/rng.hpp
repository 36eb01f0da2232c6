#pragma once

// Deterministic uniform streams. Engine state is mt19937_64 (sequence pinned
// by the standard) and the double mapping below is explicit, so a (seed,
// label) pair replays bit-for-bit on any platform. Labelled sub-seeds make
// stream assignment independent of insertion or scheduling order.

#include <cstdint>
#include <random>
#include <string_view>

namespace wbineq {

// 64-bit FNV-1a over the label bytes.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Sub-seed for a named stream under a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
  return mix64(master ^ mix64(fnv1a64(label)));
}

// Uniform doubles strictly inside (0, 1): (k + 1/2) * 2^-53 over the top 53
// bits, so quantile transforms never see an endpoint.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double next() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wbineq
