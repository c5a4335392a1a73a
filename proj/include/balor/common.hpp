#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace balor {

inline constexpr const char* kVersion = "0.1.0";

enum class Errc {
  OddDegree,
  NotBipartite,
  NotBalanced,
  NotPerfect,
  NotRegularBipartite,
  NotEvenRegular,
  NotTreeBall,
  DisconnectedInput,
  BallTooLarge,
  TooLarge,
  UnsupportedParams,
  InconsistentCounts,
  BipartiteChain,
  EigenFailure,
  GenerationFailed,
  DegenerateClass,
  NoDisjointMatchings,
  InvalidAutomorphism,
  InvalidInput,
  IoError,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

const char* errc_name(Errc c);

// splitmix64 finalizer; the workhorse behind keyed label generation and hashes.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

inline std::uint64_t hash_bytes(std::uint64_t h, const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) h = (h ^ p[i]) * 0x100000001b3ULL;  // FNV-1a step
  return mix64(h);
}

inline std::uint64_t hash_str(std::uint64_t h, const std::string& s) {
  return hash_bytes(h, s.data(), s.size());
}

// uniform in [0,1) with 53-bit precision
inline double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

}  // namespace balor
