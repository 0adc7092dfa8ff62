#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qsar::util {

/// Derive a deterministic sub-stream seed from the run seed plus a stream
/// name (and optional indices), so data/init/dropout/shuffle randomness can
/// be varied independently. FNV-1a over the name, then splitmix-style mixing.
inline std::uint64_t substream_seed(std::uint64_t seed, std::string_view name,
                                    std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ULL;
  };
  for (unsigned char c : name) mix(c);
  mix(seed);
  mix(a);
  mix(b);
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::string_view name,
                                std::uint64_t a = 0, std::uint64_t b = 0) {
  return std::mt19937_64(substream_seed(seed, name, a, b));
}

}  // namespace qsar::util
