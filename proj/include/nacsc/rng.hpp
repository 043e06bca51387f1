#ifndef NACSC_RNG_HPP
#define NACSC_RNG_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace nacsc {

// Finalizer from the splitmix64 generator; good avalanche, cheap.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic seed derivation for independent RNG streams.
inline std::uint64_t seed_combine(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x8e8f3b9c1d2e4f55ULL;
  for (std::uint64_t p : parts) h = splitmix64(h ^ p);
  return h;
}

inline std::uint64_t double_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits of one generator draw.
inline double canonical_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace nacsc

#endif
