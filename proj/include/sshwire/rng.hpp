#ifndef SSHWIRE_RNG_HPP
#define SSHWIRE_RNG_HPP

#include <cstdint>
#include <random>

namespace sshwire {

// splitmix64 finalizer; used to decorrelate derived seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for trajectory `index` of an ensemble rooted at `base_seed`.
inline std::uint64_t trajectory_seed(std::uint64_t base_seed, int index) {
  return splitmix64(base_seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

}  // namespace sshwire

#endif
