#pragma once

#include <cstdint>
#include <random>

#include "wident/statevec.hpp"

namespace wident {

/// splitmix64 mixing step (public-domain constants).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic per-stream child seed: stream `index` of `master`.  Streams
/// depend only on (master, index), so extending a run keeps earlier streams.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(2 * index + 1));
}

/// Haar-uniform pure state: i.i.d. standard complex Gaussian amplitudes,
/// normalized.
inline PureState haar_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec8 v;
  for (int k = 0; k < 8; ++k) v(k) = Cx(gauss(rng), gauss(rng));
  return PureState(v, kDefaultNormTol, /*auto_normalize=*/true);
}

}  // namespace wident
