#pragma once

/*
 * Deterministic uniform variates.  std::uniform_real_distribution is
 * implementation-defined, so reproducibility across standard libraries is
 * obtained by converting raw mt19937_64 output directly: the top 53 bits give
 * a dyadic uniform in [0, 1).
 */

#include <cstdint>
#include <random>

namespace qbox {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in [lo, hi).
inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace qbox
