#pragma once

/*
 * Shared builders for the test suites: deterministic random states, reference
 * tables with known certification outcomes, and synthetic grouped tables.
 */

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "qbox/qmodel.hpp"
#include "qbox/rng.hpp"
#include "qbox/seqcore.hpp"

namespace qbox::testhelpers {

// Exact fair-coin table: P_i(r) = 2^-|r| for every string.
inline ProbabilityTable coin_table(int depth) {
  ProbabilityTable t;
  t.depth = depth;
  for (int length = 1; length <= depth; ++length) {
    const double p = std::ldexp(1.0, -length);
    for (const std::string& r : all_outcome_strings(length)) {
      t.p_a[r] = p;
      t.p_b[r] = p;
    }
  }
  return t;
}

// Deterministic random mixture of qubit atoms (weights normalised, Bloch
// vectors uniform in the closed ball).
inline AtomicState random_atomic(std::uint64_t seed, int n_atoms) {
  std::mt19937_64 rng(seed);
  AtomicState st;
  double total = 0.0;
  for (int j = 0; j < n_atoms; ++j) {
    Atom a;
    a.w = 0.1 + uniform01(rng);
    total += a.w;
    a.t = uniform01(rng);
    const double z = uniform_in(rng, -1.0, 1.0);
    const double phi = uniform_in(rng, 0.0, 6.283185307179586);
    const double rad = std::cbrt(uniform01(rng));
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    a.bloch = {rad * s * std::cos(phi), rad * s * std::sin(phi), rad * z};
    st.atoms.push_back(a);
  }
  for (Atom& a : st.atoms) a.w /= total;
  return st;
}

// Admissible and switch-consistent table that no model can produce:
// P_i(r) = w(r1) 2^-(|r|-1) concentrates too much first-outcome asymmetry,
// so C1 = (w1 - w0) 2^-n breaks the series inequality once the depth
// resolves it.  w1 in (1/2, 1]; w0 = 1 - w1.
inline ProbabilityTable biased_r1_table(int depth, double w1) {
  ProbabilityTable t;
  t.depth = depth;
  for (int length = 1; length <= depth; ++length) {
    const double base = std::ldexp(1.0, -(length - 1));
    for (const std::string& r : all_outcome_strings(length)) {
      const double p = (r[0] == '1' ? w1 : 1.0 - w1) * base;
      t.p_a[r] = p;
      t.p_b[r] = p;
    }
  }
  return t;
}

// Grouped table with F_+ = 2^-n on both sides, C1 = c1_scale 2^-n, C2 = 0.
// Not derived from any probability table; used to drive the series and
// anchor machinery directly.
inline FTable synthetic_flat_f(int n_max, double c1_scale) {
  FTable f;
  f.n_max = n_max;
  for (int pi = 0; pi < 2; ++pi) {
    for (int r1 = 0; r1 < 2; ++r1) f.f[pi][r1] = Triangular(n_max);
    f.f_plus[pi] = Triangular(n_max);
    f.f_minus[pi] = Triangular(n_max);
  }
  f.c1 = Triangular(n_max);
  f.c2 = Triangular(n_max);
  f.f_plus_avg = Triangular(n_max);
  for (int n = 0; n <= n_max; ++n) {
    for (int s = 0; s <= n; ++s) {
      const double plus = std::ldexp(1.0, -n);
      const double minus = c1_scale * plus;
      for (int pi = 0; pi < 2; ++pi) {
        f.f[pi][1](n, s) = 0.5 * (plus + minus);
        f.f[pi][0](n, s) = 0.5 * (plus - minus);
        f.f_plus[pi](n, s) = plus;
        f.f_minus[pi](n, s) = minus;
      }
      f.c1(n, s) = minus;
      f.c2(n, s) = 0.0;
      f.f_plus_avg(n, s) = plus;
    }
  }
  return f;
}

}  // namespace qbox::testhelpers
