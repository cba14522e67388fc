#pragma once

/*
 * Finite-dimensional models of two alternating dichotomic measurements.
 *
 * A FiniteDimModel is a pair of orthogonal projections A, B on C^d together
 * with a density matrix rho0.  Measuring in strict alternation and keeping
 * the record r produces the outcome distribution
 *
 *   P_i(r) = tr(rho0 H_r H_r*),   H_r = i^{r1} j^{r2} i^{r3} ... ,
 *
 * where i is the first measurement, j the other one, p^1 = p and
 * p^0 = 1 - p.  Equivalently: evolve the unnormalised state by
 * rho -> p^{r_k} rho p^{r_k} at step k and read off the trace.
 *
 * An AtomicState is the diagonalised form such statistics always take: a
 * convex mixture of atoms (w, t, bloch), each atom a qubit in the canonical
 * two-projection frame
 *
 *   A = diag(1, 0),   B(t) = [[t, sqrt(t(1-t))], [sqrt(t(1-t)), 1-t]],
 *
 * with Bloch vector bloch = (bx, by, bz).  The grouped statistics of an atom
 * are polynomial in t:
 *
 *   F_+(n, s)     = w t^(n-s) (1-t)^s
 *   F_{a,-}(n, s) = w t^(n-s) (1-t)^s bz
 *   F_{b,-}(n, s) = w t^(n-s) (1-t)^s (2 sqrt(t(1-t)) bx + (2t - 1) bz)
 *   C1(n, s)      = w t^(n-s) (1-t)^s (sqrt(t(1-t)) bx + t bz)
 *   C2(n, s)      = w t^(n-s) (1-t)^s (-sqrt(t(1-t)) bx + (1-t) bz)
 *
 * (summed over atoms).  The by component never enters: it is carried for
 * completeness but inert in every observable quantity.
 */

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbox/seqcore.hpp"

namespace qbox {

// Hard cap on model dimension; the dense O(d^3) algebra is not meant to scale
// past small Hilbert spaces.
inline constexpr int kMaxModelDim = 32;
// Hard cap on table depth: materialised tables hold 2^(depth+1) - 2 entries
// per process.
inline constexpr int kMaxTableDepth = 16;

struct FiniteDimModel {
  int dim = 0;
  Eigen::MatrixXcd A, B, rho0;
};

struct ModelReport {
  bool ok = false;
  double proj_residual = 0.0;   // max over ||A^2-A||, ||B^2-B||, hermiticity
  double trace_residual = 0.0;  // |tr(rho0) - 1|
  double min_eigenvalue = 0.0;  // smallest eigenvalue of rho0
};

// Projection/hermiticity/PSD/trace checks; eigenvalues may undershoot zero by
// at most psd_floor (a non-negative number).
ModelReport validate_model(const FiniteDimModel& m, double tol,
                           double psd_floor = 1e-12);

// Outcome distribution over all r in {0,1}^L starting with measurement
// `first` ('a' or 'b').  Keys are outcome strings, most significant first.
std::map<std::string, double> simulate_sequence(const FiniteDimModel& m,
                                                char first, int L);

// Full table for both interleavings and every length 1..depth.
ProbabilityTable simulate_table(const FiniteDimModel& m, int depth);

// P(intermediate outcome | first a-outcome = pre, final a-outcome = post) for
// the length-3 alternation a, b, a.  Returns (p0, p1); empty when the
// conditioning event has probability <= tol.
std::optional<std::pair<double, double>> conditional_prepost(
    const FiniteDimModel& m, int pre, int post, double tol);

struct Atom {
  double w = 1.0;
  double t = 0.5;
  std::array<double, 3> bloch{0.0, 0.0, 0.0};
};

struct AtomicState {
  std::vector<Atom> atoms;
};

struct AtomicReport {
  bool ok = false;
  double worst_residual = 0.0;
  std::string detail;
};

// Weights non-negative summing to 1, t in [0,1], |bloch| <= 1 (all within tol).
AtomicReport validate_atomic(const AtomicState& st, double tol);

struct AtomF {
  double f_plus = 0.0;
  double f_minus_a = 0.0;
  double f_minus_b = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

// Closed-form grouped statistics of an atomic state at (n, s).
AtomF atomic_f(const AtomicState& st, int n, int s);

// Closed-form probability table; P_i(r) = (F_+ +/- F_{i,-}) / 2 at the
// (n, s) of r, sign chosen by the first outcome.
ProbabilityTable atomic_to_table(const AtomicState& st, int depth);

// Block-diagonal realisation: each atom contributes one 2x2 block in the
// canonical frame, weighted by w.  dim = 2 * #atoms.
FiniteDimModel atomic_to_finite_model(const AtomicState& st);

struct ThreeBoxReport {
  std::array<double, 3> box_prob{};  // P(particle found in box k | pre, post)
  double overlap_abs = 0.0;          // |<pre|post>|, zero by construction
};

// Three orthogonal boxes, pre-selected on the uniform superposition and
// post-selected on the uniform superposition with cube-root-of-unity phases.
// Checking any single box finds the particle there with probability 1/2.
ThreeBoxReport three_box_demo();

}  // namespace qbox
