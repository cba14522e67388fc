#pragma once

/*
 * Moment tables and the square-root series connecting them.
 *
 * Integer moment tables hold, for 0 <= s <= n <= n_max,
 *
 *   M1(n, s) ~ rho(t^(n-s) (1-t)^s),
 *   Mx(n, s) ~ rho(t^(n-s) (1-t)^s x),   Mz(n, s) ~ rho(t^(n-s) (1-t)^s z),
 *
 * i.e. mixed moments of a positive functional against 1, x, z with
 * x^2 + z^2 <= 1.  Half-integer tables carry an extra sqrt(t) on the x
 * component and sqrt(1-t) on the z component:
 *
 *   M1'(n, s) = M1(n, s),
 *   Mx'(n, s) ~ rho(t^(n-s+1/2) (1-t)^s x),
 *   Mz'(n, s) ~ rho(t^(n-s) (1-t)^(s+1/2) z).
 *
 * Grouped measurement statistics provide exactly the half-integer data
 * (M1' = F_+, Mx' = C1, Mz' = C2); recovering integer moments inverts the
 * square roots via sqrt(t) = sum_k (-1)^k binom(1/2,k) (1-t)^k:
 *
 *   Mx(n, s) = sum_k (-1)^k binom(1/2,k) Mx'(n+k-1, s+k)      (s <= n-1)
 *   Mz(n, s) = sum_k (-1)^k binom(1/2,k) Mz'(n+k-1, s-1)      (s >= 1)
 *
 * while the complementary entries need the anchors Mx(0,0), Mz(0,0):
 *
 *   Mx(n, n) = Mx(0,0) - sum_k c(n,k) Mx'(k, k),
 *   Mz(n, 0) = Mz(0,0) - sum_k c(n,k) Mz'(k, 0).
 *
 * The reverse direction multiplies the square roots back in:
 *
 *   Mx'(n, s) = sum_k (-1)^k binom(1/2,k) Mx(n+k, s+k),
 *   Mz'(n, s) = sum_k (-1)^k binom(1/2,k) Mz(n+k, s).
 *
 * All series are truncated at k = K inclusive; the dropped remainder is
 * bounded by tail_bound(K) (c_tail_bound(n, K+1) for the anchored entries)
 * times a bound on the omitted entries, which is at most 1 whenever the
 * table satisfies |M| <= M1 <= 1.  Entries too deep for the requested K fall
 * back to the terms the table can supply, with the correspondingly larger
 * error bound recorded per entry.
 */

#include <vector>

#include "qbox/seqcore.hpp"
#include "qbox/triangular.hpp"

namespace qbox {

struct IntMomentTable {
  int n_max = -1;
  Triangular m1, mx, mz;
};

struct HalfMomentTable {
  int n_max = -1;
  Triangular m1p, mxp, mzp;
};

// Reads the half-integer table off grouped statistics: M1' = F_{a,+},
// Mx' = C1, Mz' = C2.
HalfMomentTable moments_from_F(const FTable& f);

struct IntConversion {
  IntMomentTable table;
  Triangular err_x, err_z;   // rigorous per-entry truncation bounds
  bool depth_limited = false;  // some entry received fewer than K terms
};

struct HalfConversion {
  HalfMomentTable table;
  Triangular err_x, err_z;
  bool depth_limited = false;
};

// Series above, truncated at K >= 0 inclusive.  The anchors are the true
// values of Mx(0,0) and Mz(0,0), which the half-integer data never
// determines by itself.
IntConversion int_from_half(const HalfMomentTable& h, double anchor_x,
                            double anchor_z, int K);

HalfConversion half_from_int(const IntMomentTable& m, int K);

struct MomentConsistency {
  bool ok = false;
  // Worst offending condition: "normalization", "conservation" or
  // "non-negativity"; empty when ok.
  std::string condition;
  int n = -1, s = -1;
  double residual = 0.0;
};

// The three structural conditions characterising valid integer tables:
//   M1(0,0) = 1,
//   M(n, s) = M(n+1, s) + M(n+1, s+1)  componentwise,
//   M1(n, s) >= sqrt(Mx(n,s)^2 + Mz(n,s)^2).
MomentConsistency check_moment_table(const IntMomentTable& m, double tol);

struct MomentTriple {
  double m1 = 0.0, mx = 0.0, mz = 0.0;
};

// Row-k expansion of the entry (n, s):
//   M(n, s) = sum_r binom(k-n, r-s) M(k, r),  r = s .. s + k - n,
// an identity for conservation-consistent tables; exposed for testing and
// for reading shallow entries off a deep row.  Requires n <= k <= n_max.
MomentTriple expand_via_row(const IntMomentTable& m, int n, int s, int k);

// Matrix polynomial P = P1(t) * 1 + Px(t) * x + Pz(t) * z with monomial
// coefficients in ascending order (empty vector = zero polynomial).
struct MatrixPolynomial {
  std::vector<double> p1, px, pz;
};

// Degree-n Bernstein-style approximant of the underlying functional:
//
//   rho_n(P) = sum_s binom(n, s) [ P1(x_s) M1(n,s) + Px(x_s) Mx(n,s)
//                                  + Pz(x_s) Mz(n,s) ],   x_s = (n-s)/n,
//
// with the n = 0 term evaluated at 0.  For tables generated by a point mass
// at t0 this is the classical Bernstein polynomial evaluated at t0, so
// rho_n(P) -> rho(P) as n grows, exactly reproducing affine P1/Px/Pz.
double bernstein_rho_n(const IntMomentTable& m, const MatrixPolynomial& p, int n);

}  // namespace qbox
