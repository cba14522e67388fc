#pragma once

/*
 * Realizability certification for iterated-measurement tables.
 *
 * A table of depth L is quantum-realizable only if its grouped statistics
 * satisfy, with n = |r| - 1 and s the switch count:
 *
 *   1. switch-dependence: P_i(r) depends on r only through (r1, n, s);
 *   2. sum rule:          F_{a,+}(n, s) = F_{b,+}(n, s);
 *   3. series inequality: for 1 <= s <= n-1,
 *        S1(n,s)^2 + S2(n,s)^2 <= F_{a,+}(n, s)^2,
 *        S1 = sum_k (-1)^k binom(1/2,k) C1(n+k-1, s+k),
 *        S2 = sum_k (-1)^k binom(1/2,k) C2(n+k-1, s-1);
 *   4. anchor membership:  with c(n,k) the difference coefficients,
 *        Vx+-(n) = sum_k c(n,k) C1(k,k)
 *                  -+ sqrt(F_{a,+}(n,n)^2 - S2x(n)^2),
 *        Vz+-(n) = sum_k c(n,k) C2(k,0)
 *                  -+ sqrt(F_{a,+}(n,0)^2 - S1z(n)^2),
 *        (S2x, S1z the analogous series at s = n-1 and s = k) and the point
 *        (sup_n Vx-, sup_n Vz-, inf_n Vx+, inf_n Vz+) must lie in the anchor
 *        region (see region.hpp).
 *
 * All series are evaluated from finite data, so every check is three-valued.
 * Truncated tails are bounded rigorously, under the hypothesis being tested
 * (a realizable table extends the data): for such an extension the moment
 * representation gives |C1(m,u)| <= sqrt(M(m,u) M(m+1,u)) and
 * |C2(m,u)| <= sqrt(M(m,u) M(m+1,u+1)) by Cauchy-Schwarz, where M is the
 * non-negative F_{a,+} extension; and M itself, by the marginalisation
 * identity, is monotone along rows and diagonals, hence dominated by the
 * deepest table entry reachable from (m,u) by reverse steps.  Each truncated
 * series therefore carries a bound tail_bound(.) * B with B computed from the
 * deepest row of the data.  A check is VIOLATED only when its interval clears
 * the opposing bound by more than the combined tolerance + tail budget, so a
 * VIOLATION verdict is sound: no realizable model whose table matches the
 * data within tol can exist.  A check is SATISFIED when the data, taken at
 * face value with the truncation bound, passes; CONSISTENT means every check
 * was SATISFIED; any undecided check makes the verdict INCONCLUSIVE.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbox/seqcore.hpp"

namespace qbox {

enum class Status { kConsistent, kViolation, kInconclusive };

const char* to_string(Status s);

struct Interval {
  double lo = 0.0, hi = 0.0;
};

struct CheckWitness {
  std::string check;  // "admissibility", "switch-dependence", "sum-rule",
                      // "series-inequality", "anchor-membership"
  int n = -1, s = -1;
  double measured = 0.0;  // offending quantity
  double bound = 0.0;     // what it was tested against
  double margin = 0.0;    // how far beyond the bound (positive = violated)
  bool undecided = false;  // true: interval straddles the bound (inconclusive)
  std::string detail;
};

struct Verdict {
  Status status = Status::kInconclusive;
  int depth_used = 0;
  int k_used = 0;
  double tol = 0.0;
  std::vector<CheckWitness> witnesses;  // violations first, then undecided
};

// Three-valued evaluation of check 3 at (n, s).  K caps the series length
// (terms k <= K-1); fewer terms are used when the table is too shallow, with
// the tail bound growing accordingly.  decision = +1 (satisfied: the face
// values, sums plus pure truncation bounds, obey lhs <= rhs), -1 (violated:
// even granting every tolerance and truncation allowance, lhs > rhs) or 0.
struct SeriesCheck {
  double s1 = 0.0, s2 = 0.0;        // truncated sums
  double tail1 = 0.0, tail2 = 0.0;  // truncation remainder + tolerance budget
  Interval lhs;                     // range of S1^2 + S2^2 incl. all budgets
  double rhs_lo = 0.0, rhs_hi = 0.0;  // range of F_{a,+}(n,s)^2
  double lhs_face = 0.0, rhs_face = 0.0;  // tolerance-free comparison values
  int terms = 0;
  int decision = 0;
};
SeriesCheck series_inequality(const FTable& f, int n, int s, int K, double tol);

// Interval enclosures of Vx+-(n), Vz+-(n) from finite data.  When a square
// root argument is negative even at face value (pure truncation bounds, no
// tolerance) but could be non-negative within budgets, the enclosure clips it
// to zero and flags the point undecided; when it is negative beyond every
// budget the table is not realizable at all (violated).  Boundary grazes
// within tolerance are clipped silently: they are what "within tol" means.
struct VIntervals {
  Interval vx_minus, vx_plus, vz_minus, vz_plus;
  bool sqrt_undecided = false;
  bool sqrt_violated = false;
  double worst_arg = 0.0;  // most negative face-value argument (diagnostics)
};
VIntervals v_intervals(const FTable& f, int n, int K, double tol);

// Full pipeline.  K < 0 selects the default depth - 1, which uses every
// entry the table can feed into each series.
Verdict certify(const ProbabilityTable& t, double tol, int K = -1);

// Single-process variant for tables that only record the "a first"
// interleaving.  Both natural grouping conventions are evaluated and
// reported: by (n, s) alone, and by (n, s, r1).  The (n, s) convention is
// the stronger statement and decides the overall flag; the finer grouping is
// the one the two-process checks above would use.
struct GroupingReport {
  bool consistent = false;
  double max_spread = 0.0;
  int n = -1, s = -1, r1 = -1;  // r1 = -1 when grouping ignores it
  std::string lo_r, hi_r;
};

struct ATruncationVerdict {
  bool admissible = false;
  double admissibility_residual = 0.0;
  GroupingReport by_s;
  GroupingReport by_s_r1;
  Status status = Status::kInconclusive;
};
ATruncationVerdict certify_a_truncation(const std::map<std::string, double>& p_a,
                                        int depth, double tol);

}  // namespace qbox
