#include "qbox/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qbox/binomials.hpp"
#include "qbox/region.hpp"

namespace qbox {

namespace {

/*
 * Bound on the entry M(m, u) that a realizable extension of the table would
 * assign at row m, switch count u, where M is the common non-negative
 * F_{.,+} sequence.  The marginalisation identity
 *
 *   M(m, u) = M(m+1, u) + M(m+1, u+1),        M >= 0,
 *
 * makes M monotone non-increasing along vertical steps (m,u) -> (m+1,u) and
 * diagonal steps (m,u) -> (m+1,u+1).  A beyond-table entry is therefore
 * dominated by any table entry from which it can be reached by such steps;
 * walking back along either direction until the deepest data row gives the
 * two candidate ancestors used here.  `slack` absorbs the per-entry data
 * tolerance (0 for face-value bounds).
 */
double extension_bound(const FTable& f, int m, int u, double slack) {
  if (u < 0 || u > m) return 0.0;  // outside the triangle: entry is absent
  if (m <= f.n_max) return std::max(f.f_plus_avg(m, u) + slack, 0.0);
  double best = 1.0;  // entries are sums of two probabilities of one event
  if (u <= f.n_max)
    best = std::min(best, std::max(f.f_plus_avg(f.n_max, u) + slack, 0.0));
  const int diag = u - (m - f.n_max);
  if (diag >= 0)
    best = std::min(best, std::max(f.f_plus_avg(f.n_max, diag) + slack, 0.0));
  return best;
}

/*
 * Bounds on omitted series entries.  For a realizable table the grouped
 * statistics have a moment representation against a common non-negative
 * sequence M, and Cauchy-Schwarz gives
 *
 *   |C1(m, u)|^2 <= M(m, u) * M(m+1, u),
 *   |C2(m, u)|^2 <= M(m, u) * M(m+1, u+1).
 *
 * Because the right-hand sides are monotone along both step directions, the
 * bound at the first omitted entry of a series dominates all later ones.
 */
double c1_entry_bound(const FTable& f, int m, int u, double slack) {
  return std::sqrt(extension_bound(f, m, u, slack) *
                   extension_bound(f, m + 1, u, slack));
}

double c2_entry_bound(const FTable& f, int m, int u, double slack) {
  return std::sqrt(extension_bound(f, m, u, slack) *
                   extension_bound(f, m + 1, u + 1, slack));
}

// (-1)^k binom(1/2, k), the coefficient of the k-th series term.
double series_coef(int k) {
  return (k % 2 == 0 ? 1.0 : -1.0) * half_binom(k);
}

std::string format_point(double x0, double y0, double x1, double y1) {
  std::ostringstream os;
  os << "(" << x0 << ", " << y0 << ", " << x1 << ", " << y1 << ")";
  return os.str();
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::kConsistent: return "CONSISTENT";
    case Status::kViolation: return "VIOLATION";
    case Status::kInconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

SeriesCheck series_inequality(const FTable& f, int n, int s, int K,
                              double tol) {
  if (n < 2 || n > f.n_max || s < 1 || s > n - 1)
    throw std::invalid_argument(
        "series inequality is defined for 2 <= n <= n_max, 1 <= s <= n-1");
  if (K < 1) throw std::invalid_argument("K must be positive");
  if (tol < 0.0) throw std::invalid_argument("tol must be non-negative");

  SeriesCheck out;
  const int T = std::min(K, f.n_max - n + 2);  // rows n+k-1 stay in the table
  out.terms = T;

  double abs_coef = 0.0;
  for (int k = 0; k < T; ++k) {
    const double coef = series_coef(k);
    out.s1 += coef * f.c1(n + k - 1, s + k);
    out.s2 += coef * f.c2(n + k - 1, s - 1);
    abs_coef += std::abs(coef);
  }

  // First omitted entries: C1 at (n+T-1, s+T) on the diagonal, C2 at
  // (n+T-1, s-1) on the vertical; each dominates its own remainder.
  const double tail_coef = tail_bound(T - 1);
  const double trunc1 = tail_coef * c1_entry_bound(f, n + T - 1, s + T, 0.0);
  const double trunc2 = tail_coef * c2_entry_bound(f, n + T - 1, s - 1, 0.0);
  out.tail1 = tail_coef * c1_entry_bound(f, n + T - 1, s + T, tol) + abs_coef * tol;
  out.tail2 = tail_coef * c2_entry_bound(f, n + T - 1, s - 1, tol) + abs_coef * tol;

  const double lo1 = std::max(std::abs(out.s1) - out.tail1, 0.0);
  const double lo2 = std::max(std::abs(out.s2) - out.tail2, 0.0);
  const double hi1 = std::abs(out.s1) + out.tail1;
  const double hi2 = std::abs(out.s2) + out.tail2;
  out.lhs = {lo1 * lo1 + lo2 * lo2, hi1 * hi1 + hi2 * hi2};

  const double F = f.f_plus[0](n, s);
  const double f_lo = std::max(F - tol, 0.0);
  out.rhs_lo = f_lo * f_lo;
  out.rhs_hi = (F + tol) * (F + tol);

  const double face1 = std::abs(out.s1) + trunc1;
  const double face2 = std::abs(out.s2) + trunc2;
  out.lhs_face = face1 * face1 + face2 * face2;
  out.rhs_face = F * F;

  if (out.lhs.lo > out.rhs_hi)
    out.decision = -1;  // no tolerance-close realizable table can pass
  else if (out.lhs_face <= out.rhs_face)
    out.decision = +1;  // passes at face value with rigorous truncation bound
  else
    out.decision = 0;
  return out;
}

VIntervals v_intervals(const FTable& f, int n, int K, double tol) {
  if (n < 1 || n > f.n_max)
    throw std::invalid_argument("anchor intervals need 1 <= n <= n_max");
  if (K < 1) throw std::invalid_argument("K must be positive");
  if (tol < 0.0) throw std::invalid_argument("tol must be non-negative");

  VIntervals out;

  // Anchored series sum_k c(n,k) C1(k,k) (x) and sum_k c(n,k) C2(k,0) (z).
  const int Kc = std::min(K, f.n_max);
  double cx = 0.0, cz = 0.0, abs_c = 0.0;
  for (int k = 0; k <= Kc; ++k) {
    const double c = c_coeff(n, k);
    cx += c * f.c1(k, k);
    cz += c * f.c2(k, 0);
    abs_c += std::abs(c);
  }
  const double ctail_coef = c_tail_bound(n, Kc + 1);
  const double ctail_x =
      ctail_coef * c1_entry_bound(f, Kc + 1, Kc + 1, tol) + abs_c * tol;
  const double ctail_z =
      ctail_coef * c2_entry_bound(f, Kc + 1, 0, tol) + abs_c * tol;

  // Inner series under the square roots, at s = n-1 (x) and along the
  // diagonal (z).
  const int T = std::min(K, f.n_max - n + 2);
  double s2x = 0.0, s1z = 0.0, abs_h = 0.0;
  for (int k = 0; k < T; ++k) {
    const double coef = series_coef(k);
    s2x += coef * f.c2(n + k - 1, n - 1);
    s1z += coef * f.c1(n + k - 1, k);
    abs_h += std::abs(coef);
  }
  const double htail_coef = tail_bound(T - 1);
  const double t2x_face = htail_coef * c2_entry_bound(f, n + T - 1, n - 1, 0.0);
  const double t1z_face = htail_coef * c1_entry_bound(f, n + T - 1, T, 0.0);
  const double t2x =
      htail_coef * c2_entry_bound(f, n + T - 1, n - 1, tol) + abs_h * tol;
  const double t1z =
      htail_coef * c1_entry_bound(f, n + T - 1, T, tol) + abs_h * tol;

  // Enclose sqrt(F^2 - S^2).  Budgets decide violation; the face value
  // (data taken exactly, truncation bounded) decides whether a clipped
  // argument counts as undecided or as a tolerated boundary graze.
  out.worst_arg = std::numeric_limits<double>::infinity();
  const auto sqrt_enclosure = [&](double F, double S, double tail_face,
                                  double tail_full) {
    const double f_lo = std::max(F - tol, 0.0), f_hi = F + tol;
    const double lo_abs = std::max(std::abs(S) - tail_full, 0.0);
    const double hi_abs = std::abs(S) + tail_full;
    const double arg_lo = f_lo * f_lo - hi_abs * hi_abs;
    const double arg_hi = f_hi * f_hi - lo_abs * lo_abs;
    const double face_abs = std::abs(S) + tail_face;
    const double face_lo = F * F - face_abs * face_abs;
    out.worst_arg = std::min(out.worst_arg, face_lo);
    if (arg_hi < 0.0)
      out.sqrt_violated = true;
    else if (face_lo < 0.0)
      out.sqrt_undecided = true;
    return Interval{std::sqrt(std::max(arg_lo, 0.0)),
                    std::sqrt(std::max(arg_hi, 0.0))};
  };
  const Interval rx = sqrt_enclosure(f.f_plus[0](n, n), s2x, t2x_face, t2x);
  const Interval rz = sqrt_enclosure(f.f_plus[0](n, 0), s1z, t1z_face, t1z);

  out.vx_minus = {cx - ctail_x - rx.hi, cx + ctail_x - rx.lo};
  out.vx_plus = {cx - ctail_x + rx.lo, cx + ctail_x + rx.hi};
  out.vz_minus = {cz - ctail_z - rz.hi, cz + ctail_z - rz.lo};
  out.vz_plus = {cz - ctail_z + rz.lo, cz + ctail_z + rz.hi};
  return out;
}

Verdict certify(const ProbabilityTable& t, double tol, int K) {
  if (t.depth < 1) throw std::invalid_argument("table depth must be >= 1");
  if (tol < 0.0) throw std::invalid_argument("tol must be non-negative");
  const int n_max = t.depth - 1;
  if (K < 0) K = std::max(n_max, 1);
  if (K < 1) throw std::invalid_argument("K must be positive");

  Verdict v;
  v.depth_used = t.depth;
  v.k_used = K;
  v.tol = tol;

  std::vector<CheckWitness> violations;
  std::vector<CheckWitness> undecided;

  // Check 1: every entry a probability, marginalisation exact to tol.
  const AdmissibilityReport adm = validate_admissible(t, tol);
  if (!adm.ok) {
    CheckWitness w;
    w.check = "admissibility";
    w.measured = adm.worst_residual;
    w.bound = tol;
    w.margin = adm.worst_residual - tol;
    w.detail = std::string(1, adm.process) + ":" +
               (adm.witness.empty() ? std::string("<root>") : adm.witness);
    v.witnesses.push_back(w);
    v.status = Status::kViolation;
    return v;
  }

  // Check 2: within-group spreads (dependence on r only through r1, n, s).
  FBuildOutcome built = table_to_F(t, tol);
  if (!built.table) {
    const SwitchWitness& sw = *built.witness;
    CheckWitness w;
    w.check = "switch-dependence";
    w.n = sw.n;
    w.s = sw.s;
    w.measured = sw.spread;
    w.bound = tol;
    w.margin = sw.spread - tol;
    std::ostringstream os;
    os << sw.process << ", r1=" << sw.r1 << ": P(" << sw.lo_r << ")=" << sw.lo
       << " vs P(" << sw.hi_r << ")=" << sw.hi;
    w.detail = os.str();
    v.witnesses.push_back(w);
    v.status = Status::kViolation;
    return v;
  }
  const FTable& f = *built.table;

  // Check 3: the two interleavings share one F_+ table.  Each side's mean
  // sits within tol of a common model value, so the gap budget is 2 tol.
  {
    double worst = 0.0;
    int wn = 0, ws = 0;
    for (int n = 0; n <= f.n_max; ++n)
      for (int s = 0; s <= n; ++s) {
        const double gap = std::abs(f.f_plus[0](n, s) - f.f_plus[1](n, s));
        if (gap > worst) {
          worst = gap;
          wn = n;
          ws = s;
        }
      }
    if (worst > 2.0 * tol) {
      CheckWitness w;
      w.check = "sum-rule";
      w.n = wn;
      w.s = ws;
      w.measured = worst;
      w.bound = 2.0 * tol;
      w.margin = worst - 2.0 * tol;
      w.detail = "F_{a,+} and F_{b,+} disagree";
      violations.push_back(w);
    }
  }

  // Check 4: series inequalities at every interior (n, s).
  for (int n = 2; n <= f.n_max; ++n)
    for (int s = 1; s <= n - 1; ++s) {
      const SeriesCheck sc = series_inequality(f, n, s, K, tol);
      if (sc.decision == -1) {
        CheckWitness w;
        w.check = "series-inequality";
        w.n = n;
        w.s = s;
        w.measured = sc.lhs.lo;
        w.bound = sc.rhs_hi;
        w.margin = sc.lhs.lo - sc.rhs_hi;
        std::ostringstream os;
        os << "S1=" << sc.s1 << " S2=" << sc.s2 << " terms=" << sc.terms;
        w.detail = os.str();
        violations.push_back(w);
      } else if (sc.decision == 0) {
        CheckWitness w;
        w.check = "series-inequality";
        w.n = n;
        w.s = s;
        w.measured = sc.lhs_face;
        w.bound = sc.rhs_face;
        w.margin = sc.lhs_face - sc.rhs_face;
        w.undecided = true;
        std::ostringstream os;
        os << "tail budget obscures the comparison (terms=" << sc.terms << ")";
        w.detail = os.str();
        undecided.push_back(w);
      }
    }

  // Check 5: the anchor point ranges must leave room inside the region.
  // Every n constrains the same pair of anchor moments, so the rectangle
  // [sup_n Vx-, inf_n Vx+] x [sup_n Vz-, inf_n Vz+] must meet the unit disc.
  // Using the outermost interval ends (lower ends of V-, upper ends of V+)
  // yields the most favorable rectangle any tolerance-close realizable table
  // could produce; if even it misses the region, no such table exists.
  if (f.n_max >= 1) {
    double x0 = -std::numeric_limits<double>::infinity();
    double y0 = -std::numeric_limits<double>::infinity();
    double x1 = std::numeric_limits<double>::infinity();
    double y1 = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int n = 1; n <= f.n_max; ++n) {
      const VIntervals vi = v_intervals(f, n, K, tol);
      if (vi.sqrt_violated) {
        CheckWitness w;
        w.check = "anchor-membership";
        w.n = n;
        w.measured = vi.worst_arg;
        w.bound = 0.0;
        w.margin = -vi.worst_arg;
        w.detail = "square-root argument negative beyond all budgets";
        violations.push_back(w);
        continue;  // the enclosures carry no information at this n
      }
      if (vi.sqrt_undecided) {
        CheckWitness w;
        w.check = "anchor-membership";
        w.n = n;
        w.measured = vi.worst_arg;
        w.bound = 0.0;
        w.margin = -vi.worst_arg;
        w.undecided = true;
        w.detail = "square-root argument straddles zero";
        undecided.push_back(w);
      }
      any = true;
      x0 = std::max(x0, vi.vx_minus.lo);
      y0 = std::max(y0, vi.vz_minus.lo);
      x1 = std::min(x1, vi.vx_plus.hi);
      y1 = std::min(y1, vi.vz_plus.hi);
    }
    if (any) {
      const RegionPoint corner{x0, y0, x1, y1};
      if (!in_region_clauses(corner, tol)) {
        CheckWitness w;
        w.check = "anchor-membership";
        const int clause = first_failing_clause(corner, tol);
        if (clause == 1) {
          w.measured = std::max(x0 - x1, y0 - y1);
          w.bound = 0.0;
          w.margin = w.measured;
        } else {
          const double nx = std::clamp(0.0, std::min(x0, x1), std::max(x0, x1));
          const double ny = std::clamp(0.0, std::min(y0, y1), std::max(y0, y1));
          w.measured = nx * nx + ny * ny;
          w.bound = 1.0;
          w.margin = w.measured - 1.0;
        }
        std::ostringstream os;
        os << "most favorable corner " << format_point(x0, y0, x1, y1)
           << " fails clause " << clause;
        w.detail = os.str();
        violations.push_back(w);
      }
    }
  }

  for (const CheckWitness& w : violations) v.witnesses.push_back(w);
  for (const CheckWitness& w : undecided) v.witnesses.push_back(w);
  v.status = !violations.empty()  ? Status::kViolation
             : !undecided.empty() ? Status::kInconclusive
                                  : Status::kConsistent;
  return v;
}

ATruncationVerdict certify_a_truncation(
    const std::map<std::string, double>& p_a, int depth, double tol) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (tol < 0.0) throw std::invalid_argument("tol must be non-negative");
  for (int length = 1; length <= depth; ++length)
    for (const std::string& r : all_outcome_strings(length))
      if (!p_a.count(r))
        throw TableStructureError("missing entry for outcome string " + r);

  ATruncationVerdict out;

  double worst = 0.0;
  const auto record = [&worst](double r) { worst = std::max(worst, r); };
  for (int length = 1; length <= depth; ++length)
    for (const std::string& r : all_outcome_strings(length)) {
      const double p = p_a.at(r);
      record(std::max(-p, p - 1.0));
    }
  record(std::abs(p_a.at("0") + p_a.at("1") - 1.0));
  for (int length = 1; length < depth; ++length)
    for (const std::string& r : all_outcome_strings(length))
      record(std::abs(p_a.at(r) - p_a.at(r + "0") - p_a.at(r + "1")));
  out.admissibility_residual = worst;
  out.admissible = worst <= tol;

  struct Extremes {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::string lo_r, hi_r;
    void add(double v, const std::string& r) {
      if (v < lo) {
        lo = v;
        lo_r = r;
      }
      if (v > hi) {
        hi = v;
        hi_r = r;
      }
    }
  };
  std::map<std::pair<int, int>, Extremes> by_s;
  std::map<std::tuple<int, int, int>, Extremes> by_s_r1;
  for (int length = 1; length <= depth; ++length)
    for (const std::string& r : all_outcome_strings(length)) {
      const double p = p_a.at(r);
      const int n = length - 1;
      const int s = switch_count(r);
      const int r1 = r[0] - '0';
      by_s[{n, s}].add(p, r);
      by_s_r1[{n, s, r1}].add(p, r);
    }

  for (const auto& [key, ext] : by_s) {
    const double spread = ext.hi - ext.lo;
    if (spread > out.by_s.max_spread) {
      out.by_s.max_spread = spread;
      out.by_s.n = key.first;
      out.by_s.s = key.second;
      out.by_s.lo_r = ext.lo_r;
      out.by_s.hi_r = ext.hi_r;
    }
  }
  out.by_s.consistent = out.by_s.max_spread <= tol;

  for (const auto& [key, ext] : by_s_r1) {
    const double spread = ext.hi - ext.lo;
    if (spread > out.by_s_r1.max_spread) {
      out.by_s_r1.max_spread = spread;
      out.by_s_r1.n = std::get<0>(key);
      out.by_s_r1.s = std::get<1>(key);
      out.by_s_r1.r1 = std::get<2>(key);
      out.by_s_r1.lo_r = ext.lo_r;
      out.by_s_r1.hi_r = ext.hi_r;
    }
  }
  out.by_s_r1.consistent = out.by_s_r1.max_spread <= tol;

  out.status = (out.admissible && out.by_s.consistent) ? Status::kConsistent
                                                       : Status::kViolation;
  return out;
}

}  // namespace qbox
