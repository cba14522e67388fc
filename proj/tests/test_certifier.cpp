#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "qbox/certifier.hpp"
#include "qbox/qmodel.hpp"
#include "qbox/region.hpp"

using namespace qbox;
using namespace qbox::testhelpers;

namespace {

const CheckWitness* find_witness(const Verdict& v, const std::string& check,
                                 int n = -2, int s = -2) {
  for (const CheckWitness& w : v.witnesses)
    if (w.check == check && (n == -2 || w.n == n) && (s == -2 || w.s == s))
      return &w;
  return nullptr;
}

}  // namespace

TEST_CASE("status names") {
  CHECK(std::string(to_string(Status::kConsistent)) == "CONSISTENT");
  CHECK(std::string(to_string(Status::kViolation)) == "VIOLATION");
  CHECK(std::string(to_string(Status::kInconclusive)) == "INCONCLUSIVE");
}

TEST_CASE("fair coin is fully certified at depth 8") {
  Verdict v = certify(coin_table(8), 1e-9);
  CHECK(v.status == Status::kConsistent);
  CHECK(v.witnesses.empty());
  CHECK(v.depth_used == 8);
  CHECK(v.k_used == 7);
}

TEST_CASE("projection-aligned atom is fully certified at depth 8") {
  // t = 0 with bloch = +z: the grouped diagonal saturates F(n, n) = 1, so
  // any slack lost to truncation would block the verdict.  The data-driven
  // tail bounds collapse exactly here (the neighbouring extension entry is
  // zero), which is what lets the certificate close.
  AtomicState st{{Atom{1.0, 0.0, {0.0, 0.0, 1.0}}}};
  Verdict v = certify(atomic_to_table(st, 8), 1e-9);
  CHECK(v.status == Status::kConsistent);
  CHECK(v.witnesses.empty());
}

TEST_CASE("quantum statistics are never refuted") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    AtomicState st = random_atomic(seed, 1 + static_cast<int>(seed % 3));
    Verdict v = certify(atomic_to_table(st, 5), 1e-9);
    CHECK(v.status != Status::kViolation);
  }
}

TEST_CASE("inadmissible input is refuted with the admissibility witness") {
  ProbabilityTable t = coin_table(2);
  t.p_a["00"] = 0.5;  // parent "0" no longer marginalises
  Verdict v = certify(t, 1e-9);
  REQUIRE(v.status == Status::kViolation);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0].check == "admissibility");
  CHECK(v.witnesses[0].measured == doctest::Approx(0.25));
  CHECK(v.witnesses[0].detail == "a:0");
}

TEST_CASE("sequence-dependence is refuted with the offending group") {
  ProbabilityTable t = coin_table(3);
  t.p_a["000"] -= 0.05;
  t.p_a["001"] += 0.05;
  Verdict v = certify(t, 1e-9);
  REQUIRE(v.status == Status::kViolation);
  REQUIRE(v.witnesses.size() == 1);
  const CheckWitness& w = v.witnesses[0];
  CHECK(w.check == "switch-dependence");
  CHECK(w.n == 2);
  CHECK(w.s == 1);
  CHECK(w.measured == doctest::Approx(0.05));
  CHECK(w.detail.find("001") != std::string::npos);
  CHECK(w.detail.find("011") != std::string::npos);
}

TEST_CASE("interleaving sum rule is refuted across processes") {
  // "a first" statistics of a fair coin against "b first" statistics of a
  // biased atom: each side is internally consistent, but the shared F_+
  // table cannot exist.
  AtomicState biased{{Atom{1.0, 0.8, {0.0, 0.0, 0.0}}}};
  ProbabilityTable t;
  t.depth = 4;
  t.p_a = coin_table(4).p_a;
  t.p_b = atomic_to_table(biased, 4).p_b;
  Verdict v = certify(t, 1e-9);
  REQUIRE(v.status == Status::kViolation);
  const CheckWitness* w = find_witness(v, "sum-rule");
  REQUIRE(w != nullptr);
  CHECK(w->n == 2);
  CHECK(w->s == 0);
  CHECK(w->measured == doctest::Approx(0.64 - 0.25));
  // Both sides taken alone are beyond reproach, so nothing else fires.
  CHECK(v.witnesses.size() == 1);
}

TEST_CASE("first-outcome bias is refuted by the series inequality") {
  ProbabilityTable t = biased_r1_table(6, 0.9);
  Verdict v = certify(t, 1e-9);
  REQUIRE(v.status == Status::kViolation);
  const CheckWitness* w = find_witness(v, "series-inequality", 2, 1);
  REQUIRE(w != nullptr);
  CHECK_FALSE(w->undecided);
  // Frozen reference value for this table (depth 6, K = 5, tol = 1e-9).
  CHECK(std::abs(w->margin - 0.013044453452008067) <= 1e-12);

  // The witness is reproducible standalone from the grouped table.
  FBuildOutcome built = table_to_F(t, 1e-9);
  REQUIRE(built.table.has_value());
  SeriesCheck sc = series_inequality(*built.table, 2, 1, v.k_used, v.tol);
  CHECK(sc.decision == -1);
  CHECK(sc.s1 == doctest::Approx(0.4 * (1 - 0.25 - 0.03125 - 0.0078125 -
                                        0.00244140625)).epsilon(1e-14));
  CHECK(sc.s2 == 0.0);
  CHECK(std::abs(sc.lhs.lo - w->measured) <= 1e-15);
  CHECK(std::abs(sc.lhs.lo - sc.rhs_hi - w->margin) <= 1e-15);
}

TEST_CASE("refutations persist under refinement") {
  // Shallow data leaves the comparison open; once the depth resolves the
  // series, the verdict flips to VIOLATION and stays there.
  CHECK(certify(biased_r1_table(3, 0.9), 1e-9).status == Status::kInconclusive);
  bool violated = false;
  for (int depth = 4; depth <= 7; ++depth) {
    const Status st = certify(biased_r1_table(depth, 0.9), 1e-9).status;
    if (violated) CHECK(st == Status::kViolation);
    if (st == Status::kViolation) violated = true;
  }
  CHECK(violated);
  CHECK(certify(biased_r1_table(6, 0.9), 1e-9).status == Status::kViolation);
}

TEST_CASE("series check input guards") {
  FTable f = synthetic_flat_f(5, 0.0);
  CHECK_THROWS_AS(series_inequality(f, 1, 0, 4, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(series_inequality(f, 2, 2, 4, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(series_inequality(f, 6, 1, 4, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(series_inequality(f, 2, 1, 0, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(series_inequality(f, 2, 1, 4, -1.0), std::invalid_argument);
  SeriesCheck sc = series_inequality(f, 2, 1, 4, 1e-9);
  CHECK(sc.decision == +1);  // zero sums against F = 1/4
  CHECK(sc.s1 == 0.0);
  CHECK(sc.s2 == 0.0);
}

TEST_CASE("anchor intervals flag an impossible square root") {
  // C2(k, 0) = 0.8 * 2^-k makes S2x(1) ~ 0.8 sqrt(1/2) > F(1,1) = 1/2, so
  // Vx is imaginary beyond every budget.
  FTable f = synthetic_flat_f(6, 0.0);
  for (int n = 0; n <= 6; ++n)
    for (int s = 0; s <= n; ++s) f.c2(n, s) = 0.8 * std::ldexp(1.0, -n);
  VIntervals vi = v_intervals(f, 1, 5, 1e-9);
  CHECK(vi.sqrt_violated);
  CHECK(vi.worst_arg < 0.0);
}

TEST_CASE("anchor intervals expose an empty most-favorable rectangle") {
  // C1 = 0.9 * 2^-n along the diagonal only: the anchored sums cx(n) grow
  // towards 0.9 sqrt(2) with n while the n = 2 upper interval end stays near
  // cx(2) + F(2,2), so the running lower bound sup_n Vx-(n) overtakes the
  // running upper bound inf_n Vx+(n): no anchor moment fits all depths.
  FTable f = synthetic_flat_f(8, 0.0);
  for (int n = 0; n <= 8; ++n) f.c1(n, n) = 0.9 * std::ldexp(1.0, -n);
  double x0 = -1e300, y0 = -1e300, x1 = 1e300, y1 = 1e300;
  for (int n = 2; n <= 8; ++n) {
    VIntervals vi = v_intervals(f, n, 8, 1e-9);
    CHECK_FALSE(vi.sqrt_violated);
    CHECK_FALSE(vi.sqrt_undecided);
    x0 = std::max(x0, vi.vx_minus.lo);
    y0 = std::max(y0, vi.vz_minus.lo);
    x1 = std::min(x1, vi.vx_plus.hi);
    y1 = std::min(y1, vi.vz_plus.hi);
  }
  CHECK(x0 > x1);
  RegionPoint corner{x0, y0, x1, y1};
  CHECK_FALSE(in_region_clauses(corner, 1e-9));
  CHECK(first_failing_clause(corner, 1e-9) == 1);
  CHECK_THROWS_AS(v_intervals(f, 0, 8, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(v_intervals(f, 9, 8, 1e-9), std::invalid_argument);
}

TEST_CASE("certify input guards") {
  CHECK_THROWS_AS(certify(ProbabilityTable{}, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(certify(coin_table(2), -1e-9), std::invalid_argument);
  CHECK_THROWS_AS(certify(coin_table(2), 1e-9, 0), std::invalid_argument);
  ProbabilityTable t = coin_table(2);
  t.p_a.erase("01");
  CHECK_THROWS_AS(certify(t, 1e-9), TableStructureError);
}

TEST_CASE("single-process truncation check") {
  std::map<std::string, double> p{{"0", 0.5},  {"1", 0.5},  {"00", 0.2},
                                  {"01", 0.3}, {"10", 0.4}, {"11", 0.1}};
  ATruncationVerdict v = certify_a_truncation(p, 2, 1e-9);
  CHECK(v.admissible);
  CHECK(v.admissibility_residual <= 1e-15);
  // Grouping by (n, s) alone merges "01" and "10"; the finer grouping that
  // also keys on the first outcome sees only singletons.
  CHECK_FALSE(v.by_s.consistent);
  CHECK(v.by_s.max_spread == doctest::Approx(0.1));
  CHECK(v.by_s.n == 1);
  CHECK(v.by_s.s == 1);
  CHECK(((v.by_s.lo_r == "01" && v.by_s.hi_r == "10")));
  CHECK(v.by_s_r1.consistent);
  CHECK(v.by_s_r1.max_spread == 0.0);
  CHECK(v.status == Status::kViolation);

  SUBCASE("symmetric sibling masses pass") {
    p["00"] = 0.3;
    p["01"] = 0.2;
    p["10"] = 0.2;
    p["11"] = 0.3;
    ATruncationVerdict ok = certify_a_truncation(p, 2, 1e-9);
    CHECK(ok.status == Status::kConsistent);
    CHECK(ok.by_s.consistent);
    CHECK(ok.by_s_r1.consistent);
  }
  SUBCASE("inadmissible single-process data is refuted") {
    p["0"] = 0.7;  // root no longer sums to 1 and "0" stops marginalising
    ATruncationVerdict bad = certify_a_truncation(p, 2, 1e-9);
    CHECK_FALSE(bad.admissible);
    CHECK(bad.status == Status::kViolation);
  }
  SUBCASE("missing keys throw") {
    p.erase("11");
    CHECK_THROWS_AS(certify_a_truncation(p, 2, 1e-9), TableStructureError);
  }
}
