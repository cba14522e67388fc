#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "doctest.h"
#include "qbox/seqcore.hpp"

using namespace qbox;

namespace {

// Exact fair-coin table: P_i(r) = 2^-|r| for every string.
ProbabilityTable coin_table(int depth) {
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

}  // namespace

TEST_CASE("switch_count") {
  CHECK(switch_count("0") == 0);
  CHECK(switch_count("000") == 0);
  CHECK(switch_count("0101") == 3);
  CHECK(switch_count("110") == 1);
  CHECK(switch_count("1001") == 2);
  CHECK_THROWS_AS(switch_count(""), std::invalid_argument);
  CHECK_THROWS_AS(switch_count("012"), std::invalid_argument);
}

TEST_CASE("all_outcome_strings") {
  CHECK(all_outcome_strings(0) == std::vector<std::string>{""});
  CHECK(all_outcome_strings(2) ==
        std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(all_outcome_strings(5).size() == 32);
  CHECK_THROWS_AS(all_outcome_strings(-1), std::invalid_argument);
}

TEST_CASE("table access") {
  ProbabilityTable t = coin_table(2);
  CHECK(t.at('a', "01") == 0.25);
  CHECK(&t.side('b') == &t.p_b);
  CHECK_THROWS_AS(t.at('a', "000"), TableStructureError);
  CHECK_THROWS_AS(t.side('c'), std::invalid_argument);
  t.p_b.erase("10");
  auto missing = missing_keys(t);
  REQUIRE(missing.size() == 1);
  CHECK(missing[0] == "b:10");
}

TEST_CASE("admissibility validation") {
  SUBCASE("fair coin is exactly admissible") {
    auto rep = validate_admissible(coin_table(4), 0.0);
    CHECK(rep.ok);
    CHECK(rep.worst_residual == 0.0);
  }
  SUBCASE("broken root sum is caught with an empty witness") {
    ProbabilityTable t = coin_table(2);
    t.p_a["0"] = 0.6;
    t.p_a["1"] = 0.6;
    // Keep the children consistent with the inflated parents so the root is
    // the only defect.
    t.p_a["00"] = t.p_a["01"] = 0.3;
    t.p_a["10"] = t.p_a["11"] = 0.3;
    auto rep = validate_admissible(t, 1e-9);
    CHECK_FALSE(rep.ok);
    CHECK(rep.process == 'a');
    CHECK(rep.witness == "");
    CHECK(rep.worst_residual == doctest::Approx(0.2));
  }
  SUBCASE("broken marginalisation points at the parent") {
    ProbabilityTable t = coin_table(3);
    t.p_b["010"] = 0.25;  // parent "01" no longer splits correctly
    auto rep = validate_admissible(t, 1e-9);
    CHECK_FALSE(rep.ok);
    CHECK(rep.process == 'b');
    CHECK(rep.witness == "01");
    CHECK(rep.worst_residual == doctest::Approx(0.125));
  }
  SUBCASE("out-of-range entry") {
    ProbabilityTable t = coin_table(1);
    t.p_a["0"] = -0.25;
    t.p_a["1"] = 1.25;
    auto rep = validate_admissible(t, 1e-9);
    CHECK_FALSE(rep.ok);
    CHECK(rep.worst_residual == doctest::Approx(0.25));
  }
  SUBCASE("missing keys throw") {
    ProbabilityTable t = coin_table(2);
    t.p_a.erase("11");
    CHECK_THROWS_AS(validate_admissible(t, 1e-9), TableStructureError);
  }
}

TEST_CASE("random_admissible") {
  ProbabilityTable t1 = random_admissible(5, 42);
  ProbabilityTable t2 = random_admissible(5, 42);
  ProbabilityTable t3 = random_admissible(5, 43);
  CHECK(t1.p_a == t2.p_a);
  CHECK(t1.p_b == t2.p_b);
  CHECK(t1.p_a != t3.p_a);
  CHECK(t1.p_a.size() == 2 + 4 + 8 + 16 + 32);
  // The recursive construction is admissible up to a couple of rounding ulps.
  auto rep = validate_admissible(t1, 1e-12);
  CHECK(rep.ok);
}

TEST_CASE("grouping the fair coin") {
  auto out = table_to_F(coin_table(5), 1e-12);
  REQUIRE(out.table.has_value());
  CHECK_FALSE(out.witness.has_value());
  const FTable& f = *out.table;
  CHECK(f.n_max == 4);
  CHECK(f.max_spread == 0.0);
  for (int n = 0; n <= f.n_max; ++n) {
    for (int s = 0; s <= n; ++s) {
      CHECK(f.f[0][0](n, s) == std::ldexp(1.0, -(n + 1)));
      CHECK(f.f_plus[0](n, s) == std::ldexp(1.0, -n));
      CHECK(f.f_plus[1](n, s) == std::ldexp(1.0, -n));
      CHECK(f.f_plus_avg(n, s) == std::ldexp(1.0, -n));
      CHECK(f.f_minus[0](n, s) == 0.0);
      CHECK(f.c1(n, s) == 0.0);
      CHECK(f.c2(n, s) == 0.0);
    }
  }
}

TEST_CASE("grouping detects sequence-dependence beyond (r1, n, s)") {
  ProbabilityTable t = coin_table(3);
  // Shift mass between the two children of "00": admissibility is preserved,
  // but the group (a, r1=0, n=2, s=1) = {"001", "011"} now has spread 0.05.
  t.p_a["000"] -= 0.05;
  t.p_a["001"] += 0.05;
  auto out = table_to_F(t, 1e-9);
  CHECK_FALSE(out.table.has_value());
  REQUIRE(out.witness.has_value());
  const SwitchWitness& w = *out.witness;
  CHECK(w.process == 'a');
  CHECK(w.r1 == 0);
  CHECK(w.n == 2);
  CHECK(w.s == 1);
  CHECK(w.lo_r == "011");
  CHECK(w.hi_r == "001");
  CHECK(w.spread == doctest::Approx(0.05));
  CHECK(w.hi == doctest::Approx(0.175));
  CHECK(w.lo == doctest::Approx(0.125));

  // The same table passes when the grouping tolerance absorbs the spread, and
  // the group value is then the arithmetic mean.
  auto loose = table_to_F(t, 0.1);
  REQUIRE(loose.table.has_value());
  CHECK(loose.table->max_spread == doctest::Approx(0.05));
  CHECK(loose.table->f[0][0](2, 1) == doctest::Approx(0.15));
}

TEST_CASE("grouping rejects inadmissible input") {
  ProbabilityTable t = coin_table(2);
  t.p_a["00"] = 0.5;  // breaks marginalisation under "0"
  CHECK_THROWS_AS(table_to_F(t, 1e-9), std::invalid_argument);
}
