#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qbox/qmodel.hpp"
#include "qbox/rng.hpp"

using namespace qbox;

namespace {

AtomicState fair_coin_atom() {
  return AtomicState{{Atom{1.0, 0.5, {0.0, 0.0, 0.0}}}};
}

AtomicState random_atomic(std::uint64_t seed, int n_atoms) {
  std::mt19937_64 rng(seed);
  AtomicState st;
  double total = 0.0;
  for (int j = 0; j < n_atoms; ++j) {
    Atom a;
    a.w = 0.1 + uniform01(rng);
    total += a.w;
    a.t = uniform01(rng);
    // Random point of the closed Bloch ball.
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

double table_gap(const ProbabilityTable& x, const ProbabilityTable& y) {
  double worst = 0.0;
  for (const auto& [r, v] : x.p_a) worst = std::max(worst, std::abs(v - y.at('a', r)));
  for (const auto& [r, v] : x.p_b) worst = std::max(worst, std::abs(v - y.at('b', r)));
  return worst;
}

}  // namespace

TEST_CASE("model validation") {
  FiniteDimModel m = atomic_to_finite_model(fair_coin_atom());
  auto rep = validate_model(m, 1e-12);
  CHECK(rep.ok);
  CHECK(rep.proj_residual <= 1e-15);
  CHECK(rep.trace_residual <= 1e-15);
  CHECK(rep.min_eigenvalue >= -1e-15);

  SUBCASE("non-projection is rejected") {
    FiniteDimModel bad = m;
    bad.A = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
    auto r = validate_model(bad, 1e-9);
    CHECK_FALSE(r.ok);
    CHECK(r.proj_residual == doctest::Approx(0.25));
  }
  SUBCASE("wrong trace is rejected") {
    FiniteDimModel bad = m;
    bad.rho0 *= 2.0;
    auto r = validate_model(bad, 1e-9);
    CHECK_FALSE(r.ok);
    CHECK(r.trace_residual == doctest::Approx(1.0));
  }
  SUBCASE("negative state is rejected") {
    FiniteDimModel bad = m;
    bad.rho0(0, 0) = -0.2;
    bad.rho0(1, 1) = 1.2;
    auto r = validate_model(bad, 1e-9);
    CHECK_FALSE(r.ok);
    CHECK(r.min_eigenvalue == doctest::Approx(-0.2));
  }
  SUBCASE("shape errors throw") {
    FiniteDimModel bad = m;
    bad.dim = 3;
    CHECK_THROWS_AS(validate_model(bad, 1e-9), std::invalid_argument);
    bad.dim = 0;
    CHECK_THROWS_AS(validate_model(bad, 1e-9), std::invalid_argument);
  }
}

TEST_CASE("simulation basics") {
  FiniteDimModel m = atomic_to_finite_model(fair_coin_atom());
  // The maximally mixed qubit with an unbiased second measurement makes every
  // record equally likely.
  for (int L = 1; L <= 5; ++L) {
    auto dist = simulate_sequence(m, 'a', L);
    CHECK(dist.size() == (std::size_t{1} << L));
    double total = 0.0;
    for (const auto& [r, p] : dist) {
      CHECK(p == doctest::Approx(std::ldexp(1.0, -L)).epsilon(1e-12));
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(simulate_sequence(m, 'a', 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_sequence(m, 'a', kMaxTableDepth + 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_sequence(m, 'c', 2), std::invalid_argument);

  // Tables are admissible by construction (unnormalised-state evolution
  // conserves trace across each refinement).
  ProbabilityTable t = simulate_table(m, 5);
  auto rep = validate_admissible(t, 1e-12);
  CHECK(rep.ok);
}

TEST_CASE("closed-form grouped statistics of an atom") {
  AtomicState st{{Atom{1.0, 0.5, {1.0, 0.0, 0.0}}}};
  for (int n = 0; n <= 4; ++n) {
    for (int s = 0; s <= n; ++s) {
      AtomF f = atomic_f(st, n, s);
      const double base = std::ldexp(1.0, -n);
      CHECK(f.f_plus == doctest::Approx(base).epsilon(1e-14));
      CHECK(f.f_minus_a == 0.0);
      CHECK(f.f_minus_b == doctest::Approx(base).epsilon(1e-14));
      CHECK(f.c1 == doctest::Approx(0.5 * base).epsilon(1e-14));
      CHECK(f.c2 == doctest::Approx(-0.5 * base).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(atomic_f(st, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(atomic_f(st, -1, 0), std::invalid_argument);
}

TEST_CASE("atomic state validation") {
  CHECK(validate_atomic(random_atomic(7, 3), 1e-12).ok);
  CHECK_FALSE(validate_atomic(AtomicState{}, 1e-9).ok);

  AtomicState bad{{Atom{0.5, 0.5, {0, 0, 0}}}};
  auto rep = validate_atomic(bad, 1e-9);
  CHECK_FALSE(rep.ok);
  CHECK(rep.worst_residual == doctest::Approx(0.5));

  AtomicState longb{{Atom{1.0, 0.5, {1.0, 1.0, 0.0}}}};
  CHECK_FALSE(validate_atomic(longb, 1e-9).ok);

  AtomicState badt{{Atom{1.0, 1.5, {0, 0, 0}}}};
  CHECK_FALSE(validate_atomic(badt, 1e-9).ok);
}

TEST_CASE("closed-form tables match the simulated realisation") {
  // Single fair atom: every entry of both constructions is 2^-|r|.
  AtomicState coin = fair_coin_atom();
  CHECK(table_gap(atomic_to_table(coin, 4),
                  simulate_table(atomic_to_finite_model(coin), 4)) <= 1e-14);

  // Random mixtures, block-diagonal realisation of dimension 2 * atoms.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    AtomicState st = random_atomic(seed, 1 + static_cast<int>(seed % 3));
    REQUIRE(validate_atomic(st, 1e-12).ok);
    FiniteDimModel m = atomic_to_finite_model(st);
    REQUIRE(validate_model(m, 1e-12).ok);
    CHECK(table_gap(atomic_to_table(st, 4), simulate_table(m, 4)) <= 1e-13);
  }
}

TEST_CASE("pre/post conditioning is unbiased when outcomes differ") {
  for (std::uint64_t seed = 11; seed <= 16; ++seed) {
    FiniteDimModel m = atomic_to_finite_model(random_atomic(seed, 2));
    for (int pre : {0, 1}) {
      for (int post : {0, 1}) {
        auto cond = conditional_prepost(m, pre, post, 1e-9);
        if (!cond) continue;
        CHECK(cond->first + cond->second == doctest::Approx(1.0).epsilon(1e-12));
        if (pre != post) {
          CHECK(cond->first == doctest::Approx(0.5).epsilon(1e-9));
          CHECK(cond->second == doctest::Approx(0.5).epsilon(1e-9));
        }
      }
    }
  }

  // A state supported on the a = 1 eigenspace makes the pre = 0 event
  // impossible, so the conditional distribution is undefined.
  AtomicState up{{Atom{1.0, 0.3, {0.0, 0.0, 1.0}}}};
  FiniteDimModel m = atomic_to_finite_model(up);
  CHECK_FALSE(conditional_prepost(m, 0, 1, 1e-9).has_value());
  CHECK(conditional_prepost(m, 1, 0, 1e-9).has_value());
  CHECK_THROWS_AS(conditional_prepost(m, 2, 0, 1e-9), std::invalid_argument);
}

TEST_CASE("three orthogonal boxes") {
  ThreeBoxReport rep = three_box_demo();
  CHECK(rep.overlap_abs <= 1e-14);
  for (double p : rep.box_prob)
    CHECK(std::abs(p - 0.5) <= 1e-12);
}
