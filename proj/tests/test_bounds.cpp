#include <catch2/catch_amalgamated.hpp>

#include "cpfq/bounds.hpp"

using namespace cpfq;

TEST_CASE("bound values on worked examples") {
  // GL(2,2): bound exceeds the exact maximum 2/3
  CHECK(bound_gl(2, 2).dominates(make_rat(2, 3)));
  // GL(1,2): e^6 (1 + log_2 2)^6 / 2 = 64 e^6 / 2, far above 1
  CHECK(bound_gl(1, 2).dominates(Rat(1)));
  CHECK(bound_gl(1, 2).approx() == Catch::Approx(32 * std::exp(6.0)));

  CHECK(bound_gu(1, 2).dominates(make_rat(1, 3)));
  CHECK(bound_gu(1, 2).approx() ==
        Catch::Approx(std::exp(1.0) * 3.0 / 2.0).epsilon(1e-9));

  CHECK(bound_sp(1, 3).dominates(make_rat(3, 8)));
  CHECK(bound_sp(1, 2).dominates(make_rat(2, 3)));
  CHECK(bound_o(2, 3).dominates(Rat(1)));

  CHECK_THROWS_AS(bound_o(3, 2), error);  // odd dim, even char
}

TEST_CASE("bounds decrease in q for fixed n") {
  std::vector<u32> qs = {2, 3, 4, 5, 7, 8, 9};
  for (u32 n : {2u, 5u, 10u}) {
    for (size_t i = 1; i < qs.size(); ++i) {
      CHECK(bound_gl(n, qs[i]) < bound_gl(n, qs[i - 1]));
      CHECK(bound_gu(n, qs[i]) < bound_gu(n, qs[i - 1]));
    }
  }
  // decreasing in n beyond the crossover for q = 2
  for (u32 n = 10; n < 60; ++n)
    CHECK(bound_gl(n + 1, 2) < bound_gl(n, 2));
}

TEST_CASE("exact maxima never exceed the bounds (unit-scale grid)") {
  for (u32 q : {2u, 3u})
    for (u32 n = 1; n <= 12; ++n)
      REQUIRE(bound_gl(n, q).dominates(max_prob_gl(n, q)));
  for (u32 q : {2u, 3u})
    for (u32 n = 1; n <= 8; ++n)
      REQUIRE(bound_sp(n, q).dominates(max_prob_sp(n, q)));
}

TEST_CASE("max-probability DP agrees with exhaustive enumeration") {
  for (u32 q : {2u, 3u}) {
    const Fq& F = field_for_q(q);
    for (u32 n = 1; n <= 4; ++n) {
      Rat best(0);
      for (u64 idx = 0; idx < monic_count(F, n); ++idx) {
        Poly phi = monic_by_index(F, n, idx);
        Rat p = prob_gl(F, n, phi);
        if (p > best) best = p;
      }
      REQUIRE(max_prob_gl(n, q) == best);
    }
    for (u32 n = 1; n <= 2; ++n) {
      Rat best(0);
      for (u64 idx = 0; idx < monic_count(F, 2 * n); ++idx) {
        Poly phi = monic_by_index(F, 2 * n, idx);
        Rat p = prob_sp(F, n, phi);
        if (p > best) best = p;
      }
      REQUIRE(max_prob_sp(n, q) == best);
    }
  }
}

TEST_CASE("GL lower bound: value, attainment, identity") {
  auto lb = lower_bound_gl(2, 2);
  CHECK(lb.probability == make_rat(1, 3));
  CHECK(lb.element_count == 2);  // |GL(1,2)| * 2

  for (u32 q = 2; q <= 9; ++q) {
    if (q == 6 || q == 8) continue;  // 8 fine, 6 not prime power; keep 8
    for (u32 n = 1; n <= 12; ++n) CHECK_NOTHROW(lower_bound_gl(n, q));
  }
  CHECK_NOTHROW(lower_bound_gl(12, 8));

  // minimum attained exactly by irreducibles on a small grid
  for (u32 q : {2u, 3u}) {
    const Fq& F = field_for_q(q);
    for (u32 n = 1; n <= 5; ++n) {
      Rat target = lower_bound_gl(n, q).probability;
      Rat minimum(1);
      bool attained = false;
      for (u64 idx = 0; idx < monic_count(F, n); ++idx) {
        Poly phi = monic_by_index(F, n, idx);
        if (phi.coeff(0) == 0) continue;
        Rat p = prob_gl(F, n, phi);
        if (p < minimum) minimum = p;
        if (p == target) attained = true;
      }
      REQUIRE(minimum == target);
      REQUIRE(attained);
    }
  }
}

TEST_CASE("euler tail bound chains") {
  CHECK(euler_tail_bounds(2, 1, 6));
  CHECK(euler_tail_bounds(2, 2, 2));
  CHECK(euler_tail_bounds(3, 1, 3));
  for (u32 q = 2; q <= 16; ++q)
    for (u32 a = 1; a <= 10; ++a) {
      REQUIRE(euler_tail_bounds(q, a, 6));
      if (a >= 2) REQUIRE(euler_tail_bounds(q, a, 2));
      if (q >= 3) REQUIRE(euler_tail_bounds(q, a, 3));
    }
  CHECK_THROWS_AS(euler_tail_bounds(2, 1, 2), error);
  CHECK_THROWS_AS(euler_tail_bounds(2, 1, 5), error);
}

TEST_CASE("r-selection inequality") {
  for (u32 q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    bool all_ok = true;
    for (u64 n = 1; n <= 10000; ++n) all_ok &= r_selection_check(n, q);
    REQUIRE(all_ok);
  }
}
