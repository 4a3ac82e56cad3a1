#include <catch2/catch_amalgamated.hpp>

#include "cpfq/invariable.hpp"

using namespace cpfq;

TEST_CASE("invariant subset predicate") {
  CHECK_FALSE(has_invariant_subset({3}, 1));
  CHECK(has_invariant_subset({2, 1}, 2));
  CHECK_FALSE(has_invariant_subset({5, 3}, 4));
  CHECK(has_invariant_subset({5, 3}, 3));
  CHECK(has_invariant_subset({3}, 0));
  CHECK(has_invariant_subset({3}, 3));
}

TEST_CASE("invariant subspace predicate") {
  CHECK_FALSE(has_invariant_subspace({{2, 1}}, 1));
  CHECK(has_invariant_subspace({{1, 2}}, 1));
  CHECK_FALSE(has_invariant_subspace({{3, 1}, {1, 1}}, 2));
  CHECK(has_invariant_subspace({{3, 1}, {1, 1}}, 4));
}

TEST_CASE("subset duality: e and n-e are equivalent") {
  for (u32 n = 1; n <= 12; ++n)
    detail::for_each_partition(n, [&](const CycleType& ct) {
      for (u32 e = 0; e <= n; ++e)
        REQUIRE(has_invariant_subset(ct, e) ==
                has_invariant_subset(ct, n - e));
    });
}

TEST_CASE("symmetric-group avoidance probabilities") {
  CHECK(prob_sym_no_invariant(2, 1) == make_rat(1, 2));
  CHECK(prob_sym_no_invariant(3, 1) == make_rat(1, 3));
  CHECK(prob_sym_no_invariant(4, 2) == make_rat(7, 12));

  // exhaustive S_n oracle for n <= 8: iterate all permutations
  for (u32 n = 2; n <= 8; ++n) {
    std::vector<u32> perm(n);
    for (u32 i = 0; i < n; ++i) perm[i] = i;
    std::vector<u64> blocked(n + 1, 0);
    u64 total = 0;
    do {
      ++total;
      std::vector<bool> seen(n, false);
      CycleType ct;
      for (u32 i = 0; i < n; ++i) {
        if (seen[i]) continue;
        u32 len = 0, j = i;
        while (!seen[j]) {
          seen[j] = true;
          j = perm[j];
          ++len;
        }
        ct.push_back(len);
      }
      SumSet sums = subset_sums(ct, n);
      for (u32 e = 0; e <= n; ++e)
        if (!sums.contains(e)) blocked[e]++;
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto exact = prob_sym_no_invariant_all(n);
    for (u32 e = 0; e <= n; ++e)
      REQUIRE(exact[e] == make_rat(blocked[e], total));
  }

  // symmetry in e <-> n-e
  auto all9 = prob_sym_no_invariant_all(9);
  for (u32 e = 0; e <= 9; ++e) REQUIRE(all9[e] == all9[9 - e]);

  CHECK_THROWS_AS(prob_sym_no_invariant(50, 1), error);  // over the cap
}

TEST_CASE("GL-side avoidance probabilities") {
  CHECK(prob_gl_no_invariant(2, 2, 1) == make_rat(1, 3));
  CHECK(prob_gl_no_invariant(2, 3, 1) == make_rat(3, 8));
  CHECK(prob_gl_no_invariant(3, 2, 1) == make_rat(2, 7));

  // masses over all masks sum to one
  for (u32 q : {2u, 3u})
    for (u32 n = 1; n <= 6; ++n) {
      auto dist = detail::gl_submask_distribution(n, q);
      Rat total(0);
      for (auto& [mask, w] : dist) total += w;
      REQUIRE(total == 1);
    }

  // enumeration oracle on small groups
  for (const auto& s : std::vector<GroupSpec>{
           {Family::GL, 2, 2}, {Family::GL, 3, 2}, {Family::GL, 4, 2},
           {Family::GL, 2, 3}, {Family::GL, 3, 3}, {Family::GL, 2, 5},
           {Family::GL, 2, 7}}) {
    const Fq& F = spec_field(s);
    const auto& elems = enumerate_group_cached(s);
    std::vector<u64> blocked(s.n + 1, 0);
    for (const Mat& g : elems) {
      auto prof = factor_profile(factorize(F, char_poly(F, g)));
      SumSet sums = subspace_sums(prof, s.n);
      for (u32 e = 0; e <= s.n; ++e)
        if (!sums.contains(e)) blocked[e]++;
    }
    auto exact = prob_gl_no_invariant_all(s.n, s.q);
    for (u32 e = 0; e <= s.n; ++e)
      REQUIRE(exact[e] == make_rat(blocked[e], elems.size()));
  }
}

TEST_CASE("strict inequality between GL and S_n avoidance") {
  CHECK(check_strict_inequality(2, 2, 1).strict);
  CHECK(check_strict_inequality(3, 2, 1).strict);
  CHECK(check_strict_inequality(4, 3, 2).strict);
  // a unit-scale corner of the acceptance grid
  for (u32 n = 2; n <= 8; ++n)
    for (u32 q : {2u, 3u}) {
      auto gl = prob_gl_no_invariant_all(n, q);
      auto sym = prob_sym_no_invariant_all(n);
      for (u32 e = 1; e < n; ++e) REQUIRE(gl[e] < sym[e]);
    }
}

TEST_CASE("invariable transitivity predicate") {
  CHECK(invariably_transitive({{3}}));
  CHECK_FALSE(invariably_transitive({{2, 1}, {2, 1}, {2, 1}}));
  CHECK(invariably_transitive({{3}, {2, 1}}));
  CHECK(invariably_transitive({{5}}));
  CHECK_FALSE(invariably_transitive({{4, 1}}));
  CHECK_THROWS_AS(invariably_transitive({{3}, {2, 2}}), error);
  CHECK_THROWS_AS(invariably_transitive({}), error);
}

TEST_CASE("monte carlo matches exact invariable probabilities") {
  // n=3, r=1: exactly the 3-cycles, probability 1/3
  CHECK(exact_invariable_sym(3, 1) == make_rat(1, 3));
  auto mc = mc_invariable_sym(3, 1, 20000, 11);
  CHECK(mc.ci.low <= 1.0 / 3);
  CHECK(1.0 / 3 <= mc.ci.high);

  // n=4, r=2 against the exhaustive pairing of cycle types
  Rat exact42 = exact_invariable_sym(4, 2);
  auto mc42 = mc_invariable_sym(4, 2, 20000, 12);
  CHECK(mc42.ci.low <= to_double(exact42));
  CHECK(to_double(exact42) <= mc42.ci.high);

  // single-element containment sanity: P(no e-set for ALL e) <= P(no e-set)
  auto all = prob_sym_no_invariant_all(6);
  Rat tuple1 = exact_invariable_sym(6, 1);
  for (u32 e = 1; e < 6; ++e) REQUIRE(tuple1 <= all[e]);
}

TEST_CASE("profile sampler matches the exact GL distribution") {
  const u32 n = 4, q = 2;
  GlProfileSampler sampler(n, q);
  // collect exact masses per profile by enumerating polynomials
  const Fq& F = field_for_q(q);
  std::map<DegMultProfile, Rat> exact;
  for (u64 idx = 0; idx < monic_count(F, n); ++idx) {
    Poly phi = monic_by_index(F, n, idx);
    if (phi.coeff(0) == 0) continue;
    exact[factor_profile(factorize(F, phi))] += prob_gl(F, n, phi);
  }
  std::map<DegMultProfile, u64> counts;
  Rng rng(31337);
  const u64 trials = 30000;
  for (u64 t = 0; t < trials; ++t) counts[sampler.sample(rng)]++;
  for (auto& [prof, mass] : exact) {
    double expect = to_double(mass) * trials;
    double got = static_cast<double>(counts[prof]);
    if (expect < 25) continue;
    REQUIRE(std::abs(got - expect) <= 5 * std::sqrt(expect));
  }
}

TEST_CASE("GL-side invariable estimate covers the derived exact value") {
  // r=1: P(profile blocks every 1 <= e < n) is exactly
  // prob of all-blocking masks from the DP
  const u32 n = 4, q = 2;
  auto dist = detail::gl_submask_distribution(n, q);
  Rat exact(0);
  for (auto& [mask, w] : dist) {
    bool blocked_all = true;
    for (u32 e = 1; e < n; ++e)
      if ((mask >> e) & 1) blocked_all = false;
    if (blocked_all) exact += w;
  }
  auto mc = mc_invariable_gl(n, q, 1, 20000, 5150);
  CHECK(mc.ci.low <= to_double(exact));
  CHECK(to_double(exact) <= mc.ci.high);
}
