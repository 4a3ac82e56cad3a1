#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "cpfq/factorize.hpp"
#include "cpfq/field.hpp"
#include "cpfq/matrix.hpp"

using namespace cpfq;

namespace {

// independent irreducibility oracle: trial division by every monic
// polynomial of smaller degree
bool irreducible_by_trial_division(const Fq& F, const Poly& f) {
  int d = f.deg();
  if (d <= 0) return false;
  if (d == 1) return true;
  for (int e = 1; 2 * e <= d; ++e)
    for (u64 idx = 0; idx < monic_count(F, static_cast<u32>(e)); ++idx) {
      Poly g = monic_by_index(F, static_cast<u32>(e), idx);
      if (p_divmod(F, f, g).second.is_zero()) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("polynomial ring arithmetic") {
  const Fq& f2 = Fq::get(2, 1);
  Poly t1 = p_from_ints(f2, {1, 1});  // t+1
  CHECK(p_mul(f2, t1, t1) == p_from_ints(f2, {1, 0, 1}));  // t^2+1

  CHECK(p_gcd(f2, p_from_ints(f2, {1, 0, 1}), t1) == t1);

  const Fq& f3 = Fq::get(3, 1);
  auto [q, r] = p_divmod(f3, p_monomial(3), p_from_ints(f3, {1, 0, 1}));
  CHECK(q == p_monomial(1));
  CHECK(r == p_from_ints(f3, {0, -1}));  // -t

  CHECK_THROWS_AS(p_divmod(f3, p_monomial(1), Poly()), error);
}

TEST_CASE("factorization worked examples") {
  const Fq& f2 = Fq::get(2, 1);
  auto fact = factorize(f2, p_from_ints(f2, {1, 1, 1}));
  REQUIRE(fact.parts.size() == 1);
  CHECK(fact.parts[0].mult == 1);

  fact = factorize(f2, p_from_ints(f2, {1, 0, 1}));  // (t+1)^2
  REQUIRE(fact.parts.size() == 1);
  CHECK(fact.parts[0].f == p_from_ints(f2, {1, 1}));
  CHECK(fact.parts[0].mult == 2);

  // t^4 + t = t (t+1) (t^2+t+1)
  fact = factorize(f2, p_from_ints(f2, {0, 1, 0, 0, 1}));
  REQUIRE(fact.parts.size() == 3);
  for (const auto& part : fact.parts) {
    CHECK(part.mult == 1);
    CHECK(irreducible_by_trial_division(f2, part.f));
  }
  CHECK(factorization_product(f2, fact) == p_from_ints(f2, {0, 1, 0, 0, 1}));

  CHECK_THROWS_AS(factorize(f2, Poly()), error);
}

TEST_CASE("factorize then re-multiply equals the input") {
  for (u32 qv : {2u, 3u, 4u, 5u}) {
    const Fq& F = field_for_q(qv);
    Rng rng(777 + qv);
    for (u32 d = 1; d <= 8; ++d) {
      u32 trials = 1250;  // 10^4 per q across the degree grid
      for (u32 t = 0; t < trials; ++t) {
        std::vector<u32> cs(d + 1);
        for (auto& x : cs) x = static_cast<u32>(rng.below(F.q()));
        Poly f(std::move(cs));
        if (f.is_zero()) continue;
        auto fact = factorize(F, f, 31 * t + d);
        REQUIRE(factorization_product(F, fact) == f);
        for (const auto& part : fact.parts) REQUIRE(p_is_monic(part.f));
      }
    }
  }
}

TEST_CASE("factorization is independent of the splitting seed") {
  const Fq& f3 = Fq::get(3, 1);
  Rng rng(5);
  for (u32 t = 0; t < 200; ++t) {
    std::vector<u32> cs(7);
    for (auto& x : cs) x = static_cast<u32>(rng.below(3u));
    Poly f(std::move(cs));
    if (f.is_zero()) continue;
    auto a = factorize(f3, f, 1);
    auto b = factorize(f3, f, 999);
    REQUIRE(a.parts.size() == b.parts.size());
    for (size_t i = 0; i < a.parts.size(); ++i) {
      REQUIRE(a.parts[i].f == b.parts[i].f);
      REQUIRE(a.parts[i].mult == b.parts[i].mult);
    }
  }
}

TEST_CASE("characteristic polynomial") {
  const Fq& f2 = Fq::get(2, 1);
  Mat id2 = mat_identity(2);
  CHECK(char_poly(f2, id2) == p_from_ints(f2, {1, 0, 1}));  // (t+1)^2

  Poly m = p_from_ints(f2, {1, 1, 1});
  CHECK(char_poly(f2, companion_matrix(f2, m)) == m);

  const Fq& f3 = Fq::get(3, 1);
  Mat swap2(2);
  swap2.at(0, 1) = 1;
  swap2.at(1, 0) = 1;
  CHECK(char_poly(f3, swap2) == p_from_ints(f3, {-1, 0, 1}));  // t^2 - 1
}

TEST_CASE("char poly agrees with cofactor expansion oracle") {
  // oracle: det(tI - M) over the polynomial ring by Leibniz expansion
  auto leibniz = [](const Fq& F, const Mat& M) {
    u32 n = M.n;
    std::vector<u32> perm(n);
    for (u32 i = 0; i < n; ++i) perm[i] = i;
    Poly acc;
    int sign;
    std::function<void(u32, int)> go = [&](u32 depth, int sgn) {
      if (depth == n) {
        Poly term = p_const(1);
        for (u32 i = 0; i < n; ++i) {
          Poly entry = (perm[i] == i)
                           ? p_sub(F, p_monomial(1), p_const(M.at(i, i)))
                           : p_const(F.neg(M.at(i, perm[i])));
          term = p_mul(F, term, entry);
        }
        if (sgn < 0) term = p_neg(F, term);
        acc = p_add(F, acc, term);
        return;
      }
      for (u32 j = depth; j < n; ++j) {
        std::swap(perm[depth], perm[j]);
        go(depth + 1, j == depth ? sgn : -sgn);
        std::swap(perm[depth], perm[j]);
      }
    };
    sign = 1;
    go(0, sign);
    return acc;
  };

  for (u32 qv : {2u, 3u, 4u, 5u, 9u}) {
    const Fq& F = field_for_q(qv);
    Rng rng(42 + qv);
    for (u32 n = 1; n <= 5; ++n)
      for (u32 t = 0; t < 20; ++t) {
        Mat M = random_matrix(F, n, rng);
        REQUIRE(char_poly(F, M) == leibniz(F, M));
      }
  }
}

TEST_CASE("char poly of block diagonal is the product of blocks") {
  const Fq& f3 = Fq::get(3, 1);
  Rng rng(7);
  for (u32 t = 0; t < 200; ++t) {
    u32 na = 1 + static_cast<u32>(rng.below(3));
    u32 nb = 1 + static_cast<u32>(rng.below(3));
    Mat A = random_matrix(f3, na, rng), B = random_matrix(f3, nb, rng);
    REQUIRE(char_poly(f3, mat_block_diag(A, B)) ==
            p_mul(f3, char_poly(f3, A), char_poly(f3, B)));
  }
}

TEST_CASE("star conjugation") {
  const Fq& f5 = Fq::get(5, 1);
  CHECK(p_conj_star(f5, p_from_ints(f5, {-2, 1})) ==
        p_from_ints(f5, {-3, 1}));  // t-2 -> t-3

  const Fq& f2 = Fq::get(2, 1);
  CHECK(p_conj_star(f2, p_from_ints(f2, {1, 1, 1})) ==
        p_from_ints(f2, {1, 1, 1}));
  CHECK(p_self_conj(f2, p_from_ints(f2, {1, 1, 1}), ConjFlavor::Star));

  const Fq& f3 = Fq::get(3, 1);
  CHECK(p_self_conj(f3, p_from_ints(f3, {-1, 0, 1}), ConjFlavor::Star));
  CHECK_FALSE(p_self_conj(f5, p_from_ints(f5, {-2, 1}), ConjFlavor::Star));

  CHECK_THROWS_AS(p_conj_star(f5, p_from_ints(f5, {0, 1})), error);
  CHECK_THROWS_AS(p_conj_star(f5, p_from_ints(f5, {1, 2})), error);
}

TEST_CASE("tilde conjugation over the quadratic tower") {
  const Fq& f2 = Fq::get(2, 1);
  const Fq& f4 = Fq::quadratic_tower(f2);
  u32 w = 2;  // theta
  Poly f({w, 1});  // t + omega
  CHECK(p_conj_tilde(f4, f) == f);  // omega^{-2} = omega
  CHECK(p_self_conj(f4, Poly({1u, 1u}), ConjFlavor::Tilde));

  // involution on all 15 monic linear/quadratic polynomials with nonzero
  // constant term
  for (u32 d = 1; d <= 2; ++d)
    for (u64 idx = 0; idx < monic_count(f4, d); ++idx) {
      Poly g = monic_by_index(f4, d, idx);
      if (g.coeff(0) == 0) continue;
      REQUIRE(p_conj_tilde(f4, p_conj_tilde(f4, g)) == g);
    }

  CHECK_THROWS_AS(p_conj_tilde(f2, Poly({1u, 1u})), error);
}

TEST_CASE("conjugations distribute over products") {
  const Fq& f3 = Fq::get(3, 1);
  const Fq& f9 = Fq::quadratic_tower(f3);
  Rng rng(11);
  for (u32 t = 0; t < 200; ++t) {
    auto rand_ok = [&](const Fq& F) {
      for (;;) {
        u32 d = 1 + static_cast<u32>(rng.below(3));
        Poly f = monic_by_index(F, d, rng.below(monic_count(F, d)));
        if (f.coeff(0) != 0) return f;
      }
    };
    Poly a = rand_ok(f3), b = rand_ok(f3);
    REQUIRE(p_conj_star(f3, p_mul(f3, a, b)) ==
            p_mul(f3, p_conj_star(f3, a), p_conj_star(f3, b)));
    Poly c = rand_ok(f9), d = rand_ok(f9);
    REQUIRE(p_conj_tilde(f9, p_mul(f9, c, d)) ==
            p_mul(f9, p_conj_tilde(f9, c), p_conj_tilde(f9, d)));
  }
}

TEST_CASE("tilde-self-conjugate irreducibles have odd degree") {
  for (u32 pv : {2u, 3u}) {
    const Fq& tower = Fq::quadratic_tower(Fq::get(pv, 1));
    for (u32 d = 1; d <= 4; ++d)
      for (u64 idx = 0; idx < monic_count(tower, d); ++idx) {
        Poly f = monic_by_index(tower, d, idx);
        if (f.coeff(0) == 0 || !p_irreducible(tower, f)) continue;
        if (d % 2 == 0) REQUIRE_FALSE(p_self_conj(tower, f, ConjFlavor::Tilde));
      }
  }
}

TEST_CASE("polynomial text round trip") {
  const Fq& f3 = Fq::get(3, 1);
  Poly f = p_from_ints(f3, {1, 1, 1});
  CHECK(p_text(f3, f) == "1,1,1");
  CHECK(p_parse(f3, "1,1,1") == f);

  const Fq& f4 = Fq::quadratic_tower(Fq::get(2, 1));
  Poly g({2u, 3u, 1u});
  std::string s = p_text(f4, g);
  CHECK(p_parse(f4, s) == g);
}
