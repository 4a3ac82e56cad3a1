#include <catch2/catch_amalgamated.hpp>

#include "cpfq/field.hpp"

using namespace cpfq;

TEST_CASE("prime and extension field construction") {
  const Fq& f2 = Fq::get(2, 1);
  CHECK(f2.q() == 2);

  const Fq& f4 = Fq::get(2, 2);
  CHECK(f4.q() == 4);
  // the unique irreducible quadratic over F_2
  CHECK(f4.modulus() == std::vector<u32>{1, 1, 1});

  CHECK_THROWS_AS(Fq::get(4, 1), error);   // non-prime
  CHECK_THROWS_AS(Fq::get(2, 17), error);  // over the 2^16 cap
  CHECK_THROWS_AS(Fq::get(5, 0), error);
}

TEST_CASE("basic element arithmetic") {
  const Fq& f4 = Fq::get(2, 2);
  // omega = the class of t, packed index 2
  u32 w = 2;
  u32 w2 = f4.mul(w, w);
  CHECK(f4.mul(w, w2) == f4.one());  // multiplicative group of order 3

  const Fq& f5 = Fq::get(5, 1);
  CHECK(f5.inv(2) == 3);
  CHECK(f5.mul(2, 3) == 1);
  CHECK(f5.add(4, 3) == 2);
  CHECK(f5.neg(2) == 3);

  CHECK_THROWS_AS(f5.inv(0), error);
}

TEST_CASE("tower conjugation is x -> x^q") {
  const Fq& f2 = Fq::get(2, 1);
  const Fq& f4 = Fq::quadratic_tower(f2);
  CHECK(f4.q() == 4);
  for (u32 x = 0; x < 4; ++x) CHECK(f4.conj_q(x) == f4.mul(x, x));
  // conjugate(omega) = omega^2
  u32 w = 2;  // theta, a root of t^2+t+1
  CHECK(f4.conj_q(w) == f4.mul(w, w));
}

namespace {

// every prime power q <= 64 as (p, k)
std::vector<std::pair<u32, u32>> prime_powers_to_64() {
  std::vector<std::pair<u32, u32>> out;
  for (u32 q = 2; q <= 64; ++q) {
    try {
      out.push_back(prime_power_decompose(q));
    } catch (const error&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("nonzero elements form a cyclic group of order q-1") {
  for (auto [p, k] : prime_powers_to_64()) {
    const Fq& F = Fq::get(p, k);
    u32 g = F.generator();
    std::vector<bool> seen(F.q(), false);
    u32 x = F.one();
    for (u32 i = 0; i + 1 < F.q(); ++i) {
      REQUIRE_FALSE(seen[x]);
      seen[x] = true;
      x = F.mul(x, g);
    }
    CHECK(x == F.one());  // g^{q-1} = 1
    // field axioms spot check: distributivity on all triples for q <= 9
    if (F.q() <= 9) {
      for (u32 a = 0; a < F.q(); ++a)
        for (u32 b = 0; b < F.q(); ++b)
          for (u32 c = 0; c < F.q(); ++c)
            REQUIRE(F.mul(a, F.add(b, c)) ==
                    F.add(F.mul(a, b), F.mul(a, c)));
    }
  }
}

TEST_CASE("frobenius iterated k times is the identity") {
  for (auto [p, k] : prime_powers_to_64()) {
    const Fq& F = Fq::get(p, k);
    for (u32 x = 0; x < F.q(); ++x)
      REQUIRE(F.frobenius_iter(x, k) == x);
    // frobenius is additive
    for (u32 a = 0; a < std::min<u32>(F.q(), 16); ++a)
      for (u32 b = 0; b < std::min<u32>(F.q(), 16); ++b)
        REQUIRE(F.frobenius(F.add(a, b)) ==
                F.add(F.frobenius(a), F.frobenius(b)));
  }
}

TEST_CASE("subfield embedding is a ring homomorphism") {
  const Fq& f3 = Fq::get(3, 1);
  const Fq& f9 = Fq::get(3, 2);
  CHECK(f9.embed(f3, 0) == 0);
  CHECK(f9.embed(f3, 1) == 1);
  for (u32 a = 0; a < 3; ++a)
    for (u32 b = 0; b < 3; ++b) {
      REQUIRE(f9.embed(f3, f3.add(a, b)) ==
              f9.add(f9.embed(f3, a), f9.embed(f3, b)));
      REQUIRE(f9.embed(f3, f3.mul(a, b)) ==
              f9.mul(f9.embed(f3, a), f9.embed(f3, b)));
    }

  const Fq& f2 = Fq::get(2, 1);
  const Fq& f4t = Fq::quadratic_tower(f2);
  CHECK(f4t.embed(f2, 1) == f4t.one());
  CHECK_THROWS_AS(f4t.embed(f3, 1), error);
}

TEST_CASE("tower conjugation fixes the embedded subfield pointwise") {
  for (auto [p, k] : std::vector<std::pair<u32, u32>>{{2, 1}, {3, 1}, {2, 2},
                                                      {5, 1}}) {
    const Fq& base = Fq::get(p, k);
    const Fq& tower = Fq::quadratic_tower(base);
    for (u32 a = 0; a < base.q(); ++a) {
      u32 e = tower.embed(base, a);
      REQUIRE(tower.conj_q(e) == e);
    }
    // conj is an involution everywhere
    for (u32 x = 0; x < tower.q(); ++x)
      REQUIRE(tower.conj_q(tower.conj_q(x)) == x);
    // and multiplicative
    for (u32 x = 0; x < std::min<u32>(tower.q(), 25); ++x)
      for (u32 y = 0; y < std::min<u32>(tower.q(), 25); ++y)
        REQUIRE(tower.conj_q(tower.mul(x, y)) ==
                tower.mul(tower.conj_q(x), tower.conj_q(y)));
  }
}

TEST_CASE("FieldElem wrapper rejects mixed contexts") {
  const Fq& f2 = Fq::get(2, 1);
  const Fq& f3 = Fq::get(3, 1);
  FieldElem a(f2, 1), b(f3, 2);
  CHECK_THROWS_AS(a + b, error);
  CHECK((FieldElem(f3, 2) * FieldElem(f3, 2)).value() == 1);
  CHECK(FieldElem(f3, 2).inverse().value() == 2);
}
