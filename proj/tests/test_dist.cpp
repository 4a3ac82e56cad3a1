#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "cpfq/charpoly_dist.hpp"

using namespace cpfq;

namespace {

// enumeration oracle: exact frequency of each characteristic polynomial
std::map<Poly, Rat> enumerated_dist(const GroupSpec& s) {
  const Fq& F = spec_field(s);
  BigInt order = group_order(s);
  std::map<Poly, u64> counts;
  for (const Mat& g : enumerate_group_cached(s)) counts[char_poly(F, g)]++;
  std::map<Poly, Rat> out;
  for (auto& [phi, c] : counts) out[phi] = make_rat(BigInt(c), order);
  return out;
}

Rat formula_prob(const GroupSpec& s, const Fq& F, const Poly& phi) {
  switch (s.family) {
    case Family::Mat: return prob_mat(F, s.n, phi);
    case Family::GL: return prob_gl(F, s.n, phi);
    case Family::GU: return prob_gu(F, s.n, phi);
    case Family::Sp: return prob_sp(F, s.n, phi);
    default: throw error("no per-group formula");
  }
}

}  // namespace

TEST_CASE("GL(2,2) worked distribution") {
  const Fq& f2 = Fq::get(2, 1);
  CHECK(prob_gl(f2, 2, p_from_ints(f2, {1, 0, 1})) == make_rat(2, 3));
  CHECK(prob_gl(f2, 2, p_from_ints(f2, {1, 1, 1})) == make_rat(1, 3));
  CHECK(prob_gl(f2, 2, p_monomial(2)) == 0);  // zero constant term
  CHECK_THROWS_AS(prob_gl(f2, 3, p_from_ints(f2, {1, 1, 1})), error);
}

TEST_CASE("Mat(2,2) worked distribution") {
  const Fq& f2 = Fq::get(2, 1);
  CHECK(prob_mat(f2, 2, p_from_ints(f2, {1, 0, 1})) == make_rat(1, 4));
  CHECK(prob_mat(f2, 2, p_monomial(2)) == make_rat(1, 4));
  // scalars in dimension 1: each value with probability 1/q
  const Fq& f5 = Fq::get(5, 1);
  for (u32 c = 0; c < 5; ++c)
    CHECK(prob_mat(f5, 1, Poly({f5.neg(c), 1u})) == make_rat(1, 5));
}

TEST_CASE("GU worked examples") {
  const Fq& f4 = Fq::quadratic_tower(Fq::get(2, 1));
  // unipotent mass of GU(2,2) is 4/18
  CHECK(prob_gu(f4, 2, p_from_ints(f4, {1, 0, 1})) == make_rat(2, 9));
  // GU(1,2) is cyclic of order 3: each self-conjugate linear has mass 1/3
  u32 w = 2;
  CHECK(prob_gu(f4, 1, Poly({w, 1u})) == make_rat(1, 3));
  // a linear factor whose root is not norm-one gets zero
  CHECK(prob_gu(f4, 1, Poly({0u, 1u})) == 0);
}

TEST_CASE("Sp worked examples") {
  const Fq& f3 = Fq::get(3, 1);
  CHECK(prob_sp(f3, 1, p_from_ints(f3, {1, -2, 1})) == make_rat(3, 8));
  CHECK(prob_sp(f3, 1, p_from_ints(f3, {-1, 0, 1})) == 0);  // (z-1)(z+1)
  const Fq& f2 = Fq::get(2, 1);
  CHECK(prob_sp(f2, 1, p_from_ints(f2, {1, 1, 1})) == make_rat(1, 3));
}

TEST_CASE("O-sum worked examples at q=3") {
  const Fq& f3 = Fq::get(3, 1);
  CHECK(prob_o_sum(f3, 2, p_from_ints(f3, {1, -2, 1})) == make_rat(3, 8));
  CHECK(prob_o_sum(f3, 2, p_from_ints(f3, {1, 0, 1})) == make_rat(1, 4));
  CHECK(prob_o_sum(f3, 2, p_from_ints(f3, {-1, 0, 1})) == 1);
}

TEST_CASE("both algebraic routes for the GL probability agree") {
  for (u32 q : {2u, 3u, 4u}) {
    const Fq& F = field_for_q(q);
    for (u32 n = 1; n <= 4; ++n)
      for (u64 idx = 0; idx < monic_count(F, n); ++idx) {
        Poly phi = monic_by_index(F, n, idx);
        REQUIRE(prob_gl(F, n, phi) == prob_gl_euler_form(F, n, phi));
      }
  }
}

TEST_CASE("group orders") {
  CHECK(group_order({Family::GL, 2, 2}) == 6);
  CHECK(group_order({Family::GU, 2, 2}) == 18);
  CHECK(group_order({Family::GU, 3, 2}) == 648);
  CHECK(group_order({Family::Sp, 1, 3}) == 24);
  CHECK(group_order({Family::Sp, 2, 2}) == 720);
  CHECK(group_order({Family::Sp, 2, 3}) == 51840);
  CHECK(group_order({Family::OPlus, 2, 3}) == 4);
  CHECK(group_order({Family::OMinus, 2, 3}) == 8);
  CHECK(group_order({Family::OPlus, 3, 3}) == 48);
  CHECK(group_order({Family::OPlus, 4, 2}) == 72);
  CHECK(group_order({Family::OMinus, 4, 2}) == 120);
  CHECK(group_order({Family::Mat, 2, 2}) == 16);
  CHECK(order_sp(BigInt(5), 0) == 1);
  CHECK_THROWS_AS(group_order({Family::OMinus, 3, 3}), error);
  CHECK_THROWS_AS(group_order({Family::OPlus, 3, 2}), error);
}

TEST_CASE("enumeration counts match group orders") {
  std::vector<GroupSpec> specs = {
      {Family::GL, 2, 2},    {Family::GL, 3, 2},   {Family::GL, 2, 3},
      {Family::GL, 2, 5},    {Family::GU, 2, 2},   {Family::GU, 1, 3},
      {Family::Sp, 1, 3},    {Family::Sp, 2, 2},   {Family::OPlus, 2, 3},
      {Family::OMinus, 2, 3}, {Family::OPlus, 3, 3}, {Family::OPlus, 4, 2},
      {Family::OMinus, 4, 2}, {Family::OMinus, 2, 2}, {Family::OPlus, 2, 2},
      {Family::Mat, 2, 3}};
  for (const auto& s : specs) {
    const auto& elems = enumerate_group_cached(s);
    REQUIRE(BigInt(elems.size()) == group_order(s));
    FormCtx form = make_form(s);
    for (const Mat& g : elems) REQUIRE(preserves_form(form, g));
  }
  // O^-(2,2) is the symmetric group on the three norm-one vectors
  CHECK(enumerate_group_cached({Family::OMinus, 2, 2}).size() == 6);
}

TEST_CASE("closure spot check on enumerated groups") {
  Rng rng(512);
  for (const auto& s : std::vector<GroupSpec>{{Family::Sp, 1, 3},
                                              {Family::GU, 2, 2},
                                              {Family::OMinus, 2, 3}}) {
    const Fq& F = spec_field(s);
    const auto& elems = enumerate_group_cached(s);
    std::map<Mat, u32> index;
    for (const Mat& g : elems) index[g] = 1;
    for (u32 t = 0; t < 1000; ++t) {
      const Mat& a = elems[rng.below(elems.size())];
      const Mat& b = elems[rng.below(elems.size())];
      REQUIRE(index.count(mat_mul(F, a, b)) == 1);
    }
  }
}

TEST_CASE("formula equals enumeration for every characteristic polynomial") {
  std::vector<GroupSpec> specs = {
      {Family::Mat, 2, 2}, {Family::Mat, 2, 3}, {Family::GL, 2, 2},
      {Family::GL, 2, 3},  {Family::GL, 3, 2},  {Family::GU, 2, 2},
      {Family::Sp, 1, 3},  {Family::Sp, 2, 2}};
  for (const auto& s : specs) {
    const Fq& F = spec_field(s);
    auto oracle = enumerated_dist(s);
    u32 deg = module_dim(s);
    for (u64 idx = 0; idx < monic_count(F, deg); ++idx) {
      Poly phi = monic_by_index(F, deg, idx);
      Rat expect(0);
      if (auto it = oracle.find(phi); it != oracle.end()) expect = it->second;
      bool applicable = true;
      Rat got(0);
      try {
        got = formula_prob(s, F, phi);
      } catch (const error&) {
        applicable = false;
      }
      REQUIRE(applicable);
      REQUIRE(got == expect);
    }
  }
}

TEST_CASE("O-sum formula equals enumeration, odd characteristic") {
  for (auto [n, q] : std::vector<std::pair<u32, u32>>{
           {2, 3}, {3, 3}, {4, 3}, {2, 5}, {2, 7}, {3, 5}}) {
    const Fq& F = field_for_q(q);
    std::map<Poly, Rat> oracle;
    std::vector<GroupSpec> gs;
    if (n % 2 == 0)
      gs = {{Family::OPlus, n, q}, {Family::OMinus, n, q}};
    else
      gs = {{Family::OPlus, n, q}};
    for (const auto& s : gs) {
      BigInt order = group_order(s);
      std::map<Poly, u64> counts;
      for (const Mat& g : enumerate_group_cached(s))
        counts[char_poly(F, g)]++;
      u32 w = n % 2 == 0 ? 1 : 2;
      for (auto& [phi, c] : counts)
        oracle[phi] += make_rat(BigInt(c) * w, order);
    }
    for (u64 idx = 0; idx < monic_count(F, n); ++idx) {
      Poly phi = monic_by_index(F, n, idx);
      if (phi.coeff(0) == 0) continue;
      Rat expect(0);
      if (auto it = oracle.find(phi); it != oracle.end()) expect = it->second;
      REQUIRE(prob_o_sum(F, n, phi) == expect);
    }
  }
}

TEST_CASE("even characteristic O-sum is enumeration backed") {
  const Fq& f2 = Fq::get(2, 1);
  // unipotent count formula against exhaustive counts
  CHECK(unipotent_count_o_even(1, 2, +1) == 2);
  CHECK(unipotent_count_o_even(1, 2, -1) == 4);
  CHECK(unipotent_count_o_even(2, 2, +1) == 40);
  CHECK(unipotent_count_o_even(2, 2, -1) == 56);
  for (int eps : {+1, -1}) {
    for (u32 n : {1u, 2u}) {
      GroupSpec s{eps > 0 ? Family::OPlus : Family::OMinus, 2 * n, 2};
      u64 uni = 0;
      for (const Mat& g : enumerate_group_cached(s)) {
        Poly cp = char_poly(f2, g);
        Poly target = p_one();
        for (u32 i = 0; i < 2 * n; ++i)
          target = p_mul(f2, target, p_from_ints(f2, {1, 1}));
        if (cp == target) ++uni;
      }
      REQUIRE(BigInt(uni) == unipotent_count_o_even(n, 2, eps));
    }
  }
  // the fallback distribution sums to 2
  Rat total(0);
  for (u64 idx = 0; idx < monic_count(f2, 4); ++idx) {
    Poly phi = monic_by_index(f2, 4, idx);
    if (phi.coeff(0) == 0) continue;
    total += prob_o_sum(f2, 4, phi);
  }
  CHECK(total == 2);
  std::vector<u32> big(9, 0);
  big[0] = 1;
  big[8] = 1;
  CHECK_THROWS_AS(prob_o_sum(f2, 8, Poly(std::move(big)), 1, 100000), error);
}

TEST_CASE("normalization at unit-test scale") {
  for (u32 q : {2u, 3u}) {
    const Fq& F = field_for_q(q);
    for (u32 n = 1; n <= 4; ++n) {
      Rat sum(0);
      for (const auto& e :
           enumerate_charpoly_distribution({Family::GL, n, q}))
        sum += e.prob;
      REQUIRE(sum == 1);
      Rat msum(0);
      for (const auto& e :
           enumerate_charpoly_distribution({Family::Mat, n, q}))
        msum += e.prob;
      REQUIRE(msum == 1);
    }
    (void)F;
  }
  Rat gu(0);
  for (const auto& e : enumerate_charpoly_distribution({Family::GU, 2, 3}))
    gu += e.prob;
  CHECK(gu == 1);
  Rat sp(0);
  for (const auto& e : enumerate_charpoly_distribution({Family::Sp, 2, 3}))
    sp += e.prob;
  CHECK(sp == 1);
  Rat osum(0);
  for (const auto& e : enumerate_osum_distribution(3, 3)) osum += e.prob;
  CHECK(osum == 2);
}

TEST_CASE("GL lower bound and monotone factor form") {
  for (u32 q : {2u, 3u}) {
    const Fq& F = field_for_q(q);
    for (u32 n = 1; n <= 4; ++n) {
      Rat lower = make_rat(1, ipow(q, n) - 1);
      bool attained = false;
      for (const auto& e :
           enumerate_charpoly_distribution({Family::GL, n, q})) {
        REQUIRE(e.prob >= lower);
        if (e.prob == lower) attained = true;
        // each Euler factor is at least one: prob * q^n >= 1
        REQUIRE(e.prob * Rat(ipow(q, n)) >= 1);
      }
      REQUIRE(attained);
    }
  }
}

TEST_CASE("Steinberg unipotent mass in Sp") {
  // prob_sp((z-1)^{2n}) = q^{2n^2} / |Sp(2n,q)|
  for (auto [n, q] : std::vector<std::pair<u32, u32>>{
           {1, 3}, {2, 3}, {1, 5}, {1, 2}, {2, 2}}) {
    const Fq& F = field_for_q(q);
    Poly uni = p_one();
    for (u32 i = 0; i < 2 * n; ++i)
      uni = p_mul(F, uni, p_from_ints(F, {-1, 1}));
    REQUIRE(prob_sp(F, n, uni) ==
            make_rat(ipow(q, 2ull * n * n), order_sp(BigInt(q), n)));
  }
}

TEST_CASE("realizability reasons") {
  const Fq& f3 = Fq::get(3, 1);
  GroupSpec sp{Family::Sp, 1, 3};
  CHECK(realizability_reason(sp, f3, p_from_ints(f3, {-1, 0, 1})) ==
        "odd multiplicity of z -+ 1");
  CHECK(realizability_reason(sp, f3, p_from_ints(f3, {1, 0, 1})) ==
        "realizable");
  CHECK(realizability_reason(sp, f3, p_monomial(2)) == "zero constant term");
  GroupSpec gl{Family::GL, 2, 3};
  CHECK(realizability_reason(gl, f3, p_from_ints(f3, {1, 1, 1})) ==
        "realizable");
}
