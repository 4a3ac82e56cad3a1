#include <catch2/catch_amalgamated.hpp>

#include "cpfq/rng.hpp"
#include "cpfq/series.hpp"

using namespace cpfq;

TEST_CASE("series arithmetic basics") {
  // 1/(1-qu) has coefficients q^r
  RatSeries geo = rational_series({Rat(1)}, {Rat(1), Rat(-3)}, 12);
  for (u32 r = 0; r <= 12; ++r) REQUIRE(geo.coef(r) == Rat(ipow(3, r)));

  // (1-u) * 1/(1-u) == 1
  RatSeries one_minus(10);
  one_minus.coef(0) = 1;
  one_minus.coef(1) = -1;
  RatSeries prod = one_minus * one_minus.reciprocal();
  CHECK(prod.coef(0) == 1);
  for (u32 r = 1; r <= 10; ++r) REQUIRE(prod.coef(r) == 0);

  CHECK_THROWS_AS(RatSeries(4).reciprocal(), error);
}

TEST_CASE("log and exp are mutually inverse") {
  Rng rng(99);
  for (u32 t = 0; t < 10; ++t) {
    RatSeries f(30);
    f.coef(0) = 1;
    for (u32 r = 1; r <= 30; ++r)
      f.coef(r) = make_rat(BigInt(static_cast<long>(rng.below(19)) - 9),
                           BigInt(1 + rng.below(7)));
    RatSeries back = f.log().exp();
    for (u32 r = 0; r <= 30; ++r) REQUIRE(back.coef(r) == f.coef(r));
  }
}

TEST_CASE("rational powers") {
  RatSeries inv1mu = rational_series({Rat(1)}, {Rat(1), Rat(-1)}, 8);
  // (1-u)^{-1/2}: coefficient of u^2 is 3/8
  RatSeries half = inv1mu.pow(make_rat(1, 2));
  CHECK(half.coef(1) == make_rat(1, 2));
  CHECK(half.coef(2) == make_rat(3, 8));
  // (1-u)^{-1} has all coefficients 1
  RatSeries full = inv1mu.pow(Rat(1));
  for (u32 r = 0; r <= 8; ++r) REQUIRE(full.coef(r) == 1);
  // (1-u)^{-2/3}: first-order coefficient is 2/3
  CHECK(inv1mu.pow(make_rat(2, 3)).coef(1) == make_rat(2, 3));
}

TEST_CASE("generating function identities at unit-test scale") {
  for (u32 q : {2u, 3u, 4u, 5u}) CHECK_NOTHROW(gf_plain(q, 20));
  for (u32 q : {2u, 3u}) CHECK_NOTHROW(gf_unitary(q, 12));
  CHECK_NOTHROW(gf_star(3, 10, 2));
  CHECK_NOTHROW(gf_star(2, 12, 1));
  CHECK_THROWS_AS(gf_star(3, 10, 1), error);  // parity mismatch

  // first coefficients pin the small counts
  RatSeries u2 = gf_unitary(2, 8);
  CHECK(u2.coef(1) == Rat(3));  // Ntilde(2;1) = q + 1
  RatSeries s3 = gf_star(3, 8, 2);
  CHECK(s3.coef(1) == Rat(3));  // e + Nstar(3;2) + Mstar(3;1) = q
}

TEST_CASE("majorant chains of the counting lemmas") {
  const u32 D = 24;
  for (u32 q : {2u, 3u}) {
    for (u32 b : {2u, 3u, 5u}) {
      // prod (1-u^{bd})^{-N(q;d)} = (1-u^b)/(1-u^b q) << 1/(1-u^b q)
      std::vector<std::pair<u32, Rat>> items;
      for (u32 d = 1; b * d <= D; ++d)
        items.push_back({b * d, Rat(count_N(BigInt(q), d))});
      RatSeries lhs = product_one_minus_inv(items, D);
      std::vector<Rat> num(b + 1, Rat(0)), den(b + 1, Rat(0));
      num[0] = 1;
      num[b] = -1;
      den[0] = 1;
      den[b] = -Rat(static_cast<long>(q));
      REQUIRE(lhs == rational_series(num, den, D));
      num[b] = 0;
      RatSeries upper = rational_series(num, den, D);
      REQUIRE(dominated_by(lhs, upper));

      // prod (1-u^{bd})^{-N(q;bd)} << ((1-u^b)/(1-u^b q^b))^{1/b}
      //                            << (1/(1-u^b q^b))^{1/b}
      std::vector<std::pair<u32, Rat>> big;
      for (u32 d = 1; b * d <= D; ++d)
        big.push_back({b * d, Rat(count_N(BigInt(q), b * d))});
      RatSeries lhs2 = product_one_minus_inv(big, D);
      std::vector<Rat> den2(b + 1, Rat(0));
      den2[0] = 1;
      den2[b] = -Rat(ipow(q, b));
      std::vector<Rat> num2(b + 1, Rat(0));
      num2[0] = 1;
      num2[b] = -1;
      RatSeries mid = rational_series(num2, den2, D).pow(make_rat(1, b));
      RatSeries top =
          rational_series({Rat(1)}, den2, D).pow(make_rat(1, b));
      REQUIRE(dominated_by(lhs2, mid));
      REQUIRE(dominated_by(mid, top));

      // Uhelp majorant: the unitary/star products << prod (1-u^{bd})^{-q^{bd}/(bd)}
      RatSeries uh = coef_upper_product(q, b, UpperFlavor::UhelpRat, D);
      if (b % 2 == 1) {
        std::vector<std::pair<u32, Rat>> uitems;
        for (u32 d = 1; b * d <= D; ++d) {
          auto uc = count_unitary(BigInt(q), b * d);
          if ((b * d) % 2 == 1) uitems.push_back({b * d, Rat(uc.Ntilde)});
          if (2 * b * d <= D) uitems.push_back({2 * b * d, Rat(uc.Mtilde)});
        }
        REQUIRE(dominated_by(product_one_minus_inv(uitems, D), uh));
      }
      std::vector<std::pair<u32, Rat>> sitems;
      for (u32 d = 1; b * d <= D; ++d) {
        auto nb = count_star(BigInt(q), 2 * b * d);
        auto mb = count_star(BigInt(q), b * d);
        sitems.push_back({b * d, Rat(nb.Nstar) + Rat(mb.Mstar)});
      }
      REQUIRE(dominated_by(product_one_minus_inv(sitems, D), uh));
    }
    // even-b chain: prod (1-u^{2d})^{-q^{2d}/(2d)} << (1-u^2 q^2)^{-2/3}
    RatSeries uh2 = coef_upper_product(q, 2, UpperFlavor::UhelpRat, D);
    std::vector<Rat> den3(3, Rat(0));
    den3[0] = 1;
    den3[2] = -Rat(ipow(q, 2));
    RatSeries top3 = rational_series({Rat(1)}, den3, D).pow(make_rat(2, 3));
    REQUIRE(dominated_by(uh2, top3));
  }
}

TEST_CASE("split-sum identity") {
  for (u32 q : {2u, 3u})
    for (u32 b : {2u, 3u, 5u}) REQUIRE(split_sum_check(q, b, 60 / b));
}

TEST_CASE("generalized binomial decay table") {
  auto d2 = gen_binom_decay(2, 100);
  CHECK(d2.coeffs[1] == make_rat(1, 2));
  CHECK(d2.coeffs[2] == make_rat(3, 8));
  CHECK(d2.coeffs_decreasing);
  // normalized c_r b r^{1-1/b} increases toward b/Gamma(1/b), so the max
  // over any computed range is its last value
  CHECK(d2.normalized_nondecreasing);

  auto d3 = gen_binom_decay(3, 100);
  CHECK(d3.coeffs[1] == make_rat(1, 3));
  CHECK(d3.coeffs_decreasing);
  CHECK(d3.normalized_nondecreasing);
}
