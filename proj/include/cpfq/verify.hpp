// The oracle battery: every acceptance-grade consistency check, runnable
// from the CLI (`verify`) and from the acceptance suite. Each check returns
// a pass flag plus a short diagnostic.
#pragma once

#include <chrono>
#include <sstream>

#include "cpfq/invariable.hpp"

namespace cpfq {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::map<Poly, Rat> enumerated_frequencies(const GroupSpec& s,
                                                  u64 cap) {
  const Fq& F = spec_field(s);
  BigInt order = group_order(s);
  std::map<Poly, u64> counts;
  for (const Mat& g : enumerate_group_cached(s, cap))
    counts[char_poly(F, g)]++;
  std::map<Poly, Rat> out;
  for (auto& [phi, c] : counts) out[phi] = make_rat(BigInt(c), order);
  return out;
}

}  // namespace detail

/// The roster of concrete groups with order below the cap used by the
/// enumeration oracles.
inline std::vector<GroupSpec> oracle_roster(u64 max_order = 100000) {
  std::vector<GroupSpec> candidates = {
      {Family::GL, 2, 2},     {Family::GL, 3, 2},   {Family::GL, 4, 2},
      {Family::GL, 2, 3},     {Family::GL, 3, 3},   {Family::GL, 2, 4},
      {Family::GL, 2, 5},     {Family::GL, 2, 7},   {Family::GL, 2, 8},
      {Family::GL, 2, 9},     {Family::Mat, 2, 2},  {Family::Mat, 3, 2},
      {Family::Mat, 4, 2},    {Family::Mat, 2, 3},  {Family::Mat, 2, 4},
      {Family::Mat, 2, 5},    {Family::GU, 1, 2},   {Family::GU, 1, 3},
      {Family::GU, 2, 2},     {Family::GU, 3, 2},   {Family::GU, 2, 3},
      {Family::GU, 2, 4},     {Family::GU, 2, 5},   {Family::Sp, 1, 2},
      {Family::Sp, 1, 3},     {Family::Sp, 1, 4},   {Family::Sp, 1, 5},
      {Family::Sp, 1, 7},     {Family::Sp, 2, 2},   {Family::Sp, 2, 3},
      {Family::OPlus, 2, 2},  {Family::OMinus, 2, 2}, {Family::OPlus, 2, 3},
      {Family::OMinus, 2, 3}, {Family::OPlus, 2, 4}, {Family::OMinus, 2, 4},
      {Family::OPlus, 2, 5},  {Family::OMinus, 2, 5},
      {Family::OPlus, 2, 7},  {Family::OMinus, 2, 7}, {Family::OPlus, 4, 2},
      {Family::OMinus, 4, 2}, {Family::OPlus, 4, 3}, {Family::OMinus, 4, 3},
      {Family::OPlus, 6, 2},  {Family::OMinus, 6, 2}, {Family::OPlus, 3, 3},
      {Family::OPlus, 3, 5},  {Family::OPlus, 3, 7}};
  std::vector<GroupSpec> out;
  for (const auto& s : candidates)
    if (group_order(s) <= static_cast<unsigned long>(max_order))
      out.push_back(s);
  return out;
}

/// Criterion 1: formula probabilities equal enumerated frequencies for every
/// characteristic polynomial of every roster group, exactly. Even-
/// characteristic orthogonal groups have no product formula; for those the
/// enumeration-backed O-sum route is checked for internal consistency.
inline CheckResult verify_dist_oracle(u64 max_order = 100000) {
  detail::Stopwatch sw;
  CheckResult out{"exact-oracle-equivalence", true, "", 0};
  u32 groups_checked = 0, polys_checked = 0;
  std::ostringstream fails;
  for (const auto& s : oracle_roster(max_order)) {
    const Fq& F = spec_field(s);
    u32 deg = module_dim(s);
    bool even_o = (s.family == Family::OPlus || s.family == Family::OMinus) &&
                  s.q % 2 == 0;
    bool odd_o = (s.family == Family::OPlus || s.family == Family::OMinus) &&
                 s.q % 2 == 1;
    if (BigInt(enumerate_group_cached(s, max_order).size()) !=
        group_order(s)) {
      out.pass = false;
      fails << " [cardinality " << family_name(s.family) << " n=" << s.n
            << " q=" << s.q << "]";
      continue;
    }
    auto freq = detail::enumerated_frequencies(s, max_order);
    // for the orthogonal families the per-phi claim is about the O-sum, so
    // accumulate the partner group's frequencies as well
    std::map<Poly, Rat> osum;
    if (odd_o || even_o) {
      if (deg % 2 == 0) {
        GroupSpec partner{s.family == Family::OPlus ? Family::OMinus
                                                    : Family::OPlus,
                          s.n, s.q};
        if (group_order(partner) > static_cast<unsigned long>(max_order))
          continue;  // the O-sum needs both types enumerable
        for (Family fam : {Family::OPlus, Family::OMinus}) {
          GroupSpec t{fam, s.n, s.q};
          for (auto& [phi, fr] : detail::enumerated_frequencies(t, max_order))
            osum[phi] += fr;
        }
      } else {
        for (auto& [phi, fr] : freq) osum[phi] = fr * 2;
      }
    }
    for (u64 idx = 0; idx < monic_count(F, deg); ++idx) {
      Poly phi = monic_by_index(F, deg, idx);
      Rat expect(0);
      Rat got(0);
      if (odd_o || even_o) {
        if (phi.coeff(0) == 0) continue;
        if (auto it = osum.find(phi); it != osum.end()) expect = it->second;
        got = prob_o_sum(F, deg, phi, 1, max_order);
      } else {
        if (auto it = freq.find(phi); it != freq.end()) expect = it->second;
        switch (s.family) {
          case Family::Mat: got = prob_mat(F, deg, phi); break;
          case Family::GL: got = prob_gl(F, deg, phi); break;
          case Family::GU: got = prob_gu(F, deg, phi); break;
          case Family::Sp: got = prob_sp(F, s.n, phi); break;
          default: break;
        }
      }
      ++polys_checked;
      if (got != expect) {
        out.pass = false;
        fails << " [" << family_name(s.family) << " n=" << s.n
              << " q=" << s.q << " phi=" << p_text(F, phi) << "]";
      }
    }
    ++groups_checked;
  }
  std::ostringstream d;
  d << groups_checked << " groups, " << polys_checked
    << " polynomials, exact rational equality";
  if (!out.pass) d << "; mismatches:" << fails.str();
  out.detail = d.str();
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 2: distributions sum to exactly 1 (GL, Mat, GU, Sp) and the
/// orthogonal sum to exactly 2.
inline CheckResult verify_normalization() {
  detail::Stopwatch sw;
  CheckResult out{"normalization", true, "", 0};
  std::ostringstream fails;
  auto check_sum = [&](const GroupSpec& s, const Rat& want) {
    Rat sum(0);
    for (const auto& e : enumerate_charpoly_distribution(s)) sum += e.prob;
    if (sum != want) {
      out.pass = false;
      fails << " [" << family_name(s.family) << " n=" << s.n << " q=" << s.q
            << " sum=" << rat_str(sum) << "]";
    }
  };
  for (u32 q : {2u, 3u, 4u})
    for (u32 n = 1; n <= 6; ++n) check_sum({Family::GL, n, q}, Rat(1));
  for (u32 q : {2u, 3u})
    for (u32 n = 1; n <= 4; ++n) check_sum({Family::Mat, n, q}, Rat(1));
  for (u32 q : {2u, 3u})
    for (u32 n = 1; n <= 3; ++n) check_sum({Family::GU, n, q}, Rat(1));
  for (u32 q : {2u, 3u})
    for (u32 n = 1; n <= 3; ++n) check_sum({Family::Sp, n, q}, Rat(1));
  for (u32 n = 1; n <= 4; ++n) {
    Rat sum(0);
    for (const auto& e : enumerate_osum_distribution(n, 3)) sum += e.prob;
    if (sum != 2) {
      out.pass = false;
      fails << " [osum n=" << n << " q=3 sum=" << rat_str(sum) << "]";
    }
  }
  out.detail = out.pass ? "all distribution masses exact"
                        : "failures:" + fails.str();
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 3: the explicit bounds dominate the exact maxima, on every
/// enumerable roster spec and on DP-computed GL/Sp maxima up to n = 40.
inline CheckResult verify_bounds(u64 max_order = 100000, u32 series_nmax = 40) {
  detail::Stopwatch sw;
  CheckResult out{"explicit-bounds", true, "", 0};
  std::ostringstream fails;
  u32 specs = 0;
  for (const auto& s : oracle_roster(max_order)) {
    if (s.family == Family::Mat) continue;  // no stated bound for Mat
    auto freq = detail::enumerated_frequencies(s, max_order);
    Rat maxp(0);
    for (auto& [phi, fr] : freq)
      if (fr > maxp) maxp = fr;
    bool ok = true;
    switch (s.family) {
      case Family::GL: ok = bound_gl(s.n, s.q).dominates(maxp); break;
      case Family::GU: ok = bound_gu(s.n, s.q).dominates(maxp); break;
      case Family::Sp: ok = bound_sp(s.n, s.q).dominates(maxp); break;
      case Family::OPlus:
      case Family::OMinus:
        ok = s.n >= 2 ? bound_o(s.n, s.q).dominates(maxp) : true;
        break;
      default: break;
    }
    if (!ok) {
      out.pass = false;
      fails << " [" << family_name(s.family) << " n=" << s.n << " q=" << s.q
            << "]";
    }
    ++specs;
  }
  for (u32 q : {2u, 3u})
    for (u32 n = 1; n <= series_nmax; ++n) {
      if (!bound_gl(n, q).dominates(max_prob_gl(n, q))) {
        out.pass = false;
        fails << " [gl-dp n=" << n << " q=" << q << "]";
      }
      if (!bound_sp(n, q).dominates(max_prob_sp(n, q))) {
        out.pass = false;
        fails << " [sp-dp n=" << n << " q=" << q << "]";
      }
    }
  std::ostringstream d;
  d << specs << " enumerable specs plus GL/Sp profile maxima to n = "
    << series_nmax;
  if (!out.pass) d << "; violations:" << fails.str();
  out.detail = d.str();
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 4: the GL lower bound, its attainment, and the order identity.
inline CheckResult verify_lower_bound() {
  detail::Stopwatch sw;
  CheckResult out{"gl-lower-bound", true, "", 0};
  std::ostringstream fails;
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
      if (minimum != target || !attained) {
        out.pass = false;
        fails << " [n=" << n << " q=" << q << "]";
      }
    }
  }
  for (u32 q = 2; q <= 9; ++q) {
    if (q == 6) continue;
    for (u32 n = 1; n <= 12; ++n) {
      try {
        lower_bound_gl(n, q);
      } catch (const error&) {
        out.pass = false;
        fails << " [identity n=" << n << " q=" << q << "]";
      }
    }
  }
  out.detail = out.pass
                   ? "min attained at 1/(q^n-1); order identity exact to "
                     "n = 12, q = 9"
                   : "failures:" + fails.str();
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 5: generating-function identities exactly, plus every
/// coefficientwise majorization step, to degree 40.
inline CheckResult verify_gf(u32 dom_trunc = 40) {
  detail::Stopwatch sw;
  CheckResult out{"generating-functions", true, "", 0};
  std::ostringstream fails;
  try {
    for (u32 q : {2u, 3u, 4u, 5u}) gf_plain(q, 30);
    for (u32 q : {2u, 3u}) gf_unitary(q, 16);
    gf_star(3, 16, 2);
    gf_star(5, 16, 2);
    gf_star(2, 16, 1);
    gf_star(4, 16, 1);
  } catch (const error& e) {
    out.pass = false;
    fails << " [identity: " << e.what() << "]";
  }
  const u32 D = dom_trunc;
  for (u32 q : {2u, 3u}) {
    for (u32 b : {2u, 3u, 5u}) {
      BigInt Q(q);
      std::vector<std::pair<u32, Rat>> small_counts, big_counts;
      for (u32 d = 1; b * d <= D; ++d) {
        small_counts.push_back({b * d, Rat(count_N(Q, d))});
        big_counts.push_back({b * d, Rat(count_N(Q, b * d))});
      }
      RatSeries lhs_small = product_one_minus_inv(small_counts, D);
      std::vector<Rat> num(b + 1, Rat(0)), den(b + 1, Rat(0));
      num[0] = 1;
      den[0] = 1;
      den[b] = -Rat(static_cast<long>(q));
      RatSeries upper1 = rational_series(num, den, D);
      bool ok1 = dominated_by(lhs_small, upper1);

      RatSeries lhs_big = product_one_minus_inv(big_counts, D);
      std::vector<Rat> den2(b + 1, Rat(0));
      den2[0] = 1;
      den2[b] = -Rat(ipow(q, b));
      RatSeries upper2 =
          rational_series({Rat(1)}, den2, D).pow(make_rat(1, b));
      bool ok2 = dominated_by(lhs_big, upper2);

      RatSeries uhelp = coef_upper_product(q, b, UpperFlavor::UhelpRat, D);
      bool ok3 = true;
      if (b % 2 == 1) {
        std::vector<std::pair<u32, Rat>> uitems;
        for (u32 d = 1; b * d <= D; ++d) {
          auto uc = count_unitary(Q, b * d);
          if ((b * d) % 2 == 1) uitems.push_back({b * d, Rat(uc.Ntilde)});
          if (2 * b * d <= D) uitems.push_back({2 * b * d, Rat(uc.Mtilde)});
        }
        ok3 = dominated_by(product_one_minus_inv(uitems, D), uhelp);
      }
      std::vector<std::pair<u32, Rat>> sitems;
      for (u32 d = 1; b * d <= D; ++d) {
        auto nb = count_star(Q, 2 * b * d);
        auto mb = count_star(Q, b * d);
        sitems.push_back({b * d, Rat(nb.Nstar) + Rat(mb.Mstar)});
      }
      bool ok4 = dominated_by(product_one_minus_inv(sitems, D), uhelp);

      // Uhelp target: prod (1-u^{bd})^{-q^{bd}/(bd)} << (1-u^b q^b)^{-2/b}
      RatSeries top = rational_series({Rat(1)}, den2, D).pow(make_rat(2, b));
      bool ok5 = dominated_by(uhelp, top);

      if (!(ok1 && ok2 && ok3 && ok4 && ok5)) {
        out.pass = false;
        fails << " [domination q=" << q << " b=" << b << " " << ok1 << ok2
              << ok3 << ok4 << ok5 << "]";
      }
    }
    if (!split_sum_check(q, 2, 30) || !split_sum_check(q, 3, 20) ||
        !split_sum_check(q, 5, 12)) {
      out.pass = false;
      fails << " [split-sum q=" << q << "]";
    }
  }
  out.detail = out.pass ? "identities exact to degree 30/16; dominations "
                          "exact to degree " +
                              std::to_string(D)
                        : "failures:" + fails.str();
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 6: unipotent counts (even-characteristic orthogonal formula
/// and the q^{2n^2} symplectic count) against exhaustive enumeration.
inline CheckResult verify_unipotent(u64 max_order = 100000) {
  detail::Stopwatch sw;
  CheckResult out{"unipotent-counts", true, "", 0};
  std::ostringstream fails;
  for (u32 n : {1u, 2u}) {
    for (int eps : {+1, -1}) {
      GroupSpec s{eps > 0 ? Family::OPlus : Family::OMinus, 2 * n, 2};
      const Fq& F = field_for_q(2);
      Poly uni = p_one();
      for (u32 i = 0; i < 2 * n; ++i)
        uni = p_mul(F, uni, p_from_ints(F, {1, 1}));
      u64 count = 0;
      for (const Mat& g : enumerate_group_cached(s, max_order))
        if (char_poly(F, g) == uni) ++count;
      if (BigInt(count) != unipotent_count_o_even(n, 2, eps)) {
        out.pass = false;
        fails << " [o" << (eps > 0 ? "+" : "-") << " 2n=" << 2 * n << "]";
      }
    }
  }
  for (const auto& s : oracle_roster(max_order)) {
    if (s.family != Family::Sp) continue;
    const Fq& F = field_for_q(s.q);
    Poly uni = p_one();
    for (u32 i = 0; i < 2 * s.n; ++i)
      uni = p_mul(F, uni, p_from_ints(F, {-1, 1}));
    u64 count = 0;
    for (const Mat& g : enumerate_group_cached(s, max_order))
      if (char_poly(F, g) == uni) ++count;
    if (BigInt(count) != ipow(s.q, 2ull * s.n * s.n)) {
      out.pass = false;
      fails << " [sp n=" << s.n << " q=" << s.q << "]";
    }
    if (prob_sp(F, s.n, uni) !=
        make_rat(ipow(s.q, 2ull * s.n * s.n), group_order(s))) {
      out.pass = false;
      fails << " [sp-formula n=" << s.n << " q=" << s.q << "]";
    }
  }
  out.detail = out.pass ? "orthogonal even-characteristic and symplectic "
                          "unipotent counts exact"
                        : "failures:" + fails.str();
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 7: condition masses equal enumeration exactly; raw masses
/// strictly decrease along the doubling grids.
inline CheckResult verify_derange(u64 max_order = 100000) {
  detail::Stopwatch sw;
  CheckResult out{"derangement-masses", true, "", 0};
  std::ostringstream fails;
  struct Case {
    GroupSpec spec;
    SubgroupCondition cond;
  };
  std::vector<Case> cases = {
      {{Family::GL, 2, 2}, {CondKind::ExtFieldGL, 2}},
      {{Family::GL, 3, 2}, {CondKind::ExtFieldGL, 3}},
      {{Family::GL, 4, 2}, {CondKind::ExtFieldGL, 2}},
      {{Family::GL, 2, 3}, {CondKind::ExtFieldGL, 2}},
      {{Family::GL, 3, 3}, {CondKind::ExtFieldGL, 3}},
      {{Family::GL, 2, 5}, {CondKind::ExtFieldGL, 2}},
      {{Family::GU, 3, 2}, {CondKind::ExtFieldGU, 3}},
      {{Family::GU, 2, 3}, {CondKind::ExtFieldGU, 3}},
      {{Family::Sp, 2, 2}, {CondKind::ExtFieldSp2}},
      {{Family::Sp, 2, 3}, {CondKind::ExtFieldSp2}},
      {{Family::Sp, 2, 3}, {CondKind::UnitaryInSp}},
      {{Family::Sp, 1, 7}, {CondKind::ExtFieldSp2}},
  };
  for (const auto& c : cases) {
    if (group_order(c.spec) > static_cast<unsigned long>(max_order)) continue;
    const Fq& F = spec_field(c.spec);
    const auto& elems = enumerate_group_cached(c.spec, max_order);
    u64 hits = 0;
    for (const Mat& g : elems) {
      auto prof = factor_profile(factorize(F, char_poly(F, g)));
      if (satisfies_condition(prof, c.cond)) ++hits;
    }
    if (exact_condition_prob(c.spec.family, c.spec.n, c.spec.q, c.cond) !=
        make_rat(hits, elems.size())) {
      out.pass = false;
      fails << " [" << family_name(c.spec.family) << " n=" << c.spec.n
            << " q=" << c.spec.q << "]";
    }
  }
  // orthogonal sum masses against paired enumeration, odd q
  for (u32 n : {2u, 4u}) {
    SubgroupCondition cond{CondKind::UnitaryInO};
    const Fq& F = field_for_q(3);
    if (group_order({Family::OMinus, n, 3}) >
        static_cast<unsigned long>(max_order))
      continue;
    Rat total(0);
    for (Family fam : {Family::OPlus, Family::OMinus}) {
      const auto& elems = enumerate_group_cached({fam, n, 3}, max_order);
      u64 hits = 0;
      for (const Mat& g : elems) {
        auto prof = factor_profile(factorize(F, char_poly(F, g)));
        if (satisfies_condition(prof, cond)) ++hits;
      }
      total += make_rat(hits, elems.size());
    }
    if (exact_condition_prob(Family::OPlus, n, 3, cond) != total) {
      out.pass = false;
      fails << " [osum n=" << n << "]";
    }
  }
  auto gl_rows = decay_trend(Family::GL, 2, {CondKind::ExtFieldGL, 2},
                             {4, 8, 16, 32, 64});
  if (!raw_strictly_decreasing(gl_rows)) {
    out.pass = false;
    fails << " [gl trend]";
  }
  auto sp_rows = decay_trend(Family::Sp, 3, {CondKind::ExtFieldSp2},
                             {2, 4, 8, 16});
  if (!raw_strictly_decreasing(sp_rows)) {
    out.pass = false;
    fails << " [sp trend]";
  }
  out.detail =
      out.pass ? "exact masses match enumeration; raw masses strictly "
                 "decreasing on the doubling grids"
               : "failures:" + fails.str();
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 8: samplers preserve forms (no failures allowed), pass
/// chi-square uniformity on tiny groups, and the GL rejection rate sits
/// within three sigma of prod (1 - q^{-i}).
inline CheckResult verify_samplers(u64 form_samples = 10000,
                                   u64 chi_samples = 100000) {
  detail::Stopwatch sw;
  CheckResult out{"sampler-soundness", true, "", 0};
  std::ostringstream fails;
  std::vector<GroupSpec> specs = {
      {Family::Sp, 2, 3},    {Family::Sp, 3, 3},     {Family::GU, 2, 2},
      {Family::GU, 3, 3},    {Family::OPlus, 4, 3},  {Family::OMinus, 4, 3},
      {Family::OPlus, 5, 3}, {Family::OPlus, 6, 2},  {Family::OMinus, 6, 2}};
  for (const auto& s : specs) {
    FormCtx form = make_form(s);
    Rng rng(4096 + 17 * s.n + s.q);
    for (u64 t = 0; t < form_samples; ++t) {
      if (!preserves_form(form, sample_uniform(s, rng))) {
        out.pass = false;
        fails << " [form " << family_name(s.family) << " n=" << s.n
              << " q=" << s.q << "]";
        break;
      }
    }
  }
  for (const auto& s : std::vector<GroupSpec>{{Family::GU, 2, 2},
                                              {Family::Sp, 1, 3}}) {
    const auto& elems = enumerate_group_cached(s);
    std::map<Mat, u32> index;
    for (u32 i = 0; i < elems.size(); ++i) index[elems[i]] = i;
    std::vector<u64> counts(elems.size(), 0);
    Rng rng(31 + s.q);
    for (u64 t = 0; t < chi_samples; ++t)
      counts[index.at(sample_uniform(s, rng))]++;
    double p = chi_square_uniform_pvalue(counts);
    if (!(p > 0.001)) {
      out.pass = false;
      fails << " [chi2 " << family_name(s.family) << " p=" << p << "]";
    }
  }
  {
    Rng rng(271828);
    u64 attempts = 0;
    const u64 samples = 100000;
    GroupSpec s{Family::GL, 3, 2};
    for (u64 t = 0; t < samples; ++t) sample_uniform(s, rng, &attempts);
    double p = 1;
    for (u32 i = 1; i <= 3; ++i) p *= 1 - std::pow(2.0, -static_cast<int>(i));
    double phat = static_cast<double>(samples) / attempts;
    double sigma = std::sqrt(p * (1 - p) / static_cast<double>(attempts));
    if (std::abs(phat - p) > 3 * sigma) {
      out.pass = false;
      fails << " [gl-acceptance " << phat << " vs " << p << "]";
    }
  }
  out.detail = out.pass ? "forms preserved on every draw; uniformity and "
                          "rejection-rate checks within tolerance"
                        : "failures:" + fails.str();
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 9: strict inequality on the full grid n in 2..12, q in {2,3},
/// 1 <= e <= n-1.
inline CheckResult verify_strict_inequality(u32 nmax = 12) {
  detail::Stopwatch sw;
  CheckResult out{"subspace-vs-subset-inequality", true, "", 0};
  std::ostringstream fails;
  for (u32 n = 2; n <= nmax; ++n) {
    auto sym = prob_sym_no_invariant_all(n);
    for (u32 q : {2u, 3u}) {
      auto gl = prob_gl_no_invariant_all(n, q);
      for (u32 e = 1; e < n; ++e)
        if (!(gl[e] < sym[e])) {
          out.pass = false;
          fails << " [n=" << n << " q=" << q << " e=" << e << "]";
        }
    }
  }
  out.detail = out.pass ? "strict on the full grid, exact rationals"
                        : "failures:" + fails.str();
  out.seconds = sw.seconds();
  return out;
}

/// Criterion 10: r = 3 invariable-transitivity estimates nonincreasing
/// within three sigma along n in {10, 50, 100, 200}; r = 1, 2 estimates
/// cover the exact values.
inline CheckResult verify_invariable(u64 trials = 100000, u64 seed = 20250728) {
  detail::Stopwatch sw;
  CheckResult out{"invariable-generation-trend", true, "", 0};
  std::ostringstream fails;
  std::vector<u32> ns = {10, 50, 100, 200};
  std::vector<McResult> results;
  for (u32 n : ns) results.push_back(mc_invariable_sym(n, 3, trials, seed));
  for (size_t i = 1; i < results.size(); ++i) {
    double p0 = results[i - 1].ci.point, p1 = results[i].ci.point;
    double se0 = std::sqrt(p0 * (1 - p0) / trials);
    double se1 = std::sqrt(p1 * (1 - p1) / trials);
    double slack = 3 * std::sqrt(se0 * se0 + se1 * se1);
    if (p1 > p0 + slack) {
      out.pass = false;
      fails << " [n=" << ns[i - 1] << "->" << ns[i] << " " << p0 << "->"
            << p1 << "]";
    }
  }
  struct SmallCase {
    u32 n, r;
  };
  for (auto [n, r] : std::vector<SmallCase>{{3, 1}, {4, 2}, {5, 2}, {6, 1}}) {
    Rat exact = exact_invariable_sym(n, r);
    auto mc = mc_invariable_sym(n, r, trials / 2, seed + n + r);
    double ex = to_double(exact);
    if (!(mc.ci.low <= ex && ex <= mc.ci.high)) {
      out.pass = false;
      fails << " [exact n=" << n << " r=" << r << "]";
    }
  }
  std::ostringstream d;
  if (out.pass) {
    d << "r=3 estimates";
    for (size_t i = 0; i < ns.size(); ++i)
      d << " n=" << ns[i] << ":" << results[i].ci.point;
    d << " nonincreasing within 3 sigma; small cases covered";
  } else {
    d << "failures:" << fails.str();
  }
  out.detail = d.str();
  out.seconds = sw.seconds();
  return out;
}

/// The whole battery in acceptance order.
inline std::vector<CheckResult> verify_all(u64 max_order = 100000,
                                           bool quick = false) {
  std::vector<CheckResult> out;
  out.push_back(verify_dist_oracle(max_order));
  out.push_back(verify_normalization());
  out.push_back(verify_bounds(max_order, quick ? 16 : 40));
  out.push_back(verify_lower_bound());
  out.push_back(verify_gf(quick ? 24 : 40));
  out.push_back(verify_unipotent(max_order));
  out.push_back(verify_derange(max_order));
  out.push_back(verify_samplers(quick ? 2000 : 10000,
                                quick ? 20000 : 100000));
  out.push_back(verify_strict_inequality(quick ? 9 : 12));
  out.push_back(verify_invariable(quick ? 20000 : 100000));
  return out;
}

}  // namespace cpfq
