// Characteristic-polynomial membership conditions for extension-field (and
// unitary-in-symplectic/orthogonal) subgroups, exact masses of elements
// satisfying them, polynomial counts, Monte Carlo cross-checks, and decay
// tables along doubling dimension grids.
//
// The condition a characteristic polynomial can certify is: every
// irreducible factor has degree divisible by b or multiplicity divisible by
// b. That is necessary for membership, so the computed masses are upper
// bounds on the non-derangement proportion; Jordan-block refinements and
// outer-coset elements are intentionally not modeled here.
//
// Exact masses come from the generating function
//   prod_slots (1 + sum_{allowed j} w(d, j) u^{(deg) j})^{count}
// with the family's per-factor weights; the count-fold power is taken as
// exp(count * log(...)) in exact rational arithmetic.
#pragma once

#include "cpfq/bounds.hpp"
#include "cpfq/series.hpp"
#include "cpfq/stats.hpp"

namespace cpfq {

enum class CondKind {
  ExtFieldGL,   // GL(n/b, q^b).b inside GL(n,q)
  ExtFieldGU,   // GU(n/b, q^b).b inside GU(n,q), b odd
  ExtFieldSp,   // Sp(2n/b, q^b).b inside Sp(2n,q), b odd
  ExtFieldSp2,  // Sp(n, q^2).2 inside Sp(2n,q)
  UnitaryInSp,  // GU(n,q).2 inside Sp(2n,q)
  UnitaryInO,   // U(n,q).2 inside O^{+-}(2n,q)
  All           // no restriction; masses must come out as full measure
};

struct SubgroupCondition {
  CondKind kind;
  u32 b = 2;

  u32 effective_b() const {
    switch (kind) {
      case CondKind::ExtFieldSp2:
      case CondKind::UnitaryInSp:
      case CondKind::UnitaryInO: return 2;
      case CondKind::All: return 0;
      default: return b;
    }
  }

  void validate() const {
    switch (kind) {
      case CondKind::ExtFieldGL:
        if (!is_prime_u64(b)) throw error("condition: b must be prime");
        break;
      case CondKind::ExtFieldSp:
        if (!is_prime_u64(b)) throw error("condition: b must be prime");
        if (b == 2)
          throw error("condition: use ExtFieldSp2 for b = 2 in Sp");
        break;
      case CondKind::ExtFieldGU:
        if (!is_prime_u64(b) || b == 2)
          throw error("no such embedding for b = 2; b must be an odd prime");
        break;
      default: break;
    }
  }
};

using DegMultProfile = std::vector<std::pair<u32, u32>>;

/// Every factor has degree or multiplicity divisible by b.
inline bool satisfies_condition(const DegMultProfile& profile,
                                const SubgroupCondition& cond) {
  u32 b = cond.effective_b();
  if (b == 0) return true;
  for (auto [d, j] : profile)
    if (d % b != 0 && j % b != 0) return false;
  return true;
}

namespace detail {

struct WeightSlot {
  u32 factor_deg;   // degree entering the divisibility condition
  u32 stride;       // u-degree consumed per unit multiplicity
  BigInt count;     // number of identical slots
  std::function<Rat(u32)> weight;  // weight of multiplicity j >= 1
};

struct SingleSlot {
  // one slot with explicit options: (consumed u-degree, factor multiplicity,
  // weight); used for the z -+ 1 factors whose exponent rules differ
  std::vector<std::tuple<u32, u32, Rat>> options;
};

struct SlotModel {
  u32 target = 0;  // u-degree of the module
  std::vector<SingleSlot> singles;
  std::vector<WeightSlot> groups;
};

/// The measure-generating slots of each family's distribution.
inline SlotModel slot_model(Family fam, u32 n, u32 q, u32 trunc) {
  BigInt Q(q);
  SlotModel model;
  switch (fam) {
    case Family::GL: {
      model.target = n;
      for (u32 d = 1; d <= trunc; ++d)
        model.groups.push_back({d, d, count_N(Q, d), [Q, d](u32 j) {
                                  return weight_gl_factor(Q, d, j);
                                }});
      break;
    }
    case Family::GU: {
      model.target = n;
      for (u32 d = 1; d <= trunc; ++d) {
        auto uc = count_unitary(Q, d);
        if (d % 2 == 1 && uc.Ntilde > 0)
          model.groups.push_back({d, d, uc.Ntilde, [Q, d](u32 j) {
                                    return weight_gu_factor(Q, d, j);
                                  }});
        if (2 * d <= trunc && uc.Mtilde > 0)
          model.groups.push_back({d, 2 * d, uc.Mtilde, [Q, d](u32 j) {
                                    return weight_gl_factor(Q, 2 * d, j);
                                  }});
      }
      break;
    }
    case Family::Sp: {
      model.target = 2 * n;
      bool even_char = q % 2 == 0;
      SingleSlot zminus;
      for (u32 a = 0; 2 * a <= trunc; ++a)
        zminus.options.push_back({2 * a, 2 * a, weight_sp_linear(Q, a)});
      model.singles.push_back(zminus);
      if (!even_char) model.singles.push_back(zminus);
      for (u32 m = 2; m <= trunc; m += 2) {
        BigInt cnt = count_star(Q, m).Nstar;
        if (cnt > 0)
          model.groups.push_back({m, m, cnt, [Q, m](u32 j) {
                                    return make_rat(
                                        ipow(Q, static_cast<u64>(m) * j *
                                                    (j - 1) / 2),
                                        order_gu(ipow(Q, m / 2), j));
                                  }});
      }
      for (u32 d = 1; 2 * d <= trunc; ++d) {
        BigInt cnt = count_star(Q, d).Mstar;
        if (cnt > 0)
          model.groups.push_back({d, 2 * d, cnt, [Q, d](u32 j) {
                                    return weight_gl_factor(Q, d, j);
                                  }});
      }
      break;
    }
    case Family::OPlus: {  // the O-sum measure (totals 2), odd q only
      if (q % 2 == 0)
        throw error("slot model: even-characteristic orthogonal sums are "
                    "enumeration only");
      model.target = n;
      for (int side = 0; side < 2; ++side) {
        SingleSlot z;
        for (u32 a = 0; a <= trunc; ++a)
          z.options.push_back({a, a, weight_o_linear(Q, a)});
        model.singles.push_back(z);
      }
      for (u32 m = 2; m <= trunc; m += 2) {
        BigInt cnt = count_star(Q, m).Nstar;
        if (cnt > 0)
          model.groups.push_back({m, m, cnt, [Q, m](u32 j) {
                                    return make_rat(
                                        ipow(Q, static_cast<u64>(m) * j *
                                                    (j - 1) / 2),
                                        order_gu(ipow(Q, m / 2), j));
                                  }});
      }
      for (u32 d = 1; 2 * d <= trunc; ++d) {
        BigInt cnt = count_star(Q, d).Mstar;
        if (cnt > 0)
          model.groups.push_back({d, 2 * d, cnt, [Q, d](u32 j) {
                                    return weight_gl_factor(Q, d, j);
                                  }});
      }
      break;
    }
    default:
      throw error("slot model: unsupported family");
  }
  return model;
}

inline bool mult_allowed(u32 factor_deg, u32 j, u32 b) {
  return b == 0 || factor_deg % b == 0 || j % b == 0;
}

}  // namespace detail

/// Exact probability that a uniform element's characteristic polynomial
/// satisfies the condition. For the orthogonal family this is the summed
/// O^+/O^- measure and lies in [0, 2].
inline Rat exact_condition_prob(Family fam, u32 n, u32 q,
                                const SubgroupCondition& cond,
                                u32 series_cap = 64) {
  cond.validate();
  u32 target = fam == Family::Sp ? 2 * n : n;
  if (target > series_cap) throw error("exact_condition_prob: series cap");
  detail::SlotModel model = detail::slot_model(fam, n, q, target);
  u32 b = cond.effective_b();

  RatSeries logsum(target);
  for (const auto& g : model.groups) {
    RatSeries slot(target);
    slot.coef(0) = 1;
    bool any = false;
    for (u32 j = 1; j * g.stride <= target; ++j) {
      if (!detail::mult_allowed(g.factor_deg, j, b)) continue;
      slot.coef(j * g.stride) = g.weight(j);
      any = true;
    }
    if (!any) continue;
    RatSeries lg = slot.log();
    Rat cnt(g.count);
    logsum = logsum + lg.scaled(cnt);
  }
  RatSeries series = logsum.exp();
  for (const auto& s : model.singles) {
    RatSeries slot(target);
    for (const auto& [du, mult, w] : s.options) {
      if (du > target) continue;
      if (mult != 0 && !detail::mult_allowed(1, mult, b)) continue;
      slot.coef(du) += w;
    }
    series = series * slot;
  }
  return series.coef(target);
}

/// Exact count of valid characteristic polynomials of the family whose
/// factors all satisfy the condition (weights replaced by 1).
inline BigInt count_condition_polys(Family fam, u32 n, u32 q,
                                    const SubgroupCondition& cond,
                                    u32 series_cap = 64) {
  cond.validate();
  u32 target = fam == Family::Sp ? 2 * n : n;
  if (target > series_cap) throw error("count_condition_polys: series cap");
  detail::SlotModel model = detail::slot_model(fam, n, q, target);
  u32 b = cond.effective_b();

  RatSeries logsum(target);
  for (const auto& g : model.groups) {
    RatSeries slot(target);
    slot.coef(0) = 1;
    bool any = false;
    for (u32 j = 1; j * g.stride <= target; ++j) {
      if (!detail::mult_allowed(g.factor_deg, j, b)) continue;
      slot.coef(j * g.stride) = 1;
      any = true;
    }
    if (!any) continue;
    logsum = logsum + slot.log().scaled(Rat(g.count));
  }
  RatSeries series = logsum.exp();
  for (const auto& s : model.singles) {
    RatSeries slot(target);
    std::vector<bool> seen(target + 1, false);
    for (const auto& [du, mult, w] : s.options) {
      if (du > target || seen[du]) continue;
      if (mult != 0 && !detail::mult_allowed(1, mult, b)) continue;
      slot.coef(du) = 1;
      seen[du] = true;
    }
    series = series * slot;
  }
  Rat c = series.coef(target);
  if (c.get_den() != 1)
    throw error("count_condition_polys: non-integer count");
  return c.get_num();
}

/// Monte Carlo estimate of the condition mass for one concrete group,
/// with a 99% Wilson interval.
struct McResult {
  u64 hits = 0, trials = 0;
  WilsonCI ci{0, 0, 0};
};

inline McResult mc_condition_prob(const GroupSpec& s,
                                  const SubgroupCondition& cond, u64 trials,
                                  u64 seed) {
  cond.validate();
  const Fq& F = spec_field(s);
  McResult out;
  out.trials = trials;
  out.hits = run_streams(trials, seed, [&](Rng& rng) {
    Mat g = sample_uniform(s, rng);
    auto fact = factorize(F, char_poly(F, g), rng.next());
    return satisfies_condition(factor_profile(fact), cond);
  });
  out.ci = wilson_ci(out.hits, trials);
  return out;
}

/// One row of a decay table: exact mass and its normalized form.
struct DecayRow {
  u32 n;
  Rat exact;
  double raw;
  double normalized;
};

/// Family-specific normalization mirroring the shape of the derangement
/// theorems: the mass divided by the theorem's upper envelope with the
/// unnamed constant dropped.
inline double decay_normalizer(Family fam, u32 n, u32 q) {
  double nn = static_cast<double>(n);
  double lq = std::log(nn + 1) / std::log(static_cast<double>(q));
  double l4 = std::log(4 * nn) / std::log(static_cast<double>(q));
  switch (fam) {
    case Family::GL: return std::pow(1 + lq, 6) / std::sqrt(nn);
    case Family::GU: return (2 + lq) / std::cbrt(nn);
    case Family::Sp: return std::pow(l4 + 4, 3) / std::cbrt(nn);
    case Family::OPlus:
      return static_cast<double>(q) * std::pow(l4 + 4, 3) / std::cbrt(nn);
    default: throw error("decay_normalizer: unsupported family");
  }
}

inline std::vector<DecayRow> decay_trend(Family fam, u32 q,
                                         const SubgroupCondition& cond,
                                         const std::vector<u32>& n_list,
                                         u32 series_cap = 64) {
  std::vector<DecayRow> rows;
  for (u32 n : n_list) {
    Rat mass = exact_condition_prob(fam, n, q, cond, series_cap);
    DecayRow row;
    row.n = n;
    row.exact = mass;
    row.raw = to_double(mass);
    row.normalized = row.raw / decay_normalizer(fam, n, q);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline bool raw_strictly_decreasing(const std::vector<DecayRow>& rows) {
  for (size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].exact < rows[i - 1].exact)) return false;
  return true;
}

/// An integer n has at most log2(n) prime divisors (counted once each).
inline bool prime_divisor_count_ok(u64 n) {
  u64 count = distinct_prime_factors(n).size();
  u64 log2n = 0;
  while ((1ull << (log2n + 1)) <= n) ++log2n;
  return count <= log2n || n == 1;
}

}  // namespace cpfq
