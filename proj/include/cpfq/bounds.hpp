// Explicit upper bounds on the probability of any single characteristic
// polynomial, the exact GL lower bound, and the numeric inequality chains
// used in their derivations.
//
// Transcendental bounds are evaluated in 128-bit MPFR arithmetic with every
// operation rounded toward making the final value LARGER, so comparing an
// exact rational maximum against the bound is conservative.
#pragma once

#include <mpfr.h>

#include "cpfq/charpoly_dist.hpp"
#include "cpfq/counting.hpp"

namespace cpfq {

/// Upper-rounded positive real; minimal RAII over mpfr_t.
class UpperReal {
 public:
  UpperReal() { mpfr_init2(v_, 128); }
  explicit UpperReal(double x) : UpperReal() { mpfr_set_d(v_, x, MPFR_RNDU); }
  UpperReal(const UpperReal& o) : UpperReal() {
    mpfr_set(v_, o.v_, MPFR_RNDU);
  }
  UpperReal& operator=(const UpperReal& o) {
    mpfr_set(v_, o.v_, MPFR_RNDU);
    return *this;
  }
  ~UpperReal() { mpfr_clear(v_); }

  double approx() const { return mpfr_get_d(v_, MPFR_RNDU); }
  /// exact <= bound, safe because the bound was rounded upward throughout.
  bool dominates(const Rat& exact) const {
    return mpfr_cmp_q(v_, exact.get_mpq_t()) >= 0;
  }
  friend bool operator<(const UpperReal& a, const UpperReal& b) {
    return mpfr_cmp(a.v_, b.v_) < 0;
  }

  mpfr_t& raw() { return v_; }
  const mpfr_t& raw() const { return v_; }

 private:
  mpfr_t v_;
};

namespace detail {

/// log_q(x) rounded up: log(x) up, log(q) down, divide up.
inline UpperReal logq_up(u64 x, u32 q) {
  UpperReal num, den, out;
  mpfr_set_ui(num.raw(), x, MPFR_RNDU);
  mpfr_log(num.raw(), num.raw(), MPFR_RNDU);
  mpfr_set_ui(den.raw(), q, MPFR_RNDD);
  mpfr_log(den.raw(), den.raw(), MPFR_RNDD);
  mpfr_div(out.raw(), num.raw(), den.raw(), MPFR_RNDU);
  return out;
}

inline UpperReal div_pow_up(UpperReal num, u32 q, u64 e) {
  BigInt d = ipow(q, e);
  UpperReal den;
  mpfr_set_z(den.raw(), d.get_mpz_t(), MPFR_RNDD);
  UpperReal out;
  mpfr_div(out.raw(), num.raw(), den.raw(), MPFR_RNDU);
  return out;
}

}  // namespace detail

/// e^6 [1 + log_q(n+1)]^6 / q^n, rounded up.
inline UpperReal bound_gl(u32 n, u32 q) {
  if (n < 1 || q < 2) throw error("bound_gl: need n >= 1, q >= 2");
  UpperReal base = detail::logq_up(n + 1, q);
  mpfr_add_ui(base.raw(), base.raw(), 1, MPFR_RNDU);
  mpfr_pow_ui(base.raw(), base.raw(), 6, MPFR_RNDU);
  UpperReal e6;
  mpfr_set_ui(e6.raw(), 6, MPFR_RNDU);
  mpfr_exp(e6.raw(), e6.raw(), MPFR_RNDU);
  mpfr_mul(base.raw(), base.raw(), e6.raw(), MPFR_RNDU);
  return detail::div_pow_up(base, q, n);
}

/// e [2 + log_q(n+1)] / q^n, rounded up.
inline UpperReal bound_gu(u32 n, u32 q) {
  if (n < 1 || q < 2) throw error("bound_gu: need n >= 1, q >= 2");
  UpperReal base = detail::logq_up(n + 1, q);
  mpfr_add_ui(base.raw(), base.raw(), 2, MPFR_RNDU);
  UpperReal e1;
  mpfr_set_ui(e1.raw(), 1, MPFR_RNDU);
  mpfr_exp(e1.raw(), e1.raw(), MPFR_RNDU);
  mpfr_mul(base.raw(), base.raw(), e1.raw(), MPFR_RNDU);
  return detail::div_pow_up(base, q, n);
}

/// Sp(2n,q): 20 [log_q(4n)+4]^{3/2} / q^n odd q, 242 [log_q(4n)+4]^3 / q^n
/// even q.
inline UpperReal bound_sp(u32 n, u32 q) {
  if (n < 1 || q < 2) throw error("bound_sp: need n >= 1, q >= 2");
  UpperReal base = detail::logq_up(4ull * n, q);
  mpfr_add_ui(base.raw(), base.raw(), 4, MPFR_RNDU);
  if (q % 2 == 1) {
    mpfr_pow_ui(base.raw(), base.raw(), 3, MPFR_RNDU);
    mpfr_sqrt(base.raw(), base.raw(), MPFR_RNDU);
    mpfr_mul_ui(base.raw(), base.raw(), 20, MPFR_RNDU);
  } else {
    mpfr_pow_ui(base.raw(), base.raw(), 3, MPFR_RNDU);
    mpfr_mul_ui(base.raw(), base.raw(), 242, MPFR_RNDU);
  }
  return detail::div_pow_up(base, q, n);
}

/// O(n,q): odd q gives 27 [log_q(4r)+4]^{3/2} / q^{r-1} with r = floor(n/2);
/// even q (n = 2m even) gives 352 [log_q(4m)+4]^3 / q^{m-1}.
inline UpperReal bound_o(u32 n, u32 q) {
  if (n < 2 || q < 2) throw error("bound_o: need n >= 2, q >= 2");
  if (q % 2 == 0 && n % 2 == 1)
    throw error("bound_o: odd dimension in even characteristic");
  u32 r = n / 2;
  UpperReal base = detail::logq_up(4ull * r, q);
  mpfr_add_ui(base.raw(), base.raw(), 4, MPFR_RNDU);
  if (q % 2 == 1) {
    mpfr_pow_ui(base.raw(), base.raw(), 3, MPFR_RNDU);
    mpfr_sqrt(base.raw(), base.raw(), MPFR_RNDU);
    mpfr_mul_ui(base.raw(), base.raw(), 27, MPFR_RNDU);
  } else {
    mpfr_pow_ui(base.raw(), base.raw(), 3, MPFR_RNDU);
    mpfr_mul_ui(base.raw(), base.raw(), 352, MPFR_RNDU);
  }
  return detail::div_pow_up(base, q, r - 1);
}

/// 1/(q^n - 1), together with the element-count identity
/// |GL(n,q)|/(q^n-1) = |GL(n-1,q)| q^{n-1}, asserted exactly.
struct GlLowerBound {
  Rat probability;
  BigInt element_count;
};

inline GlLowerBound lower_bound_gl(u32 n, u32 q) {
  if (n < 1 || q < 2) throw error("lower_bound_gl: need n >= 1, q >= 2");
  BigInt Q(q);
  BigInt denom = ipow(Q, n) - 1;
  GlLowerBound out;
  out.probability = make_rat(1, denom);
  BigInt quotient = order_gl(Q, n) / denom;
  if (quotient * denom != order_gl(Q, n))
    throw error("lower_bound_gl: q^n - 1 does not divide the group order");
  out.element_count = quotient;
  if (quotient != order_gl(Q, n - 1) * ipow(Q, n - 1))
    throw error("lower_bound_gl: identity violation");
  return out;
}

/// Verify 1/prod_{j>=1}(1 - q^{-ja}) <= 1/(1 - q^{-a} - q^{-2a})
///        <= 1 + v/q^a <= e^{v/q^a}
/// entirely in rational arithmetic. The infinite product is truncated at 60
/// factors with the tail bounded by exp(x^{61}/(1-x)^2) <= 1 + 2T for
/// T <= 1/2. Variants: v = 6 for q >= 2, a >= 1; v = 2 for q >= 2, a >= 2;
/// v = 3 for q >= 3, a >= 1.
inline bool euler_tail_bounds(u32 q, u32 a, u32 variant) {
  bool range_ok = false;
  if (variant == 6) range_ok = q >= 2 && a >= 1;
  if (variant == 2) range_ok = q >= 2 && a >= 2;
  if (variant == 3) range_ok = q >= 3 && a >= 1;
  if (!range_ok) throw error("euler_tail_bounds: out-of-range (q, a)");

  Rat x = make_rat(1, ipow(q, a));
  Rat prod(1);
  Rat xj(1);
  for (u32 j = 1; j <= 60; ++j) {
    xj *= x;
    prod /= Rat(1) - xj;
  }
  // tail: product over j > 60 of (1-x^j)^{-1} <= 1 + 2T, T = x^61/(1-x)^2
  Rat T = xj * x / ((Rat(1) - x) * (Rat(1) - x));
  if (T > make_rat(1, 2)) return false;
  Rat upper = prod * (Rat(1) + 2 * T);

  Rat mid_den = Rat(1) - x - x * x;
  if (mid_den <= 0) return false;
  Rat mid = Rat(1) / mid_den;
  Rat lin = Rat(1) + Rat(static_cast<long>(variant)) * x;
  // 1 + y <= e^y always; certified via the series lower bound 1 + y <= 1 + y
  return upper <= mid && mid <= lin;
}

/// Smallest r with q^r - 1 >= n satisfies r <= 1 + log_q(n+1); equivalently
/// q^{r-1} <= n + 1, checked in exact integer arithmetic.
inline bool r_selection_check(u64 n, u32 q) {
  u32 r = 1;
  while (ipow(q, r) - 1 < BigInt(static_cast<unsigned long>(n))) ++r;
  return ipow(q, r - 1) <= BigInt(static_cast<unsigned long>(n)) + 1;
}

// ---- exact maxima over all characteristic polynomials -------------------

namespace detail {

struct SlotGroup {
  u32 stride;                         // u-degree consumed per multiplicity
  u64 max_slots;                      // distinct factors available (clamped)
  std::function<Rat(u32)> weight;     // weight of multiplicity j >= 1
};

/// max over profiles of prod of weights, exact; single-option slots first.
inline Rat max_profile_value(u32 target,
                             const std::vector<std::vector<std::pair<u32, Rat>>>&
                                 singletons,
                             const std::vector<SlotGroup>& groups) {
  std::vector<std::optional<Rat>> best(target + 1);
  best[0] = Rat(1);
  for (const auto& options : singletons) {
    std::vector<std::optional<Rat>> next(target + 1);
    for (u32 s = 0; s <= target; ++s) {
      if (!best[s]) continue;
      for (const auto& [du, w] : options) {
        if (s + du > target) continue;
        Rat cand = *best[s] * w;
        if (!next[s + du] || cand > *next[s + du]) next[s + du] = cand;
      }
    }
    best = std::move(next);
  }
  for (const auto& g : groups) {
    u64 instances = std::min<u64>(g.max_slots, target / g.stride);
    for (u64 inst = 0; inst < instances; ++inst) {
      // each instance is one additional distinct factor with multiplicity j
      std::vector<std::optional<Rat>> next = best;
      bool changed = false;
      for (u32 s = 0; s <= target; ++s) {
        if (!best[s]) continue;
        for (u32 j = 1; s + g.stride * j <= target; ++j) {
          Rat cand = *best[s] * g.weight(j);
          auto& slot = next[s + g.stride * j];
          if (!slot || cand > *slot) {
            slot = cand;
            changed = true;
          }
        }
      }
      best = std::move(next);
      if (!changed) break;
    }
  }
  if (!best[target]) throw error("max_profile_value: target unreachable");
  return *best[target];
}

}  // namespace detail

/// Exact max over monic degree-n polynomials with nonzero constant term of
/// the GL(n,q) probability, by dynamic programming over factor profiles.
inline Rat max_prob_gl(u32 n, u32 q) {
  BigInt Q(q);
  std::vector<detail::SlotGroup> groups;
  for (u32 d = 1; d <= n; ++d) {
    BigInt cnt = count_N(Q, d);
    u64 cap = n / d;
    u64 slots = cnt > static_cast<long>(cap) ? cap : cnt.get_ui();
    if (slots == 0) continue;
    groups.push_back({d, slots, [Q, d](u32 j) {
                        return weight_gl_factor(Q, d, j);
                      }});
  }
  return detail::max_profile_value(n, {}, groups);
}

/// Exact max over valid Sp(2n,q) characteristic polynomials.
inline Rat max_prob_sp(u32 n, u32 q) {
  BigInt Q(q);
  u32 target = 2 * n;
  bool even_char = q % 2 == 0;
  std::vector<std::vector<std::pair<u32, Rat>>> singles;
  std::vector<std::pair<u32, Rat>> zminus;
  for (u32 a = 0; 2 * a <= target; ++a)
    zminus.push_back({2 * a, weight_sp_linear(Q, a)});
  singles.push_back(zminus);
  if (!even_char) singles.push_back(zminus);  // z + 1 behaves identically
  std::vector<detail::SlotGroup> groups;
  for (u32 m = 2; m <= target; m += 2) {
    BigInt cnt = count_star(Q, m).Nstar;
    u64 cap = target / m;
    u64 slots = cnt > static_cast<long>(cap) ? cap : cnt.get_ui();
    if (slots) {
      groups.push_back({m, slots, [Q, m](u32 j) {
                          return make_rat(
                              ipow(Q, static_cast<u64>(m) * j * (j - 1) / 2),
                              order_gu(ipow(Q, m / 2), j));
                        }});
    }
  }
  for (u32 d = 1; 2 * d <= target; ++d) {
    BigInt cnt = count_star(Q, d).Mstar;
    u64 cap = target / (2 * d);
    u64 slots = cnt > static_cast<long>(cap) ? cap : cnt.get_ui();
    if (slots) {
      groups.push_back({2 * d, slots, [Q, d](u32 j) {
                          return weight_gl_factor(Q, d, j);
                        }});
    }
  }
  return detail::max_profile_value(target, singles, groups);
}

/// Bound-vs-exact-maximum report for one spec.
struct BoundReport {
  GroupSpec spec;
  double bound;
  Rat max_exact;
  bool satisfied;
};

}  // namespace cpfq
