// Invariant subsets of permutations versus invariant subspaces in GL(n,q):
// the predicates, exact probabilities on both sides, the strict comparison
// between them, and Monte Carlo estimates for invariable generation of a
// transitive (resp. irreducible) subgroup.
//
// A permutation of cycle type ct fixes a set of size e iff a sub-multiset of
// its cycle lengths sums to e. A matrix with factor profile {(d_i, j_i)}
// fixes an e-dimensional subspace iff e = sum c_i d_i with 0 <= c_i <= j_i.
#pragma once

#include <algorithm>
#include <map>

#include "cpfq/derange.hpp"

namespace cpfq {

using CycleType = std::vector<u32>;  // parts, any order

/// Achievable subset-sums of a multiset of parts, as a bitset over 0..n.
class SumSet {
 public:
  explicit SumSet(u32 n) : n_(n), bits_((n + 64) / 64, 0) { bits_[0] = 1; }

  /// Everything in [0, n] achievable.
  static SumSet full(u32 n) {
    SumSet s(n);
    for (auto& w : s.bits_) w = ~0ull;
    u32 top = n % 64;
    s.bits_.back() &= (top == 63) ? ~0ull : ((1ull << (top + 1)) - 1);
    return s;
  }

  void add_part(u32 part, u32 copies = 1) {
    for (u32 c = 0; c < copies; ++c) shift_or(part);
  }
  bool contains(u32 e) const {
    if (e > n_) return false;
    return (bits_[e / 64] >> (e % 64)) & 1;
  }
  void intersect(const SumSet& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  }
  /// Any achievable value in [1, n-1]?
  bool any_proper() const {
    for (u32 e = 1; e < n_; ++e)
      if (contains(e)) return true;
    return false;
  }
  u64 word(size_t i) const { return bits_[i]; }
  u32 n() const { return n_; }

 private:
  void shift_or(u32 s) {
    if (s == 0 || s > n_) return;
    size_t ws = s / 64, bs = s % 64;
    for (size_t i = bits_.size(); i-- > 0;) {
      u64 v = 0;
      if (i >= ws) {
        v = bits_[i - ws] << bs;
        if (bs && i > ws) v |= bits_[i - ws - 1] >> (64 - bs);
      }
      bits_[i] |= v;
    }
    // mask stray bits above n
    u32 top = n_ % 64;
    if (top + 1 <= 64 && !bits_.empty())
      bits_.back() &= (top == 63) ? ~0ull : ((1ull << (top + 1)) - 1);
  }

  u32 n_;
  std::vector<u64> bits_;
};

inline SumSet subset_sums(const CycleType& ct, u32 n) {
  SumSet s(n);
  for (u32 part : ct) s.add_part(part);
  return s;
}

inline SumSet subspace_sums(const DegMultProfile& profile, u32 n) {
  SumSet s(n);
  for (auto [d, j] : profile) s.add_part(d, j);
  return s;
}

inline bool has_invariant_subset(const CycleType& ct, u32 e) {
  u32 n = 0;
  for (u32 p : ct) n += p;
  if (e > n) throw error("has_invariant_subset: e out of range");
  return subset_sums(ct, n).contains(e);
}

inline bool has_invariant_subspace(const DegMultProfile& profile, u32 e) {
  u32 n = 0;
  for (auto [d, j] : profile) n += d * j;
  if (e > n) throw error("has_invariant_subspace: e out of range");
  return subspace_sums(profile, n).contains(e);
}

// ---- exact probabilities ------------------------------------------------

namespace detail {

template <class Fn>
void for_each_partition(u32 n, Fn&& fn) {
  CycleType parts;
  std::function<void(u32, u32)> rec = [&](u32 remaining, u32 max_part) {
    if (remaining == 0) {
      fn(parts);
      return;
    }
    for (u32 p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
}

/// 1 / (prod_i i^{a_i} a_i!) where a_i = number of parts equal to i.
inline Rat cycle_type_measure(const CycleType& ct) {
  std::map<u32, u32> mult;
  for (u32 p : ct) mult[p]++;
  BigInt denom = 1;
  for (auto [len, a] : mult) denom *= ipow(BigInt(len), a) * factorial(a);
  return make_rat(1, denom);
}

}  // namespace detail

/// P(a uniform element of S_n fixes no subset of size e), for all e at once.
inline std::vector<Rat> prob_sym_no_invariant_all(u32 n, u32 cap = 40) {
  if (n < 1 || n > cap) throw error("prob_sym_no_invariant: n out of range");
  std::vector<Rat> blocked(n + 1, Rat(0));
  detail::for_each_partition(n, [&](const CycleType& ct) {
    Rat m = detail::cycle_type_measure(ct);
    SumSet sums = subset_sums(ct, n);
    for (u32 e = 0; e <= n; ++e)
      if (!sums.contains(e)) blocked[e] += m;
  });
  return blocked;
}

inline Rat prob_sym_no_invariant(u32 n, u32 e, u32 cap = 40) {
  if (e > n) throw error("prob_sym_no_invariant: e out of range");
  return prob_sym_no_invariant_all(n, cap)[e];
}

namespace detail {

/// Exact distribution of the achievable-dimension set of a uniform GL(n,q)
/// element, as mass per subset-sum bitmask (n <= 63). Slots of degree d
/// come in count_N(q;d) identical copies; multiplicity multisets are
/// weighted by falling-factorial slot choices over multinomials.
inline std::map<u64, Rat> gl_submask_distribution(u32 n, u32 q) {
  if (n > 63) throw error("gl mask distribution: n too large");
  BigInt Q(q);
  u64 full = (n == 63) ? ~0ull : ((1ull << (n + 1)) - 1);
  // DP state: (achievable-sum mask, dimension used so far) -> mass
  std::map<std::pair<u64, u32>, Rat> cur;
  cur[{1, 0}] = Rat(1);  // only 0 achievable, no factors yet
  for (u32 d = 1; d <= n; ++d) {
    BigInt avail = count_N(Q, d);
    // enumerate multiplicity multisets {j_1 >= j_2 >= ...} with sum d*j <= n
    struct Bundle {
      std::vector<u32> mults;
      Rat weight;
    };
    std::vector<Bundle> bundles;
    std::vector<u32> mults;
    std::function<void(u32, u32)> gen = [&](u32 budget, u32 max_j) {
      {
        // close the current multiset
        Bundle b;
        b.mults = mults;
        // weight: falling factorial of available slots over the
        // permutations of equal multiplicities, times the factor weights
        u32 c = static_cast<u32>(mults.size());
        if (avail < static_cast<long>(c)) {
          // not enough distinct irreducibles of this degree
        } else {
          BigInt ways = falling_factorial(avail, c);
          std::map<u32, u32> eq;
          for (u32 j : mults) eq[j]++;
          BigInt perm = 1;
          for (auto [j, cnt] : eq) perm *= factorial(cnt);
          Rat w = make_rat(ways, perm);
          for (u32 j : mults) w *= weight_gl_factor(Q, d, j);
          b.weight = w;
          bundles.push_back(std::move(b));
        }
      }
      for (u32 j = std::min(max_j, budget / d); j >= 1; --j) {
        mults.push_back(j);
        gen(budget - d * j, j);
        mults.pop_back();
      }
    };
    gen(n, n);
    std::map<std::pair<u64, u32>, Rat> next;
    for (const auto& [key, w] : cur) {
      auto [mask, used] = key;
      for (const auto& b : bundles) {
        u32 deg = 0;
        for (u32 j : b.mults) deg += d * j;
        if (used + deg > n) continue;
        u64 m2 = mask;
        for (u32 j : b.mults)
          for (u32 c = 0; c < j; ++c) m2 |= (m2 << d) & full;
        next[{m2, used + deg}] += w * b.weight;
      }
    }
    cur = std::move(next);
  }
  std::map<u64, Rat> out;
  for (const auto& [key, w] : cur)
    if (key.second == n) out[key.first] += w;
  return out;
}

}  // namespace detail

/// P(a uniform element of GL(n,q) leaves no e-dimensional subspace
/// invariant), all e at once, exact.
inline std::vector<Rat> prob_gl_no_invariant_all(u32 n, u32 q) {
  auto dist = detail::gl_submask_distribution(n, q);
  std::vector<Rat> blocked(n + 1, Rat(0));
  for (const auto& [mask, w] : dist)
    for (u32 e = 0; e <= n; ++e)
      if (!((mask >> e) & 1)) blocked[e] += w;
  return blocked;
}

inline Rat prob_gl_no_invariant(u32 n, u32 q, u32 e) {
  if (e > n) throw error("prob_gl_no_invariant: e out of range");
  return prob_gl_no_invariant_all(n, q)[e];
}

struct StrictInequality {
  Rat gl_side, sym_side;
  bool strict;
};

/// The subspace-avoidance probability in GL(n,q) is strictly below the
/// subset-avoidance probability in S_n.
inline StrictInequality check_strict_inequality(u32 n, u32 q, u32 e) {
  StrictInequality out;
  out.gl_side = prob_gl_no_invariant(n, q, e);
  out.sym_side = prob_sym_no_invariant(n, e);
  out.strict = out.gl_side < out.sym_side;
  return out;
}

// ---- invariable generation -----------------------------------------------

/// Conjugates of the g_i generate a transitive subgroup for every choice of
/// conjugators iff for each e in [1, n-1] some cycle type fixes no e-set.
inline bool invariably_transitive(const std::vector<CycleType>& cts) {
  if (cts.empty()) throw error("invariably_transitive: empty tuple");
  u32 n = 0;
  for (u32 p : cts[0]) n += p;
  SumSet common = subset_sums(cts[0], n);
  for (size_t i = 1; i < cts.size(); ++i) {
    u32 ni = 0;
    for (u32 p : cts[i]) ni += p;
    if (ni != n) throw error("invariably_transitive: mixed degrees");
    common.intersect(subset_sums(cts[i], n));
  }
  return !common.any_proper();
}

inline CycleType random_cycle_type(u32 n, Rng& rng) {
  std::vector<u32> perm(n);
  for (u32 i = 0; i < n; ++i) perm[i] = i;
  for (u32 i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(i)]);
  CycleType ct;
  std::vector<bool> seen(n, false);
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
  return ct;
}

/// Monte Carlo estimate of P(r uniform elements of S_n are invariably
/// transitive).
inline McResult mc_invariable_sym(u32 n, u32 r, u64 trials, u64 seed) {
  McResult out;
  out.trials = trials;
  out.hits = run_streams(trials, seed, [&](Rng& rng) {
    std::vector<CycleType> cts;
    for (u32 i = 0; i < r; ++i) cts.push_back(random_cycle_type(n, rng));
    return invariably_transitive(cts);
  });
  out.ci = wilson_ci(out.hits, trials);
  return out;
}

/// Exact value of the same probability by summing over r-tuples of cycle
/// types (partition lists stay small for the n this is used at).
inline Rat exact_invariable_sym(u32 n, u32 r) {
  std::vector<std::pair<SumSet, Rat>> types;
  detail::for_each_partition(n, [&](const CycleType& ct) {
    types.push_back({subset_sums(ct, n), detail::cycle_type_measure(ct)});
  });
  Rat total(0);
  std::vector<size_t> pick(r, 0);
  std::function<void(u32, SumSet, Rat)> rec = [&](u32 depth, SumSet common,
                                                  Rat w) {
    if (depth == r) {
      if (!common.any_proper()) total += w;
      return;
    }
    for (const auto& [sums, m] : types) {
      SumSet merged = common;
      merged.intersect(sums);
      rec(depth + 1, merged, w * m);
    }
  };
  rec(0, SumSet::full(n), Rat(1));
  return total;
}

// ---- the GL-side profile sampler -------------------------------------

/// Samples factor profiles of a uniform GL(n,q) element from the exact
/// distribution, without touching matrices: per degree, the dimension
/// consumed is drawn from precomputed series tables, then a multiplicity
/// multiset is drawn within the degree. Exact-rational inverse CDF with a
/// big-integer uniform draw.
class GlProfileSampler {
 public:
  GlProfileSampler(u32 n, u32 q) : n_(n), q_(q) {
    // suffix[d][v]: mass generating function of degrees >= d at dimension v
    u32 maxd = n + 1;
    std::vector<RatSeries> slot_pows;  // per degree: (1 + h_d)^N stored flat
    suffix_.assign(maxd + 2, RatSeries(n));
    RatSeries onev(n);
    onev.coef(0) = 1;
    suffix_[maxd + 1] = onev;
    slot_gf_.assign(maxd + 1, RatSeries(n));
    deg_pow_.assign(maxd + 1, RatSeries(n));
    for (u32 d = maxd; d >= 1; --d) {
      RatSeries slot(n);
      slot.coef(0) = 1;
      for (u32 j = 1; j * d <= n; ++j)
        slot.coef(j * d) = weight_gl_factor(BigInt(q), d, j);
      slot_gf_[d] = slot;
      BigInt cnt = count_N(BigInt(q), d);
      deg_pow_[d] = slot.log().scaled(Rat(cnt)).exp();
      suffix_[d] = deg_pow_[d] * suffix_[d + 1];
      if (d == 1) break;
    }
  }

  DegMultProfile sample(Rng& rng) const {
    DegMultProfile profile;
    u32 remaining = n_;
    for (u32 d = 1; d <= n_ && remaining > 0; ++d) {
      // draw s = dimension consumed at degree d
      std::vector<Rat> weights;
      std::vector<u32> values;
      for (u32 s = 0; s <= remaining; s += 1) {
        if (s % d != 0) continue;
        Rat w = pow_coef(d, s) * suffix_[d + 1].coef(remaining - s);
        if (w != 0) {
          weights.push_back(w);
          values.push_back(s);
        }
      }
      u32 s = values[draw(weights, rng)];
      if (s == 0) continue;
      // draw the multiplicity multiset within degree d, slot by slot
      u32 left = s;
      BigInt avail = count_N(BigInt(q_), d);
      u32 max_j = left / d;
      while (left > 0) {
        // number of copies with multiplicity exactly j is implicit: draw the
        // next factor's multiplicity j weighted by
        // w(d,j) * avail * P(rest fills left - dj with avail - 1 slots)
        std::vector<Rat> jw;
        std::vector<u32> jv;
        for (u32 j = 1; j * d <= left && j <= max_j; ++j) {
          Rat w = Rat(avail) * slot_gf_[d].coef(j * d) *
                  rest_coef(d, avail - 1, left - j * d, j);
          if (w != 0) {
            jw.push_back(w);
            jv.push_back(j);
          }
        }
        u32 j = jv[draw(jw, rng)];
        profile.push_back({d, j});
        left -= j * d;
        avail -= 1;
        max_j = j;  // keep multiplicities nonincreasing to avoid recount
      }
      remaining -= s;
    }
    std::sort(profile.begin(), profile.end());
    return profile;
  }

  u32 n() const { return n_; }

 private:
  // mass of filling exactly v at degree d over all its slots
  Rat pow_coef(u32 d, u32 v) const { return deg_pow_[d].coef(v); }

  // mass of filling `left` with `slots` remaining slots of degree d, each
  // multiplicity <= maxj
  Rat rest_coef(u32 d, const BigInt& slots, u32 left, u32 maxj) const {
    if (left == 0) return Rat(1);
    if (slots <= 0) return Rat(0);
    // truncated slot gf with multiplicities <= maxj, raised to `slots`
    RatSeries slot(left);
    slot.coef(0) = 1;
    for (u32 j = 1; j <= maxj && j * d <= left; ++j)
      slot.coef(j * d) = slot_gf_[d].coef(j * d);
    RatSeries p = slot.log().scaled(Rat(slots)).exp();
    return p.coef(left);
  }

  size_t draw(const std::vector<Rat>& weights, Rng& rng) const {
    BigInt denom = 1;
    for (const Rat& w : weights) denom = lcm_den(denom, w);
    BigInt total = 0;
    std::vector<BigInt> scaled;
    for (const Rat& w : weights) {
      BigInt s = BigInt(w.get_num()) * (denom / w.get_den());
      scaled.push_back(s);
      total += s;
    }
    BigInt x = rng.below(total);
    for (size_t i = 0; i < scaled.size(); ++i) {
      if (x < scaled[i]) return i;
      x -= scaled[i];
    }
    throw error("profile sampler: draw overflow");
  }

  static BigInt lcm_den(const BigInt& a, const Rat& w) {
    BigInt l;
    BigInt d(w.get_den());
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return l;
  }

  u32 n_, q_;
  std::vector<RatSeries> suffix_;
  std::vector<RatSeries> slot_gf_;
  std::vector<RatSeries> deg_pow_;
};

/// Monte Carlo estimate of P(r profile draws from GL(n,q) jointly block
/// every dimension 1..n-1) - the characteristic-polynomial necessary
/// condition for invariable irreducibility.
inline McResult mc_invariable_gl(u32 n, u32 q, u32 r, u64 trials, u64 seed) {
  GlProfileSampler sampler(n, q);
  McResult out;
  out.trials = trials;
  out.hits = run_streams(trials, seed, [&](Rng& rng) {
    SumSet common = SumSet::full(n);
    for (u32 i = 0; i < r; ++i) {
      DegMultProfile prof = sampler.sample(rng);
      common.intersect(subspace_sums(prof, n));
    }
    return !common.any_proper();
  });
  out.ci = wilson_ci(out.hits, trials);
  return out;
}

}  // namespace cpfq
