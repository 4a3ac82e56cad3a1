// Exact probability that a uniform element of a classical group has a given
// characteristic polynomial, one family at a time:
//
//   GL(n,q)     product over irreducible factors of
//               q^{m j (j-1)} / |GL(j, q^m)|
//   Mat(n,q)    the same product with the factor t allowed, times
//               prod_{i<=n} (1 - q^{-i})
//   GU(n,q)     self-conjugate factors weighted with GU orders, conjugate
//               pairs with GL orders
//   Sp(2n,q)    (z-1)^{2a} and (z+1)^{2b} weighted q^{2a^2}/|Sp(2a,q)|,
//               self-conjugate factors with GU(j, q^{m/2}), pairs with GL
//   O-sum(n,q)  odd q: F(a) F(b) times the symplectic-style products, where
//               the value is the sum of the proportions over both form types
//
// Probabilities are exact rationals; polynomials the family cannot realize
// get probability zero, with a separate predicate reporting why.
#pragma once

#include "cpfq/factorize.hpp"
#include "cpfq/groups.hpp"

namespace cpfq {

/// Decomposition of a self-conjugate polynomial under star or tilde.
struct ConjSplit {
  bool ok = false;
  std::string reason;
  u32 a_minus = 0;  // multiplicity of z - 1
  u32 a_plus = 0;   // multiplicity of z + 1 (zero in characteristic 2)
  struct SelfFactor {
    u32 deg, mult;
  };
  struct PairFactor {
    u32 deg, mult;  // degree of one member; the pair contributes 2*deg*mult
  };
  std::vector<SelfFactor> self_factors;  // z -+ 1 excluded
  std::vector<PairFactor> pairs;         // one entry per unordered pair
};

inline ConjSplit conj_split(const Fq& F, const Factorization& fact,
                            ConjFlavor flavor) {
  ConjSplit out;
  std::map<Poly, u32> mult;
  for (const auto& part : fact.parts) mult[part.f] = part.mult;
  u32 one = F.one(), mone = F.neg(F.one());
  for (const auto& part : fact.parts) {
    const Poly& f = part.f;
    if (f.coeff(0) == 0) {
      out.reason = "zero constant term";
      return out;
    }
    if (flavor == ConjFlavor::Star && f.deg() == 1) {
      if (f.c[0] == mone) {  // z - 1
        out.a_minus = part.mult;
        continue;
      }
      if (f.c[0] == one) {  // z + 1
        out.a_plus = part.mult;
        continue;
      }
    }
    Poly conj = p_conj(F, f, flavor);
    if (conj == f) {
      if (flavor == ConjFlavor::Tilde && f.deg() % 2 == 0)
        throw error("tilde-self-conjugate irreducible of even degree");
      if (flavor == ConjFlavor::Star && f.deg() % 2 == 1)
        throw error("star-self-conjugate irreducible of odd degree > 1");
      out.self_factors.push_back(
          {static_cast<u32>(f.deg()), part.mult});
      continue;
    }
    auto it = mult.find(conj);
    if (it == mult.end() || it->second != part.mult) {
      out.reason = "not self-conjugate";
      return out;
    }
    if (f < conj)  // record each pair once, from its smaller member
      out.pairs.push_back({static_cast<u32>(f.deg()), part.mult});
  }
  out.ok = true;
  return out;
}

// ---- per-factor weights ----------------------------------------------

/// q^{m j(j-1)} / |GL(j, q^m)|.
inline Rat weight_gl_factor(const BigInt& q, u32 m, u32 j) {
  return make_rat(ipow(ipow(q, m), static_cast<u64>(j) * (j - 1)),
                  order_gl(ipow(q, m), j));
}

/// q^{m j(j-1)} / |GU(j, q^m)|.
inline Rat weight_gu_factor(const BigInt& q, u32 m, u32 j) {
  return make_rat(ipow(ipow(q, m), static_cast<u64>(j) * (j - 1)),
                  order_gu(ipow(q, m), j));
}

/// q^{2a^2} / |Sp(2a, q)|.
inline Rat weight_sp_linear(const BigInt& q, u32 a) {
  return make_rat(ipow(q, 2ull * a * a), order_sp(q, a));
}

/// F(m): q^{m^2/2}/|Sp(m,q)| for even m, q^{(m-1)^2/2}/|Sp(m-1,q)| for odd.
inline Rat weight_o_linear(const BigInt& q, u32 m) {
  u32 e = m % 2 == 0 ? m : m - 1;
  return make_rat(ipow(q, static_cast<u64>(e) * e / 2), order_sp(q, e / 2));
}

// ---- family probabilities ---------------------------------------------

inline Rat prob_gl(const Fq& F, u32 n, const Poly& phi, u64 seed = 1) {
  if (phi.deg() != static_cast<int>(n) || !p_is_monic(phi))
    throw error("prob_gl: phi must be monic of degree n");
  if (phi.coeff(0) == 0) return Rat(0);
  BigInt q(F.q());
  Rat r(1);
  for (const auto& part : factorize(F, phi, seed).parts)
    r *= weight_gl_factor(q, static_cast<u32>(part.f.deg()), part.mult);
  return r;
}

/// Equivalent form (1/q^n) prod_i prod_{s<=j_i} (1 - q^{-s m_i})^{-1};
/// an independent algebraic route kept for cross-checking.
inline Rat prob_gl_euler_form(const Fq& F, u32 n, const Poly& phi,
                              u64 seed = 1) {
  if (phi.deg() != static_cast<int>(n) || !p_is_monic(phi))
    throw error("prob_gl: phi must be monic of degree n");
  if (phi.coeff(0) == 0) return Rat(0);
  BigInt q(F.q());
  Rat r = make_rat(1, ipow(q, n));
  for (const auto& part : factorize(F, phi, seed).parts) {
    u32 m = static_cast<u32>(part.f.deg());
    for (u32 s = 1; s <= part.mult; ++s) {
      Rat f = Rat(1) - make_rat(1, ipow(q, static_cast<u64>(s) * m));
      r /= f;
    }
  }
  return r;
}

inline Rat prob_mat(const Fq& F, u32 n, const Poly& phi, u64 seed = 1) {
  if (phi.deg() != static_cast<int>(n) || !p_is_monic(phi))
    throw error("prob_mat: phi must be monic of degree n");
  BigInt q(F.q());
  Rat r(1);
  for (const auto& part : factorize(F, phi, seed).parts)
    r *= weight_gl_factor(q, static_cast<u32>(part.f.deg()), part.mult);
  for (u32 i = 1; i <= n; ++i) r *= Rat(1) - make_rat(1, ipow(q, i));
  return r;
}

/// GU(n,q): phi lives over the quadratic tower F_{q^2}.
inline Rat prob_gu(const Fq& tower, u32 n, const Poly& phi, u64 seed = 1) {
  if (!tower.is_tower()) throw error("prob_gu: need a quadratic tower");
  if (phi.deg() != static_cast<int>(n) || !p_is_monic(phi))
    throw error("prob_gu: phi must be monic of degree n");
  if (phi.coeff(0) == 0) return Rat(0);
  auto split = conj_split(tower, factorize(tower, phi, seed),
                          ConjFlavor::Tilde);
  if (!split.ok) return Rat(0);
  BigInt q(tower.base()->q());
  Rat r(1);
  // z -+ 1 are tilde-self-conjugate linears; conj_split only routes them
  // separately for the star flavor
  for (const auto& sf : split.self_factors)
    r *= weight_gu_factor(q, sf.deg, sf.mult);
  for (const auto& pf : split.pairs)
    r *= weight_gl_factor(q, 2 * pf.deg, pf.mult);
  return r;
}

inline bool sp_realizable(const ConjSplit& split, bool even_char) {
  if (!split.ok) return false;
  if (split.a_minus % 2 != 0) return false;
  if (!even_char && split.a_plus % 2 != 0) return false;
  return true;
}

/// Sp(2n,q): phi monic self-conjugate of degree 2n, (z-+1)-multiplicities
/// even (only z-1 exists in characteristic 2).
inline Rat prob_sp(const Fq& F, u32 n, const Poly& phi, u64 seed = 1) {
  if (phi.deg() != static_cast<int>(2 * n) || !p_is_monic(phi))
    throw error("prob_sp: phi must be monic of degree 2n");
  if (phi.coeff(0) == 0) return Rat(0);
  bool even_char = F.p() == 2;
  auto split = conj_split(F, factorize(F, phi, seed), ConjFlavor::Star);
  if (!sp_realizable(split, even_char)) return Rat(0);
  BigInt q(F.q());
  Rat r = weight_sp_linear(q, split.a_minus / 2);
  if (!even_char) r *= weight_sp_linear(q, split.a_plus / 2);
  for (const auto& sf : split.self_factors) {
    // self-conjugate factors here always have even degree
    r *= make_rat(
        ipow(q, static_cast<u64>(sf.deg) * sf.mult * (sf.mult - 1) / 2),
        order_gu(ipow(q, sf.deg / 2), sf.mult));
  }
  for (const auto& pf : split.pairs)
    r *= weight_gl_factor(q, pf.deg, pf.mult);
  return r;
}

/// Number of unipotent elements of O^eps(2n,q), q even:
/// q^{2n^2-2n+1} (1 + 1/q - eps/q^n), an exact integer.
inline BigInt unipotent_count_o_even(u32 n, u32 q, int eps) {
  if (q % 2 != 0) throw error("unipotent_count_o_even: q must be even");
  if (n < 1) throw error("unipotent_count_o_even: n >= 1");
  BigInt Q(q);
  u64 e = 2ull * n * n - 2 * n + 1;
  BigInt r = ipow(Q, e) + ipow(Q, e - 1);
  BigInt corr = ipow(Q, e - n);  // e >= n for n >= 1
  return eps > 0 ? BigInt(r - corr) : BigInt(r + corr);
}

namespace detail {

/// Enumerated O^{+-}(n,q) distributions, summed over both types; the
/// fallback route for even characteristic where no product formula applies.
inline const std::map<Poly, Rat>& osum_enumerated(u32 n, u32 q, u64 cap) {
  static std::map<std::pair<u32, u32>, std::map<Poly, Rat>> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(n, q);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::map<Poly, Rat> dist;
  const Fq& F = field_for_q(q);
  std::vector<GroupSpec> specs;
  if (n % 2 == 0)
    specs = {{Family::OPlus, n, q}, {Family::OMinus, n, q}};
  else
    specs = {{Family::OPlus, n, q}};
  for (const auto& s : specs) {
    BigInt order = group_order(s);
    if (order > static_cast<unsigned long>(cap))
      throw error("o-sum enumeration: group too large");
    std::map<Poly, u64> counts;
    for (const Mat& g : enumerate_group_cached(s, cap))
      counts[char_poly(F, g)]++;
    // odd dimension: the two quadratic forms give the same matrix group,
    // so the summed distribution is twice the single one
    u32 weight = n % 2 == 0 ? 1 : 2;
    for (auto& [phi, c] : counts)
      dist[phi] += make_rat(BigInt(c) * weight, order);
  }
  return cache.emplace(key, std::move(dist)).first->second;
}

}  // namespace detail

/// Sum of the proportions of elements of O^+(n,q) and O^-(n,q) with
/// characteristic polynomial phi. Odd q uses the F(a)F(b) product formula;
/// even q falls back to exhaustive enumeration (and errors beyond the cap).
inline Rat prob_o_sum(const Fq& F, u32 n, const Poly& phi, u64 seed = 1,
                      u64 enum_cap = 100000) {
  if (phi.deg() != static_cast<int>(n) || !p_is_monic(phi))
    throw error("prob_o_sum: phi must be monic of degree n");
  if (phi.coeff(0) == 0) return Rat(0);
  if (F.q() % 2 == 0) {
    const auto& dist = detail::osum_enumerated(n, F.q(), enum_cap);
    auto it = dist.find(phi);
    return it == dist.end() ? Rat(0) : it->second;
  }
  auto split = conj_split(F, factorize(F, phi, seed), ConjFlavor::Star);
  if (!split.ok) return Rat(0);
  BigInt q(F.q());
  Rat r = weight_o_linear(q, split.a_minus) * weight_o_linear(q, split.a_plus);
  for (const auto& sf : split.self_factors)
    r *= make_rat(
        ipow(q, static_cast<u64>(sf.deg) * sf.mult * (sf.mult - 1) / 2),
        order_gu(ipow(q, sf.deg / 2), sf.mult));
  for (const auto& pf : split.pairs)
    r *= weight_gl_factor(q, pf.deg, pf.mult);
  return r;
}

/// Why a polynomial has probability zero in a family, or "realizable".
inline std::string realizability_reason(const GroupSpec& s, const Fq& F,
                                        const Poly& phi) {
  if (s.family == Family::Mat) return "realizable";
  if (phi.coeff(0) == 0) return "zero constant term";
  if (s.family == Family::GL) return "realizable";
  ConjFlavor flavor =
      s.family == Family::GU ? ConjFlavor::Tilde : ConjFlavor::Star;
  auto split = conj_split(F, factorize(F, phi), flavor);
  if (!split.ok) return split.reason;
  if (s.family == Family::Sp && !sp_realizable(split, s.q % 2 == 0))
    return "odd multiplicity of z -+ 1";
  return "realizable";
}

/// Every valid phi of the family with its exact probability. For the O
/// families the per-group values come from enumeration. Guarded by the
/// number of candidate polynomials.
struct DistEntry {
  Poly phi;
  Rat prob;
};

inline std::vector<DistEntry> enumerate_charpoly_distribution(
    const GroupSpec& s, u64 phi_cap = 1000000) {
  validate_spec(s);
  const Fq& F = spec_field(s);
  u32 deg = module_dim(s);
  double total = 1;
  for (u32 i = 0; i < deg; ++i) total *= F.q();
  if (total > static_cast<double>(phi_cap))
    throw error("distribution enumeration: too many polynomials");

  std::vector<DistEntry> out;
  if (s.family == Family::OPlus || s.family == Family::OMinus) {
    BigInt order = group_order(s);
    std::map<Poly, u64> counts;
    for (const Mat& g : enumerate_group_cached(s))
      counts[char_poly(F, g)]++;
    for (auto& [phi, c] : counts)
      out.push_back({phi, make_rat(BigInt(c), order)});
    return out;
  }

  for (u64 idx = 0; idx < monic_count(F, deg); ++idx) {
    Poly phi = monic_by_index(F, deg, idx);
    Rat p;
    switch (s.family) {
      case Family::Mat: p = prob_mat(F, deg, phi); break;
      case Family::GL:
        if (phi.coeff(0) == 0) continue;
        p = prob_gl(F, deg, phi);
        break;
      case Family::GU: {
        if (phi.coeff(0) == 0) continue;
        if (!p_self_conj(F, phi, ConjFlavor::Tilde)) continue;
        p = prob_gu(F, deg, phi);
        break;
      }
      case Family::Sp: {
        if (phi.coeff(0) == 0) continue;
        if (!p_self_conj(F, phi, ConjFlavor::Star)) continue;
        p = prob_sp(F, s.n, phi);
        break;
      }
      default: continue;
    }
    out.push_back({phi, std::move(p)});
  }
  return out;
}

/// The O-sum distribution over all valid phi (value sums to 2).
inline std::vector<DistEntry> enumerate_osum_distribution(u32 n, u32 q,
                                                          u64 phi_cap =
                                                              1000000) {
  const Fq& F = field_for_q(q);
  double total = 1;
  for (u32 i = 0; i < n; ++i) total *= q;
  if (total > static_cast<double>(phi_cap))
    throw error("distribution enumeration: too many polynomials");
  std::vector<DistEntry> out;
  for (u64 idx = 0; idx < monic_count(F, n); ++idx) {
    Poly phi = monic_by_index(F, n, idx);
    if (phi.coeff(0) == 0) continue;
    if (!p_self_conj(F, phi, ConjFlavor::Star)) continue;
    out.push_back({phi, prob_o_sum(F, n, phi)});
  }
  return out;
}

}  // namespace cpfq
