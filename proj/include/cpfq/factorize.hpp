// Full factorization over F_q: squarefree decomposition, distinct-degree
// splitting, then randomized equal-degree splitting. The randomness only
// affects the work done, never the (canonically sorted) result.
#pragma once

#include <algorithm>
#include <map>

#include "cpfq/poly.hpp"
#include "cpfq/rng.hpp"

namespace cpfq {

struct FactorPart {
  Poly f;    // monic irreducible
  u32 mult;  // multiplicity
};

struct Factorization {
  std::vector<FactorPart> parts;  // canonical order: degree, then coefficients
  u32 unit;                       // leading coefficient of the input
};

namespace detail {

inline Poly pth_root(const Fq& F, const Poly& f) {
  // f = g(x^p); recover g, inverting the Frobenius on each coefficient
  u64 root_pow = static_cast<u64>(F.q()) / F.p();
  std::vector<u32> v;
  for (size_t i = 0; i < f.c.size(); i += F.p())
    v.push_back(F.pow(f.c[i], root_pow));
  return Poly(std::move(v));
}

inline void squarefree_parts(const Fq& F, const Poly& f, u32 mult_scale,
                             std::vector<std::pair<Poly, u32>>& out) {
  // classic char-p squarefree decomposition
  Poly fp = p_derivative(F, f);
  if (fp.is_zero()) {
    // pure p-th power
    if (f.deg() == 0) return;
    squarefree_parts(F, pth_root(F, f), mult_scale * F.p(), out);
    return;
  }
  Poly c = p_gcd(F, f, fp);
  Poly w = p_divmod(F, f, c).first;
  u32 i = 1;
  while (w.deg() > 0) {
    Poly y = p_gcd(F, w, c);
    Poly z = p_divmod(F, w, y).first;
    if (z.deg() > 0) out.push_back({z, mult_scale * i});
    w = y;
    c = p_divmod(F, c, y).first;
    ++i;
  }
  if (c.deg() > 0) squarefree_parts(F, pth_root(F, c), mult_scale * F.p(), out);
}

inline void edf(const Fq& F, const Poly& h, u32 d, Rng& rng,
                std::vector<Poly>& out) {
  if (h.deg() == static_cast<int>(d)) {
    out.push_back(h);
    return;
  }
  for (;;) {
    // random nonconstant polynomial of degree < deg h
    std::vector<u32> rc(static_cast<size_t>(h.deg()), 0);
    for (auto& x : rc) x = static_cast<u32>(rng.below(F.q()));
    Poly r(std::move(rc));
    if (r.deg() < 1) continue;
    Poly g = p_gcd(F, r, h);
    if (g.deg() == 0) {
      if (F.p() == 2) {
        // absolute trace map splits in characteristic 2; q = 2^e with e = k
        u32 e = F.k();
        Poly tr;
        Poly cur = p_mod(F, r, h);
        for (u32 i = 0; i < e * d; ++i) {
          tr = p_add(F, tr, cur);
          cur = p_mod(F, p_mul(F, cur, cur), h);
        }
        g = p_gcd(F, tr, h);
      } else {
        BigInt m = (ipow(F.q(), d) - 1) / 2;
        Poly s = p_powmod(F, r, m, h);
        g = p_gcd(F, p_sub(F, s, p_one()), h);
      }
    }
    if (g.deg() > 0 && g.deg() < h.deg()) {
      edf(F, g, d, rng, out);
      edf(F, p_divmod(F, h, g).first, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Factor f into monic irreducibles. Deterministic result for any seed.
inline Factorization factorize(const Fq& F, const Poly& f, u64 seed = 1) {
  if (f.is_zero()) throw error("factorize: zero polynomial");
  Factorization out;
  out.unit = f.c.back();
  Poly g = p_monic(F, f);
  if (g.deg() == 0) return out;

  std::vector<std::pair<Poly, u32>> sqfree;
  detail::squarefree_parts(F, g, 1, sqfree);

  Rng rng(splitmix64(seed) ^ 0x9d2c5680u);
  std::map<Poly, u32> acc;
  for (auto& [part, mult] : sqfree) {
    // distinct-degree splitting of the squarefree part
    Poly z = part;
    Poly x = p_monomial(1);
    Poly r = p_mod(F, x, z);
    for (u32 d = 1; z.deg() > 0 && 2 * d <= static_cast<u32>(z.deg()); ++d) {
      r = p_powmod(F, r, BigInt(F.q()), z);
      Poly gd = p_gcd(F, p_sub(F, r, p_mod(F, x, z)), z);
      if (gd.deg() > 0) {
        std::vector<Poly> irreds;
        detail::edf(F, gd, d, rng, irreds);
        for (auto& h : irreds) acc[p_monic(F, h)] += mult;
        z = p_divmod(F, z, gd).first;
        r = p_mod(F, r, z);
      }
    }
    if (z.deg() > 0) acc[p_monic(F, z)] += mult;
  }
  for (auto& [poly, mult] : acc) out.parts.push_back({poly, mult});
  return out;
}

/// Re-multiply a factorization; test oracle for the factorizer.
inline Poly factorization_product(const Fq& F, const Factorization& fact) {
  Poly r = p_const(fact.unit);
  for (const auto& part : fact.parts)
    for (u32 i = 0; i < part.mult; ++i) r = p_mul(F, r, part.f);
  return r;
}

/// The (degree, multiplicity) multiset of the factorization.
inline std::vector<std::pair<u32, u32>> factor_profile(
    const Factorization& fact) {
  std::vector<std::pair<u32, u32>> out;
  for (const auto& part : fact.parts)
    out.push_back({static_cast<u32>(part.f.deg()), part.mult});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cpfq
