// Univariate polynomials over F_q. Coefficients are packed field values,
// lowest degree first; the zero polynomial is the empty vector.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cpfq/field.hpp"

namespace cpfq {

struct Poly {
  std::vector<u32> c;  // low..high, trailing entry nonzero unless empty

  Poly() = default;
  explicit Poly(std::vector<u32> coeffs) : c(std::move(coeffs)) {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  u32 coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
    return a.c < b.c;  // degree first, then coefficients from the low end
  }
};

inline Poly p_trim(std::vector<u32> v) { return Poly(std::move(v)); }

inline Poly p_const(u32 v) { return v ? Poly({v}) : Poly(); }
inline Poly p_one() { return Poly({1}); }

/// t^d with optional leading value.
inline Poly p_monomial(u32 d, u32 lead = 1) {
  std::vector<u32> v(d + 1, 0);
  v[d] = lead;
  return Poly(std::move(v));
}

/// Build from integer coefficients via Z -> F_q (handy in tests and parsing).
inline Poly p_from_ints(const Fq& F, const std::vector<long>& cs) {
  std::vector<u32> v;
  for (long x : cs) {
    long r = x % static_cast<long>(F.p());
    if (r < 0) r += F.p();
    v.push_back(F.from_int(static_cast<u64>(r)));
  }
  return Poly(std::move(v));
}

inline Poly p_add(const Fq& F, const Poly& a, const Poly& b) {
  std::vector<u32> v(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < v.size(); ++i) v[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(v));
}

inline Poly p_neg(const Fq& F, const Poly& a) {
  std::vector<u32> v = a.c;
  for (auto& x : v) x = F.neg(x);
  return Poly(std::move(v));
}

inline Poly p_sub(const Fq& F, const Poly& a, const Poly& b) {
  return p_add(F, a, p_neg(F, b));
}

inline Poly p_scale(const Fq& F, const Poly& a, u32 s) {
  if (s == 0) return Poly();
  std::vector<u32> v = a.c;
  for (auto& x : v) x = F.mul(x, s);
  return Poly(std::move(v));
}

inline Poly p_mul(const Fq& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<u32> v(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      v[i + j] = F.add(v[i + j], F.mul(a.c[i], b.c[j]));
  }
  return Poly(std::move(v));
}

inline std::pair<Poly, Poly> p_divmod(const Fq& F, const Poly& a,
                                      const Poly& b) {
  if (b.is_zero()) throw error("polynomial division by zero");
  if (a.deg() < b.deg()) return {Poly(), a};
  std::vector<u32> rem = a.c;
  size_t db = b.c.size() - 1;
  std::vector<u32> quo(a.c.size() - db, 0);
  u32 inv_lead = F.inv(b.c.back());
  for (size_t i = rem.size(); i-- > db;) {
    u32 coef = F.mul(rem[i], inv_lead);
    if (coef == 0) continue;
    quo[i - db] = coef;
    for (size_t j = 0; j <= db; ++j)
      rem[i - db + j] = F.sub(rem[i - db + j], F.mul(coef, b.c[j]));
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

inline Poly p_mod(const Fq& F, const Poly& a, const Poly& b) {
  return p_divmod(F, a, b).second;
}

inline Poly p_monic(const Fq& F, const Poly& a) {
  if (a.is_zero()) return a;
  return p_scale(F, a, F.inv(a.c.back()));
}

inline bool p_is_monic(const Poly& a) {
  return !a.is_zero() && a.c.back() == 1;
}

/// Monic gcd.
inline Poly p_gcd(const Fq& F, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = p_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return p_monic(F, a);
}

inline Poly p_derivative(const Fq& F, const Poly& a) {
  if (a.deg() < 1) return Poly();
  std::vector<u32> v(a.c.size() - 1, 0);
  for (size_t i = 1; i < a.c.size(); ++i) {
    u32 m = F.from_int(i % F.p());
    v[i - 1] = F.mul(a.c[i], m);
  }
  return Poly(std::move(v));
}

inline u32 p_eval(const Fq& F, const Poly& a, u32 x) {
  u32 r = 0;
  for (size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

inline Poly p_powmod(const Fq& F, Poly base, BigInt e, const Poly& mod) {
  Poly r = p_one();
  base = p_mod(F, base, mod);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = p_mod(F, p_mul(F, r, base), mod);
    base = p_mod(F, p_mul(F, base, base), mod);
    e >>= 1;
  }
  return r;
}

inline bool p_irreducible(const Fq& F, const Poly& f) {
  int d = f.deg();
  if (d <= 0) return false;
  if (d == 1) return true;
  Poly x = p_monomial(1);
  if (p_powmod(F, x, ipow(F.q(), static_cast<u64>(d)), f) != p_mod(F, x, f))
    return false;
  for (u64 l : distinct_prime_factors(static_cast<u64>(d))) {
    Poly xe = p_powmod(F, x, ipow(F.q(), static_cast<u64>(d) / l), f);
    Poly g = p_gcd(F, p_sub(F, xe, x), f);
    if (g.deg() != 0) return false;
  }
  return true;
}

// ---- conjugations ------------------------------------------------------

/// phi*(t) = a0^{-1} t^n phi(1/t): coefficients reversed and normalized so
/// the result is monic; roots map to their inverses. Requires monic input
/// with nonzero constant term.
inline Poly p_conj_star(const Fq& F, const Poly& f) {
  if (!p_is_monic(f)) throw error("conj: input must be monic");
  if (f.coeff(0) == 0) throw error("conj: zero constant term");
  std::vector<u32> v(f.c.rbegin(), f.c.rend());
  u32 s = F.inv(f.c[0]);
  for (auto& x : v) x = F.mul(x, s);
  return Poly(std::move(v));
}

/// Coefficientwise x -> x^q on a quadratic tower.
inline Poly p_coeff_conj(const Fq& F, const Poly& f) {
  std::vector<u32> v = f.c;
  for (auto& x : v) x = F.conj_q(x);
  return Poly(std::move(v));
}

/// The unitary conjugate: star followed by coefficientwise x -> x^q.
/// Roots map a -> a^{-q}.
inline Poly p_conj_tilde(const Fq& F, const Poly& f) {
  if (!F.is_tower()) throw error("conj_tilde needs a quadratic tower context");
  return p_coeff_conj(F, p_conj_star(F, f));
}

enum class ConjFlavor { Star, Tilde };

inline Poly p_conj(const Fq& F, const Poly& f, ConjFlavor flavor) {
  return flavor == ConjFlavor::Star ? p_conj_star(F, f) : p_conj_tilde(F, f);
}

inline bool p_self_conj(const Fq& F, const Poly& f, ConjFlavor flavor) {
  return p_conj(F, f, flavor) == f;
}

// ---- enumeration and text form ------------------------------------------

/// Monic polynomials of degree d, indexed by packing the d free coefficients
/// base q with the constant term least significant.
inline u64 monic_count(const Fq& F, u32 d) {
  u64 n = 1;
  for (u32 i = 0; i < d; ++i) n *= F.q();
  return n;
}

inline Poly monic_by_index(const Fq& F, u32 d, u64 idx) {
  std::vector<u32> v(d + 1, 0);
  for (u32 i = 0; i < d; ++i) {
    v[i] = static_cast<u32>(idx % F.q());
    idx /= F.q();
  }
  v[d] = 1;
  return Poly(std::move(v));
}

/// Comma-separated coefficients, low to high; extension-field coefficients
/// as bracketed F_p coordinate vectors, e.g. "1,1,1" or "[0,1],[1,0]".
inline std::string p_text(const Fq& F, const Poly& f) {
  if (f.is_zero()) return F.elem_str(0);
  std::string s;
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (i) s += ",";
    s += F.elem_str(f.c[i]);
  }
  return s;
}

inline Poly p_parse(const Fq& F, const std::string& text) {
  std::vector<u32> vals;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] == '[') {
      ++i;
      std::vector<u32> coords;
      std::string num;
      for (; i < text.size() && text[i] != ']'; ++i) {
        if (text[i] == ',') {
          coords.push_back(static_cast<u32>(std::stoul(num)));
          num.clear();
        } else if (text[i] != ' ')
          num += text[i];
      }
      if (i >= text.size()) throw error("unterminated bracket in polynomial");
      ++i;  // ']'
      if (!num.empty()) coords.push_back(static_cast<u32>(std::stoul(num)));
      vals.push_back(F.from_coords_fp(coords));
    } else {
      std::string num;
      while (i < text.size() && text[i] != ',') {
        if (text[i] != ' ') num += text[i];
        ++i;
      }
      if (num.empty()) throw error("empty coefficient in polynomial");
      u64 r = std::stoull(num);
      if (F.k() == 1 && !F.is_tower()) {
        if (r >= F.q()) throw error("residue out of range");
        vals.push_back(static_cast<u32>(r));
      } else {
        vals.push_back(F.from_int(r));
      }
    }
    skip_ws();
    if (i < text.size()) {
      if (text[i] != ',') throw error("expected ',' in polynomial");
      ++i;
    }
  }
  return Poly(std::move(vals));
}

}  // namespace cpfq
