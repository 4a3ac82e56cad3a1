// Arithmetic contexts for F_q, q = p^k <= 2^16.
//
// Elements are packed indices in [0, q). A base field F_{p^k} stores the
// canonical modulus (lexicographically smallest irreducible, constant term
// least significant) together with discrete log/antilog tables, so that
// multiplication and inversion are table lookups. A quadratic tower
// represents F_{q^2} as F_q[theta]/(theta^2 + c1*theta + c0); in that
// representation x -> x^q is the nontrivial automorphism fixing the embedded
// copy of F_q, which is exactly the conjugation the unitary groups need.
#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cpfq/numeric.hpp"

namespace cpfq {

class Fq {
 public:
  static constexpr u32 max_q = 1u << 16;

  /// Base field F_{p^k} with the canonical modulus. Cached; reference is
  /// valid for the lifetime of the process.
  static const Fq& get(u32 p, u32 k) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto& slot = base_registry()[{p, k}];
    if (!slot) slot.reset(new Fq(p, k));
    return *slot;
  }

  /// F_{q^2} as a quadratic extension of `base`. Cached per base context.
  static const Fq& quadratic_tower(const Fq& base) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto& slot = tower_registry()[&base];
    if (!slot) slot.reset(new Fq(TowerTag{}, base));
    return *slot;
  }

  Fq(const Fq&) = delete;
  Fq& operator=(const Fq&) = delete;

  u32 p() const { return p_; }
  u32 k() const { return k_; }
  u32 q() const { return q_; }
  bool is_tower() const { return base_ != nullptr; }
  const Fq* base() const { return base_; }
  /// Modulus coefficients, low to high, packed values; length k+1 over F_p
  /// for base fields, length 3 over the base field for towers.
  const std::vector<u32>& modulus() const { return modulus_; }

  u32 zero() const { return 0; }
  u32 one() const { return 1; }

  u32 add(u32 a, u32 b) const {
    if (base_) {
      u32 bq = base_->q_;
      return pack2(base_->add(a % bq, b % bq), base_->add(a / bq, b / bq));
    }
    if (p_ == 2) return a ^ b;
    if (k_ == 1) {
      u32 s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    u32 r = 0, place = 1;
    while (a | b) {
      u32 s = a % p_ + b % p_;
      if (s >= p_) s -= p_;
      r += s * place;
      place *= p_;
      a /= p_;
      b /= p_;
    }
    return r;
  }

  u32 neg(u32 a) const {
    if (base_) {
      u32 bq = base_->q_;
      return pack2(base_->neg(a % bq), base_->neg(a / bq));
    }
    if (p_ == 2) return a;
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    u32 r = 0, place = 1;
    while (a) {
      u32 d = a % p_;
      if (d) r += (p_ - d) * place;
      place *= p_;
      a /= p_;
    }
    return r;
  }

  u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }

  u32 mul(u32 a, u32 b) const {
    if (base_) {
      const Fq& B = *base_;
      u32 bq = B.q_;
      u32 alo = a % bq, ahi = a / bq, blo = b % bq, bhi = b / bq;
      u32 f = B.mul(ahi, bhi);  // theta^2 coefficient
      u32 lo = B.sub(B.mul(alo, blo), B.mul(f, t_c0_));
      u32 hi = B.sub(B.add(B.mul(alo, bhi), B.mul(ahi, blo)), B.mul(f, t_c1_));
      return pack2(lo, hi);
    }
    if (a == 0 || b == 0) return 0;
    u32 e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  u32 inv(u32 a) const {
    if (a == 0) throw error("field inverse of zero");
    if (base_) {
      u32 c = conj_q(a);
      u32 n = mul(a, c);  // norm, lands in the embedded base field
      u32 bq = base_->q_;
      if (n / bq != 0) throw error("tower norm not in base field");
      return mul(c, pack2(base_->inv(n % bq), 0));
    }
    u32 e = log_[a];
    return exp_[e == 0 ? 0 : q_ - 1 - e];
  }

  u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }

  u32 pow(u32 a, u64 e) const {
    if (a == 0) return e == 0 ? one() : 0;
    u64 ord = static_cast<u64>(q_) - 1;
    if (!base_) {
      u64 le = (static_cast<u64>(log_[a]) * (e % ord)) % ord;
      return exp_[le];
    }
    e %= ord;
    u32 r = one(), x = a;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  u32 pow(u32 a, const BigInt& e) const {
    if (e < 0) return inv(pow(a, BigInt(-e)));
    if (a == 0) return e == 0 ? one() : 0;
    BigInt r = e % (q_ - 1);
    return pow(a, r.get_ui());
  }

  /// x -> x^p, the absolute Frobenius.
  u32 frobenius(u32 a) const { return pow(a, static_cast<u64>(p_)); }

  u32 frobenius_iter(u32 a, u32 times) const {
    for (u32 i = 0; i < times; ++i) a = frobenius(a);
    return a;
  }

  /// Tower conjugation x -> x^{q_base}; an involution fixing the base field.
  u32 conj_q(u32 a) const {
    if (!base_) throw error("conj_q needs a quadratic tower context");
    const Fq& B = *base_;
    u32 bq = B.q_;
    u32 lo = a % bq, hi = a / bq;
    // theta^q is the other root of the modulus: -c1 - theta.
    return pack2(B.sub(lo, B.mul(hi, t_c1_)), B.neg(hi));
  }

  /// The image of the integer c under Z -> F_q.
  u32 from_int(u64 c) const {
    u32 r = static_cast<u32>(c % p_);
    if (base_) return pack2(base_->from_int(r), 0);
    return r;  // residues embed as the low digit
  }

  /// Embed an element of `src` into this field. Supported: identity,
  /// prime subfield, and the base field of a quadratic tower.
  u32 embed(const Fq& src, u32 a) const {
    if (&src == this) return a;
    if (src.k_ == 1 && !src.is_tower() && src.p_ == p_) return from_int(a);
    if (base_ == &src) return pack2(a, 0);
    if (base_ && (base_->base_ == &src || (src.k_ == 1 && src.p_ == p_)))
      return pack2(base_->embed(src, a), 0);
    throw error("embed: incompatible field contexts");
  }

  u32 generator() const {
    if (base_) {
      // any element of maximal order; found once by scanning
      return tower_gen_;
    }
    return gen_;
  }

  /// Flat F_p coordinates (length k, or 2*base.k for towers).
  std::vector<u32> coords_fp(u32 a) const {
    std::vector<u32> out;
    if (base_) {
      u32 bq = base_->q_;
      auto lo = base_->coords_fp(a % bq), hi = base_->coords_fp(a / bq);
      out = lo;
      out.insert(out.end(), hi.begin(), hi.end());
      return out;
    }
    for (u32 i = 0; i < k_; ++i) {
      out.push_back(a % p_);
      a /= p_;
    }
    return out;
  }

  u32 from_coords_fp(const std::vector<u32>& cs) const {
    if (base_) {
      u32 half = static_cast<u32>(cs.size() / 2);
      std::vector<u32> lo(cs.begin(), cs.begin() + half),
          hi(cs.begin() + half, cs.end());
      return pack2(base_->from_coords_fp(lo), base_->from_coords_fp(hi));
    }
    if (cs.size() != k_) throw error("coordinate vector has wrong length");
    u32 a = 0;
    for (u32 i = k_; i-- > 0;) {
      if (cs[i] >= p_) throw error("coordinate out of range");
      a = a * p_ + cs[i];
    }
    return a;
  }

  std::string elem_str(u32 a) const {
    if (k_ == 1 && !base_) return std::to_string(a);
    auto cs = coords_fp(a);
    std::string s = "[";
    for (size_t i = 0; i < cs.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(cs[i]);
    }
    return s + "]";
  }

 private:
  static u32 pack2_q(u32 lo, u32 hi, u32 bq) { return lo + hi * bq; }
  u32 pack2(u32 lo, u32 hi) const { return lo + hi * base_->q_; }

  // ---- raw polynomial arithmetic over F_p, used only during construction
  using FpPoly = std::vector<u32>;  // low..high, no trailing zeros

  static void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }

  static FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod,
                          u32 p) {
    FpPoly r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    // reduce mod the monic modulus
    size_t dm = mod.size() - 1;
    for (size_t i = r.size(); i-- > dm;) {
      u32 c = r[i];
      if (!c) continue;
      r[i] = 0;
      for (size_t j = 0; j < dm; ++j)
        r[i - dm + j] = (r[i - dm + j] + c * (p - mod[j] % p)) % p;
    }
    r.resize(dm);
    fp_trim(r);
    return r;
  }

  static FpPoly fp_powmod(FpPoly base, BigInt e, const FpPoly& mod, u32 p) {
    FpPoly r{1};
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = fp_mulmod(r, base, mod, p);
      base = fp_mulmod(base, base, mod, p);
      e >>= 1;
    }
    return r;
  }

  static FpPoly fp_gcd(FpPoly a, FpPoly b, u32 p) {
    auto mod_raw = [p](FpPoly x, const FpPoly& y) {
      // y monic-ized on the fly
      FpPoly ym = y;
      u32 lead = ym.back();
      u32 il = 1;
      for (u32 t = 1; t < p; ++t)
        if (t * lead % p == 1) il = t;
      for (auto& c : ym) c = c * il % p;
      while (x.size() >= ym.size() && !x.empty()) {
        u32 c = x.back();
        if (c) {
          size_t off = x.size() - ym.size();
          for (size_t j = 0; j < ym.size(); ++j)
            x[off + j] = (x[off + j] + c * (p - ym[j])) % p;
        }
        x.pop_back();
        fp_trim(x);
        if (x.size() < ym.size()) break;
      }
      fp_trim(x);
      return x;
    };
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
      FpPoly r = mod_raw(a, b);
      a = b;
      b = r;
    }
    return a;
  }

  static bool fp_irreducible(const FpPoly& f, u32 p) {
    u32 d = static_cast<u32>(f.size()) - 1;
    if (d == 0) return false;
    FpPoly x{0, 1};
    // x^{p^d} == x mod f, and gcd(x^{p^{d/l}} - x, f) == 1 for prime l | d
    FpPoly xp = fp_powmod(x, ipow(p, d), f, p);
    if (xp != x) return false;
    for (u64 l : distinct_prime_factors(d)) {
      FpPoly xe = fp_powmod(x, ipow(p, d / static_cast<u32>(l)), f, p);
      // xe - x
      FpPoly diff = xe;
      diff.resize(std::max<size_t>(diff.size(), 2), 0);
      diff[1] = (diff[1] + p - 1) % p;
      fp_trim(diff);
      FpPoly g = fp_gcd(diff, f, p);
      if (g.size() != 1) return false;
    }
    return true;
  }

  // ---- base field construction
  Fq(u32 p, u32 k) : p_(p), k_(k) {
    if (!is_prime_u64(p)) throw error("make_field: p is not prime");
    if (k < 1) throw error("make_field: k must be at least 1");
    u64 q = 1;
    for (u32 i = 0; i < k; ++i) {
      q *= p;
      if (q > max_q) throw error("make_field: q exceeds the 2^16 cap");
    }
    q_ = static_cast<u32>(q);
    // canonical modulus: smallest packed coefficient vector among monic
    // irreducibles of degree k (constant term least significant)
    if (k == 1) {
      modulus_ = {0, 1};
    } else {
      bool found = false;
      for (u32 m = 0; m < q_ && !found; ++m) {
        FpPoly f;
        u32 v = m;
        for (u32 i = 0; i < k; ++i) {
          f.push_back(v % p);
          v /= p;
        }
        f.push_back(1);
        if (fp_irreducible(f, p)) {
          modulus_.assign(f.begin(), f.end());
          found = true;
        }
      }
      if (!found) throw error("no irreducible modulus found");
    }
    build_tables();
  }

  // ---- quadratic tower construction
  struct TowerTag {};
  Fq(TowerTag, const Fq& base) : base_(&base) {
    if (base.q_ > 256)
      throw error("quadratic tower: base field too large (q > 256)");
    p_ = base.p_;
    k_ = 2 * base.k_;
    q_ = base.q_ * base.q_;
    // smallest irreducible monic quadratic over the base, scanning packed
    // (c0, c1) with c0 least significant
    u32 bq = base.q_;
    bool found = false;
    for (u32 m = 0; m < bq * bq && !found; ++m) {
      u32 c0 = m % bq, c1 = m / bq;
      bool has_root = false;
      for (u32 x = 0; x < bq && !has_root; ++x) {
        u32 v = base.add(base.add(base.mul(x, x), base.mul(c1, x)), c0);
        if (v == 0) has_root = true;
      }
      if (!has_root) {
        t_c0_ = c0;
        t_c1_ = c1;
        modulus_ = {c0, c1, 1};
        found = true;
      }
    }
    if (!found) throw error("no irreducible quadratic over base field");
    // a generator: scan for an element of order q^2-1
    for (u32 g = 1; g < q_; ++g) {
      bool ok = true;
      for (u64 l : distinct_prime_factors(static_cast<u64>(q_) - 1)) {
        if (pow(g, (static_cast<u64>(q_) - 1) / l) == one()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        tower_gen_ = g;
        break;
      }
    }
  }

  void build_tables() {
    // find a multiplicative generator using raw arithmetic
    auto raw_mul = [this](u32 a, u32 b) {
      if (k_ == 1) return a * b % p_;
      FpPoly fa, fb;
      u32 va = a, vb = b;
      for (u32 i = 0; i < k_; ++i) {
        fa.push_back(va % p_);
        va /= p_;
        fb.push_back(vb % p_);
        vb /= p_;
      }
      fp_trim(fa);
      fp_trim(fb);
      FpPoly r = fp_mulmod(fa, fb, modulus_, p_);
      u32 packed = 0, place = 1;
      for (size_t i = 0; i < r.size(); ++i) {
        packed += r[i] * place;
        place *= p_;
      }
      return packed;
    };
    auto raw_pow = [&](u32 a, u64 e) {
      u32 r = 1;
      while (e) {
        if (e & 1) r = raw_mul(r, a);
        a = raw_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    auto primes = distinct_prime_factors(static_cast<u64>(q_) - 1);
    u32 g = 0;
    for (u32 cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (u64 l : primes)
        if (raw_pow(cand, (q_ - 1) / l) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        g = cand;
        break;
      }
    }
    if (g == 0 && q_ == 2) g = 1;
    if (g == 0) throw error("no generator found");
    gen_ = g;
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    u32 x = 1;
    for (u32 i = 0; i + 1 < q_; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = raw_mul(x, g);
    }
  }

  static std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
  }
  static std::map<std::pair<u32, u32>, std::unique_ptr<Fq>>& base_registry() {
    static std::map<std::pair<u32, u32>, std::unique_ptr<Fq>> r;
    return r;
  }
  static std::map<const Fq*, std::unique_ptr<Fq>>& tower_registry() {
    static std::map<const Fq*, std::unique_ptr<Fq>> r;
    return r;
  }

  u32 p_ = 0, k_ = 0, q_ = 0;
  const Fq* base_ = nullptr;
  std::vector<u32> modulus_;
  std::vector<u32> exp_, log_;
  u32 gen_ = 0;
  u32 t_c0_ = 0, t_c1_ = 0, tower_gen_ = 0;
};

inline std::pair<u32, u32> prime_power_decompose(u32 q) {
  for (u32 p = 2; p <= q; ++p) {
    if (!is_prime_u64(p) || q % p) continue;
    u32 k = 0;
    u32 v = q;
    while (v % p == 0) {
      v /= p;
      ++k;
    }
    if (v != 1) break;
    return {p, k};
  }
  throw error("q is not a prime power");
}

/// F_q by its size.
inline const Fq& field_for_q(u32 q) {
  auto [p, k] = prime_power_decompose(q);
  return Fq::get(p, k);
}

/// Value type pairing an element with its context; convenience layer with
/// checked operators for call sites that want them.
class FieldElem {
 public:
  FieldElem(const Fq& F, u32 v) : F_(&F), v_(v) {
    if (v >= F.q()) throw error("element index out of range");
  }
  const Fq& field() const { return *F_; }
  u32 value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    a.check(b);
    return {*a.F_, a.F_->add(a.v_, b.v_)};
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    a.check(b);
    return {*a.F_, a.F_->sub(a.v_, b.v_)};
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    a.check(b);
    return {*a.F_, a.F_->mul(a.v_, b.v_)};
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    a.check(b);
    return {*a.F_, a.F_->div(a.v_, b.v_)};
  }
  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.F_ == b.F_ && a.v_ == b.v_;
  }
  FieldElem inverse() const { return {*F_, F_->inv(v_)}; }
  FieldElem frobenius() const { return {*F_, F_->frobenius(v_)}; }
  FieldElem conj() const { return {*F_, F_->conj_q(v_)}; }
  FieldElem pow(u64 e) const { return {*F_, F_->pow(v_, e)}; }

 private:
  void check(const FieldElem& o) const {
    if (F_ != o.F_) throw error("mixed field contexts");
  }
  const Fq* F_;
  u32 v_;
};

}  // namespace cpfq
