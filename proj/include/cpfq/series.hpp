// Truncated formal power series with exact rational coefficients, plus the
// generating-function identities for the conjugation-classified irreducible
// counts and the coefficientwise majorants built from them. No floating
// point anywhere in this module.
#pragma once

#include "cpfq/counting.hpp"

namespace cpfq {

class RatSeries {
 public:
  explicit RatSeries(u32 trunc) : c_(trunc + 1, Rat(0)) {}
  static RatSeries constant(const Rat& v, u32 trunc) {
    RatSeries s(trunc);
    s.c_[0] = v;
    return s;
  }

  u32 trunc() const { return static_cast<u32>(c_.size()) - 1; }
  const Rat& coef(u32 r) const {
    if (r >= c_.size()) throw error("series: coefficient beyond truncation");
    return c_[r];
  }
  Rat& coef(u32 r) {
    if (r >= c_.size()) throw error("series: coefficient beyond truncation");
    return c_[r];
  }

  friend RatSeries operator+(const RatSeries& a, const RatSeries& b) {
    RatSeries r(std::min(a.trunc(), b.trunc()));
    for (u32 i = 0; i <= r.trunc(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend RatSeries operator-(const RatSeries& a, const RatSeries& b) {
    RatSeries r(std::min(a.trunc(), b.trunc()));
    for (u32 i = 0; i <= r.trunc(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  friend RatSeries operator*(const RatSeries& a, const RatSeries& b) {
    RatSeries r(std::min(a.trunc(), b.trunc()));
    for (u32 i = 0; i <= r.trunc(); ++i) {
      if (a.c_[i] == 0) continue;
      for (u32 j = 0; i + j <= r.trunc(); ++j)
        if (b.c_[j] != 0) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend bool operator==(const RatSeries& a, const RatSeries& b) {
    if (a.trunc() != b.trunc()) return false;
    return a.c_ == b.c_;
  }

  RatSeries scaled(const Rat& s) const {
    RatSeries r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  /// 1/f, requires nonzero constant term.
  RatSeries reciprocal() const {
    if (c_[0] == 0) throw error("series reciprocal: zero constant term");
    RatSeries r(trunc());
    r.c_[0] = 1 / c_[0];
    for (u32 m = 1; m <= trunc(); ++m) {
      Rat s(0);
      for (u32 j = 1; j <= m; ++j) s += c_[j] * r.c_[m - j];
      r.c_[m] = -s / c_[0];
    }
    return r;
  }

  /// log f, requires constant term 1. Coefficients from f' = (log f)' f.
  RatSeries log() const {
    if (c_[0] != 1) throw error("series log: constant term must be 1");
    RatSeries r(trunc());
    for (u32 m = 1; m <= trunc(); ++m) {
      // m f_m = sum_{j=1}^{m} j l_j f_{m-j}
      Rat s = Rat(static_cast<long>(m)) * c_[m];
      for (u32 j = 1; j < m; ++j)
        s -= Rat(static_cast<long>(j)) * r.c_[j] * c_[m - j];
      r.c_[m] = s / static_cast<long>(m);
    }
    return r;
  }

  /// exp f, requires constant term 0.
  RatSeries exp() const {
    if (c_[0] != 0) throw error("series exp: constant term must be 0");
    RatSeries r(trunc());
    r.c_[0] = 1;
    for (u32 m = 1; m <= trunc(); ++m) {
      Rat s(0);
      for (u32 j = 1; j <= m; ++j)
        s += Rat(static_cast<long>(j)) * c_[j] * r.c_[m - j];
      r.c_[m] = s / static_cast<long>(m);
    }
    return r;
  }

  /// f^alpha = exp(alpha log f) for rational alpha; constant term must be 1.
  RatSeries pow(const Rat& alpha) const {
    return log().scaled(alpha).exp();
  }

 private:
  std::vector<Rat> c_;
};

/// Series of P(u)/Q(u) for polynomial coefficient lists (low to high),
/// Q(0) != 0.
inline RatSeries rational_series(const std::vector<Rat>& P,
                                 const std::vector<Rat>& Q, u32 trunc) {
  if (Q.empty() || Q[0] == 0) throw error("rational_series: Q(0) == 0");
  RatSeries r(trunc);
  for (u32 m = 0; m <= trunc; ++m) {
    Rat s = m < P.size() ? P[m] : Rat(0);
    for (u32 j = 1; j < Q.size() && j <= m; ++j) s -= Q[j] * r.coef(m - j);
    r.coef(m) = s / Q[0];
  }
  return r;
}

/// prod over the given (d, e) of (1 - u^d)^{-e}, exact rational exponents,
/// computed as exp(sum e * L(u^d)) with L(x) = -log(1-x) = sum x^j / j.
inline RatSeries product_one_minus_inv(
    const std::vector<std::pair<u32, Rat>>& items, u32 trunc) {
  RatSeries logsum(trunc);
  for (const auto& [d, e] : items) {
    if (d == 0) throw error("product_one_minus_inv: zero stride");
    if (e == 0) continue;
    for (u32 j = 1; j * d <= trunc; ++j)
      logsum.coef(j * d) += e / static_cast<long>(j);
  }
  return logsum.exp();
}

inline bool dominated_by(const RatSeries& a, const RatSeries& b) {
  u32 t = std::min(a.trunc(), b.trunc());
  for (u32 r = 0; r <= t; ++r)
    if (a.coef(r) > b.coef(r)) return false;
  return true;
}

// ---- generating-function identities ------------------------------------

/// prod_d (1-u^d)^{-N(q;d)} built from the counts; equals (1-u)/(1-uq).
/// Throws if the identity fails, which would signal a counting bug.
inline RatSeries gf_plain(u32 q, u32 trunc) {
  std::vector<std::pair<u32, Rat>> items;
  for (u32 d = 1; d <= trunc; ++d)
    items.push_back({d, Rat(count_N(BigInt(q), d))});
  RatSeries lhs = product_one_minus_inv(items, trunc);
  RatSeries rhs = rational_series({Rat(1), Rat(-1)},
                                  {Rat(1), Rat(-static_cast<long>(q))}, trunc);
  if (!(lhs == rhs)) throw error("gf_plain: identity violation");
  return lhs;
}

/// prod_{d odd} (1-u^d)^{-Ntilde(q;d)} prod_d (1-u^{2d})^{-Mtilde(q;d)}
/// equals (1+u)/(1-qu).
inline RatSeries gf_unitary(u32 q, u32 trunc) {
  std::vector<std::pair<u32, Rat>> items;
  for (u32 d = 1; d <= trunc; ++d) {
    auto uc = count_unitary(BigInt(q), d);
    if (d % 2 == 1) items.push_back({d, Rat(uc.Ntilde)});
    if (2 * d <= trunc) items.push_back({2 * d, Rat(uc.Mtilde)});
  }
  RatSeries lhs = product_one_minus_inv(items, trunc);
  RatSeries rhs = rational_series({Rat(1), Rat(1)},
                                  {Rat(1), Rat(-static_cast<long>(q))}, trunc);
  if (!(lhs == rhs)) throw error("gf_unitary: identity violation");
  return lhs;
}

/// (1-u)^{-e} prod_d (1-u^d)^{-Nstar(q;2d)} (1-u^d)^{-Mstar(q;d)} equals
/// 1/(1-qu); e = 2 in odd characteristic, 1 in even.
inline RatSeries gf_star(u32 q, u32 trunc, u32 e) {
  if (e != 1 && e != 2) throw error("gf_star: e must be 1 or 2");
  if ((q % 2 == 0) != (e == 1))
    throw error("gf_star: e must match the parity of q");
  std::vector<std::pair<u32, Rat>> items;
  items.push_back({1, Rat(static_cast<long>(e))});
  for (u32 d = 1; d <= trunc; ++d) {
    auto nc = count_star(BigInt(q), 2 * d);
    auto mc = count_star(BigInt(q), d);
    items.push_back({d, Rat(nc.Nstar) + Rat(mc.Mstar)});
  }
  RatSeries lhs = product_one_minus_inv(items, trunc);
  RatSeries rhs = rational_series({Rat(1)},
                                  {Rat(1), Rat(-static_cast<long>(q))}, trunc);
  if (!(lhs == rhs)) throw error("gf_star: identity violation");
  return lhs;
}

// ---- majorant products -----------------------------------------------

enum class UpperFlavor {
  GLCond,   // prod (1-u^{bd})^{-N(q;bd)} prod (1-u^{bd})^{-N(q;d)}
  UCond,    // the unitary analogue with Ntilde/Mtilde counts
  SpCond,   // the reciprocal analogue with Nstar/Mstar counts
  UhelpRat  // prod (1-u^{bd})^{-q^{bd}/(bd)}, rational exponents
};

/// Exact coefficients of the per-flavor upper-bound product to degree trunc.
inline RatSeries coef_upper_product(u32 q, u32 b, UpperFlavor flavor,
                                    u32 trunc) {
  BigInt Q(q);
  std::vector<std::pair<u32, Rat>> items;
  switch (flavor) {
    case UpperFlavor::GLCond:
      for (u32 d = 1; b * d <= trunc; ++d) {
        items.push_back({b * d, Rat(count_N(Q, b * d))});
        items.push_back({b * d, Rat(count_N(Q, d))});
      }
      break;
    case UpperFlavor::UCond:
      for (u32 d = 1; b * d <= trunc; ++d) {
        auto big = count_unitary(Q, b * d);
        auto small = count_unitary(Q, d);
        if ((b * d) % 2 == 1) items.push_back({b * d, Rat(big.Ntilde)});
        if (d % 2 == 1) items.push_back({b * d, Rat(small.Ntilde)});
        if (2 * b * d <= trunc) {
          items.push_back({2 * b * d, Rat(big.Mtilde)});
          items.push_back({2 * b * d, Rat(small.Mtilde)});
        }
      }
      break;
    case UpperFlavor::SpCond: {
      u32 e = q % 2 == 0 ? 1 : 2;
      items.push_back({b, Rat(static_cast<long>(e))});
      for (u32 d = 1; b * d <= trunc; ++d) {
        auto nb = count_star(Q, 2 * b * d);
        auto mb = count_star(Q, b * d);
        items.push_back({b * d, Rat(nb.Nstar) + Rat(mb.Mstar)});
        auto ns = count_star(Q, 2 * d);
        auto ms = count_star(Q, d);
        items.push_back({b * d, Rat(ns.Nstar) + Rat(ms.Mstar)});
      }
      break;
    }
    case UpperFlavor::UhelpRat:
      for (u32 d = 1; b * d <= trunc; ++d)
        items.push_back(
            {b * d, make_rat(ipow(Q, static_cast<u64>(b) * d),
                             BigInt(static_cast<unsigned long>(b) * d))});
      break;
  }
  return product_one_minus_inv(items, trunc);
}

/// Coefficients of (1-u)^{-1/b} (generalized binomial numbers).
inline std::vector<Rat> gen_binom_coeffs(u32 b, u32 rmax) {
  if (b < 2) throw error("gen_binom_coeffs: b >= 2");
  std::vector<Rat> c(rmax + 1);
  c[0] = 1;
  Rat alpha = make_rat(1, b);
  for (u32 r = 1; r <= rmax; ++r)
    c[r] = c[r - 1] * (alpha + static_cast<long>(r) - 1) /
           static_cast<long>(r);
  return c;
}

/// Exact monotonicity check of s_r = c_r * b * r^{1-1/b} without floats:
/// s_{r+1} >= s_r  iff  (c_{r+1}/c_r)^b * (r+1)^{b-1} >= r^{b-1}.
/// The sequence increases toward its limit, so its maximum over any range
/// sits at the right end; this is the desk-scale surrogate for the unnamed
/// decay constant.
struct GenBinomDecay {
  std::vector<Rat> coeffs;       // c_r
  bool coeffs_decreasing;        // c_{r+1} < c_r for all r >= 1
  bool normalized_nondecreasing; // s_{r+1} >= s_r for all r >= 1
};

inline GenBinomDecay gen_binom_decay(u32 b, u32 rmax) {
  GenBinomDecay out;
  out.coeffs = gen_binom_coeffs(b, rmax);
  out.coeffs_decreasing = true;
  out.normalized_nondecreasing = true;
  for (u32 r = 1; r < rmax; ++r) {
    if (out.coeffs[r + 1] >= out.coeffs[r]) out.coeffs_decreasing = false;
    Rat ratio = rat_pow(out.coeffs[r + 1] / out.coeffs[r], b);
    Rat lhs = ratio * rat_pow(Rat(static_cast<long>(r) + 1), b - 1);
    Rat rhs = rat_pow(Rat(static_cast<long>(r)), b - 1);
    if (lhs < rhs) out.normalized_nondecreasing = false;
  }
  return out;
}

/// The split-sum identity: coefficient of u^m in
/// (1/(1-uq)) (1/(1-uq^b))^{1/b} equals
/// sum_{r<=m} q^{m-r} q^{rb} [u^r] (1-u)^{-1/b}.
inline bool split_sum_check(u32 q, u32 b, u32 mmax) {
  RatSeries geom = rational_series(
      {Rat(1)}, {Rat(1), Rat(-static_cast<long>(q))}, mmax);
  BigInt qb = ipow(q, b);
  // (1 - q^b u) as a series, then the 1/b power of its reciprocal
  RatSeries lin(mmax);
  lin.coef(0) = 1;
  if (mmax >= 1) lin.coef(1) = -Rat(qb);
  RatSeries powpart = lin.reciprocal().pow(make_rat(1, b));
  RatSeries lhs = geom * powpart;
  auto cr = gen_binom_coeffs(b, mmax);
  for (u32 m = 0; m <= mmax; ++m) {
    Rat rhs(0);
    for (u32 r = 0; r <= m; ++r)
      rhs += Rat(ipow(q, m - r)) * Rat(ipow(qb, r)) * cr[r];
    if (lhs.coef(m) != rhs) return false;
  }
  return true;
}

}  // namespace cpfq
