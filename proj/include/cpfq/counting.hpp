// Counting monic irreducible polynomials over F_q classified by the two
// conjugation involutions.
//
// N0(q;d)  all monic irreducibles of degree d
// N(q;d)   those with nonzero constant term
// Ntilde / Mtilde   self-conjugate irreducibles over F_{q^2} under the
//                   unitary conjugation, and unordered non-self-conjugate
//                   pairs (degree d counts)
// Nstar / Mstar     the same for the reciprocal conjugation over F_q, with
//                   t-1 and t+1 excluded from both counts
//
// Ntilde comes from a Moebius formula; Mtilde, Nstar and Mstar are peeled
// degree by degree from the generating-function identities the series module
// verifies, so the closed-form counts and the identities cannot drift apart.
// Brute-force enumeration is the test oracle at small scale.
#pragma once

#include "cpfq/numeric.hpp"

namespace cpfq {

inline BigInt count_N0(const BigInt& q, u32 d) {
  if (q < 2 || d < 1) throw error("count_N0: need q >= 2, d >= 1");
  BigInt sum = 0;
  for (u32 e : divisors_of(d)) sum += moebius(e) * ipow(q, d / e);
  BigInt r = sum / d;
  if (r * d != sum) throw error("count_N0: divisibility failure");
  return r;
}

/// Monic irreducibles of degree d with nonzero constant term.
inline BigInt count_N(const BigInt& q, u32 d) {
  if (d == 1) return q - 1;
  return count_N0(q, d);
}

struct UnitaryCounts {
  BigInt Ntilde, Mtilde;
};

/// Self-conjugate / conjugate-pair counts of degree d over F_{q^2} for the
/// unitary involution. Self-conjugate irreducibles exist only in odd degree.
inline UnitaryCounts count_unitary(const BigInt& q, u32 d) {
  if (q < 2 || d < 1) throw error("count_unitary: need q >= 2, d >= 1");
  auto ntilde = [&q](u32 m) -> BigInt {
    if (m % 2 == 0) return 0;
    BigInt sum = 0;
    for (u32 e : divisors_of(m)) sum += moebius(m / e) * (ipow(q, e) + 1);
    BigInt r = sum / m;
    if (r * m != sum) throw error("count_unitary: divisibility failure");
    return r;
  };
  UnitaryCounts out;
  out.Ntilde = ntilde(d);
  // orbit count: Ntilde(d) + 2 Mtilde(d) equals the number of monic
  // irreducibles of degree d over F_{q^2} with nonzero constant term
  BigInt total = count_N(q * q, d);
  BigInt twice = total - out.Ntilde;
  out.Mtilde = twice / 2;
  if (out.Mtilde * 2 != twice) throw error("count_unitary: odd orbit total");
  return out;
}

struct StarCounts {
  BigInt Nstar, Mstar;
};

namespace detail {

/// S*(m) = Nstar(2m) + Mstar(m), from the reciprocal-conjugation identity:
/// c + sum_{d|m} d S*(d) = q^m with c = 2 (q odd) or 1 (q even).
inline BigInt star_S(const BigInt& q, u32 m) {
  int c = (q % 2 == 0) ? 1 : 2;
  BigInt sum = 0;
  for (u32 e : divisors_of(m)) sum += moebius(m / e) * (ipow(q, e) - c);
  BigInt r = sum / m;
  if (r * m != sum) throw error("star_S: divisibility failure");
  return r;
}

}  // namespace detail

/// Nstar(q;d), Mstar(q;d): reciprocal-self-conjugate irreducibles of degree
/// d and unordered pairs of degree d, with t-1 and t+1 excluded everywhere.
/// Self-conjugate irreducibles other than t -+ 1 have even degree.
inline StarCounts count_star(const BigInt& q, u32 d) {
  if (q < 2 || d < 1) throw error("count_star: need q >= 2, d >= 1");
  auto nstar = [&q](auto&& self, u32 m) -> BigInt {
    if (m % 2 == 1) return 0;
    u32 h = m / 2;
    // Nstar(2h) = S*(h) - Mstar(h); Mstar from the orbit relation at h
    BigInt nh = self(self, h);
    BigInt excluded = (h == 1) ? ((q % 2 == 0) ? 1 : 2) : 0;
    BigInt twice = count_N(q, h) - nh - excluded;
    BigInt mh = twice / 2;
    if (mh * 2 != twice) throw error("count_star: odd orbit total");
    return detail::star_S(q, h) - mh;
  };
  StarCounts out;
  out.Nstar = nstar(nstar, d);
  BigInt excluded = (d == 1) ? ((q % 2 == 0) ? 1 : 2) : 0;
  BigInt twice = count_N(q, d) - out.Nstar - excluded;
  out.Mstar = twice / 2;
  if (out.Mstar * 2 != twice) throw error("count_star: odd orbit total");
  if (out.Nstar < 0 || out.Mstar < 0) throw error("count_star: negative");
  return out;
}

/// One row of the CLI `count` table.
struct CountRow {
  u32 d;
  BigInt N0, N, Ntilde, Mtilde, Nstar, Mstar;
};

inline std::vector<CountRow> count_table(const BigInt& q, u32 dmax) {
  std::vector<CountRow> rows;
  for (u32 d = 1; d <= dmax; ++d) {
    CountRow r;
    r.d = d;
    r.N0 = count_N0(q, d);
    r.N = count_N(q, d);
    auto uc = count_unitary(q, d);
    r.Ntilde = uc.Ntilde;
    r.Mtilde = uc.Mtilde;
    auto sc = count_star(q, d);
    r.Nstar = sc.Nstar;
    r.Mstar = sc.Mstar;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace cpfq
