// Exact integer/rational helpers shared across the library.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpfq {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

using BigInt = mpz_class;
using Rat = mpq_class;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt ipow(const BigInt& base, u64 e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt ipow(u64 base, u64 e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

inline BigInt factorial(u64 n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// n*(n-1)*...*(n-k+1) with BigInt n.
inline BigInt falling_factorial(const BigInt& n, u64 k) {
  BigInt r = 1;
  for (u64 i = 0; i < k; ++i) r *= n - static_cast<unsigned long>(i);
  return r;
}

inline Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// x^e for integer e (negative allowed, x nonzero then).
inline Rat rat_pow(const Rat& x, i64 e) {
  if (e == 0) return Rat(1);
  bool invert = e < 0;
  u64 a = invert ? static_cast<u64>(-e) : static_cast<u64>(e);
  Rat r = make_rat(ipow(BigInt(x.get_num()), a), ipow(BigInt(x.get_den()), a));
  if (invert) {
    if (r == 0) throw error("inverse of zero rational");
    r = 1 / r;
  }
  return r;
}

inline double to_double(const Rat& x) { return mpq_get_d(x.get_mpq_t()); }

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> ps;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline std::vector<u32> divisors_of(u32 n) {
  std::vector<u32> lo, hi;
  for (u32 d = 1; static_cast<u64>(d) * d <= n; ++d) {
    if (n % d == 0) {
      lo.push_back(d);
      if (d != n / d) hi.push_back(n / d);
    }
  }
  for (auto it = hi.rbegin(); it != hi.rend(); ++it) lo.push_back(*it);
  return lo;
}

inline int moebius(u32 n) {
  int mu = 1;
  for (u32 d = 2; static_cast<u64>(d) * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

inline std::string rat_str(const Rat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace cpfq
