// Dense matrices over F_q: arithmetic, elimination, characteristic
// polynomials (Hessenberg reduction, works over any field), and the affine
// solver used by the group samplers.
#pragma once

#include <optional>

#include "cpfq/poly.hpp"
#include "cpfq/rng.hpp"

namespace cpfq {

using Vec = std::vector<u32>;

struct Mat {
  u32 n = 0;
  std::vector<u32> a;  // row major

  Mat() = default;
  explicit Mat(u32 dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0) {}
  u32& at(u32 i, u32 j) { return a[static_cast<size_t>(i) * n + j]; }
  u32 at(u32 i, u32 j) const { return a[static_cast<size_t>(i) * n + j]; }
  friend bool operator==(const Mat& x, const Mat& y) {
    return x.n == y.n && x.a == y.a;
  }
  friend bool operator<(const Mat& x, const Mat& y) {
    return x.n != y.n ? x.n < y.n : x.a < y.a;
  }
};

inline Mat mat_identity(u32 n) {
  Mat m(n);
  for (u32 i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

inline Mat mat_mul(const Fq& F, const Mat& A, const Mat& B) {
  Mat C(A.n);
  for (u32 i = 0; i < A.n; ++i)
    for (u32 k = 0; k < A.n; ++k) {
      u32 v = A.at(i, k);
      if (!v) continue;
      for (u32 j = 0; j < A.n; ++j)
        C.at(i, j) = F.add(C.at(i, j), F.mul(v, B.at(k, j)));
    }
  return C;
}

inline Vec mat_vec(const Fq& F, const Mat& A, const Vec& v) {
  Vec r(A.n, 0);
  for (u32 i = 0; i < A.n; ++i)
    for (u32 j = 0; j < A.n; ++j)
      r[i] = F.add(r[i], F.mul(A.at(i, j), v[j]));
  return r;
}

inline Mat mat_from_columns(const std::vector<Vec>& cols) {
  Mat m(static_cast<u32>(cols.size()));
  for (u32 j = 0; j < m.n; ++j)
    for (u32 i = 0; i < m.n; ++i) m.at(i, j) = cols[j][i];
  return m;
}

inline Mat mat_block_diag(const Mat& A, const Mat& B) {
  Mat C(A.n + B.n);
  for (u32 i = 0; i < A.n; ++i)
    for (u32 j = 0; j < A.n; ++j) C.at(i, j) = A.at(i, j);
  for (u32 i = 0; i < B.n; ++i)
    for (u32 j = 0; j < B.n; ++j) C.at(A.n + i, A.n + j) = B.at(i, j);
  return C;
}

inline u32 mat_det(const Fq& F, Mat m) {
  u32 det = 1;
  for (u32 col = 0; col < m.n; ++col) {
    u32 piv = col;
    while (piv < m.n && m.at(piv, col) == 0) ++piv;
    if (piv == m.n) return 0;
    if (piv != col) {
      for (u32 j = 0; j < m.n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = F.neg(det);
    }
    det = F.mul(det, m.at(col, col));
    u32 inv = F.inv(m.at(col, col));
    for (u32 i = col + 1; i < m.n; ++i) {
      u32 f = F.mul(m.at(i, col), inv);
      if (!f) continue;
      for (u32 j = col; j < m.n; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(col, j)));
    }
  }
  return det;
}

inline bool mat_invertible(const Fq& F, const Mat& m) {
  return mat_det(F, m) != 0;
}

/// Characteristic polynomial det(tI - M): monic of degree n.
/// Similarity reduction to upper Hessenberg form, then the standard
/// leading-minor recurrence.
inline Poly char_poly(const Fq& F, Mat H) {
  u32 n = H.n;
  if (n == 0) return p_one();
  for (u32 j = 0; j + 2 < n; ++j) {
    u32 piv = j + 1;
    while (piv < n && H.at(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (u32 c = 0; c < n; ++c) std::swap(H.at(piv, c), H.at(j + 1, c));
      for (u32 r = 0; r < n; ++r) std::swap(H.at(r, piv), H.at(r, j + 1));
    }
    u32 inv = F.inv(H.at(j + 1, j));
    for (u32 i = j + 2; i < n; ++i) {
      u32 t = F.mul(H.at(i, j), inv);
      if (!t) continue;
      for (u32 c = 0; c < n; ++c)
        H.at(i, c) = F.sub(H.at(i, c), F.mul(t, H.at(j + 1, c)));
      for (u32 r = 0; r < n; ++r)
        H.at(r, j + 1) = F.add(H.at(r, j + 1), F.mul(t, H.at(r, i)));
    }
  }
  // p_m(t) = (t - h_mm) p_{m-1}(t) - sum_i h_im (prod subdiag) p_{i-1}(t)
  std::vector<Poly> p(n + 1);
  p[0] = p_one();
  for (u32 m = 1; m <= n; ++m) {
    Poly shifted = p_mul(F, p_monomial(1), p[m - 1]);
    Poly acc = p_sub(F, shifted, p_scale(F, p[m - 1], H.at(m - 1, m - 1)));
    u32 prod = 1;
    for (u32 i = m - 1; i >= 1; --i) {
      prod = F.mul(prod, H.at(i, i - 1));
      if (prod == 0) break;
      u32 coef = F.mul(H.at(i - 1, m - 1), prod);
      if (coef) acc = p_sub(F, acc, p_scale(F, p[i - 1], coef));
    }
    p[m] = std::move(acc);
  }
  return p[n];
}

inline Mat companion_matrix(const Fq& F, const Poly& f) {
  if (!p_is_monic(f)) throw error("companion matrix needs a monic input");
  u32 n = static_cast<u32>(f.deg());
  Mat m(n);
  for (u32 i = 0; i + 1 < n; ++i) m.at(i + 1, i) = 1;
  for (u32 i = 0; i < n; ++i) m.at(i, n - 1) = F.neg(f.c[i]);
  return m;
}

inline Mat random_matrix(const Fq& F, u32 n, Rng& rng) {
  Mat m(n);
  for (auto& x : m.a) x = static_cast<u32>(rng.below(F.q()));
  return m;
}

// ---- linear systems ------------------------------------------------------

struct AffineSolution {
  bool solvable = false;
  Vec particular;
  std::vector<Vec> kernel;  // basis of the homogeneous solution space
};

/// Solve rows[i] . x = rhs[i] over F for x of length `dim`.
inline AffineSolution solve_affine(const Fq& F, std::vector<Vec> rows,
                                   Vec rhs, u32 dim) {
  AffineSolution out;
  u32 m = static_cast<u32>(rows.size());
  std::vector<i64> pivot_col(m, -1);
  u32 rank = 0;
  for (u32 col = 0; col < dim && rank < m; ++col) {
    u32 sel = rank;
    while (sel < m && rows[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[rank]);
    std::swap(rhs[sel], rhs[rank]);
    u32 inv = F.inv(rows[rank][col]);
    for (u32 j = 0; j < dim; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
    rhs[rank] = F.mul(rhs[rank], inv);
    for (u32 i = 0; i < m; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      u32 f = rows[i][col];
      for (u32 j = 0; j < dim; ++j)
        rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[rank][j]));
      rhs[i] = F.sub(rhs[i], F.mul(f, rhs[rank]));
    }
    pivot_col[rank] = col;
    ++rank;
  }
  for (u32 i = rank; i < m; ++i)
    if (rhs[i] != 0) return out;  // inconsistent
  out.solvable = true;
  out.particular.assign(dim, 0);
  std::vector<bool> is_pivot(dim, false);
  for (u32 i = 0; i < rank; ++i) {
    is_pivot[static_cast<u32>(pivot_col[i])] = true;
    out.particular[static_cast<u32>(pivot_col[i])] = rhs[i];
  }
  for (u32 col = 0; col < dim; ++col) {
    if (is_pivot[col]) continue;
    Vec kv(dim, 0);
    kv[col] = 1;
    for (u32 i = 0; i < rank; ++i)
      kv[static_cast<u32>(pivot_col[i])] = F.neg(rows[i][col]);
    out.kernel.push_back(std::move(kv));
  }
  return out;
}

/// Incremental row echelon basis; used to enumerate ordered bases.
class EchelonBasis {
 public:
  explicit EchelonBasis(const Fq& F) : F_(&F) {}
  u32 rank() const { return static_cast<u32>(rows_.size()); }

  /// Returns false (and leaves the basis unchanged) if v is dependent.
  bool add(Vec v) {
    reduce(v);
    u32 lead = leading(v);
    if (lead == npos) return false;
    u32 inv = F_->inv(v[lead]);
    for (auto& x : v) x = F_->mul(x, inv);
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    return true;
  }

  bool contains(Vec v) const {
    reduce(v);
    return leading(v) == npos;
  }

 private:
  static constexpr u32 npos = 0xffffffff;
  void reduce(Vec& v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      u32 c = v[leads_[i]];
      if (!c) continue;
      for (size_t j = 0; j < v.size(); ++j)
        v[j] = F_->sub(v[j], F_->mul(c, rows_[i][j]));
    }
  }
  u32 leading(const Vec& v) const {
    for (u32 j = 0; j < v.size(); ++j)
      if (v[j]) return j;
    return npos;
  }
  const Fq* F_;
  std::vector<Vec> rows_;
  std::vector<u32> leads_;
};

}  // namespace cpfq
