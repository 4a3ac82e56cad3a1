// Finite classical groups: exact orders, fixed standard forms, exhaustive
// enumeration for tiny groups, and exactly uniform random sampling.
//
// Isometry groups are enumerated and sampled column by column: the i-th
// column of a group element must pair against the earlier columns exactly as
// the standard Gram matrix prescribes, plus a norm condition on itself. By
// Witt's extension theorem every partial solution extends and the number of
// completions does not depend on the prefix, so per-column uniform choice
// gives a uniform group element (a property the test suite checks rather
// than assumes).
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "cpfq/matrix.hpp"

namespace cpfq {

enum class Family { Mat, GL, GU, Sp, OPlus, OMinus };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Mat: return "mat";
    case Family::GL: return "gl";
    case Family::GU: return "gu";
    case Family::Sp: return "sp";
    case Family::OPlus: return "o+";
    case Family::OMinus: return "o-";
  }
  return "?";
}

/// For Sp, n is the rank and the natural module has dimension 2n. For GU the
/// module is n-dimensional over F_{q^2}. Odd-dimensional orthogonal groups
/// (one type only) are spelled OPlus with n odd.
struct GroupSpec {
  Family family;
  u32 n;
  u32 q;
};

// ---- orders --------------------------------------------------------------

inline BigInt order_gl(const BigInt& q, u32 n) {
  BigInt r = ipow(q, static_cast<u64>(n) * (n - 1) / 2);
  for (u32 i = 1; i <= n; ++i) r *= ipow(q, i) - 1;
  return n == 0 ? BigInt(1) : r;
}

inline BigInt order_gu(const BigInt& q, u32 n) {
  BigInt r = ipow(q, static_cast<u64>(n) * (n - 1) / 2);
  for (u32 i = 1; i <= n; ++i)
    r *= ipow(q, i) - ((i % 2 == 0) ? 1 : -1);
  return n == 0 ? BigInt(1) : r;
}

/// |Sp(2n, q)|; n is the rank, |Sp(0,q)| = 1.
inline BigInt order_sp(const BigInt& q, u32 n) {
  BigInt r = ipow(q, static_cast<u64>(n) * n);
  for (u32 i = 1; i <= n; ++i) r *= ipow(q, 2 * i) - 1;
  return n == 0 ? BigInt(1) : r;
}

/// |O^eps(2m, q)|, eps = +1 or -1.
inline BigInt order_o_even(const BigInt& q, u32 m, int eps) {
  if (m == 0) return 1;
  BigInt r = 2 * ipow(q, static_cast<u64>(m) * (m - 1));
  r *= ipow(q, m) - eps;
  for (u32 i = 1; i + 1 <= m; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

/// |O(2m+1, q)| for odd q.
inline BigInt order_o_odd(const BigInt& q, u32 m) {
  BigInt r = 2 * ipow(q, static_cast<u64>(m) * m);
  for (u32 i = 1; i <= m; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

inline void validate_spec(const GroupSpec& s) {
  if (s.q < 2) throw error("group spec: q must be a prime power >= 2");
  switch (s.family) {
    case Family::Mat:
    case Family::GL:
    case Family::GU:
      if (s.n < 1) throw error("group spec: n must be >= 1");
      break;
    case Family::Sp:
      if (s.n < 1) throw error("group spec: symplectic rank must be >= 1");
      break;
    case Family::OPlus:
      if (s.n < 1) throw error("group spec: orthogonal dimension >= 1");
      if (s.n % 2 == 1 && s.q % 2 == 0)
        throw error("odd-dimensional orthogonal groups in even characteristic "
                    "are symplectic; not represented here");
      break;
    case Family::OMinus:
      if (s.n < 2) throw error("group spec: orthogonal dimension >= 2");
      if (s.n % 2 == 1)
        throw error("odd dimension has a single orthogonal group; use o+");
      break;
  }
}

inline BigInt group_order(const GroupSpec& s) {
  validate_spec(s);
  BigInt q(s.q);
  switch (s.family) {
    case Family::Mat: return ipow(q, static_cast<u64>(s.n) * s.n);
    case Family::GL: return order_gl(q, s.n);
    case Family::GU: return order_gu(q, s.n);
    case Family::Sp: return order_sp(q, s.n);
    case Family::OPlus:
      return s.n % 2 == 0 ? order_o_even(q, s.n / 2, +1)
                          : order_o_odd(q, s.n / 2);
    case Family::OMinus: return order_o_even(q, s.n / 2, -1);
  }
  throw error("unknown family");
}

// ---- fields and forms ------------------------------------------------

/// The field matrices live over: F_{q^2} (as a tower) for GU, F_q otherwise.
inline const Fq& spec_field(const GroupSpec& s) {
  const Fq& base = field_for_q(s.q);
  return s.family == Family::GU ? Fq::quadratic_tower(base) : base;
}

inline u32 module_dim(const GroupSpec& s) {
  return s.family == Family::Sp ? 2 * s.n : s.n;
}

/// Fixed standard form of a group spec. `gram` is the matrix of the
/// bilinear (or sesquilinear, or polar) form; even-characteristic orthogonal
/// groups additionally carry the quadratic form values on basis vectors.
struct FormCtx {
  Family fam = Family::GL;
  u32 dim = 0;
  const Fq* F = nullptr;
  std::vector<u32> gram;   // dim x dim, row major; empty for Mat/GL
  std::vector<u32> qdiag;  // even-char orthogonal only: Q(e_i)
  bool hermitian = false;
  bool quadratic = false;  // even-char orthogonal

  u32 g(u32 i, u32 j) const { return gram[static_cast<size_t>(i) * dim + j]; }
  u32& g(u32 i, u32 j) { return gram[static_cast<size_t>(i) * dim + j]; }

  u32 bilin(const Vec& x, const Vec& y) const {
    u32 s = 0;
    for (u32 i = 0; i < dim; ++i) {
      if (!x[i]) continue;
      u32 row = 0;
      for (u32 j = 0; j < dim; ++j) {
        u32 yj = hermitian ? F->conj_q(y[j]) : y[j];
        row = F->add(row, F->mul(g(i, j), yj));
      }
      s = F->add(s, F->mul(x[i], row));
    }
    return s;
  }

  /// Self-value prescribed on basis vectors: quadratic form value for
  /// orthogonal groups, hermitian norm for GU, always zero for Sp.
  u32 self_value(const Vec& v) const {
    if (quadratic) {
      u32 s = 0;
      for (u32 i = 0; i < dim; ++i) {
        if (!v[i]) continue;
        s = F->add(s, F->mul(F->mul(v[i], v[i]), qdiag[i]));
        for (u32 j = i + 1; j < dim; ++j)
          s = F->add(s, F->mul(F->mul(v[i], v[j]), g(i, j)));
      }
      return s;
    }
    return bilin(v, v);
  }

  u32 self_target(u32 i) const {
    if (quadratic) return qdiag[i];
    return gram.empty() ? 0 : g(i, i);
  }
};

inline u32 smallest_nonsquare(const Fq& F) {
  for (u32 x = 2; x < F.q(); ++x) {
    bool square = false;
    for (u32 y = 1; y < F.q() && !square; ++y)
      if (F.mul(y, y) == x) square = true;
    if (!square) return x;
  }
  throw error("no nonsquare found (field of even characteristic?)");
}

/// Some c with t^2 + t + c irreducible over F_q, q even (trace condition).
inline u32 even_aniso_coeff(const Fq& F) {
  for (u32 c = 1; c < F.q(); ++c) {
    bool has_root = false;
    for (u32 x = 0; x < F.q() && !has_root; ++x)
      if (F.add(F.add(F.mul(x, x), x), c) == 0) has_root = true;
    if (!has_root) return c;
  }
  throw error("no irreducible t^2+t+c over this field");
}

inline FormCtx make_form(const GroupSpec& s) {
  validate_spec(s);
  FormCtx f;
  f.fam = s.family;
  f.F = &spec_field(s);
  f.dim = module_dim(s);
  if (s.family == Family::Mat || s.family == Family::GL) return f;
  f.gram.assign(static_cast<size_t>(f.dim) * f.dim, 0);
  const Fq& F = *f.F;
  switch (s.family) {
    case Family::Sp:
      for (u32 i = 0; i < s.n; ++i) {
        f.g(2 * i, 2 * i + 1) = 1;
        f.g(2 * i + 1, 2 * i) = F.neg(1);
      }
      break;
    case Family::GU:
      f.hermitian = true;
      for (u32 i = 0; i < f.dim; ++i) f.g(i, i) = 1;
      break;
    case Family::OPlus:
    case Family::OMinus: {
      bool minus = s.family == Family::OMinus;
      bool even_char = s.q % 2 == 0;
      u32 hyper = f.dim / 2 - (minus ? 1 : 0);
      if (f.dim % 2 == 1) hyper = f.dim / 2;
      for (u32 i = 0; i < hyper; ++i) {
        f.g(2 * i, 2 * i + 1) = 1;
        f.g(2 * i + 1, 2 * i) = 1;
      }
      if (even_char) {
        f.quadratic = true;
        f.qdiag.assign(f.dim, 0);
        if (minus) {
          u32 a = f.dim - 2, b = f.dim - 1;
          f.g(a, b) = 1;
          f.g(b, a) = 1;
          f.qdiag[a] = 1;
          f.qdiag[b] = even_aniso_coeff(F);
        }
      } else {
        if (minus) {
          u32 a = f.dim - 2, b = f.dim - 1;
          f.g(a, a) = 1;
          f.g(b, b) = F.neg(smallest_nonsquare(F));
        } else if (f.dim % 2 == 1) {
          f.g(f.dim - 1, f.dim - 1) = 1;
        }
      }
      break;
    }
    default: break;
  }
  return f;
}

inline bool preserves_form(const FormCtx& form, const Mat& M) {
  if (M.n != form.dim) throw error("preserves_form: dimension mismatch");
  if (form.fam == Family::Mat) return true;
  const Fq& F = *form.F;
  if (form.fam == Family::GL) return mat_invertible(F, M);
  std::vector<Vec> cols(form.dim, Vec(form.dim));
  for (u32 j = 0; j < form.dim; ++j)
    for (u32 i = 0; i < form.dim; ++i) cols[j][i] = M.at(i, j);
  for (u32 i = 0; i < form.dim; ++i) {
    for (u32 j = 0; j < form.dim; ++j)
      if (form.bilin(cols[i], cols[j]) != form.g(i, j)) return false;
    if (form.quadratic && form.self_value(cols[i]) != form.qdiag[i])
      return false;
  }
  return true;
}

// ---- enumeration -----------------------------------------------------

namespace detail {

inline Vec vec_by_index(const Fq& F, u32 dim, u64 idx) {
  Vec v(dim);
  for (u32 i = 0; i < dim; ++i) {
    v[i] = static_cast<u32>(idx % F.q());
    idx /= F.q();
  }
  return v;
}

inline bool column_fits(const FormCtx& form, const std::vector<Vec>& cols,
                        u32 depth, const Vec& v) {
  bool zero = true;
  for (u32 x : v) zero &= x == 0;
  if (zero) return false;
  for (u32 j = 0; j < depth; ++j)
    if (form.bilin(cols[j], v) != form.g(j, depth)) return false;
  if (form.fam == Family::Sp) return true;
  return form.self_value(v) == form.self_target(depth);
}

}  // namespace detail

/// All elements of a small group, each exactly once. Guarded by `cap` on the
/// group order (default 1e5) and by the vector-space scan size.
inline std::vector<Mat> enumerate_group(const GroupSpec& s, u64 cap = 100000) {
  validate_spec(s);
  BigInt order = group_order(s);
  if (order > static_cast<unsigned long>(cap))
    throw error("enumerate_group: order exceeds cap");
  const Fq& F = spec_field(s);
  u32 dim = module_dim(s);

  std::vector<Mat> out;
  if (s.family == Family::Mat) {
    u64 total = order.get_ui();
    for (u64 idx = 0; idx < total; ++idx) {
      Mat m(dim);
      u64 v = idx;
      for (auto& x : m.a) {
        x = static_cast<u32>(v % F.q());
        v /= F.q();
      }
      out.push_back(std::move(m));
    }
    return out;
  }

  double scan = 1;
  for (u32 i = 0; i < dim; ++i) scan *= F.q();
  if (scan > 4e6) throw error("enumerate_group: vector scan too large");
  u64 nvec = static_cast<u64>(scan);

  FormCtx form = make_form(s);
  std::vector<Vec> cols(dim);

  if (s.family == Family::GL) {
    std::function<void(u32, const EchelonBasis&)> rec =
        [&](u32 depth, const EchelonBasis& basis) {
          if (depth == dim) {
            out.push_back(mat_from_columns(cols));
            return;
          }
          for (u64 idx = 1; idx < nvec; ++idx) {
            Vec v = detail::vec_by_index(F, dim, idx);
            EchelonBasis next = basis;
            if (!next.add(v)) continue;
            cols[depth] = std::move(v);
            rec(depth + 1, next);
          }
        };
    rec(0, EchelonBasis(F));
    return out;
  }

  std::function<void(u32)> rec = [&](u32 depth) {
    if (depth == dim) {
      out.push_back(mat_from_columns(cols));
      return;
    }
    for (u64 idx = 0; idx < nvec; ++idx) {
      Vec v = detail::vec_by_index(F, dim, idx);
      if (!detail::column_fits(form, cols, depth, v)) continue;
      cols[depth] = std::move(v);
      rec(depth + 1);
    }
  };
  rec(0);
  return out;
}

// ---- sampling --------------------------------------------------------

/// Uniform over GL(n,q) by rejection; `attempts`, when given, accumulates
/// the number of candidate matrices drawn.
inline Mat sample_gl(const Fq& F, u32 n, Rng& rng, u64* attempts = nullptr) {
  for (u64 tries = 1;; ++tries) {
    Mat m = random_matrix(F, n, rng);
    if (mat_invertible(F, m)) {
      if (attempts) *attempts += tries;
      return m;
    }
    if (tries > 10000) throw error("sample_gl: rejection cap exceeded");
  }
}

/// Exactly uniform element of the group. Isometry families use sequential
/// column completion: solve the linear pairing constraints, draw uniformly
/// from the affine solution set, accept when the norm condition holds.
inline Mat sample_uniform(const GroupSpec& s, Rng& rng,
                          u64* gl_attempts = nullptr) {
  validate_spec(s);
  const Fq& F = spec_field(s);
  u32 dim = module_dim(s);
  if (s.family == Family::Mat) return random_matrix(F, dim, rng);
  if (s.family == Family::GL) return sample_gl(F, dim, rng, gl_attempts);

  FormCtx form = make_form(s);
  std::vector<Vec> cols;
  for (u32 i = 0; i < dim; ++i) {
    std::vector<Vec> rows;
    Vec rhs;
    for (u32 j = 0; j < i; ++j) {
      // bilin(c_j, x) = gram[j][i], linear in x once the conjugation in the
      // hermitian case is pulled onto the solved variable
      Vec row(dim, 0);
      for (u32 t = 0; t < dim; ++t) {
        u32 r = 0;
        for (u32 u = 0; u < dim; ++u)
          r = F.add(r, F.mul(cols[j][u], form.g(u, t)));
        row[t] = r;
      }
      // hermitian case: bilin(c_j, x) = sum_t row[t] conj(x_t), so the
      // system is solved for y = conj(x) and conjugated back afterwards
      rows.push_back(std::move(row));
      rhs.push_back(form.g(j, i));
    }
    AffineSolution sol = solve_affine(F, rows, rhs, dim);
    if (!sol.solvable)
      throw error("sampler: inconsistent pairing constraints (form bug)");
    u64 tries = 0;
    for (;;) {
      if (++tries > 256ull * F.q())
        throw error("sampler: no vector of required norm (form bug)");
      Vec x = sol.particular;
      for (const Vec& kv : sol.kernel) {
        u32 c = static_cast<u32>(rng.below(F.q()));
        if (!c) continue;
        for (u32 t = 0; t < dim; ++t) x[t] = F.add(x[t], F.mul(c, kv[t]));
      }
      if (form.hermitian)
        for (auto& t : x) t = F.conj_q(t);  // we solved for the conjugate
      bool zero = true;
      for (u32 t : x) zero &= t == 0;
      if (zero) continue;
      if (form.fam != Family::Sp &&
          form.self_value(x) != form.self_target(i))
        continue;
      cols.push_back(std::move(x));
      break;
    }
  }
  return mat_from_columns(cols);
}

/// Enumerations are cached per spec; several oracle checks revisit the same
/// small groups. Contexts are immutable after construction.
inline const std::vector<Mat>& enumerate_group_cached(const GroupSpec& s,
                                                      u64 cap = 100000) {
  static std::map<std::tuple<int, u32, u32>, std::unique_ptr<std::vector<Mat>>>
      cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_tuple(static_cast<int>(s.family), s.n, s.q);
  auto& slot = cache[key];
  if (!slot)
    slot = std::make_unique<std::vector<Mat>>(enumerate_group(s, cap));
  return *slot;
}

}  // namespace cpfq
