#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wpl/errors.hpp"
#include "wpl/geometry.hpp"
#include "wpl/slope.hpp"

namespace wpl {

// An element of the Grothendieck group over the basis
//   [O], [S_pt], [S_{i,j}] (i = 1..t, j = 1..p_i - 1).
class KClass {
 public:
  KClass() = default;
  explicit KClass(std::size_t n) : c_(n, 0) {}
  explicit KClass(std::vector<std::int64_t> coords) : c_(std::move(coords)) {}

  std::size_t size() const { return c_.size(); }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  std::int64_t& operator[](std::size_t i) { return c_[i]; }
  const std::vector<std::int64_t>& coords() const { return c_; }
  bool is_zero() const {
    for (auto v : c_) {
      if (v != 0) return false;
    }
    return true;
  }

  KClass& operator+=(const KClass& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_.at(i);
    return *this;
  }
  KClass& operator-=(const KClass& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_.at(i);
    return *this;
  }
  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
  friend KClass operator*(std::int64_t k, KClass a) {
    for (auto& v : a.c_) v *= k;
    return a;
  }
  friend KClass operator-(KClass a) { return -1 * std::move(a); }
  friend bool operator==(const KClass&, const KClass&) = default;

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
    return s + "]";
  }

 private:
  std::vector<std::int64_t> c_;
};

// Dense square integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  std::size_t dim() const { return n_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

  KClass apply(const KClass& x) const {
    KClass y(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      std::int64_t s = 0;
      for (std::size_t c = 0; c < n_; ++c) s += (*this)(r, c) * x[c];
      y[r] = s;
    }
    return y;
  }
  IntMatrix transpose() const {
    IntMatrix t(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const auto v = a(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) m(i, j) += v * b(k, j);
      }
    return m;
  }
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.n_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] + b.a_[i];
    return m;
  }
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

namespace detail {

// Integer basis of {x in Z^n : A x = 0}, via unimodular column reduction of A.
// The transform is unimodular, so the returned basis spans the full
// (saturated) integer kernel.
inline std::vector<KClass> integer_kernel(const IntMatrix& in) {
  const std::size_t n = in.dim();
  IntMatrix a = in;
  IntMatrix u = IntMatrix::identity(n);
  auto col_axpy = [n](IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t k) {
    for (std::size_t r = 0; r < n; ++r) m(r, dst) += k * m(r, src);
  };
  auto col_swap = [n](IntMatrix& m, std::size_t x, std::size_t y) {
    for (std::size_t r = 0; r < n; ++r) std::swap(m(r, x), m(r, y));
  };
  std::size_t pivot = 0;
  for (std::size_t row = 0; row < n && pivot < n; ++row) {
    // Euclid across columns pivot..n-1 until a single nonzero remains.
    while (true) {
      std::size_t best = n;
      for (std::size_t c = pivot; c < n; ++c) {
        if (a(row, c) != 0 && (best == n || std::abs(a(row, c)) < std::abs(a(row, best)))) best = c;
      }
      if (best == n) break;
      bool others = false;
      for (std::size_t c = pivot; c < n; ++c) {
        if (c == best || a(row, c) == 0) continue;
        const std::int64_t q = a(row, c) / a(row, best);
        col_axpy(a, c, best, -q);
        col_axpy(u, c, best, -q);
        if (a(row, c) != 0) others = true;
      }
      if (!others) {
        col_swap(a, pivot, best);
        col_swap(u, pivot, best);
        ++pivot;
        break;
      }
    }
  }
  std::vector<KClass> basis;
  for (std::size_t c = pivot; c < n; ++c) {
    KClass v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = u(r, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

// Gram matrix of the Euler form, the Auslander-Reiten translate as a lattice
// map, and the radical vectors u, w with rk = <-, w>, deg = <u, ->.
class EulerTable {
 public:
  explicit EulerTable(Geometry geom) : geom_(std::move(geom)) { build(); }

  const Geometry& geometry() const { return geom_; }
  std::size_t dim() const { return n_; }
  const IntMatrix& gram() const { return gram_; }
  const IntMatrix& tau_matrix() const { return tau_; }
  const IntMatrix& tau_inverse_matrix() const { return tau_inv_; }
  const KClass& u() const { return u_; }
  const KClass& w() const { return w_; }
  const std::vector<KClass>& radical_basis() const { return radical_; }

  // Basis positions.
  static constexpr std::size_t kO = 0;
  static constexpr std::size_t kPt = 1;
  std::size_t arm_index(int arm, int j) const {
    return arm_offset_.at(static_cast<std::size_t>(arm - 1)) + static_cast<std::size_t>(j - 1);
  }
  KClass basis(std::size_t i) const {
    KClass v(n_);
    v[i] = 1;
    return v;
  }
  KClass zero() const { return KClass(n_); }

  std::int64_t euler(const KClass& a, const KClass& b) const {
    std::int64_t s = 0;
    for (std::size_t r = 0; r < n_; ++r) {
      if (a[r] == 0) continue;
      for (std::size_t c = 0; c < n_; ++c) s += a[r] * gram_(r, c) * b[c];
    }
    return s;
  }
  KClass tau(const KClass& a) const { return tau_.apply(a); }
  KClass tau_inv(const KClass& a) const { return tau_inv_.apply(a); }
  KClass tau_power(KClass a, int k) const {
    for (; k > 0; --k) a = tau(a);
    for (; k < 0; ++k) a = tau_inv(a);
    return a;
  }

  std::int64_t rank(const KClass& a) const { return euler(a, w_); }
  std::int64_t degree(const KClass& a) const { return euler(u_, a); }
  Slope slope(const KClass& a) const {
    const auto r = rank(a);
    const auto d = degree(a);
    if (r < 0 || (r == 0 && d <= 0)) {
      throw SlopeUndefined("class " + a.str() + " has rank " + std::to_string(r) +
                           " and degree " + std::to_string(d) + "; no slope");
    }
    return Slope::make(d, r);
  }

  // sum_{i=0}^{p-1} <tau^i a, b>
  std::int64_t riemann_roch(const KClass& a, const KClass& b) const {
    std::int64_t s = 0;
    KClass x = a;
    for (int i = 0; i < geom_.p(); ++i) {
      s += euler(x, b);
      x = tau(x);
    }
    return s;
  }

  // Class of the simple S_{i,j} at arm i; j is taken mod p_i and
  // [S_{i,0}] = [S_pt] - sum_{j>0} [S_{i,j}].
  KClass arm_simple(int arm, std::int64_t j) const {
    const int pi = geom_.weight(arm);
    j %= pi;
    if (j < 0) j += pi;
    KClass v(n_);
    if (j == 0) {
      v[kPt] = 1;
      for (int m = 1; m < pi; ++m) v[arm_index(arm, m)] = -1;
    } else {
      v[arm_index(arm, static_cast<int>(j))] = 1;
    }
    return v;
  }
  KClass point_simple() const { return basis(kPt); }
  KClass structure_sheaf() const { return basis(kO); }

  // Quasi-simple of index `index` in the tube at `pt` (slope infinity).
  KClass simple_at(const PointId& pt, std::int64_t index) const {
    if (const auto* e = std::get_if<Exceptional>(&pt)) return arm_simple(e->arm, index);
    return point_simple();
  }

  // [O(x)] = [O] + l [S_pt] + sum_i sum_{m=1}^{lambda_i} [S_{i,m}] on the
  // normal form; each O(y) -> O(y + x_i) has cokernel S_{i, lambda_i(y)+1}.
  KClass line_bundle(const LElement& x) const {
    const LElement nf = geom_.normalize(x);
    KClass v = structure_sheaf();
    v[kPt] += nf.l;
    for (int i = 1; i <= geom_.t(); ++i) {
      for (std::int64_t m = 1; m <= nf.lambda[static_cast<std::size_t>(i - 1)]; ++m) {
        v += arm_simple(i, m);
      }
    }
    return v;
  }

  // Tube object at slope infinity with quasi-composition factors
  // socle, socle+1, ..., socle+len-1 (indices mod the tube rank).
  KClass tube_object(const PointId& pt, std::int64_t socle, std::int64_t len) const {
    KClass v(n_);
    if (std::holds_alternative<Ordinary>(pt)) {
      v[kPt] = len;
      return v;
    }
    for (std::int64_t m = 0; m < len; ++m) v += simple_at(pt, socle + m);
    return v;
  }

  // [G_q] = r u + d w for q = d/r.
  KClass generic(const Slope& q) const { return q.den() * u_ + q.num() * w_; }

 private:
  void build() {
    const int t = geom_.t();
    n_ = 2;
    for (int i = 1; i <= t; ++i) {
      arm_offset_.push_back(n_);
      n_ += static_cast<std::size_t>(geom_.weight(i) - 1);
    }

    gram_ = IntMatrix(n_);
    gram_(kO, kO) = 1;
    gram_(kO, kPt) = 1;
    gram_(kPt, kO) = -1;
    gram_(kPt, kPt) = 0;
    for (int i = 1; i <= t; ++i) {
      const int pi = geom_.weight(i);
      for (int j = 1; j < pi; ++j) {
        const auto a = arm_index(i, j);
        gram_(a, kO) = (j == 1) ? -1 : 0;
        for (int j2 = 1; j2 < pi; ++j2) {
          gram_(a, arm_index(i, j2)) = (j == j2 ? 1 : 0) - (j2 == j - 1 ? 1 : 0);
        }
      }
    }

    tau_ = IntMatrix(n_);
    tau_inv_ = IntMatrix(n_);
    auto set_col = [this](IntMatrix& m, std::size_t col, const KClass& v) {
      for (std::size_t r = 0; r < n_; ++r) m(r, col) = v[r];
    };
    set_col(tau_, kPt, point_simple());
    set_col(tau_inv_, kPt, point_simple());
    for (int i = 1; i <= t; ++i) {
      for (int j = 1; j < geom_.weight(i); ++j) {
        set_col(tau_, arm_index(i, j), arm_simple(i, j - 1));
        set_col(tau_inv_, arm_index(i, j), arm_simple(i, j + 1));
      }
    }
    set_col(tau_, kO, line_bundle(geom_.omega()));
    set_col(tau_inv_, kO, line_bundle(geom_.negate(geom_.omega())));

    IntMatrix sym = gram_ + gram_.transpose();
    radical_ = detail::integer_kernel(sym);
    if (radical_.size() != 2) {
      throw RadicalRankError("symmetrized Euler form has radical of rank " +
                             std::to_string(radical_.size()) + ", expected 2");
    }

    const auto& k1 = radical_[0];
    const auto& k2 = radical_[1];
    const KClass o = structure_sheaf();
    const KClass pt = point_simple();
    // Solve [a11 a12; a21 a22] (x, y)^T = (b1, b2)^T over the integers.
    auto solve = [&](std::int64_t a11, std::int64_t a12, std::int64_t a21, std::int64_t a22,
                     std::int64_t b1, std::int64_t b2, const char* what) {
      const std::int64_t det = a11 * a22 - a12 * a21;
      const std::int64_t nx = b1 * a22 - a12 * b2;
      const std::int64_t ny = a11 * b2 - b1 * a21;
      if (det == 0 || nx % det != 0 || ny % det != 0) {
        throw NormalizationError(std::string("no integral radical vector ") + what);
      }
      return (nx / det) * k1 + (ny / det) * k2;
    };
    // rk[O] = <O, w> = 1, rk[S_pt] = <S_pt, w> = 0
    w_ = solve(euler(o, k1), euler(o, k2), euler(pt, k1), euler(pt, k2), 1, 0, "w");
    // deg[O] = <u, O> = 0, deg[S_pt] = <u, S_pt> = p
    u_ = solve(euler(k1, o), euler(k2, o), euler(k1, pt), euler(k2, pt), 0, geom_.p(), "u");
    if (euler(u_, w_) != geom_.p()) {
      throw NormalizationError("<u, w> = " + std::to_string(euler(u_, w_)) + " differs from p");
    }
  }

  Geometry geom_;
  std::size_t n_ = 0;
  std::vector<std::size_t> arm_offset_;
  IntMatrix gram_;
  IntMatrix tau_;
  IntMatrix tau_inv_;
  std::vector<KClass> radical_;
  KClass u_;
  KClass w_;
};

inline EulerTable build_euler_table(const Geometry& g) { return EulerTable(g); }

}  // namespace wpl
