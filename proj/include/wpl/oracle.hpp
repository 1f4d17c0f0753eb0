#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wpl/errors.hpp"
#include "wpl/rational.hpp"
#include "wpl/tube.hpp"

// Brute-force reference model of a stable tube: nilpotent representations
// of the cyclic quiver with d vertices, Hom spaces solved as exact linear
// systems. Vertex v carries the quasi-simple of tube index v; the radical
// maps go from vertex v to vertex v-1 (mod d), so quasi-composition factors
// ascend from the socle exactly as in wpl::tube.
namespace wpl::oracle {

// Dense rectangular matrix of exact rationals.
struct QMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> a;

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  Rational& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  friend QMatrix operator*(const QMatrix& x, const QMatrix& y) {
    QMatrix m(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        const Rational& v = x(i, k);
        if (v.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols; ++j) {
          if (!y(k, j).is_zero()) m(i, j) += v * y(k, j);
        }
      }
    return m;
  }
};

// In-place reduced row echelon form; returns the pivot column of each
// nonzero row.
inline std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t sel = m.rows;
    for (std::size_t r = row; r < m.rows; ++r) {
      if (!m(r, col).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel == m.rows) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols; ++c) std::swap(m(sel, c), m(row, c));
    }
    const Rational inv = Rational(1) / m(row, col);
    for (std::size_t c = col; c < m.cols; ++c) {
      if (!m(row, c).is_zero()) m(row, c) = m(row, c) * inv;
    }
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols; ++c) {
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(QMatrix m) { return rref(m).size(); }

// Basis of the null space {x : m x = 0}.
inline std::vector<std::vector<Rational>> null_space(QMatrix m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Representation of the cyclic quiver: maps[v] : V_v -> V_{v-1 mod d}.
struct CyclicRep {
  int d = 1;
  std::vector<std::size_t> dims;
  std::vector<QMatrix> maps;

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto x : dims) s += x;
    return s;
  }
  std::size_t prev(std::size_t v) const { return (v + static_cast<std::size_t>(d) - 1) % static_cast<std::size_t>(d); }
};

// Per-vertex linear maps between two representations.
using RepMorphism = std::vector<QMatrix>;

namespace detail {
// Position of basis vector b_k (tube index socle + k) inside its vertex space.
inline std::pair<std::size_t, std::size_t> slot(int d, std::int64_t socle, std::int64_t k) {
  const auto v = static_cast<std::size_t>(tube::mod(socle + k, d));
  // b_k is the (k - k0)/d-th vector at its vertex, k0 the first k landing there.
  const auto k0 = static_cast<std::int64_t>(tube::mod(static_cast<std::int64_t>(v) - socle, d));
  return {v, static_cast<std::size_t>((k - k0) / d)};
}
}  // namespace detail

// Uniserial representation with basis b_0 (socle) ... b_{len-1} (top),
// b_k at vertex socle+k, radical map b_k -> b_{k-1}, b_0 -> 0.
inline CyclicRep build_indecomposable(int d, std::int64_t socle, std::int64_t len) {
  if (d < 1 || len < 1) throw std::invalid_argument("build_indecomposable needs d >= 1 and len >= 1");
  CyclicRep rep;
  rep.d = d;
  rep.dims.assign(static_cast<std::size_t>(d), 0);
  for (std::int64_t k = 0; k < len; ++k) ++rep.dims[static_cast<std::size_t>(tube::mod(socle + k, d))];
  for (std::size_t v = 0; v < static_cast<std::size_t>(d); ++v) {
    rep.maps.emplace_back(rep.dims[rep.prev(v)], rep.dims[v]);
  }
  for (std::int64_t k = 1; k < len; ++k) {
    const auto [v, i] = detail::slot(d, socle, k);
    const auto [w, j] = detail::slot(d, socle, k - 1);
    rep.maps[v](j, i) = 1;
    (void)w;
  }
  return rep;
}

// Intertwiners f: A -> B with f_{v-1} A_v = B_v f_v for every vertex v.
inline std::vector<RepMorphism> hom_basis(const CyclicRep& a, const CyclicRep& b) {
  if (a.d != b.d) throw std::invalid_argument("representations over different cyclic quivers");
  const auto d = static_cast<std::size_t>(a.d);
  std::vector<std::size_t> offset(d + 1, 0);
  for (std::size_t v = 0; v < d; ++v) offset[v + 1] = offset[v] + b.dims[v] * a.dims[v];
  const std::size_t unknowns = offset[d];
  auto var = [&](std::size_t v, std::size_t r, std::size_t c) { return offset[v] + r * a.dims[v] + c; };

  std::size_t eqs = 0;
  for (std::size_t v = 0; v < d; ++v) eqs += b.dims[a.prev(v)] * a.dims[v];
  QMatrix m(eqs, unknowns);
  std::size_t row = 0;
  for (std::size_t v = 0; v < d; ++v) {
    const std::size_t pv = a.prev(v);
    const QMatrix& av = a.maps[v];  // dims[pv] x dims[v]
    const QMatrix& bv = b.maps[v];
    for (std::size_t r = 0; r < b.dims[pv]; ++r) {
      for (std::size_t c = 0; c < a.dims[v]; ++c, ++row) {
        // (f_{pv} A_v)(r, c) - (B_v f_v)(r, c) = 0
        for (std::size_t k = 0; k < a.dims[pv]; ++k) {
          if (!av(k, c).is_zero()) m(row, var(pv, r, k)) += av(k, c);
        }
        for (std::size_t k = 0; k < b.dims[v]; ++k) {
          if (!bv(r, k).is_zero()) m(row, var(v, k, c)) -= bv(r, k);
        }
      }
    }
  }
  std::vector<RepMorphism> out;
  for (const auto& vec : null_space(std::move(m))) {
    RepMorphism f;
    for (std::size_t v = 0; v < d; ++v) {
      QMatrix fv(b.dims[v], a.dims[v]);
      for (std::size_t r = 0; r < b.dims[v]; ++r)
        for (std::size_t c = 0; c < a.dims[v]; ++c) fv(r, c) = vec[var(v, r, c)];
      f.push_back(std::move(fv));
    }
    out.push_back(std::move(f));
  }
  return out;
}

inline std::int64_t oracle_hom_dim(const CyclicRep& a, const CyclicRep& b) {
  return static_cast<std::int64_t>(hom_basis(a, b).size());
}

inline std::int64_t oracle_hom_dim(int d, tube::Uniserial x, tube::Uniserial y) {
  return oracle_hom_dim(build_indecomposable(d, x.socle, x.len), build_indecomposable(d, y.socle, y.len));
}

// Ext^1 through Serre duality: D Hom(Y, tau X).
inline std::int64_t oracle_ext_dim(int d, tube::Uniserial x, tube::Uniserial y) {
  return oracle_hom_dim(d, y, tube::tau(d, x));
}

// Rank of the map Hom(X, Y) -> Hom(X, Y') given by post-composition with g.
inline std::int64_t postcompose_rank(const std::vector<RepMorphism>& homs, const RepMorphism& g) {
  if (homs.empty()) return 0;
  std::size_t width = 0;
  std::vector<std::vector<Rational>> images;
  for (const auto& f : homs) {
    std::vector<Rational> flat;
    for (std::size_t v = 0; v < f.size(); ++v) {
      const QMatrix gf = g[v] * f[v];
      flat.insert(flat.end(), gf.a.begin(), gf.a.end());
    }
    width = flat.size();
    images.push_back(std::move(flat));
  }
  QMatrix m(images.size(), width);
  for (std::size_t r = 0; r < images.size(); ++r)
    for (std::size_t c = 0; c < width; ++c) m(r, c) = images[r][c];
  return static_cast<std::int64_t>(rank(std::move(m)));
}

// Morphism between uniserials of the same tube sending basis vector b_k of
// `from` to b_{k - shift} of `to` (zero when out of range). With shift 0 and
// equal socles this is the embedding S[m] -> S[m+1]; with shift s it is the
// quotient of `from` by its bottom s layers.
inline RepMorphism shift_map(int d, tube::Uniserial from, tube::Uniserial to, std::int64_t shift) {
  const CyclicRep a = build_indecomposable(d, from.socle, from.len);
  const CyclicRep b = build_indecomposable(d, to.socle, to.len);
  RepMorphism g;
  for (std::size_t v = 0; v < static_cast<std::size_t>(d); ++v) g.emplace_back(b.dims[v], a.dims[v]);
  for (std::int64_t k = 0; k < from.len; ++k) {
    const std::int64_t k2 = k - shift;
    if (k2 < 0 || k2 >= to.len) continue;
    const auto [v, i] = detail::slot(d, from.socle, k);
    const auto [w, j] = detail::slot(d, to.socle, k2);
    if (v != w) throw std::logic_error("shift_map does not respect vertices");
    g[v](j, i) = 1;
  }
  return g;
}

enum class TowerKind { Pruefer, Adic };

struct Tower {
  TowerKind kind = TowerKind::Pruefer;
  std::int64_t index = 0;  // socle for Pruefer towers, top for adic towers

  tube::Uniserial stage(int d, std::int64_t m) const {
    return kind == TowerKind::Pruefer ? tube::Uniserial{tube::mod(index, d), m}
                                      : tube::with_top(d, index, m);
  }
};

struct StabilizationReport {
  std::vector<std::int64_t> dims;              // dim Hom(X, Y_m), m = 1..cap
  std::vector<std::int64_t> transition_ranks;  // rank of Hom(X, Y_m) <-> Hom(X, Y_{m+1})
  bool stabilizes = false;
  std::int64_t stable_from = 0;  // first m after which the watched sequence is constant
  std::int64_t limit = 0;        // dimension of the direct / inverse limit
  bool monotone = true;          // dims nondecreasing (Pruefer towers)
};

// Hom(X, -) along the truncation tower S[1] -> S[2] -> ... (Pruefer) or
// ... -> S[-2] -> S[-1] (adic), up to stage `cap`.
inline StabilizationReport truncation_limit(int d, tube::Uniserial x, const Tower& tower, std::int64_t cap) {
  if (cap < x.len + 2 * d) {
    throw CapTooSmall("cap " + std::to_string(cap) + " below X.len + 2d = " + std::to_string(x.len + 2 * d));
  }
  StabilizationReport rep;
  const CyclicRep xr = build_indecomposable(d, x.socle, x.len);
  std::vector<std::vector<RepMorphism>> homs;
  for (std::int64_t m = 1; m <= cap; ++m) {
    const auto y = tower.stage(d, m);
    homs.push_back(hom_basis(xr, build_indecomposable(d, y.socle, y.len)));
    rep.dims.push_back(static_cast<std::int64_t>(homs.back().size()));
  }
  for (std::int64_t m = 1; m < cap; ++m) {
    const auto lo = tower.stage(d, m);
    const auto hi = tower.stage(d, m + 1);
    if (tower.kind == TowerKind::Pruefer) {
      rep.transition_ranks.push_back(postcompose_rank(homs[m - 1], shift_map(d, lo, hi, 0)));
    } else {
      rep.transition_ranks.push_back(postcompose_rank(homs[m], shift_map(d, hi, lo, 1)));
    }
  }
  for (std::size_t i = 1; i < rep.dims.size(); ++i) {
    if (rep.dims[i] < rep.dims[i - 1]) rep.monotone = false;
  }
  const auto& watched = tower.kind == TowerKind::Pruefer ? rep.dims : rep.transition_ranks;
  std::size_t from = watched.size() - 1;
  while (from > 0 && watched[from - 1] == watched.back()) --from;
  rep.stable_from = static_cast<std::int64_t>(from) + 1;
  rep.stabilizes = static_cast<std::int64_t>(watched.size()) - static_cast<std::int64_t>(from) >= d;
  if (tower.kind == TowerKind::Pruefer) {
    rep.limit = rep.dims.back();
  } else {
    // Largest stable image: rank of Hom(X, Y_cap) -> Hom(X, Y_k) for stages k
    // at least X.len + d below the cap.
    const auto top_stage = tower.stage(d, cap);
    for (std::int64_t k = 1; k <= cap - x.len - d; ++k) {
      const auto r = postcompose_rank(homs[cap - 1], shift_map(d, top_stage, tower.stage(d, k), cap - k));
      if (r > rep.limit) rep.limit = r;
    }
  }
  return rep;
}

}  // namespace wpl::oracle
