#pragma once

#include <cstdint>
#include <vector>

#include "wpl/errors.hpp"

// Combinatorics of a stable tube of rank d. An indecomposable is fixed by its
// socle index (mod d) and its length; its quasi-composition factors from the
// socle upward are socle, socle+1, ..., socle+len-1 (mod d), and tau lowers
// every index by one.
namespace wpl::tube {

inline std::int64_t mod(std::int64_t a, std::int64_t d) {
  const std::int64_t r = a % d;
  return r < 0 ? r + d : r;
}

struct Uniserial {
  std::int64_t socle = 0;
  std::int64_t len = 1;

  std::int64_t top(std::int64_t d) const { return mod(socle + len - 1, d); }
  Uniserial reduced(std::int64_t d) const { return {mod(socle, d), len}; }
  friend bool operator==(const Uniserial&, const Uniserial&) = default;
  friend auto operator<=>(const Uniserial&, const Uniserial&) = default;
};

// The object of length len whose top is `top`, i.e. S[-len] for S = top.
inline Uniserial with_top(std::int64_t d, std::int64_t top, std::int64_t len) {
  return {mod(top - len + 1, d), len};
}

inline Uniserial tau(std::int64_t d, Uniserial x) { return {mod(x.socle - 1, d), x.len}; }
inline Uniserial tau_inv(std::int64_t d, Uniserial x) { return {mod(x.socle + 1, d), x.len}; }

// Number of j in 1..min(len X, len Y) with X.socle + X.len - j = Y.socle (mod d):
// the quotients of X of length j that embed in Y.
inline std::int64_t hom_dim(std::int64_t d, Uniserial x, Uniserial y) {
  std::int64_t n = 0;
  const std::int64_t m = x.len < y.len ? x.len : y.len;
  for (std::int64_t j = 1; j <= m; ++j) {
    if (mod(x.socle + x.len - j - y.socle, d) == 0) ++n;
  }
  return n;
}

// Serre duality inside the tube: Ext^1(X, Y) = D Hom(Y, tau X).
inline std::int64_t ext_dim(std::int64_t d, Uniserial x, Uniserial y) {
  return hom_dim(d, y, tau(d, x));
}

struct ArSequence {
  Uniserial start;               // tau X
  std::vector<Uniserial> middle;  // one or two summands
  Uniserial end;                 // X
};

// 0 -> tau X -> (socle-1, len+1) + (socle, len-1) -> X -> 0
inline ArSequence ar_sequence(std::int64_t d, Uniserial x) {
  ArSequence s{tau(d, x), {}, x.reduced(d)};
  s.middle.push_back({mod(x.socle - 1, d), x.len + 1});
  if (x.len > 1) s.middle.push_back({mod(x.socle, d), x.len - 1});
  return s;
}

// dim Hom(X, S[inf]) for the Pruefer object with the given socle: the stable
// value of hom_dim(X, S[m]) for m >= X.len.
inline std::int64_t hom_to_pruefer(std::int64_t d, Uniserial x, std::int64_t pruefer_socle) {
  std::int64_t n = 0;
  for (std::int64_t j = 1; j <= x.len; ++j) {
    if (mod(x.socle + x.len - j - pruefer_socle, d) == 0) ++n;
  }
  return n;
}

// dim Ext^1(E, S[-inf]) for a quasi-simple E and the adic object with top
// `adic_top`: one exactly when E = tau^{-1} of the top.
inline std::int64_t ext_to_adic(std::int64_t d, Uniserial e, std::int64_t adic_top) {
  if (e.len != 1) {
    throw LengthNotSupported("exact Ext^1 into an adic object is only known for quasi-simples");
  }
  return mod(e.socle - adic_top - 1, d) == 0 ? 1 : 0;
}

// Number of j in 1..X.len with Hom(S[-j], tau X) != 0 along the adic tower
// with top `adic_top`; zero means Ext^1(X, S[-inf]) vanishes.
inline std::int64_t adic_ext_witnesses(std::int64_t d, Uniserial x, std::int64_t adic_top) {
  std::int64_t n = 0;
  for (std::int64_t j = 1; j <= x.len; ++j) {
    if (mod(adic_top - j + 1 - (x.socle - 1), d) == 0) ++n;
  }
  return n;
}

}  // namespace wpl::tube
