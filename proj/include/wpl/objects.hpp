#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wpl/errors.hpp"
#include "wpl/geometry.hpp"
#include "wpl/ktheory.hpp"
#include "wpl/slope.hpp"
#include "wpl/tube.hpp"

namespace wpl {

// Indecomposable descriptors. Positional data (socle, top) is kept reduced
// modulo the tube rank; see canonical().
struct LineBundle {
  LElement x;  // O(x)
  friend bool operator==(const LineBundle&, const LineBundle&) = default;
  friend auto operator<=>(const LineBundle&, const LineBundle&) = default;
};
struct Tube {
  Slope slope;
  PointId point;
  std::int64_t socle = 0;
  std::int64_t len = 1;
  tube::Uniserial pos() const { return {socle, len}; }
  friend bool operator==(const Tube&, const Tube&) = default;
  friend auto operator<=>(const Tube&, const Tube&) = default;
};
struct Pruefer {
  Slope slope;
  PointId point;
  std::int64_t socle = 0;
  friend bool operator==(const Pruefer&, const Pruefer&) = default;
  friend auto operator<=>(const Pruefer&, const Pruefer&) = default;
};
struct Adic {
  Slope slope;
  PointId point;
  std::int64_t top = 0;
  friend bool operator==(const Adic&, const Adic&) = default;
  friend auto operator<=>(const Adic&, const Adic&) = default;
};
struct Generic {
  Slope slope;
  friend bool operator==(const Generic&, const Generic&) = default;
  friend auto operator<=>(const Generic&, const Generic&) = default;
};

using IndecDescriptor = std::variant<LineBundle, Tube, Pruefer, Adic, Generic>;

inline bool is_coherent(const IndecDescriptor& x) {
  return std::holds_alternative<LineBundle>(x) || std::holds_alternative<Tube>(x);
}

inline Slope slope_of(const Geometry& g, const IndecDescriptor& x) {
  return std::visit(
      [&](const auto& v) -> Slope {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LineBundle>) {
          return Slope::integer(g.degree(g.normalize(v.x)));
        } else {
          return v.slope;
        }
      },
      x);
}

// Validates points and reduces socle/top indices modulo the tube rank.
inline IndecDescriptor canonical(const Geometry& g, IndecDescriptor x) {
  auto check_point = [&](const PointId& pt) {
    if (!g.has_point(pt)) throw UnknownTube("unknown tube '" + point_name(pt) + "'");
    return static_cast<std::int64_t>(g.tube_rank(pt));
  };
  std::visit(
      [&](auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LineBundle>) {
          v.x = g.normalize(v.x);
        } else if constexpr (std::is_same_v<V, Tube>) {
          if (v.len < 1) throw InvalidObject("tube object length must be positive");
          v.socle = tube::mod(v.socle, check_point(v.point));
        } else if constexpr (std::is_same_v<V, Pruefer>) {
          v.socle = tube::mod(v.socle, check_point(v.point));
        } else if constexpr (std::is_same_v<V, Adic>) {
          v.top = tube::mod(v.top, check_point(v.point));
        }
      },
      x);
  return x;
}

// K-class where one is available: line bundles and tube objects of slope
// infinity.
inline std::optional<KClass> class_of(const EulerTable& t, const IndecDescriptor& x) {
  if (const auto* lb = std::get_if<LineBundle>(&x)) return t.line_bundle(lb->x);
  if (const auto* tb = std::get_if<Tube>(&x); tb && tb->slope.is_infinite()) {
    return t.tube_object(tb->point, tb->socle, tb->len);
  }
  return std::nullopt;
}

// Finite formal direct sum of indecomposables. Normal form: summands sorted,
// equal descriptors merged, multiplicities positive.
class FormalObject {
 public:
  using Summand = std::pair<IndecDescriptor, std::int64_t>;

  FormalObject() = default;
  FormalObject(IndecDescriptor x, std::int64_t mult = 1) { add(std::move(x), mult); }  // NOLINT

  FormalObject& add(IndecDescriptor x, std::int64_t mult = 1) {
    if (mult < 0) throw InvalidObject("negative multiplicity");
    if (mult == 0) return *this;
    auto it = std::lower_bound(s_.begin(), s_.end(), x,
                               [](const Summand& a, const IndecDescriptor& b) { return a.first < b; });
    if (it != s_.end() && it->first == x) {
      it->second += mult;
    } else {
      s_.insert(it, {std::move(x), mult});
    }
    return *this;
  }
  FormalObject& operator+=(const FormalObject& o) {
    for (const auto& [x, m] : o.s_) add(x, m);
    return *this;
  }
  friend FormalObject operator+(FormalObject a, const FormalObject& b) { return a += b; }

  const std::vector<Summand>& summands() const { return s_; }
  bool empty() const { return s_.empty(); }
  std::int64_t total_multiplicity() const {
    std::int64_t n = 0;
    for (const auto& s : s_) n += s.second;
    return n;
  }
  friend bool operator==(const FormalObject&, const FormalObject&) = default;

 private:
  std::vector<Summand> s_;
};

// Sum of the K-classes of all summands, if every summand has one.
inline std::optional<KClass> class_of(const EulerTable& t, const FormalObject& x) {
  KClass sum = t.zero();
  for (const auto& [d, m] : x.summands()) {
    auto c = class_of(t, d);
    if (!c) return std::nullopt;
    sum += m * *c;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Printing in the calculator's object grammar.

inline std::string format_lelement(const LElement& x) {
  std::string s;
  auto term = [&](std::int64_t coef, const std::string& sym) {
    if (coef == 0) return;
    if (coef < 0) {
      s += "-";
    } else if (!s.empty()) {
      s += "+";
    }
    const std::int64_t a = coef < 0 ? -coef : coef;
    if (a != 1) s += std::to_string(a);
    s += sym;
  };
  term(x.l, "c");
  for (std::size_t i = 0; i < x.lambda.size(); ++i) term(x.lambda[i], "x" + std::to_string(i + 1));
  return s.empty() ? "0" : s;
}

inline std::string format(const IndecDescriptor& x) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LineBundle>) {
          return "O(" + format_lelement(v.x) + ")";
        } else if constexpr (std::is_same_v<V, Tube>) {
          return "T(" + v.slope.str() + ";" + point_name(v.point) + ";" + std::to_string(v.socle) + ";" +
                 std::to_string(v.len) + ")";
        } else if constexpr (std::is_same_v<V, Pruefer>) {
          return "prufer(" + v.slope.str() + ";" + point_name(v.point) + ";" + std::to_string(v.socle) + ")";
        } else if constexpr (std::is_same_v<V, Adic>) {
          return "adic(" + v.slope.str() + ";" + point_name(v.point) + ";" + std::to_string(v.top) + ")";
        } else {
          return "generic(" + v.slope.str() + ")";
        }
      },
      x);
}

inline std::string format(const FormalObject& x) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& [d, m] : x.summands()) {
    if (!s.empty()) s += " + ";
    if (m != 1) s += std::to_string(m) + "*";
    s += format(d);
  }
  return s;
}

}  // namespace wpl
