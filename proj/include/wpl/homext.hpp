#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpl/errors.hpp"
#include "wpl/geometry.hpp"
#include "wpl/ktheory.hpp"
#include "wpl/objects.hpp"
#include "wpl/slope.hpp"
#include "wpl/tube.hpp"

namespace wpl {

// Dimension information over k, optionally with a length over End(G_q).
class DimInfo {
 public:
  enum class Kind { Zero, Nonzero, Exact, Infinite, Unknown };

  static DimInfo zero() { return DimInfo(Kind::Zero, 0); }
  static DimInfo nonzero() { return DimInfo(Kind::Nonzero, 0); }
  static DimInfo infinite() { return DimInfo(Kind::Infinite, 0); }
  static DimInfo unknown() { return DimInfo(Kind::Unknown, 0); }
  static DimInfo exact(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("negative dimension");
    return n == 0 ? zero() : DimInfo(Kind::Exact, n);
  }

  DimInfo with_endolength(std::int64_t e) const {
    DimInfo d = *this;
    d.endo_ = e;
    return d;
  }

  Kind kind() const { return kind_; }
  std::int64_t value() const { return value_; }
  // Zero always has endolength 0.
  std::optional<std::int64_t> endolength() const {
    if (kind_ == Kind::Zero) return 0;
    return endo_;
  }
  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_unknown() const { return kind_ == Kind::Unknown; }
  bool is_nonzero() const {
    return kind_ == Kind::Nonzero || kind_ == Kind::Exact || kind_ == Kind::Infinite;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::Zero: return "0";
      case Kind::Exact: return std::to_string(value_);
      case Kind::Nonzero: return "nonzero";
      case Kind::Infinite: return "infinite";
      case Kind::Unknown: return "unknown";
    }
    return "?";
  }
  static std::string kind_name(Kind k) {
    switch (k) {
      case Kind::Zero: return "zero";
      case Kind::Exact: return "exact";
      case Kind::Nonzero: return "nonzero";
      case Kind::Infinite: return "infinite";
      case Kind::Unknown: return "unknown";
    }
    return "?";
  }

  DimInfo scaled(std::int64_t m) const {
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    if (m == 0) return zero();
    DimInfo d = *this;
    if (kind_ == Kind::Exact) d.value_ *= m;
    if (endo_) d.endo_ = *endo_ * m;
    return d;
  }

  friend DimInfo operator+(const DimInfo& a, const DimInfo& b) {
    DimInfo r = combine(a, b);
    const auto ea = a.endolength();
    const auto eb = b.endolength();
    if (r.kind_ != Kind::Zero && ea && eb) r.endo_ = *ea + *eb;
    return r;
  }
  friend bool operator==(const DimInfo&, const DimInfo&) = default;

 private:
  DimInfo(Kind k, std::int64_t v) : kind_(k), value_(v) {}

  static DimInfo combine(const DimInfo& a, const DimInfo& b) {
    if (a.kind_ == Kind::Infinite || b.kind_ == Kind::Infinite) return infinite();
    const bool exact_a = a.kind_ == Kind::Zero || a.kind_ == Kind::Exact;
    const bool exact_b = b.kind_ == Kind::Zero || b.kind_ == Kind::Exact;
    if (exact_a && exact_b) return exact(a.value_ + b.value_);
    if (a.is_nonzero() || b.is_nonzero()) return nonzero();
    return unknown();
  }

  Kind kind_;
  std::int64_t value_;
  std::optional<std::int64_t> endo_;
};

struct HomExtReport {
  DimInfo hom = DimInfo::zero();
  DimInfo ext1 = DimInfo::zero();
  std::vector<std::string> citations;  // sorted, unique

  void cite(const std::vector<std::string>& ids) {
    for (const auto& c : ids) {
      auto it = std::lower_bound(citations.begin(), citations.end(), c);
      if (it == citations.end() || *it != c) citations.insert(it, c);
    }
  }
  bool any_unknown() const { return hom.is_unknown() || ext1.is_unknown(); }
};

// A single verdict with the rules that produced it.
struct Verdict {
  DimInfo dim = DimInfo::unknown();
  std::vector<std::string> cite;
};

inline Verdict verdict(DimInfo d, std::initializer_list<const char*> ids) {
  Verdict v{d, {}};
  for (const char* s : ids) v.cite.emplace_back(s);
  return v;
}

// Rule engine for Hom and Ext^1 between indecomposables, extended additively
// to formal direct sums. Holds a reference to the table.
class HomExt {
 public:
  explicit HomExt(const EulerTable& table) : t_(table), g_(table.geometry()) {}

  const EulerTable& table() const { return t_; }

  struct Cell {
    Verdict hom;
    Verdict ext;
  };

  Cell cell(const IndecDescriptor& x, const IndecDescriptor& y) const {
    const bool cx = is_coherent(x);
    const bool cy = is_coherent(y);
    if (cx && cy) return coherent_pair(x, y);
    if (cx) return coherent_to_limit(x, y);
    if (cy) return limit_to_coherent(x, y);
    return limit_pair(x, y);
  }

  HomExtReport operator()(const IndecDescriptor& x, const IndecDescriptor& y) const {
    const Cell c = cell(canonical(g_, x), canonical(g_, y));
    HomExtReport r{c.hom.dim, c.ext.dim, {}};
    r.cite(c.hom.cite);
    r.cite(c.ext.cite);
    return r;
  }

  HomExtReport operator()(const FormalObject& x, const FormalObject& y) const {
    HomExtReport r;
    for (const auto& [dx, mx] : x.summands()) {
      for (const auto& [dy, my] : y.summands()) {
        const HomExtReport p = (*this)(dx, dy);
        r.hom = r.hom + p.hom.scaled(mx * my);
        r.ext1 = r.ext1 + p.ext1.scaled(mx * my);
        r.cite(p.citations);
      }
    }
    if (r.citations.empty()) r.cite({"ADD"});
    return r;
  }

  // tau^{-1} of a coherent indecomposable.
  IndecDescriptor tau_inverse(const IndecDescriptor& x) const {
    if (const auto* lb = std::get_if<LineBundle>(&x)) return LineBundle{g_.sub(lb->x, g_.omega())};
    if (const auto* tb = std::get_if<Tube>(&x)) {
      Tube r = *tb;
      r.socle = tube::mod(r.socle + 1, g_.tube_rank(r.point));
      return r;
    }
    throw NotCoherent("tau^{-1} is only tracked on coherent objects");
  }

 private:
  // d rk - r deg for q = d/r (q = inf reads as (1, 0)).
  std::int64_t linear_form(const Slope& q, const KClass& e) const {
    return q.num() * t_.rank(e) - q.den() * t_.degree(e);
  }

  Cell coherent_pair(const IndecDescriptor& x, const IndecDescriptor& y) const {
    const Slope a = slope_of(g_, x);
    const Slope b = slope_of(g_, y);
    const auto* lx = std::get_if<LineBundle>(&x);
    const auto* ly = std::get_if<LineBundle>(&y);
    const auto* tx = std::get_if<Tube>(&x);
    const auto* ty = std::get_if<Tube>(&y);

    if (lx && ly) {
      return {verdict(DimInfo::exact(g_.sections(g_.sub(ly->x, lx->x))), {"LB"}),
              verdict(DimInfo::exact(g_.sections(g_.sub(g_.add(lx->x, g_.omega()), ly->x))), {"LB", "P2.1"})};
    }
    if (tx && ty && a == b) {
      if (tx->point != ty->point) {
        return {verdict(DimInfo::zero(), {"P2.4i"}), verdict(DimInfo::zero(), {"P2.4i"})};
      }
      const auto d = g_.tube_rank(tx->point);
      return {verdict(DimInfo::exact(tube::hom_dim(d, tx->pos(), ty->pos())), {"P2.4i", "TUBE"}),
              verdict(DimInfo::exact(tube::ext_dim(d, tx->pos(), ty->pos())), {"P2.4i", "TUBE", "P2.1"})};
    }
    const auto kx = class_of(t_, x);
    const auto ky = class_of(t_, y);
    if (kx && ky) {
      // A line bundle against a slope-infinity tube object: one side vanishes
      // by the direction rule and the Euler form gives the other.
      const std::int64_t e = t_.euler(*kx, *ky);
      if (a < b) {
        return {verdict(DimInfo::exact(e), {"EULER", "P2.4iii", "L3.3"}),
                verdict(DimInfo::zero(), {"P2.4iii", "L3.3"})};
      }
      return {verdict(DimInfo::zero(), {"P2.4iii"}), verdict(DimInfo::exact(-e), {"EULER", "P2.4iii"})};
    }
    if (a > b) return {verdict(DimInfo::zero(), {"P2.4iii"}), verdict(DimInfo::unknown(), {})};
    if (a < b) return {verdict(DimInfo::unknown(), {}), verdict(DimInfo::zero(), {"P2.4iii", "L3.3"})};
    return {verdict(DimInfo::unknown(), {}), verdict(DimInfo::unknown(), {})};
  }

  Cell coherent_to_limit(const IndecDescriptor& e, const IndecDescriptor& y) const {
    const Slope a = slope_of(g_, e);
    const auto* te = std::get_if<Tube>(&e);

    if (const auto* p = std::get_if<Pruefer>(&y)) {
      const Slope q = p->slope;
      if (a < q) return {verdict(DimInfo::infinite(), {"P3.4i"}), verdict(DimInfo::zero(), {"P3.4i"})};
      if (a > q) return {verdict(DimInfo::zero(), {"P3.4iii"}), verdict(DimInfo::nonzero(), {"P3.4iii"})};
      if (!te) return {verdict(DimInfo::unknown(), {}), verdict(DimInfo::zero(), {"P3.4ii"})};
      if (te->point != p->point) {
        return {verdict(DimInfo::zero(), {"P3.4ii"}), verdict(DimInfo::zero(), {"P3.4ii"})};
      }
      const auto d = g_.tube_rank(p->point);
      return {verdict(DimInfo::exact(tube::hom_to_pruefer(d, te->pos(), p->socle)), {"P3.4ii", "L3.2i"}),
              verdict(DimInfo::zero(), {"P3.4ii", "L3.2i"})};
    }

    if (const auto* ad = std::get_if<Adic>(&y)) {
      const Slope q = ad->slope;
      if (a < q) return {verdict(DimInfo::infinite(), {"P3.5i"}), verdict(DimInfo::zero(), {"P3.5i"})};
      if (a > q) return {verdict(DimInfo::zero(), {"P3.5iii"}), verdict(DimInfo::nonzero(), {"P3.5iii"})};
      if (!te) return {verdict(DimInfo::zero(), {"P3.5ii"}), verdict(DimInfo::unknown(), {})};
      if (te->point != ad->point) {
        return {verdict(DimInfo::zero(), {"P3.5ii"}), verdict(DimInfo::zero(), {"P3.5ii"})};
      }
      const auto d = g_.tube_rank(ad->point);
      const Verdict hom = verdict(DimInfo::zero(), {"P3.5ii", "L3.2i"});
      if (te->len == 1) {
        return {hom, verdict(DimInfo::exact(tube::ext_to_adic(d, te->pos(), ad->top)), {"P3.5ii"})};
      }
      if (tube::adic_ext_witnesses(d, te->pos(), ad->top) == 0) {
        return {hom, verdict(DimInfo::zero(), {"L3.2ii"})};
      }
      return {hom, verdict(DimInfo::nonzero(), {"L3.3"})};
    }

    const Slope q = std::get<Generic>(y).slope;
    const auto k = class_of(t_, e);
    if (a < q) {
      Verdict h = verdict(DimInfo::nonzero(), {"L4.4i"});
      if (k) {
        h.dim = h.dim.with_endolength(linear_form(q, *k));
        h.cite.emplace_back("LF");
      }
      return {h, verdict(DimInfo::zero(), {"L4.4i"})};
    }
    if (a == q) return {verdict(DimInfo::zero(), {"L4.4ii"}), verdict(DimInfo::zero(), {"L4.4ii"})};
    Verdict x = verdict(DimInfo::nonzero(), {"L4.4iii"});
    if (k) {
      x.dim = x.dim.with_endolength(-linear_form(q, *k));
      x.cite.emplace_back("LF");
    }
    return {verdict(DimInfo::zero(), {"L4.4iii"}), x};
  }

  // Hom(Y, E) = D Ext^1(tau^{-1} E, Y); Ext^1(Y, E) is not tabulated.
  Cell limit_to_coherent(const IndecDescriptor& y, const IndecDescriptor& e) const {
    Verdict h = coherent_to_limit(tau_inverse(e), y).ext;
    if (!h.dim.is_unknown()) {
      h.dim = h.dim.kind() == DimInfo::Kind::Exact ? DimInfo::exact(h.dim.value())
              : h.dim.is_zero()                   ? DimInfo::zero()
                                                  : DimInfo::nonzero();
      h.cite.emplace_back("L3.3");
    }
    return {h, verdict(DimInfo::unknown(), {})};
  }

  Cell limit_pair(const IndecDescriptor& x, const IndecDescriptor& y) const {
    const Slope a = slope_of(g_, x);
    const Slope b = slope_of(g_, y);
    const Verdict unknown = verdict(DimInfo::unknown(), {});
    auto z = [](std::initializer_list<const char*> ids) { return verdict(DimInfo::zero(), ids); };
    auto nz = [](std::initializer_list<const char*> ids) { return verdict(DimInfo::nonzero(), ids); };

    // Pruefer-Pruefer and adic-adic share one table.
    auto same_kind = [&](const PointId& px, const PointId& py, const char* lt, const char* eq,
                         const char* gt) -> Verdict {
      if (a < b) return verdict(DimInfo::nonzero(), {lt});
      if (a > b) return verdict(DimInfo::zero(), {gt});
      return px == py ? verdict(DimInfo::nonzero(), {eq}) : verdict(DimInfo::zero(), {eq});
    };

    const auto* px = std::get_if<Pruefer>(&x);
    const auto* py = std::get_if<Pruefer>(&y);
    const auto* ax = std::get_if<Adic>(&x);
    const auto* ay = std::get_if<Adic>(&y);
    const bool gx = std::holds_alternative<Generic>(x);
    const bool gy = std::holds_alternative<Generic>(y);

    if (px && py) return {same_kind(px->point, py->point, "C3.8i", "C3.8ii", "C3.8iii"), unknown};
    if (ax && ay) {
      Verdict h = same_kind(ax->point, ay->point, "R3.9i", "R3.9ii", "R3.9iii");
      return {h, unknown};
    }
    if (px && gy) return {a < b ? nz({"C5.6i"}) : z({"C5.6ii"}), unknown};
    if (gx && py) {
      Verdict e = a == b ? z({"T6.4"}) : unknown;
      return {b < a ? z({"C5.6i"}) : nz({"C5.6ii"}), e};
    }
    if (ax && gy) return {a <= b ? nz({"C5.7i"}) : z({"C5.7ii"}), unknown};
    if (gx && ay) return {b <= a ? z({"C5.7i"}) : nz({"C5.7ii"}), unknown};
    if (gx && gy) {
      if (a == b) return {nz({"END"}), unknown};
      if (a > b) return {z({"COLIM", "L4.4iii"}), unknown};
      return {unknown, unknown};
    }
    // Hom out of a direct limit is the inverse limit of the Homs; an adic
    // sheaf of slope a is a direct limit of coherent sheaves of slope > b
    // whenever a > b.
    if (px && ay) {
      if (a == b) return {z({"COLIM", "P3.5ii"}), unknown};
      if (a > b) return {z({"COLIM", "P3.5iii"}), unknown};
      return {unknown, unknown};
    }
    if (ax && py) {
      if (a > b) return {z({"COLIM", "C5.7ii", "P3.4iii"}), unknown};
      return {unknown, unknown};
    }
    return {unknown, unknown};
  }

  const EulerTable& t_;
  const Geometry& g_;
};

inline HomExtReport hom_ext(const EulerTable& t, const FormalObject& x, const FormalObject& y) {
  return HomExt(t)(x, y);
}

// ---------------------------------------------------------------------------
// Predicates.

enum class Tri { False, True, Unknown };

inline std::string tri_name(Tri t) {
  return t == Tri::True ? "true" : t == Tri::False ? "false" : "unknown";
}

struct SummandVerdict {
  bool value = false;
  std::string citation;
};

inline SummandVerdict torsion_free_summand(const Geometry& g, const IndecDescriptor& x, const Slope& q) {
  const Slope s = slope_of(g, x);
  return std::visit(
      [&](const auto& v) -> SummandVerdict {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LineBundle> || std::is_same_v<V, Tube>) {
          return {s < q, s < q ? "L4.4i" : "D5.1"};
        } else if constexpr (std::is_same_v<V, Pruefer>) {
          return {s < q, s < q ? "P3.4iii" : "P3.4ii"};
        } else if constexpr (std::is_same_v<V, Adic>) {
          return {s <= q, s <= q ? (s == q ? "P3.5ii" : "P3.5iii") : "P3.5i"};
        } else {
          return {s <= q, s <= q ? (s == q ? "L4.4ii" : "L4.4iii") : "L4.4i"};
        }
      },
      x);
}

inline SummandVerdict divisible_summand(const Geometry& g, const IndecDescriptor& x, const Slope& q) {
  const Slope s = slope_of(g, x);
  return std::visit(
      [&](const auto& v) -> SummandVerdict {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LineBundle> || std::is_same_v<V, Tube>) {
          return {q < s, q < s ? "P2.4iii" : "P2.4iv"};
        } else if constexpr (std::is_same_v<V, Pruefer>) {
          if (s == q) return {true, "P3.4ii"};
          return {q < s, q < s ? "P3.4i" : "P3.4iii"};
        } else if constexpr (std::is_same_v<V, Adic>) {
          if (s == q) return {false, "P3.5ii"};
          return {q < s, q < s ? "P3.5i" : "P3.5iii"};
        } else {
          if (s == q) return {true, "L4.4ii"};
          return {q < s, q < s ? "L4.4i" : "L4.4iii"};
        }
      },
      x);
}

// Hom(E, X) = 0 for all coherent E with slope >= q.
inline bool is_q_torsion_free(const Geometry& g, const FormalObject& x, const Slope& q) {
  for (const auto& [d, m] : x.summands()) {
    if (!torsion_free_summand(g, d, q).value) return false;
  }
  return true;
}

// Ext^1(S, X) = 0 for all quasi-simple S of slope q. Every variant is
// tabulated, so Unknown is not produced by the current table.
inline Tri is_q_divisible(const Geometry& g, const FormalObject& x, const Slope& q) {
  for (const auto& [d, m] : x.summands()) {
    if (!divisible_summand(g, d, q).value) return Tri::False;
  }
  return Tri::True;
}

struct PerpReport {
  bool member = false;
  bool slope_matches = false;  // slope(E) == q
  bool agrees = false;         // member <=> slope_matches
  std::string certificate;     // first failing test, empty when member
  std::vector<std::string> citations;
};

// Ext^1(E, S[inf]) = 0 and Hom(E, S[-inf]) = 0 for every quasi-simple S of
// slope q, over every exceptional tube and every declared ordinary point.
inline PerpReport perp_slope_membership(const EulerTable& t, const IndecDescriptor& e_in, const Slope& q) {
  const Geometry& g = t.geometry();
  if (!is_coherent(e_in)) throw NotCoherent("perp membership is defined for coherent objects");
  const IndecDescriptor e = canonical(g, e_in);
  const HomExt engine(t);
  PerpReport r;
  auto pts = g.points();
  // Stand-in for an undeclared ordinary point.
  if (pts.size() == static_cast<std::size_t>(g.t())) pts.emplace_back(Ordinary{"*"});
  for (const auto& pt : pts) {
    const int d = g.has_point(pt) ? g.tube_rank(pt) : 1;
    for (int s = 0; s < d && r.certificate.empty(); ++s) {
      const auto ce = engine.cell(e, Pruefer{q, pt, s});
      const auto ca = engine.cell(e, Adic{q, pt, s});
      for (const auto* c : {&ce.ext.cite, &ca.hom.cite}) {
        for (const auto& id : *c) {
          if (std::find(r.citations.begin(), r.citations.end(), id) == r.citations.end()) r.citations.push_back(id);
        }
      }
      if (!ce.ext.dim.is_zero()) {
        r.certificate = "Ext^1(E, " + format(IndecDescriptor{Pruefer{q, pt, s}}) + ") = " + ce.ext.dim.str();
      } else if (!ca.hom.dim.is_zero()) {
        r.certificate = "Hom(E, " + format(IndecDescriptor{Adic{q, pt, s}}) + ") = " + ca.hom.dim.str();
      }
    }
    if (!r.certificate.empty()) break;
  }
  r.member = r.certificate.empty();
  r.slope_matches = slope_of(g, e) == q;
  r.agrees = r.member == r.slope_matches;
  r.citations.emplace_back("C3.6");
  return r;
}

inline std::string pure_injectivity_status(const IndecDescriptor& x) {
  if (std::holds_alternative<Generic>(x) || std::holds_alternative<Pruefer>(x)) return "sigma-pure-injective";
  if (std::holds_alternative<Adic>(x)) return "pure-injective";
  return "coherent";
}

struct ClassificationReport {
  enum class Kind { GenericSum, WqNormalForm, NotInWq };
  Kind kind = Kind::NotInWq;
  FormalObject torsion_part;  // tW: slope-q Pruefer summands
  std::int64_t generic_multiplicity = 0;
  std::string certificate;
  std::vector<std::string> citations;
};

inline std::string classification_name(ClassificationReport::Kind k) {
  switch (k) {
    case ClassificationReport::Kind::GenericSum: return "generic-sum";
    case ClassificationReport::Kind::WqNormalForm: return "wq-normal-form";
    case ClassificationReport::Kind::NotInWq: return "not-in-wq";
  }
  return "?";
}

inline ClassificationReport classify_torsionfree_divisible(const Geometry& g, const FormalObject& x,
                                                           const Slope& q) {
  ClassificationReport r;
  for (const auto& [d, m] : x.summands()) {
    const auto div = divisible_summand(g, d, q);
    if (!div.value) {
      r.certificate = format(d) + " is not q-divisible (" + div.citation + ")";
      r.citations = {"D5.1", div.citation};
      return r;
    }
    // Being q'-torsion-free for every q' > q leaves only slope-q Pruefer and
    // generic summands among the q-divisible ones.
    const Slope s = slope_of(g, d);
    const bool pruefer_q = std::holds_alternative<Pruefer>(d) && s == q;
    const bool generic_q = std::holds_alternative<Generic>(d) && s == q;
    if (!pruefer_q && !generic_q) {
      r.certificate = format(d) + " is not q'-torsion-free for some q' > q";
      r.citations = {"D5.1", torsion_free_summand(g, d, s).citation};
      return r;
    }
    if (pruefer_q) {
      r.torsion_part.add(d, m);
    } else {
      r.generic_multiplicity += m;
    }
  }
  if (r.torsion_part.empty()) {
    r.kind = ClassificationReport::Kind::GenericSum;
    r.citations = {"T5.2"};
  } else {
    r.kind = ClassificationReport::Kind::WqNormalForm;
    r.citations = {"T6.4"};
  }
  return r;
}

struct SplitResult {
  FormalObject torsion;
  FormalObject free;
};

// Summand-wise split along (Q_q, C_q), or (Q'_q, C'_q) when weak.
inline SplitResult torsion_pair_split(const Geometry& g, const FormalObject& x, const Slope& q, bool weak) {
  SplitResult r;
  for (const auto& [d, m] : x.summands()) {
    const Slope s = slope_of(g, d);
    bool torsion = false;
    if (std::holds_alternative<Adic>(d) || std::holds_alternative<Generic>(d)) {
      torsion = q < s;
    } else {
      torsion = weak ? q <= s : q < s;
    }
    (torsion ? r.torsion : r.free).add(d, m);
  }
  return r;
}

// Relabels a slope-infinity tube, Pruefer, adic or generic descriptor to
// slope q, keeping its tube data.
inline IndecDescriptor transport_chart(const IndecDescriptor& x, const Slope& q) {
  if (std::holds_alternative<LineBundle>(x)) throw NotInChart("line bundles do not have slope infinity");
  IndecDescriptor y = x;
  std::visit(
      [&](auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (!std::is_same_v<V, LineBundle>) {
          if (!v.slope.is_infinite()) throw NotInChart("object " + format(x) + " does not have slope infinity");
          v.slope = q;
        }
      },
      y);
  return y;
}

inline IndecDescriptor transport_back(const IndecDescriptor& x, const Slope& q) {
  if (std::holds_alternative<LineBundle>(x)) throw NotInChart("line bundles are not in the chart image");
  IndecDescriptor y = x;
  std::visit(
      [&](auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (!std::is_same_v<V, LineBundle>) {
          if (v.slope != q) throw NotInChart("object " + format(x) + " does not have slope " + q.str());
          v.slope = Slope::infinity();
        }
      },
      y);
  return y;
}

}  // namespace wpl
