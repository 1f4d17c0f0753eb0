#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpl/errors.hpp"
#include "wpl/geometry.hpp"
#include "wpl/homext.hpp"
#include "wpl/ktheory.hpp"
#include "wpl/objects.hpp"
#include "wpl/slope.hpp"
#include "wpl/tube.hpp"

namespace wpl {

// Multiplicities indexed by quasi-simples of one slope: exceptional entries
// per (arm, socle), a default for every ordinary point, and overrides for
// declared labels. `symbolic` marks an unspecified family.
struct MultiplicityMap {
  std::map<std::pair<int, std::int64_t>, std::int64_t> exceptional;
  std::int64_t ordinary_default = 0;
  std::map<std::string, std::int64_t> ordinary_overrides;
  bool symbolic = false;

  std::int64_t at(const PointId& pt, std::int64_t socle) const {
    if (const auto* e = std::get_if<Exceptional>(&pt)) {
      auto it = exceptional.find({e->arm, socle});
      return it == exceptional.end() ? 0 : it->second;
    }
    auto it = ordinary_overrides.find(std::get<Ordinary>(pt).label);
    return it == ordinary_overrides.end() ? ordinary_default : it->second;
  }
  friend bool operator==(const MultiplicityMap&, const MultiplicityMap&) = default;
};

// Infinite or unspecified direct sums that a FormalObject cannot hold.
struct SymbolicPart {
  enum class Kind { GenericSum, PrueferFamily };
  Kind kind = Kind::GenericSum;
  Slope slope;
  MultiplicityMap multiplicities;  // PrueferFamily only
};

struct Term {
  FormalObject concrete;
  std::vector<SymbolicPart> symbolic;

  Term() = default;
  Term(FormalObject f) : concrete(std::move(f)) {}  // NOLINT
  bool is_concrete() const { return symbolic.empty(); }
  bool empty() const { return concrete.empty() && symbolic.empty(); }
};

inline std::string format(const Term& t) {
  std::string s = t.concrete.empty() ? "" : format(t.concrete);
  for (const auto& p : t.symbolic) {
    if (!s.empty()) s += " + ";
    if (p.kind == SymbolicPart::Kind::GenericSum) {
      s += "(+)generic(" + p.slope.str() + ")";
    } else {
      s += "(+)_S (+)_{e_S} prufer(" + p.slope.str() + ";S)";
    }
  }
  return s.empty() ? "0" : s;
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  std::string citation;
};

struct ExactSequence {
  std::string kind;
  Term sub;
  Term mid;
  Term quot;
  std::optional<Slope> slope;  // the q of the pattern, where there is one
  std::vector<Check> checks;
  std::vector<std::string> citations;

  bool verified() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
  const MultiplicityMap* multiplicities() const {
    for (const auto* t : {&mid, &quot}) {
      for (const auto& p : t->symbolic) {
        if (p.kind == SymbolicPart::Kind::PrueferFamily) return &p.multiplicities;
      }
    }
    return nullptr;
  }
};

inline std::string format(const ExactSequence& s) {
  return "0 -> " + format(s.sub) + " -> " + format(s.mid) + " -> " + format(s.quot) + " -> 0";
}

namespace detail {

inline const IndecDescriptor* single(const Term& t) {
  if (!t.is_concrete() || t.concrete.summands().size() != 1) return nullptr;
  if (t.concrete.summands().front().second != 1) return nullptr;
  return &t.concrete.summands().front().first;
}

// Class in the slope-infinity chart of a tube object, or of the first `level`
// layers of a Pruefer / adic object.
inline std::optional<KClass> chart_class(const EulerTable& t, const IndecDescriptor& x, std::int64_t level) {
  const Geometry& g = t.geometry();
  if (const auto* tb = std::get_if<Tube>(&x)) return t.tube_object(tb->point, tb->socle, tb->len);
  if (const auto* p = std::get_if<Pruefer>(&x)) return t.tube_object(p->point, p->socle, level);
  if (const auto* a = std::get_if<Adic>(&x)) {
    const auto u = tube::with_top(g.tube_rank(a->point), a->top, level);
    return t.tube_object(a->point, u.socle, u.len);
  }
  return std::nullopt;
}

// Class of a term: the true class when every summand has one, otherwise the
// slope-infinity chart class when every summand is a tube object.
inline std::optional<KClass> term_class(const EulerTable& t, const FormalObject& x, bool chart) {
  KClass sum = t.zero();
  for (const auto& [d, m] : x.summands()) {
    std::optional<KClass> c;
    if (chart) {
      if (std::holds_alternative<Tube>(d)) c = chart_class(t, d, 0);
    } else {
      c = class_of(t, d);
    }
    if (!c) return std::nullopt;
    sum += m * *c;
  }
  return sum;
}

inline int tube_rank_of(const Geometry& g, const IndecDescriptor& x) {
  return std::visit(
      [&](const auto& v) -> int {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, Tube> || std::is_same_v<V, Pruefer> || std::is_same_v<V, Adic>) {
          return g.tube_rank(v.point);
        } else {
          return 1;
        }
      },
      x);
}

inline void tag_check(std::vector<Check>& out, const Geometry& g, const Term& term, const Slope& q,
                      const std::string& which, bool divisible, const std::string& citation) {
  if (!term.is_concrete() && term.concrete.empty()) {
    bool ok = true;
    for (const auto& p : term.symbolic) {
      ok = ok && p.slope == q;
    }
    out.push_back({which + (divisible ? " q-divisible" : " q-torsion-free"), ok, "symbolic slope-q family",
                   citation});
    return;
  }
  const bool v = divisible ? is_q_divisible(g, term.concrete, q) == Tri::True
                           : is_q_torsion_free(g, term.concrete, q);
  out.push_back({which + (divisible ? " q-divisible" : " q-torsion-free"), v, format(term.concrete), citation});
}

}  // namespace detail

inline constexpr int kTruncationPeriods = 10;

// Runs every check that applies to the sequence kind.
inline std::vector<Check> verify_sequence(const EulerTable& t, const ExactSequence& s) {
  const Geometry& g = t.geometry();
  std::vector<Check> out;

  if (s.sub.empty() && s.mid.empty() && s.quot.empty()) {
    out.push_back({"class additivity", true, "zero sequence", "EULER"});
    return out;
  }

  // Class additivity when every term has a class in the slope-infinity chart.
  if (s.sub.is_concrete() && s.mid.is_concrete() && s.quot.is_concrete()) {
    for (const bool chart : {false, true}) {
      const auto a = detail::term_class(t, s.sub.concrete, chart);
      const auto b = detail::term_class(t, s.mid.concrete, chart);
      const auto c = detail::term_class(t, s.quot.concrete, chart);
      if (a && b && c) {
        out.push_back({"class additivity", *a + *c == *b,
                       "[sub] + [quot] = " + (*a + *c).str() + ", [mid] = " + b->str(), "EULER"});
        break;
      }
    }
  }

  const bool pruefer_kind = s.kind == "T5.3a" || s.kind == "T5.3b";
  const bool adic_kind = s.kind == "T5.4a" || s.kind == "T5.4b";
  if (pruefer_kind || adic_kind) {
    const auto* sub = detail::single(s.sub);
    const auto* mid = detail::single(s.mid);
    const auto* quot = detail::single(s.quot);
    bool shape = sub && mid && quot;
    const IndecDescriptor* coh = pruefer_kind ? sub : quot;
    const IndecDescriptor* lim = pruefer_kind ? quot : sub;
    if (shape) {
      shape = std::holds_alternative<Tube>(*coh) &&
              (pruefer_kind ? std::holds_alternative<Pruefer>(*mid) && std::holds_alternative<Pruefer>(*lim)
                            : std::holds_alternative<Adic>(*mid) && std::holds_alternative<Adic>(*lim));
    }
    out.push_back({"term shape", shape, pruefer_kind ? "coherent -> Pruefer -> Pruefer" : "adic -> adic -> coherent",
                   pruefer_kind ? "T5.3" : "T5.4"});
    if (!shape) return out;

    const std::int64_t d = detail::tube_rank_of(g, *mid);
    const std::int64_t len = std::get<Tube>(*coh).len;
    const auto kc = *detail::chart_class(t, *coh, 0);
    bool ok = true;
    std::string detail_text = "levels 1.." + std::to_string(kTruncationPeriods * d);
    for (std::int64_t i = 1; i <= kTruncationPeriods * d && ok; ++i) {
      const auto kl = *detail::chart_class(t, *lim, i);
      const auto km = *detail::chart_class(t, *mid, i + len);
      if (kc + kl != km) {
        ok = false;
        detail_text = "fails at level " + std::to_string(i);
      }
    }
    out.push_back({"truncated class additivity", ok, detail_text, pruefer_kind ? "T5.3" : "T5.4"});
    const Slope q = slope_of(g, *mid);
    if (pruefer_kind) {
      detail::tag_check(out, g, s.mid, q, "mid", true, "P3.4ii");
      detail::tag_check(out, g, s.quot, q, "quot", true, "P3.4ii");
    } else {
      detail::tag_check(out, g, s.sub, q, "sub", false, "P3.5ii");
      detail::tag_check(out, g, s.mid, q, "mid", false, "P3.5ii");
    }
    return out;
  }

  if (!s.slope) return out;
  const Slope q = *s.slope;
  if (s.kind == "C5.5") {
    detail::tag_check(out, g, s.sub, q, "sub", false, "P3.5ii");
    detail::tag_check(out, g, s.quot, q, "quot", true, "P3.4ii");
    detail::tag_check(out, g, s.mid, q, "mid", false, "L4.4ii");
    detail::tag_check(out, g, s.mid, q, "mid", true, "T5.2");
  } else if (s.kind == "T6.7" || s.kind == "C6.8") {
    detail::tag_check(out, g, s.sub, q, "sub", false, "T6.7");
    detail::tag_check(out, g, s.mid, q, "mid", false, "T6.6");
    detail::tag_check(out, g, s.mid, q, "mid", true, "T5.2");
    detail::tag_check(out, g, s.quot, q, "quot", true, "P3.4ii");
    if (s.kind == "C6.8") {
      const auto* m = detail::single(s.mid);
      out.push_back({"single generic middle term", m && std::holds_alternative<Generic>(*m), format(s.mid), "C6.8"});
    }
  } else if (s.kind == "T6.10") {
    const bool finite = !q.is_infinite();
    out.push_back({"finite slope", finite, q.str(), "R6.11i"});
    const auto split = torsion_pair_split(g, s.quot.concrete, q, false);
    out.push_back({"quot in Q_q", split.free.empty(), format(s.quot), "P6.1"});
    detail::tag_check(out, g, s.sub, q, "sub", false, "L4.4ii");
    detail::tag_check(out, g, s.mid, q, "mid", true, "P3.4ii");
  }
  return out;
}

inline ExactSequence finish(const EulerTable& t, ExactSequence s) {
  s.checks = verify_sequence(t, s);
  return s;
}

namespace detail {

inline Tube require_mouth(const Geometry& g, const IndecDescriptor& x) {
  const auto c = canonical(g, x);
  const auto* tb = std::get_if<Tube>(&c);
  if (!tb || tb->len != 1) throw InvalidObject("expected a quasi-simple tube object T(q;tube;socle;1)");
  return *tb;
}

}  // namespace detail

// 0 -> tau X -> middle -> X -> 0 inside the tube of X.
inline ExactSequence ar_sequence(const EulerTable& t, const IndecDescriptor& x_in) {
  const Geometry& g = t.geometry();
  const auto c = canonical(g, x_in);
  const auto* x = std::get_if<Tube>(&c);
  if (!x) throw InvalidObject("AR sequences are built for tube objects");
  const auto d = g.tube_rank(x->point);
  const auto ar = tube::ar_sequence(d, x->pos());
  ExactSequence s;
  s.kind = "AR";
  s.slope = x->slope;
  s.sub = FormalObject(Tube{x->slope, x->point, ar.start.socle, ar.start.len});
  FormalObject mid;
  for (const auto& m : ar.middle) mid.add(Tube{x->slope, x->point, m.socle, m.len});
  s.mid = mid;
  s.quot = FormalObject(c);
  s.citations = {"P6.1", "TUBE"};
  return finish(t, std::move(s));
}

// 0 -> S -> S[inf] -> (tau^{-1} S)[inf] -> 0 and 0 -> S[d] -> S[inf] -> S[inf] -> 0.
inline std::pair<ExactSequence, ExactSequence> pruefer_sequences(const EulerTable& t, const IndecDescriptor& s_in) {
  const Geometry& g = t.geometry();
  const Tube s = detail::require_mouth(g, s_in);
  const auto d = g.tube_rank(s.point);
  ExactSequence a;
  a.kind = "T5.3a";
  a.slope = s.slope;
  a.sub = FormalObject(s);
  a.mid = FormalObject(Pruefer{s.slope, s.point, s.socle});
  a.quot = FormalObject(Pruefer{s.slope, s.point, tube::mod(s.socle + 1, d)});
  a.citations = {"T5.3"};
  ExactSequence b;
  b.kind = "T5.3b";
  b.slope = s.slope;
  b.sub = FormalObject(Tube{s.slope, s.point, s.socle, d});
  b.mid = FormalObject(Pruefer{s.slope, s.point, s.socle});
  b.quot = FormalObject(Pruefer{s.slope, s.point, s.socle});
  b.citations = {"T5.3"};
  return {finish(t, std::move(a)), finish(t, std::move(b))};
}

// 0 -> (tau S)[-inf] -> S[-inf] -> S -> 0 and 0 -> S[-inf] -> S[-inf] -> S[-d] -> 0.
inline std::pair<ExactSequence, ExactSequence> adic_sequences(const EulerTable& t, const IndecDescriptor& s_in) {
  const Geometry& g = t.geometry();
  const Tube s = detail::require_mouth(g, s_in);
  const auto d = g.tube_rank(s.point);
  ExactSequence a;
  a.kind = "T5.4a";
  a.slope = s.slope;
  a.sub = FormalObject(Adic{s.slope, s.point, tube::mod(s.socle - 1, d)});
  a.mid = FormalObject(Adic{s.slope, s.point, s.socle});
  a.quot = FormalObject(s);
  a.citations = {"T5.4"};
  ExactSequence b;
  b.kind = "T5.4b";
  b.slope = s.slope;
  b.sub = FormalObject(Adic{s.slope, s.point, s.socle});
  b.mid = FormalObject(Adic{s.slope, s.point, s.socle});
  const auto top_d = tube::with_top(d, s.socle, d);
  b.quot = FormalObject(Tube{s.slope, s.point, top_d.socle, top_d.len});
  b.citations = {"T5.4"};
  return {finish(t, std::move(a)), finish(t, std::move(b))};
}

// 0 -> (tau S)[-inf] -> (+)G_q -> S[inf] -> 0 with a symbolic middle term.
inline ExactSequence adic_generic_pruefer_sequence(const EulerTable& t, const IndecDescriptor& s_in) {
  const Geometry& g = t.geometry();
  const Tube s = detail::require_mouth(g, s_in);
  const auto d = g.tube_rank(s.point);
  ExactSequence e;
  e.kind = "C5.5";
  e.slope = s.slope;
  e.sub = FormalObject(Adic{s.slope, s.point, tube::mod(s.socle - 1, d)});
  e.mid.symbolic.push_back({SymbolicPart::Kind::GenericSum, s.slope, {}});
  e.quot = FormalObject(Pruefer{s.slope, s.point, s.socle});
  e.citations = {"C5.5"};
  return finish(t, std::move(e));
}

// Cokernel multiplicities at slope infinity for F with class k:
// e_S = dim Ext^1(S, F) = -<S, F>, also read as <F, tau S> by Serre duality.
struct MultiplicityRoutes {
  MultiplicityMap euler_route;
  MultiplicityMap serre_route;
};

inline MultiplicityRoutes slope_infinity_multiplicities(const EulerTable& t, const KClass& k) {
  const Geometry& g = t.geometry();
  MultiplicityRoutes r;
  for (int i = 1; i <= g.t(); ++i) {
    for (int j = 0; j < g.weight(i); ++j) {
      const KClass s = t.arm_simple(i, j);
      r.euler_route.exceptional[{i, j}] = -t.euler(s, k);
      r.serre_route.exceptional[{i, j}] = t.euler(k, t.tau(s));
    }
  }
  const KClass pt = t.point_simple();
  r.euler_route.ordinary_default = -t.euler(pt, k);
  r.serre_route.ordinary_default = t.euler(k, t.tau(pt));
  return r;
}

// 0 -> F -> (+)_n G_q -> (+)_S (+)_{e_S} S[inf] -> 0 for q-torsion-free F.
inline ExactSequence left_approximation(const EulerTable& t, const FormalObject& f, const Slope& q) {
  const Geometry& g = t.geometry();
  for (const auto& [d, m] : f.summands()) {
    if (!is_coherent(d) || !(slope_of(g, d) < q)) {
      throw NotTorsionFree(format(d) + " is not a coherent summand of slope < " + q.str());
    }
  }
  ExactSequence s;
  s.kind = "T6.7";
  s.slope = q;
  s.sub = f;
  s.citations = {"T6.6", "T6.7"};
  const auto k = class_of(t, f);
  std::vector<Check> extra;
  SymbolicPart family{SymbolicPart::Kind::PrueferFamily, q, {}};
  family.multiplicities.symbolic = true;
  if (k) {
    const std::int64_t n = q.num() * t.rank(*k) - q.den() * t.degree(*k);
    if (n <= 0) throw NegativeBudget("d rk - r deg = " + std::to_string(n) + " is not positive");
    s.mid = FormalObject(Generic{q}, n);
    s.citations.emplace_back("LF");
    if (q.is_infinite()) {
      const auto routes = slope_infinity_multiplicities(t, *k);
      family.multiplicities = routes.euler_route;
      extra.push_back({"multiplicity routes agree", routes.euler_route == routes.serre_route,
                       "-<S, F> against <F, tau S>", "L3.3"});
      bool nonneg = routes.euler_route.ordinary_default >= 0;
      for (const auto& [key, v] : routes.euler_route.exceptional) nonneg = nonneg && v >= 0;
      extra.push_back({"multiplicities nonnegative", nonneg, "", "T6.7"});
      // Each full period of a Pruefer truncation has degree p, so the
      // cokernel grows by p * sum_S e_S per period in every tube.
      const std::int64_t rk = t.rank(*k);
      bool budget = routes.euler_route.ordinary_default * g.p() == rk * g.p();
      std::string detail_text = "rk * p = " + std::to_string(rk * g.p());
      for (int i = 1; i <= g.t(); ++i) {
        std::int64_t growth = 0;
        for (int j = 0; j < g.weight(i); ++j) {
          const auto& mm = routes.euler_route.exceptional;
          growth += mm.at({i, j}) * t.degree(t.tube_object(Exceptional{i}, j, g.weight(i)));
        }
        budget = budget && growth == rk * g.p();
      }
      extra.push_back({"period budget", budget, detail_text, "P2.4iv"});
      s.citations.emplace_back("L3.3");
    }
  } else {
    s.mid.symbolic.push_back({SymbolicPart::Kind::GenericSum, q, {}});
  }
  s.quot.symbolic.push_back(family);
  s = finish(t, std::move(s));
  s.checks.insert(s.checks.end(), extra.begin(), extra.end());
  return s;
}

// Left approximation whose middle term is a single G_q; only when
// d rk(F) - r deg(F) = 1.
inline ExactSequence construct_generic(const EulerTable& t, const FormalObject& f,
                                       const Slope& q = Slope::infinity()) {
  const auto k = class_of(t, f);
  if (!k) throw NoClass("construct-generic needs an object with a K-class");
  const std::int64_t n = q.num() * t.rank(*k) - q.den() * t.degree(*k);
  if (n != 1) {
    throw GateFailed("d rk(F) - r deg(F) = " + std::to_string(n) + ", expected 1");
  }
  ExactSequence s = left_approximation(t, f, q);
  s.kind = "C6.8";
  s.citations.emplace_back("C6.8");
  s.citations.emplace_back("R6.9");
  auto extra = std::vector<Check>(s.checks.begin(), s.checks.end());
  s.checks = verify_sequence(t, s);
  for (const auto& c : extra) {
    bool seen = false;
    for (const auto& d : s.checks) seen = seen || (d.name == c.name);
    if (!seen) s.checks.push_back(c);
  }
  return s;
}

// 0 -> (+)G_q -> (+)_S (+) S[inf] -> F -> 0 for F in Q_q, q finite.
// `endolength` is the length of Ext^1(F, G_q) over End(G_q); it is computed
// when F has a class.
inline ExactSequence right_approximation(const EulerTable& t, const FormalObject& f, const Slope& q,
                                         std::optional<std::int64_t> endolength = std::nullopt) {
  const Geometry& g = t.geometry();
  if (q.is_infinite()) throw InfiniteSlopeRejected("the right approximation needs a finite slope");
  const auto split = torsion_pair_split(g, f, q, false);
  if (!split.free.empty()) {
    throw NotInQq(format(split.free) + " has slope <= " + q.str());
  }
  if (const auto k = class_of(t, f)) endolength = q.den() * t.degree(*k) - q.num() * t.rank(*k);
  ExactSequence s;
  s.kind = "T6.10";
  s.slope = q;
  s.citations = {"T6.10"};
  if (endolength && *endolength == 1) {
    s.sub = FormalObject(Generic{q});
    s.citations.emplace_back("R6.11ii");
  } else {
    s.sub.symbolic.push_back({SymbolicPart::Kind::GenericSum, q, {}});
  }
  SymbolicPart family{SymbolicPart::Kind::PrueferFamily, q, {}};
  family.multiplicities.symbolic = true;
  s.mid.symbolic.push_back(family);
  s.quot = f;
  return finish(t, std::move(s));
}

}  // namespace wpl
