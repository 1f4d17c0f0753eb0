#pragma once

#include <string>
#include <vector>

#include "wpl/geometry.hpp"
#include "wpl/homext.hpp"
#include "wpl/ktheory.hpp"
#include "wpl/oracle.hpp"
#include "wpl/sequences.hpp"
#include "wpl/tube.hpp"

// Conformance checks shared by the `selftest` command.
namespace wpl::selftest {

inline std::vector<Geometry> tubular_geometries() {
  return {Geometry::make({2, 2, 2, 2}, {"a"}), Geometry::make({3, 3, 3}, {"a"}),
          Geometry::make({4, 4, 2}, {"a"}), Geometry::make({6, 3, 2}, {"a"})};
}

inline std::string type_name(const Geometry& g) {
  std::string s = "(";
  for (int i = 1; i <= g.t(); ++i) s += (i > 1 ? "," : "") + std::to_string(g.weight(i));
  return s + ")";
}

inline std::vector<Slope> slope_sample() {
  return {Slope::integer(0), Slope::integer(1), Slope::integer(-1), Slope::make(1, 2), Slope::make(2, 3),
          Slope::infinity()};
}

inline Check lattice(const EulerTable& t) {
  const auto& g = t.geometry();
  const bool ok = t.radical_basis().size() == 2 && t.euler(t.u(), t.w()) == g.p() &&
                  t.euler(t.w(), t.u()) == -g.p() && t.euler(t.u(), t.u()) == 0 && t.euler(t.w(), t.w()) == 0;
  return {"radical basis " + type_name(g), ok, "<u,w> = " + std::to_string(t.euler(t.u(), t.w())), "L2.2"};
}

inline Check serre(const EulerTable& t) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    for (std::size_t j = 0; j < t.dim(); ++j) {
      const auto x = t.basis(i);
      const auto y = t.basis(j);
      if (t.euler(x, y) != -t.euler(y, t.tau(x))) ++bad;
    }
  }
  return {"Serre duality " + type_name(t.geometry()), bad == 0, std::to_string(bad) + " failing pairs", "P2.1"};
}

inline Check riemann_roch(const EulerTable& t) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    for (std::size_t j = 0; j < t.dim(); ++j) {
      const auto x = t.basis(i);
      const auto y = t.basis(j);
      if (t.riemann_roch(x, y) != t.rank(x) * t.degree(y) - t.rank(y) * t.degree(x)) ++bad;
    }
  }
  return {"Riemann-Roch " + type_name(t.geometry()), bad == 0, std::to_string(bad) + " failing pairs", "P2.4iv"};
}

inline Check tube_conformance(int max_rank, int max_len) {
  std::size_t pairs = 0;
  std::size_t bad = 0;
  for (int d = 1; d <= max_rank; ++d) {
    for (int s1 = 0; s1 < d; ++s1) {
      for (int s2 = 0; s2 < d; ++s2) {
        for (int l1 = 1; l1 <= max_len; ++l1) {
          for (int l2 = 1; l2 <= max_len; ++l2) {
            ++pairs;
            const tube::Uniserial x{s1, l1};
            const tube::Uniserial y{s2, l2};
            if (oracle::oracle_hom_dim(d, x, y) != tube::hom_dim(d, x, y)) ++bad;
          }
        }
      }
    }
  }
  return {"tube Hom against oracle", bad == 0,
          std::to_string(pairs) + " pairs, " + std::to_string(bad) + " mismatches", "TUBE"};
}

// Hom(S, S[inf]) = 1 and Ext^1(tau^{-1} S, S[-inf]) = 1 on every tube.
inline Check pinned_dimensions(const EulerTable& t) {
  const auto& g = t.geometry();
  const HomExt h(t);
  std::size_t cases = 0;
  std::size_t bad = 0;
  for (const auto& q : slope_sample()) {
    for (const auto& pt : g.points()) {
      for (int s = 0; s < g.tube_rank(pt); ++s) {
        ++cases;
        const Tube simple{q, pt, s, 1};
        const Tube shifted{q, pt, tube::mod(s + 1, g.tube_rank(pt)), 1};
        const auto a = h(simple, Pruefer{q, pt, s});
        const auto b = h(shifted, Adic{q, pt, s});
        if (!(a.hom == DimInfo::exact(1)) || !(b.ext1 == DimInfo::exact(1))) ++bad;
      }
    }
  }
  return {"pinned dimensions " + type_name(g), bad == 0,
          std::to_string(cases) + " cases, " + std::to_string(bad) + " failures", "P3.4ii"};
}

// Pruefer towers stabilize monotonically at hom_to_pruefer; adic towers have
// zero limit, and for a quasi-simple X the transitions themselves vanish.
inline Check towers(int max_rank) {
  std::size_t bad = 0;
  std::size_t cases = 0;
  for (int d = 1; d <= max_rank; ++d) {
    for (int s = 0; s < d; ++s) {
      for (int len = 1; len <= 3; ++len) {
        const tube::Uniserial x{s, len};
        for (int idx = 0; idx < d; ++idx) {
          ++cases;
          const auto cap = len + 2 * d + 2;
          const auto p = oracle::truncation_limit(d, x, {oracle::TowerKind::Pruefer, idx}, cap);
          if (!p.monotone || !p.stabilizes || p.limit != tube::hom_to_pruefer(d, x, idx)) ++bad;
          const auto a = oracle::truncation_limit(d, x, {oracle::TowerKind::Adic, idx}, cap);
          if ((len == 1 && a.transition_ranks.back() != 0) || a.limit != 0) ++bad;
        }
      }
    }
  }
  return {"truncation towers", bad == 0, std::to_string(cases) + " towers, " + std::to_string(bad) + " failures",
          "L3.2i"};
}

inline std::vector<Check> run(int max_len = 12) {
  std::vector<Check> out;
  for (const auto& g : tubular_geometries()) {
    const EulerTable t(g);
    out.push_back(lattice(t));
    out.push_back(serre(t));
    out.push_back(riemann_roch(t));
    out.push_back(pinned_dimensions(t));
  }
  out.push_back(tube_conformance(6, max_len));
  out.push_back(towers(6));
  return out;
}

}  // namespace wpl::selftest
