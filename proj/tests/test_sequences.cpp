#include <gtest/gtest.h>

#include "wpl/notation.hpp"
#include "wpl/sequences.hpp"
#include "wpl/selftest.hpp"

using namespace wpl;

namespace {

const EulerTable& table333() {
  static const EulerTable t(Geometry::make({3, 3, 3}, {"a"}));
  return t;
}
IndecDescriptor ind(const EulerTable& t, const char* s) { return parse_indecomposable(t.geometry(), s); }
FormalObject obj(const EulerTable& t, const char* s) { return parse_object(t.geometry(), s); }

bool has_check(const ExactSequence& s, const std::string& name) {
  for (const auto& c : s.checks) {
    if (c.name == name) return true;
  }
  return false;
}

}  // namespace

TEST(Sequences, PrueferExamples) {
  const auto& t = table333();
  auto [a, b] = pruefer_sequences(t, ind(t, "T(1/2;e1;0;1)"));
  EXPECT_EQ(a.quot.concrete, obj(t, "prufer(1/2;e1;1)"));
  EXPECT_EQ(a.mid.concrete, obj(t, "prufer(1/2;e1;0)"));
  EXPECT_EQ(b.sub.concrete, obj(t, "T(1/2;e1;0;3)"));
  EXPECT_TRUE(a.verified());
  EXPECT_TRUE(b.verified());
  EXPECT_TRUE(has_check(a, "truncated class additivity"));

  auto [c, d] = pruefer_sequences(t, ind(t, "T(inf;o:a;0;1)"));
  EXPECT_EQ(d.sub.concrete, obj(t, "T(inf;o:a;0;1)"));
  EXPECT_EQ(d.mid.concrete, d.quot.concrete);
  EXPECT_TRUE(c.verified());
  EXPECT_TRUE(d.verified());
  EXPECT_THROW(pruefer_sequences(t, ind(t, "T(1;e1;0;2)")), InvalidObject);
  EXPECT_THROW(pruefer_sequences(t, ind(t, "O(0)")), InvalidObject);
}

TEST(Sequences, AdicExamples) {
  const auto& t = table333();
  auto [a, b] = adic_sequences(t, ind(t, "T(0;e2;0;1)"));
  EXPECT_EQ(a.sub.concrete, obj(t, "adic(0;e2;2)"));
  EXPECT_EQ(a.mid.concrete, obj(t, "adic(0;e2;0)"));
  EXPECT_EQ(b.quot.concrete, obj(t, "T(0;e2;1;3)"));
  EXPECT_TRUE(a.verified());
  EXPECT_TRUE(b.verified());
  auto [c, d] = adic_sequences(t, ind(t, "T(0;o:a;0;1)"));
  EXPECT_EQ(c.sub.concrete, c.mid.concrete);
  EXPECT_TRUE(c.verified());
  EXPECT_TRUE(d.verified());
}

TEST(Sequences, AllMouthsVerify) {
  for (const auto& g : selftest::tubular_geometries()) {
    const EulerTable t(g);
    for (const auto& q : selftest::slope_sample()) {
      for (const auto& pt : g.points()) {
        for (int s = 0; s < g.tube_rank(pt); ++s) {
          const IndecDescriptor m = Tube{q, pt, s, 1};
          const auto [a, b] = pruefer_sequences(t, m);
          const auto [c, d] = adic_sequences(t, m);
          EXPECT_TRUE(a.verified() && b.verified() && c.verified() && d.verified()) << format(m);
          EXPECT_TRUE(adic_generic_pruefer_sequence(t, m).verified()) << format(m);
        }
      }
    }
  }
}

TEST(Sequences, CorruptedSocleFails) {
  const auto& t = table333();
  auto [a, b] = pruefer_sequences(t, ind(t, "T(inf;e1;0;1)"));
  a.quot = obj(t, "prufer(inf;e1;2)");
  const auto checks = verify_sequence(t, a);
  bool failed = false;
  for (const auto& c : checks) {
    if (c.name == "truncated class additivity") {
      failed = !c.passed;
      EXPECT_NE(c.detail.find("fails at level"), std::string::npos);
    }
  }
  EXPECT_TRUE(failed);

  auto [c, d] = adic_sequences(t, ind(t, "T(inf;e3;1;1)"));
  d.sub = obj(t, "adic(inf;e3;0)");
  d.checks = verify_sequence(t, d);
  EXPECT_FALSE(d.verified());
}

TEST(Sequences, ZeroSequencePasses) {
  ExactSequence z;
  z.kind = "zero";
  const auto checks = verify_sequence(table333(), z);
  ASSERT_EQ(checks.size(), 1u);
  EXPECT_TRUE(checks[0].passed);
}

TEST(Sequences, ArSequence) {
  const auto& t = table333();
  const auto s = ar_sequence(t, ind(t, "T(inf;e1;0;2)"));
  EXPECT_EQ(s.sub.concrete, obj(t, "T(inf;e1;2;2)"));
  EXPECT_EQ(s.mid.concrete, obj(t, "T(inf;e1;2;3) + T(inf;e1;0;1)"));
  EXPECT_TRUE(s.verified());
  EXPECT_TRUE(has_check(s, "class additivity"));
  const auto h = ar_sequence(t, ind(t, "T(1/2;o:a;0;1)"));
  EXPECT_EQ(h.mid.concrete, obj(t, "T(1/2;o:a;0;2)"));
}

TEST(Sequences, AdicGenericPrueferSequence) {
  const auto& t = table333();
  const auto s = adic_generic_pruefer_sequence(t, ind(t, "T(2/3;e2;1;1)"));
  EXPECT_EQ(s.kind, "C5.5");
  EXPECT_EQ(s.sub.concrete, obj(t, "adic(2/3;e2;0)"));
  EXPECT_EQ(s.quot.concrete, obj(t, "prufer(2/3;e2;1)"));
  ASSERT_EQ(s.mid.symbolic.size(), 1u);
  EXPECT_TRUE(s.verified());
  EXPECT_TRUE(has_check(s, "sub q-torsion-free"));
  EXPECT_TRUE(has_check(s, "quot q-divisible"));
}

TEST(LeftApproximation, StructureSheafAtInfinity) {
  const auto& t = table333();
  const auto s = left_approximation(t, obj(t, "O(0)"), Slope::infinity());
  EXPECT_EQ(s.mid.concrete, obj(t, "generic(inf)"));
  ASSERT_NE(s.multiplicities(), nullptr);
  const auto& m = *s.multiplicities();
  EXPECT_EQ(m.ordinary_default, 1);
  for (int arm = 1; arm <= 3; ++arm) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(m.at(Exceptional{arm}, j), j == 1 ? 1 : 0);
  }
  EXPECT_EQ(m.at(Ordinary{"a"}, 0), 1);
  EXPECT_TRUE(s.verified());
  EXPECT_EQ(t.euler(t.structure_sheaf(), t.point_simple()), 1);
}

TEST(LeftApproximation, RankTwo) {
  const auto& t = table333();
  const auto s = left_approximation(t, obj(t, "O(0) + O(x1)"), Slope::infinity());
  EXPECT_EQ(s.mid.concrete, FormalObject(Generic{Slope::infinity()}, 2));
  EXPECT_EQ(s.multiplicities()->ordinary_default, 2);
  EXPECT_TRUE(s.verified());
}

TEST(LeftApproximation, FiniteSlopeIsPattern) {
  const auto& t = table333();
  const auto s = left_approximation(t, obj(t, "O(-c)"), Slope::make(1, 2));
  // n = d rk - r deg = 1 - 2 * (-3)
  EXPECT_EQ(s.mid.concrete, FormalObject(Generic{Slope::make(1, 2)}, 7));
  ASSERT_NE(s.multiplicities(), nullptr);
  EXPECT_TRUE(s.multiplicities()->symbolic);
  EXPECT_TRUE(s.verified());
  const auto p = left_approximation(t, obj(t, "T(0;e1;0;1)"), Slope::make(1, 2));
  EXPECT_FALSE(p.mid.is_concrete());
}

TEST(LeftApproximation, Errors) {
  const auto& t = table333();
  EXPECT_THROW(left_approximation(t, obj(t, "O(x1)"), Slope::integer(0)), NotTorsionFree);
  EXPECT_THROW(left_approximation(t, obj(t, "prufer(0;e1;0)"), Slope::integer(1)), NotTorsionFree);
  EXPECT_THROW(left_approximation(t, obj(t, "T(inf;e1;0;1)"), Slope::infinity()), NotTorsionFree);
}

// Both multiplicity routes agree for every line bundle with |l| <= 3 and every
// arm twist, on every weight type.
TEST(LeftApproximation, RoutesAgreeForLineBundles) {
  for (const auto& g : selftest::tubular_geometries()) {
    const EulerTable t(g);
    std::vector<std::int64_t> lam(static_cast<std::size_t>(g.t()), 0);
    std::size_t count = 0;
    for (;;) {
      for (int l = -3; l <= 3; ++l) {
        const auto k = t.line_bundle(LElement{l, lam});
        const auto r = slope_infinity_multiplicities(t, k);
        EXPECT_EQ(r.euler_route, r.serre_route);
        EXPECT_EQ(r.euler_route.ordinary_default, 1);
        for (int i = 1; i <= g.t(); ++i) {
          std::int64_t arm_total = 0;
          for (int j = 0; j < g.weight(i); ++j) arm_total += r.euler_route.exceptional.at({i, j});
          EXPECT_EQ(arm_total, 1);
          EXPECT_EQ(r.euler_route.exceptional.at({i, static_cast<int>((lam[static_cast<std::size_t>(i - 1)] + 1) %
                                                                    g.weight(i))}),
                    1);
        }
        ++count;
      }
      std::size_t a = 0;
      while (a < lam.size() && ++lam[a] == g.weight(static_cast<int>(a) + 1)) lam[a++] = 0;
      if (a == lam.size()) break;
    }
    EXPECT_GT(count, 0u);
  }
}

TEST(ConstructGeneric, GateSoundness) {
  const auto& t = table333();
  struct Case {
    const char* f;
    Slope q;
    bool gate;
  };
  const std::vector<Case> cases = {
      {"O(0)", Slope::infinity(), true},          {"O(x1)", Slope::infinity(), true},
      {"O(0) + O(0)", Slope::infinity(), false},  {"O(0)", Slope::make(1, 2), true},
      {"O(-c)", Slope::integer(0), false},        {"O(-x1)", Slope::integer(0), true},
      {"T(inf;e1;0;1)", Slope::infinity(), false},
  };
  for (const auto& c : cases) {
    const auto f = obj(t, c.f);
    const auto k = class_of(t, f);
    const bool gate = k && c.q.num() * t.rank(*k) - c.q.den() * t.degree(*k) == 1;
    EXPECT_EQ(gate, c.gate) << c.f;
    if (gate) {
      const auto s = construct_generic(t, f, c.q);
      EXPECT_EQ(s.kind, "C6.8");
      EXPECT_EQ(s.mid.concrete, FormalObject(Generic{c.q}));
      EXPECT_TRUE(s.verified()) << c.f;
    } else {
      EXPECT_ANY_THROW(construct_generic(t, f, c.q)) << c.f;
    }
  }
  EXPECT_THROW(construct_generic(t, obj(t, "O(0) + O(0)")), GateFailed);
  EXPECT_THROW(construct_generic(t, obj(t, "T(1;e1;0;1)")), NoClass);
}

TEST(RightApproximation, Patterns) {
  const auto& t = table333();
  EXPECT_THROW(right_approximation(t, obj(t, "T(1;e1;0;1)"), Slope::infinity()), InfiniteSlopeRejected);
  EXPECT_THROW(right_approximation(t, obj(t, "O(0)"), Slope::integer(0)), NotInQq);

  auto s = right_approximation(t, obj(t, "T(1;e1;0;1)"), Slope::make(1, 2));
  EXPECT_EQ(s.kind, "T6.10");
  EXPECT_FALSE(s.sub.is_concrete());
  EXPECT_TRUE(s.verified());

  s = right_approximation(t, obj(t, "T(1;e1;0;1)"), Slope::make(1, 2), 1);
  EXPECT_EQ(s.sub.concrete, obj(t, "generic(1/2)"));
  EXPECT_TRUE(s.verified());

  // O(x1) has degree 1: Ext^1(O(x1), G_0) has length 1 over End(G_0).
  s = right_approximation(t, obj(t, "O(x1)"), Slope::integer(0));
  EXPECT_EQ(s.sub.concrete, obj(t, "generic(0)"));
  s = right_approximation(t, obj(t, "O(c)"), Slope::integer(0));
  EXPECT_FALSE(s.sub.is_concrete());
}

TEST(Sequences, Formatting) {
  const auto& t = table333();
  const auto s = adic_generic_pruefer_sequence(t, ind(t, "T(inf;e1;0;1)"));
  EXPECT_EQ(format(s), "0 -> adic(inf;e1;2) -> (+)generic(inf) -> prufer(inf;e1;0) -> 0");
}
