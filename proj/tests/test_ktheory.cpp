#include <gtest/gtest.h>

#include <random>

#include "wpl/geometry.hpp"
#include "wpl/ktheory.hpp"
#include "wpl/slope.hpp"

using namespace wpl;

namespace {

struct Frozen {
  std::vector<int> weights;
  std::size_t dim;
  std::vector<std::int64_t> u;
};

// Radical vectors from an independent sympy computation of the kernel of
// G + G^T under the normalization rk O = 1, rk S_pt = 0, deg O = 0,
// deg S_pt = p.
const std::vector<Frozen> kFrozen = {
    {{2, 2, 2, 2}, 6, {2, -2, 1, 1, 1, 1}},
    {{3, 3, 3}, 8, {3, -3, 2, 1, 2, 1, 2, 1}},
    {{4, 4, 2}, 9, {4, -4, 3, 2, 1, 3, 2, 1, 2}},
    {{6, 3, 2}, 10, {6, -6, 5, 4, 3, 2, 1, 4, 2, 3}},
};

KClass vec(const std::vector<std::int64_t>& v) {
  KClass k(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) k[i] = v[i];
  return k;
}

std::vector<EulerTable> all_tables() {
  std::vector<EulerTable> out;
  for (const auto& f : kFrozen) out.emplace_back(Geometry::make(f.weights));
  return out;
}

}  // namespace

TEST(KTheory, DimensionsAndRadicalVectors) {
  for (const auto& f : kFrozen) {
    const EulerTable t(Geometry::make(f.weights));
    EXPECT_EQ(t.dim(), f.dim);
    EXPECT_EQ(t.u(), vec(f.u));
    EXPECT_EQ(t.w(), t.point_simple());
    EXPECT_EQ(t.euler(t.u(), t.w()), t.geometry().p());
    EXPECT_EQ(t.euler(t.w(), t.u()), -t.geometry().p());
    EXPECT_EQ(t.euler(t.u(), t.u()), 0);
    EXPECT_EQ(t.euler(t.w(), t.w()), 0);
    EXPECT_EQ(t.radical_basis().size(), 2u);
  }
}

TEST(KTheory, GramEntryRules) {
  const EulerTable t(Geometry::make({3, 3, 3}));
  const auto O = t.structure_sheaf();
  const auto pt = t.point_simple();
  EXPECT_EQ(t.euler(O, O), 1);
  EXPECT_EQ(t.euler(O, pt), 1);
  EXPECT_EQ(t.euler(pt, O), -1);
  EXPECT_EQ(t.euler(pt, pt), 0);
  EXPECT_EQ(t.euler(O, t.arm_simple(1, 1)), 0);
  EXPECT_EQ(t.euler(t.arm_simple(1, 1), O), -1);
  EXPECT_EQ(t.euler(t.arm_simple(1, 2), O), 0);
  EXPECT_EQ(t.euler(t.arm_simple(2, 2), t.arm_simple(2, 2)), 1);
  EXPECT_EQ(t.euler(t.arm_simple(2, 2), t.arm_simple(2, 1)), -1);
  EXPECT_EQ(t.euler(t.arm_simple(2, 1), t.arm_simple(2, 2)), 0);
  EXPECT_EQ(t.euler(t.arm_simple(1, 1), t.arm_simple(2, 1)), 0);
}

TEST(KTheory, SerreDualityOnAllBasisPairs) {
  for (const auto& t : all_tables()) {
    for (std::size_t i = 0; i < t.dim(); ++i) {
      for (std::size_t j = 0; j < t.dim(); ++j) {
        EXPECT_EQ(t.euler(t.basis(i), t.basis(j)), -t.euler(t.basis(j), t.tau(t.basis(i))));
      }
    }
  }
}

TEST(KTheory, RiemannRochOnAllBasisPairs) {
  for (const auto& t : all_tables()) {
    for (std::size_t i = 0; i < t.dim(); ++i) {
      for (std::size_t j = 0; j < t.dim(); ++j) {
        const auto x = t.basis(i);
        const auto y = t.basis(j);
        EXPECT_EQ(t.riemann_roch(x, y), t.rank(x) * t.degree(y) - t.rank(y) * t.degree(x));
      }
    }
  }
}

TEST(KTheory, RiemannRochExamples) {
  for (const auto& t : all_tables()) {
    const auto p = t.geometry().p();
    EXPECT_EQ(t.riemann_roch(t.structure_sheaf(), t.structure_sheaf()), 0);
    EXPECT_EQ(t.riemann_roch(t.structure_sheaf(), t.point_simple()), p);
    EXPECT_EQ(t.riemann_roch(t.point_simple(), t.structure_sheaf()), -p);
  }
}

TEST(KTheory, TauPreservesRankDegreeAndPeriods) {
  for (const auto& t : all_tables()) {
    const auto& g = t.geometry();
    for (std::size_t i = 0; i < t.dim(); ++i) {
      const auto x = t.basis(i);
      EXPECT_EQ(t.rank(t.tau(x)), t.rank(x));
      EXPECT_EQ(t.degree(t.tau(x)), t.degree(x));
      EXPECT_EQ(t.tau_inv(t.tau(x)), x);
    }
    EXPECT_EQ(t.tau(t.point_simple()), t.point_simple());
    for (int arm = 1; arm <= g.t(); ++arm) {
      for (int j = 0; j < g.weight(arm); ++j) {
        EXPECT_EQ(t.tau_power(t.arm_simple(arm, j), g.weight(arm)), t.arm_simple(arm, j));
        EXPECT_EQ(t.tau(t.arm_simple(arm, j)), t.arm_simple(arm, j - 1));
      }
    }
    EXPECT_EQ(t.tau(t.structure_sheaf()), t.line_bundle(g.omega()));
    EXPECT_EQ(t.tau_inverse_matrix() * t.tau_matrix(), IntMatrix::identity(t.dim()));
  }
}

TEST(KTheory, RankDegreeSlope) {
  for (const auto& t : all_tables()) {
    const auto& g = t.geometry();
    EXPECT_EQ(t.rank(t.structure_sheaf()), 1);
    EXPECT_EQ(t.degree(t.structure_sheaf()), 0);
    EXPECT_EQ(t.slope(t.structure_sheaf()), Slope::integer(0));
    EXPECT_EQ(t.rank(t.point_simple()), 0);
    EXPECT_EQ(t.degree(t.point_simple()), g.p());
    EXPECT_TRUE(t.slope(t.point_simple()).is_infinite());
    for (int arm = 1; arm <= g.t(); ++arm) {
      for (int j = 0; j < g.weight(arm); ++j) {
        EXPECT_EQ(t.rank(t.arm_simple(arm, j)), 0);
        EXPECT_EQ(t.degree(t.arm_simple(arm, j)), g.p() / g.weight(arm));
      }
    }
    EXPECT_THROW(t.slope(-1 * t.point_simple()), SlopeUndefined);
    EXPECT_THROW(t.slope(t.zero()), SlopeUndefined);
    EXPECT_THROW(t.slope(-1 * t.structure_sheaf()), SlopeUndefined);
  }
}

TEST(KTheory, EulerBasics) {
  const EulerTable t(Geometry::make({2, 2, 2, 2}));
  EXPECT_EQ(t.euler(t.zero(), t.point_simple()), 0);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    KClass a(t.dim()), a2(t.dim()), b(t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i) {
      a[i] = c(rng);
      a2[i] = c(rng);
      b[i] = c(rng);
    }
    EXPECT_EQ(t.euler(a + a2, b), t.euler(a, b) + t.euler(a2, b));
    EXPECT_EQ(t.euler(b, a + a2), t.euler(b, a) + t.euler(b, a2));
  }
}

TEST(KTheory, LineBundleClasses) {
  const EulerTable t(Geometry::make({2, 2, 2, 2}));
  const auto& g = t.geometry();
  EXPECT_EQ(t.line_bundle(g.zero()), t.structure_sheaf());
  EXPECT_EQ(t.line_bundle(g.c()), t.structure_sheaf() + t.point_simple());
  EXPECT_EQ(t.line_bundle(g.x(1)), t.structure_sheaf() + t.arm_simple(1, 1));
  EXPECT_EQ(t.degree(t.line_bundle(g.x(1))), 1);
}

// Walks O(y) -> O(y +- x_i), O(y +- c) in random order, adding or removing
// the cokernel simple at each step, and compares with the closed form.
TEST(KTheory, LineBundleClassIsPathIndependent) {
  std::mt19937 rng(11);
  for (const auto& t : all_tables()) {
    const auto& g = t.geometry();
    std::uniform_int_distribution<int> step(0, 2 * g.t() + 1);
    for (int walk = 0; walk < 50; ++walk) {
      LElement y = g.zero();
      KClass k = t.structure_sheaf();
      for (int s = 0; s < 30; ++s) {
        const int r = step(rng);
        if (r == 2 * g.t()) {
          y = g.add(y, g.c());
          k += t.point_simple();
        } else if (r == 2 * g.t() + 1) {
          y = g.sub(y, g.c());
          k -= t.point_simple();
        } else if (r % 2 == 0) {
          const int arm = r / 2 + 1;
          k += t.arm_simple(arm, y.lambda[static_cast<std::size_t>(arm - 1)] + 1);
          y = g.add(y, g.x(arm));
        } else {
          const int arm = r / 2 + 1;
          k -= t.arm_simple(arm, y.lambda[static_cast<std::size_t>(arm - 1)]);
          y = g.sub(y, g.x(arm));
        }
      }
      EXPECT_EQ(k, t.line_bundle(y));
      EXPECT_EQ(t.degree(k), g.degree(y));
      EXPECT_EQ(t.rank(k), 1);
    }
  }
}

// dim Hom(O(x), O(y)) - dim Ext^1(O(x), O(y)) from graded sections and Serre
// duality agrees with the Euler form of the classes.
TEST(KTheory, LineBundleEulerMatchesSections) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-4, 4);
  for (const auto& t : all_tables()) {
    const auto& g = t.geometry();
    for (int trial = 0; trial < 200; ++trial) {
      LElement x{c(rng), {}};
      LElement y{c(rng), {}};
      for (int i = 0; i < g.t(); ++i) {
        x.lambda.push_back(c(rng));
        y.lambda.push_back(c(rng));
      }
      const auto hom = g.sections(g.sub(y, x));
      const auto ext = g.sections(g.sub(g.add(x, g.omega()), y));
      EXPECT_EQ(hom - ext, t.euler(t.line_bundle(x), t.line_bundle(y)));
    }
  }
}

TEST(KTheory, TubeObjectClasses) {
  const EulerTable t(Geometry::make({3, 3, 3}, {"a"}));
  EXPECT_EQ(t.tube_object(Exceptional{1}, 1, 1), t.arm_simple(1, 1));
  EXPECT_EQ(t.tube_object(Ordinary{"a"}, 0, 3), 3 * t.point_simple());
  EXPECT_EQ(t.tube_object(Exceptional{1}, 1, 3), t.point_simple());
  EXPECT_EQ(t.tube_object(Exceptional{2}, 2, 2), t.arm_simple(2, 2) + t.arm_simple(2, 0));
}

TEST(KTheory, GenericClass) {
  for (const auto& t : all_tables()) {
    EXPECT_EQ(t.generic(Slope::infinity()), t.w());
    EXPECT_EQ(t.generic(Slope::integer(0)), t.u());
    for (const auto& q : {Slope::make(1, 2), Slope::make(-3, 5), Slope::integer(4)}) {
      EXPECT_EQ(t.euler(t.structure_sheaf(), t.generic(q)), q.num());
    }
  }
}

TEST(Slope, ParseAndOrder) {
  EXPECT_EQ(Slope::parse("2/4"), Slope::make(1, 2));
  EXPECT_EQ(Slope::parse("-6/4").str(), "-3/2");
  EXPECT_EQ(Slope::parse("inf"), Slope::infinity());
  EXPECT_EQ(Slope::parse("1/0"), Slope::infinity());
  EXPECT_EQ(Slope::parse("7").str(), "7");
  EXPECT_THROW(Slope::parse("1/-2"), SlopeParseError);
  EXPECT_THROW(Slope::parse("0/0"), SlopeParseError);
  EXPECT_THROW(Slope::parse("-1/0"), SlopeParseError);
  EXPECT_THROW(Slope::parse("x"), SlopeParseError);
  EXPECT_THROW(Slope::parse(""), SlopeParseError);
  EXPECT_LT(Slope::make(1, 2), Slope::make(2, 3));
  EXPECT_LT(Slope::integer(-1), Slope::integer(0));
  EXPECT_LT(Slope::integer(1000000), Slope::infinity());
  EXPECT_EQ(Slope::infinity().str(), "inf");
}
