#include <gtest/gtest.h>

#include "support.hpp"

using namespace levi;
using levi::testing::cls;
using levi::testing::e;
using levi::testing::Gen;

namespace {

const Side L = Side::left, R = Side::right;

struct ThreeParabolics : ::testing::Test {
  dsl::Model m = levi::testing::load("three_parabolics");
  const Subspace& X1 = m.subspace("X1");
  const Subspace& X2 = m.subspace("X2");
  const Subspace& Y1 = m.subspace("Y1");
  const Subspace& Y2 = m.subspace("Y2");
  Subspace line(Side s, long i) { return Subspace::span(m.spec, s, {e(s, i)}); }
  Subspace family(Side s, IndexPattern p, Vector anchor = {}) {
    if (anchor.is_zero()) anchor = Vector(s);
    return Subspace::span(m.spec, s, {}, {{std::move(p), std::move(anchor)}});
  }
};

}  // namespace

TEST_F(ThreeParabolics, SpanAndMembership) {
  EXPECT_TRUE(contains_vector(X1, e(L, 3) - e(L, 5)));
  EXPECT_FALSE(contains_vector(X1, e(L, 3) + e(L, 5)));
  EXPECT_TRUE(contains_vector(X1, Vector(L)));
  EXPECT_TRUE(contains_vector(X1, e(L, 1) + e(L, 7)));
  EXPECT_FALSE(contains_vector(X1, e(L, 1)));
  EXPECT_THROW(contains_vector(X1, e(R, 1)), Error);
  auto a = Subspace::span(m.spec, L, {e(L, 1), Scalar(2) * e(L, 1)});
  EXPECT_EQ(a, line(L, 1));
  EXPECT_EQ(to_string(a), "span { V[1] }");
  EXPECT_EQ(Subspace::span(m.spec, L, {e(L, 1) + e(L, 2)}), Subspace::span(m.spec, L, {Scalar(2) * (e(L, 1) + e(L, 2))}));
  EXPECT_THROW(Subspace::span(m.spec, L, {e(R, 1)}), Error);
  EXPECT_THROW(family(L, IndexPattern::finite({1, 2})), Error);
}

TEST_F(ThreeParabolics, PerpAndClosure) {
  EXPECT_EQ(perp(sum(Y1, Y2)), line(L, 1));
  EXPECT_EQ(closure(X1), family(L, cls(2, 1, 1)));
  EXPECT_TRUE(includes(closure(X1), X1));
  EXPECT_FALSE(includes(X1, closure(X1)));
  EXPECT_EQ(closure(line(L, 1)), line(L, 1));
  EXPECT_TRUE(is_closed(line(L, 1)));
  EXPECT_FALSE(is_closed(X1));
  EXPECT_EQ(perp(Subspace::zero(m.spec, L)), Subspace::full(m.spec, R));
  // the spans listed for the quotients of this datum
  EXPECT_EQ(perp(Y1), sum(line(L, 1), family(L, cls(2, 0, 2))));
  EXPECT_EQ(closure(X2), sum(line(L, 1), family(L, cls(2, 0, 4))));
  EXPECT_EQ(perp(Y2), closure(X1));
  EXPECT_EQ(closure(sum(X1, X2)), family(L, difference(IndexPattern::residue_classes(1, {0}, 1, std::nullopt), IndexPattern::finite({2}))));
}

TEST_F(ThreeParabolics, QuotientDimensions) {
  EXPECT_EQ(quotient_dim(closure(X2), perp(Y1)), QuotientDim::finite(1));
  EXPECT_EQ(quotient_dim(closure(X1), perp(Y2)), QuotientDim::finite(0));
  EXPECT_EQ(quotient_dim(closure(sum(X1, X2)), Subspace::full(m.spec, L)), QuotientDim::finite(1));
  EXPECT_EQ(quotient_dim(line(L, 1), Subspace::full(m.spec, L)), QuotientDim::infinity());
  EXPECT_THROW(quotient_dim(Subspace::full(m.spec, L), line(L, 1)), Error);
}

TEST_F(ThreeParabolics, TriplePerp) {
  Subspace u = triple_perp(Subspace::zero(m.spec, L), X1, Y1);
  EXPECT_EQ(u, line(L, 1));
  EXPECT_EQ(triple_perp(u, X1, Y1), u);
  EXPECT_EQ(triple_perp(Subspace::full(m.spec, L), X1, Y1), perp(Y1));
}

TEST_F(ThreeParabolics, ComplementIn) {
  Subspace a = line(L, 1), b = sum(line(L, 1), line(L, 2));
  EXPECT_EQ(complement_in(a, b), line(L, 2));
  EXPECT_TRUE(complement_in(b, b).is_zero());
  Subspace big = sum(a, X1);
  Subspace c = complement_in(a, big);
  EXPECT_TRUE(intersect(a, c).is_zero());
  EXPECT_EQ(sum(a, c), big);
  EXPECT_THROW(complement_in(big, a), Error);
}

TEST(Subspace, IntersectionWithCoefficientSumConstraint) {
  auto spec = freeze(SpaceSpec::dual_pair(Universe{}));
  auto a = Subspace::span(spec, L, {}, {{cls(1, 0, 2), e(L, 1)}});
  auto b = Subspace::span(spec, L, {}, {{cls(1, 0, 3), Vector(L)}});
  auto expect = Subspace::span(spec, L, {}, {{cls(1, 0, 4), -e(L, 3)}});
  EXPECT_EQ(intersect(a, b), expect);
  EXPECT_EQ(intersect(a, a), a);
  EXPECT_TRUE(contains_vector(intersect(a, b), e(L, 7) - e(L, 11)));
}

TEST(Subspace, OneBlockPerps) {
  auto m = levi::testing::load("one_block");
  EXPECT_TRUE(perp(m.subspace("X")).is_zero());
  EXPECT_EQ(perp(m.subspace("Y")), m.subspace("line"));
  EXPECT_EQ(triple_perp(Subspace::zero(m.spec, L), m.subspace("X"), m.subspace("Y")), m.subspace("line"));
}

TEST(Subspace, CodimensionOneButDense) {
  auto m = levi::testing::load("two_couples");
  Subspace s = sum(m.subspace("X1"), m.subspace("X2"));
  Subspace v = Subspace::full(m.spec, L);
  EXPECT_EQ(quotient_dim(s, v), QuotientDim::finite(1));
  EXPECT_EQ(closure(s), v);
  EXPECT_EQ(sum(s, Subspace::zero(m.spec, L)), s);
  EXPECT_EQ(sum(m.subspace("X1"), m.subspace("X1")), m.subspace("X1"));
}

TEST(Subspace, SelfdualIntersectionAndIsotropy) {
  auto m = levi::testing::load("so");
  const Subspace& w = m.subspace("W");
  const Subspace& line = m.subspace("line");
  EXPECT_EQ(intersect(closure(w), perp(w)), line);
  EXPECT_TRUE(is_isotropic(line));
  EXPECT_FALSE(is_isotropic(m.subspace("lineW")));
  EXPECT_TRUE(is_coisotropic(Subspace::full(m.spec, L)));
  auto dual = levi::testing::load("one_block");
  EXPECT_THROW(is_isotropic(dual.subspace("X")), Error);
}

TEST(SubspaceProperty, GaloisConnection) {
  Gen g(default_seed());
  for (int t = 0; t < 1000; ++t) {
    SpecPtr spec = g.spec();
    Side s = g.coin() && !spec->selfdual() ? R : L;
    Subspace a = g.subspace(spec, s);
    Subspace b = sum(a, g.subspace(spec, s));
    ASSERT_TRUE(includes(b, a));
    EXPECT_TRUE(includes(perp(a), perp(b))) << to_string(a) << " / " << to_string(b);
    EXPECT_TRUE(includes(closure(a), a)) << to_string(a);
    EXPECT_EQ(perp(a), perp(closure(a))) << to_string(a);
    EXPECT_EQ(closure(closure(a)), closure(a)) << to_string(a);
  }
}

TEST(SubspaceProperty, DeMorganForPerp) {
  Gen g(default_seed() + 1);
  for (int t = 0; t < 1000; ++t) {
    SpecPtr spec = g.spec();
    Side s = g.coin() && !spec->selfdual() ? R : L;
    Subspace a = g.subspace(spec, s), b = g.subspace(spec, s);
    EXPECT_EQ(perp(sum(a, b)), intersect(perp(a), perp(b))) << to_string(a) << " / " << to_string(b);
  }
}

TEST(SubspaceProperty, TriplePerpIsAFixedPoint) {
  Gen g(default_seed() + 2);
  for (int k = 0; k < 1000; ++k) {
    SpecPtr spec = g.spec();
    auto [x, y] = g.nondegenerate_pair(spec);
    Subspace t = g.subspace(spec, L);
    Subspace u = triple_perp(t, x, y);
    EXPECT_EQ(triple_perp(u, x, y), u) << to_string(t) << " / " << to_string(x) << " / " << to_string(y);
  }
}

TEST(SubspaceProperty, IntersectionAndComplement) {
  Gen g(default_seed() + 3);
  for (int k = 0; k < 300; ++k) {
    SpecPtr spec = g.spec();
    Subspace a = g.subspace(spec, L), c = g.subspace(spec, L);
    Subspace i = intersect(a, c);
    EXPECT_TRUE(includes(a, i) && includes(c, i));
    Subspace b = sum(a, c);
    Subspace comp = complement_in(a, b);
    EXPECT_TRUE(intersect(a, comp).is_zero());
    EXPECT_EQ(sum(a, comp), b);
    Vector x = g.vector(*spec, L, 2, 8);
    EXPECT_EQ(contains_vector(i, x), contains_vector(a, x) && contains_vector(c, x));
  }
}
