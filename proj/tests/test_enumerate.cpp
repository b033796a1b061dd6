#include <gtest/gtest.h>

#include "support.hpp"

using namespace levi;
using levi::testing::cls;
using levi::testing::e;
using levi::testing::Gen;

namespace {

const Side L = Side::left, R = Side::right;

// sandwich bounds for position p of an order
std::pair<Subspace, Subspace> bounds(const LeviDatum& l, const SpecPtr& spec, const std::vector<std::size_t>& order, std::size_t p) {
  Subspace xs = Subspace::zero(spec, L), ys = Subspace::zero(spec, R);
  for (std::size_t k = 0; k <= p; ++k) xs = sum(xs, l.summands[order[k]].x);
  for (std::size_t k = p; k < order.size(); ++k) ys = sum(ys, l.summands[order[k]].y);
  return {perp(sum(perp(xs), l.summands[order[p]].y)), perp(ys)};
}

void check_enumeration(const LeviDatum& l, const SpecPtr& spec, const Enumeration& en, const std::string& what) {
  std::map<std::string, std::string> by_v;
  for (const auto& c : en.couples) {
    const auto& tc = c.couple;
    ASSERT_TRUE(is_taut_couple(tc.flag_v, *tc.flag_vstar)) << what;
    ASSERT_TRUE(is_levi_component(tc, l).is_levi) << what;
    EXPECT_EQ(induced_order(tc, l), c.order) << what;
    for (std::size_t p = 0; p < c.order.size(); ++p) {
      auto [lo, hi] = bounds(l, spec, c.order, p);
      EXPECT_TRUE(includes(c.u[p], lo)) << what;
      EXPECT_TRUE(includes(hi, c.u[p])) << what;
    }
    auto key = levi::testing::flag_key(tc.flag_v);
    auto vstar = levi::testing::flag_key(*tc.flag_vstar);
    auto [it, fresh] = by_v.emplace(key, vstar);
    EXPECT_TRUE(fresh) << what << ": two couples share the flag in V";
    EXPECT_EQ(it->second, vstar);
  }
}

}  // namespace

TEST(Enumerate, TwoCouples) {
  auto m = levi::testing::load("two_couples");
  auto c = count_self_normalizing(m.levi("L"), m.spec);
  EXPECT_EQ(c.total, Count::finite(2));
  for (const auto& [o, k] : c.per_order) EXPECT_EQ(k, 1);
}

TEST(Enumerate, ThreeParabolics) {
  auto m = levi::testing::load("three_parabolics");
  const LeviDatum& l = m.levi("L");
  auto fin = finiteness_test(l, m.spec);
  EXPECT_TRUE(fin.finite);
  EXPECT_EQ(fin.quotients.at(0b00), QuotientDim::finite(1));
  EXPECT_EQ(fin.quotients.at(0b10), QuotientDim::finite(1));
  EXPECT_EQ(fin.quotients.at(0b01), QuotientDim::finite(0));
  EXPECT_EQ(fin.quotients.at(0b11), QuotientDim::finite(1));
  auto c = count_self_normalizing(l, m.spec);
  EXPECT_EQ(c.total, Count::finite(3));
  EXPECT_EQ(c.per_order.at(m.order("forward")), 1);
  EXPECT_EQ(c.per_order.at(m.order("backward")), 2);
  check_enumeration(l, m.spec, enumerate_all(l, m.spec), "three parabolics");
}

TEST(Enumerate, OneBlock) {
  auto m = levi::testing::load("one_block");
  const LeviDatum& l = m.levi("L");
  EXPECT_EQ(count_self_normalizing(l, m.spec).total, Count::finite(1));
  EXPECT_EQ(one_block_analysis(m.subspace("X"), m.subspace("Y")), Count::finite(1));
  auto en = enumerate_all(l, m.spec);
  ASSERT_EQ(en.couples.size(), 1u);
  EXPECT_EQ(trace_condition_count(en.couples[0].couple, AlgebraKind::gl), Count::finite(2));
  EXPECT_EQ(en.couples[0].couple.flag_v, flag_from_chain(m.spec, L, {m.subspace("line")}));
}

TEST(Enumerate, TwoDimensionalPerpIsUncountable) {
  auto spec = freeze(SpaceSpec::dual_pair(Universe{}));
  Subspace x = Subspace::span(spec, L, {}, {{cls(1, 0, 3), Vector(L)}});
  Subspace y = Subspace::span(spec, R, {}, {{cls(1, 0, 3), e(R, 1)}});
  LeviDatum l{AlgebraKind::sl, {{x, y}}, std::nullopt};
  auto c = count_self_normalizing(l, spec);
  EXPECT_TRUE(c.total.uncountable);
  EXPECT_EQ(c.finiteness.witness, std::vector<std::size_t>{0});
  EXPECT_EQ(one_block_analysis(x, y), Count::infinity());
  try {
    enumerate_all(l, spec);
    FAIL() << "expected an infinite family";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::infinite_family);
  }
}

TEST(Enumerate, OneBlockWithPairedPerps) {
  // X^⊥ = span{v1*}, Y^⊥ = span{v1}: both lines, pairing to 1, so two couples
  auto spec = freeze(SpaceSpec::dual_pair(Universe{}));
  Subspace x = Subspace::span(spec, L, {}, {{cls(1, 0, 2), Vector(L)}});
  Subspace y = Subspace::span(spec, R, {}, {{cls(1, 0, 2), Vector(R)}});
  LeviDatum l{AlgebraKind::gl, {{x, y}}, std::nullopt};
  EXPECT_EQ(one_block_analysis(x, y), Count::finite(2));
  EXPECT_EQ(count_self_normalizing(l, spec).total, Count::finite(2));
}

TEST(Enumerate, EightTimesFiveFactorialIdentityOrder) {
  auto m = levi::testing::load("eight_times_five_factorial");
  const LeviDatum& l = m.levi("L");
  auto en = enumerate_couples(l, m.spec, m.order("identity"));
  ASSERT_EQ(en.couples.size(), 8u);
  std::vector<std::set<std::string>> seen(5);
  for (const auto& c : en.couples)
    for (std::size_t p = 0; p < 5; ++p) seen[p].insert(c.u[p].key());
  EXPECT_EQ(seen[0].size(), 2u);
  EXPECT_EQ(seen[1].size(), 1u);
  EXPECT_EQ(seen[2].size(), 2u);
  EXPECT_EQ(seen[3].size(), 1u);
  EXPECT_EQ(seen[4].size(), 2u);
  check_enumeration(l, m.spec, en, "8*5!");
}

TEST(EnumerateProperty, RandomFiniteData) {
  Gen g(default_seed() + 41);
  int done = 0;
  for (int t = 0; t < 400 && done < 25; ++t) {
    long n = g.uniform(1, 3);
    SpecPtr spec = levi::testing::random_dual_spec(g);
    auto l = levi::testing::random_levi(g, spec, n);
    if (!l) continue;
    auto c = count_self_normalizing(*l, spec);
    if (c.total.uncountable) continue;
    ++done;
    EXPECT_LE(c.total.value, levi::testing::bound_for(n));
    if (n == 1) {
      EXPECT_EQ(one_block_analysis(l->summands[0].x, l->summands[0].y), c.total);
    }
    auto en = enumerate_all(*l, spec);
    EXPECT_EQ(static_cast<long>(en.couples.size()), c.total.value);
    check_enumeration(*l, spec, en, "random datum");
  }
  EXPECT_GE(done, 10);
}
