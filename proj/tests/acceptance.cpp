// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>

#include "support.hpp"

using namespace levi;
using levi::testing::e;
using levi::testing::Gen;
using levi::testing::load;

namespace {

const Side L = Side::left, R = Side::right;

struct Outcome {
  bool ok = true;
  std::string note;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

using Chains = std::pair<std::vector<Subspace>, std::vector<Subspace>>;

// couples compared as (V-chain, V*-chain) with the trivial ends dropped
std::set<std::pair<std::string, std::string>> couple_set(const std::vector<TautCouple>& cs) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& c : cs) out.emplace(levi::testing::flag_key(c.flag_v), levi::testing::flag_key(*c.flag_vstar));
  return out;
}

TautCouple make(const SpecPtr& spec, const Chains& ch) {
  return {flag_from_chain(spec, L, ch.first), flag_from_chain(spec, R, ch.second)};
}

std::vector<TautCouple> couples_of(const Enumeration& en) {
  std::vector<TautCouple> out;
  for (const auto& c : en.couples) out.push_back(c.couple);
  return out;
}

Subspace span(const SpecPtr& spec, Side s, std::vector<Vector> v) { return Subspace::span(spec, s, std::move(v)); }

Outcome two_couples() {
  Outcome o;
  auto m = load("two_couples");
  auto en = enumerate_all(m.levi("L"), m.spec);
  o.expect(en.couples.size() == 2, "expected 2 couples, got " + std::to_string(en.couples.size()));
  const Subspace &x1 = m.subspace("X1"), &x2 = m.subspace("X2");
  std::vector<TautCouple> want = {make(m.spec, {{x2, sum(x1, x2)}, {m.subspace("Y1")}}),
                                  make(m.spec, {{x1, sum(x1, x2)}, {m.subspace("Y2")}})};
  o.expect(couple_set(couples_of(en)) == couple_set(want), "couples differ from the listed pair");
  return o;
}

Outcome three_parabolics() {
  Outcome o;
  auto m = load("three_parabolics");
  const LeviDatum& l = m.levi("L");
  auto c = count_self_normalizing(l, m.spec);
  o.expect(c.total == Count::finite(3), "count is not 3");
  // bit k of the mask is block k+1
  const auto& q = c.finiteness.quotients;
  o.expect(q.at(0b00) == QuotientDim::finite(1) && q.at(0b10) == QuotientDim::finite(1) &&
               q.at(0b01) == QuotientDim::finite(0) && q.at(0b11) == QuotientDim::finite(1),
           "quotient dimensions differ");
  const Subspace &x1 = m.subspace("X1"), &x2 = m.subspace("X2"), &y1 = m.subspace("Y1"), &y2 = m.subspace("Y2");
  Subspace v1 = span(m.spec, L, {e(L, 1)}), v2 = span(m.spec, L, {e(L, 2)}), v2s = span(m.spec, R, {e(R, 2)});
  Subspace v1p = perp(v1);
  std::vector<TautCouple> want = {
      make(m.spec, {{v1, sum(v1, x1), sum(sum(v1, x1), x2)}, {v2s, sum(y2, v2s), v1p}}),
      make(m.spec, {{v1, sum(v1, x2), sum(sum(v1, x2), x1)}, {v2s, sum(v2s, y1), v1p}}),
      make(m.spec, {{v1, sum(v1, x2), sum(sum(v1, x2), v2)}, {y1, sum(y1, v2s), v1p}})};
  auto en = enumerate_all(l, m.spec);
  o.expect(couple_set(couples_of(en)) == couple_set(want), "couples differ from the listed three");
  std::map<std::vector<std::size_t>, int> per;
  for (const auto& x : en.couples) ++per[x.order];
  o.expect(per[m.order("forward")] == 1 && per[m.order("backward")] == 2, "per-order split is not 1 + 2");
  return o;
}

Outcome one_block() {
  Outcome o;
  auto m = load("one_block");
  o.expect(perp(m.subspace("X")).is_zero(), "perp X is not 0");
  o.expect(perp(m.subspace("Y")) == m.subspace("line"), "perp Y is not span{v1}");
  auto c = count_self_normalizing(m.levi("L"), m.spec);
  o.expect(c.total == Count::finite(1), "count is not 1");
  auto en = enumerate_all(m.levi("L"), m.spec);
  o.expect(en.couples.size() == 1, "enumeration size is not 1");
  if (en.couples.size() == 1)
    o.expect(trace_condition_count(en.couples[0].couple, AlgebraKind::gl) == Count::finite(2), "trace count is not 2");
  return o;
}

Outcome eight_times_five_factorial() {
  Outcome o;
  auto m = load("eight_times_five_factorial");
  const LeviDatum& l = m.levi("L");
  auto c = count_self_normalizing(l, m.spec);
  o.expect(c.total == Count::finite(960), "count is " + (c.total.uncountable ? std::string("uncountable") : std::to_string(c.total.value)));
  auto sp = [&](std::initializer_list<const char*> names) {
    std::vector<Vector> v;
    for (const char* n : names) v.push_back(Vector::special(L, *m.spec->find_special(L, n)));
    return span(m.spec, L, v);
  };
  Subspace x12 = sum(m.subspace("X1"), m.subspace("X2"));
  Subspace x123 = sum(x12, m.subspace("X3"));
  Subspace x1234 = sum(x123, m.subspace("X4"));
  std::vector<std::vector<Subspace>> options = {
      {Subspace::zero(m.spec, L), sp({"z"})},
      {sum(m.subspace("X1"), sp({"z"}))},
      {sum(x12, sp({"z"})), sum(x12, sp({"z", "w1"}))},
      {sum(x123, sp({"z", "w1", "w2", "w3"}))},
      {sum(x1234, sp({"z", "w1", "w2", "w3", "w4", "w5", "w6"})),
       sum(x1234, sp({"z", "w1", "w2", "w3", "w4", "w5", "w6", "w11"}))}};
  std::set<std::vector<std::string>> want;
  for (const auto& a : options[0])
    for (const auto& b : options[2])
      for (const auto& d : options[4]) want.insert({a.key(), options[1][0].key(), b.key(), options[3][0].key(), d.key()});
  std::set<std::vector<std::string>> got;
  auto en = enumerate_couples(l, m.spec, m.order("identity"));
  for (const auto& x : en.couples) {
    std::vector<std::string> keys;
    for (const auto& u : x.u) keys.push_back(u.key());
    got.insert(keys);
  }
  o.expect(en.couples.size() == 8, "identity order gives " + std::to_string(en.couples.size()) + " couples");
  o.expect(got == want, "U tuples differ from the listed 8");
  return o;
}

Outcome orthogonal_symplectic() {
  Outcome o;
  for (const char* name : {"so", "sp"}) {
    auto m = load(name);
    const LeviDatum& l = m.levi("L");
    Flag want = flag_from_chain(m.spec, L, {m.subspace("line"), m.subspace("lineW")});
    auto s = search_self_taut(l);
    o.expect(s.exhaustive && s.flags.size() == 1, std::string(name) + ": search did not give exactly one flag");
    if (s.flags.size() == 1) o.expect(s.flags[0] == want, std::string(name) + ": wrong flag");
    const Subspace& w = *l.w;
    o.expect(intersect(perp(perp(w)), perp(w)) == m.subspace("line"), std::string(name) + ": forced line differs");
    bool lev = std::string(name) == "so" ? is_levi_so(want, l) : is_levi_sp(want, l);
    o.expect(lev, std::string(name) + ": not a Levi component");
  }
  return o;
}

Outcome max_semisimple() {
  Outcome o;
  auto m = load("max_semisimple");
  const TautCouple& p = m.couple("P");
  o.expect(is_taut_couple(p.flag_v, *p.flag_vstar), "P is not taut");
  o.expect(!is_levi_component(p, m.levi("L")).is_levi, "reported as a Levi component");
  return o;
}

Outcome lattice_laws() {
  Outcome o;
  Gen g(default_seed());
  for (int t = 0; t < 1000 && o.ok; ++t) {
    SpecPtr spec = g.spec();
    Side s = g.coin() && !spec->selfdual() ? R : L;
    Subspace a = g.subspace(spec, s);
    Subspace b = sum(a, g.subspace(spec, s));
    o.expect(includes(perp(a), perp(b)), "perp reverses inclusion: " + to_string(a));
    o.expect(includes(closure(a), a), "closure is extensive: " + to_string(a));
    o.expect(perp(a) == perp(closure(a)), "triple perp: " + to_string(a));
    o.expect(closure(closure(a)) == closure(a), "closure idempotent: " + to_string(a));
  }
  for (int t = 0; t < 1000 && o.ok; ++t) {
    SpecPtr spec = g.spec();
    Side s = g.coin() && !spec->selfdual() ? R : L;
    Subspace a = g.subspace(spec, s), b = g.subspace(spec, s);
    o.expect(perp(sum(a, b)) == intersect(perp(a), perp(b)), "De Morgan: " + to_string(a) + " / " + to_string(b));
  }
  for (int t = 0; t < 1000 && o.ok; ++t) {
    SpecPtr spec = g.spec();
    auto [x, y] = g.nondegenerate_pair(spec);
    Subspace u = triple_perp(g.subspace(spec, L), x, y);
    o.expect(triple_perp(u, x, y) == u, "triple perp fixed point: " + to_string(u));
  }
  return o;
}

Outcome count_bounds() {
  Outcome o;
  Gen g(default_seed() + 7);
  int done = 0, tries = 0;
  while (done < 50 && tries < 2000 && o.ok) {
    ++tries;
    long n = 1 + done % 3;
    SpecPtr spec = levi::testing::random_dual_spec(g);
    auto l = levi::testing::random_levi(g, spec, n);
    if (!l) continue;
    auto c = count_self_normalizing(*l, spec);
    if (c.total.uncountable) continue;
    ++done;
    o.expect(c.total.value <= levi::testing::bound_for(n), "bound exceeded for n = " + std::to_string(n));
    auto en = enumerate_all(*l, spec);
    o.expect(static_cast<long>(en.couples.size()) == c.total.value, "enumeration size differs from count");
    std::set<std::string> seen;
    for (const auto& x : en.couples)
      o.expect(seen.insert(levi::testing::flag_key(x.couple.flag_v)).second, "two couples share the flag in V");
  }
  o.expect(done == 50, "only " + std::to_string(done) + " finite data found");
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  const std::vector<long> cutoffs = {10, 20, 40};
  Gen g(default_seed() + 9);
  for (int t = 0; t < 200 && o.ok; ++t) {
    SpecPtr spec = g.spec();
    Side s = g.coin() && !spec->selfdual() ? R : L;
    Subspace a = g.subspace(spec, s), b = g.subspace(spec, s);
    std::uint64_t seed = g.rng()();
    std::vector<std::pair<oracle::CheckKind, std::vector<Subspace>>> checks = {
        {oracle::CheckKind::membership, {a}}, {oracle::CheckKind::perp, {a}},
        {oracle::CheckKind::closure, {a}},    {oracle::CheckKind::sum, {a, b}},
        {oracle::CheckKind::intersect, {a, b}}, {oracle::CheckKind::quotient_dim, {a, sum(a, b)}}};
    for (const auto& [k, ops] : checks)
      o.expect(oracle::oracle_check(k, ops, cutoffs, seed).pass(),
               std::string(oracle::check_name(k)) + " disagrees on " + to_string(a) + " / " + to_string(b));
  }
  for (const auto& name : levi::testing::model_names()) {
    auto m = load(name);
    auto r = detail::oracle_all(m, cutoffs, default_seed());
    o.expect(r.result["value"].get<bool>(), std::string(name) + " disagrees with the oracle");
  }
  return o;
}

struct Criterion {
  int id;
  const char* what;
  double limit;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "two couples on the all-ones example", 1.0, two_couples},
      {2, "three parabolics, quotients and chains", 2.0, three_parabolics},
      {3, "one block: perps, count, trace condition", 1.0, one_block},
      {4, "8*5! couples and U values on the identity order", 30.0, eight_times_five_factorial},
      {5, "so/sp: single self-taut flag", 2.0, orthogonal_symplectic},
      {6, "maximal semisimple is not a Levi component", 1.0, max_semisimple},
      {7, "Galois, De Morgan, triple perp x1000", 60.0, lattice_laws},
      {8, "count bound on 50 random finite data", 120.0, count_bounds},
      {9, "oracle agreement at 10, 20, 40", 120.0, oracle_agreement},
  };
  bool all = true;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.note = std::string("exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit) {
      o.ok = false;
      if (o.note.empty()) o.note = "over time";
    }
    all = all && o.ok;
    std::printf("%s criterion %d: %s (%.2fs, limit %.0fs)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.what, secs, c.limit,
                o.note.empty() ? "" : " ", o.note.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
