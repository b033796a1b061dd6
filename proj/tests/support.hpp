#pragma once

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "levi/dsl.hpp"
#include "levi/enumerate.hpp"
#include "levi/report.hpp"

namespace levi::testing {

inline std::string model_path(const std::string& name) { return std::string(LEVI_MODELS_DIR) + "/" + name + ".levi"; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::precondition, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline dsl::Model load(const std::string& name) { return dsl::parse_model(read_file(model_path(name))); }

inline const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {"two_couples", "three_parabolics", "one_block",
                                                 "eight_times_five_factorial", "max_semisimple", "so", "sp"};
  return names;
}

inline Vector e(Side s, long i) { return Vector::regular(s, i); }

inline Subspace span_of(const SpecPtr& spec, Side s, std::vector<Vector> gens, std::vector<TailFamily> fams = {}) {
  return Subspace::span(spec, s, gens, fams);
}

// residue class r mod m from lo upward
inline IndexPattern cls(long m, long r, long lo) { return IndexPattern::residue_classes(m, {r}, lo, std::nullopt); }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  Scalar coefficient() {
    long c = 0;
    while (c == 0) c = uniform(-2, 2);
    return c;
  }
  std::mt19937_64& rng() { return rng_; }

  // a small pairing: positive, integer or hyperbolic indices, sometimes with specials
  SpecPtr spec() {
    switch (uniform(0, 4)) {
      case 0: return freeze(SpaceSpec::dual_pair(Universe{}));
      case 1: {
        auto s = SpaceSpec::dual_pair(Universe{});
        long v = s.add_special(Side::left, "v");
        s.add_row(Side::left, v, IndexPattern::all(), 1);
        if (coin()) {
          long u = s.add_special(Side::right, "u");
          s.add_row(Side::right, u, cls(3, uniform(0, 2), 1), 1);
          s.set_gram(v, u, uniform(0, 1));
        }
        return freeze(std::move(s));
      }
      case 2: return freeze(SpaceSpec::dual_pair(Universe{Universe::Kind::integers, {}}));
      case 3: return freeze(SpaceSpec::selfdual(Universe{Universe::Kind::nonzero, {}}, coin()));
      default: {
        auto s = SpaceSpec::dual_pair(Universe{});
        long w = s.add_special(Side::right, "w");
        s.add_row(Side::right, w, cls(2, 0, 1), 1);
        return freeze(std::move(s));
      }
    }
  }

  long index(const SpaceSpec& spec, long reach) {
    for (;;) {
      long i = uniform(spec.universe().two_sided() ? -reach : 1, reach);
      if (spec.universe().contains(i)) return i;
    }
  }

  Vector vector(const SpaceSpec& spec, Side s, long terms, long reach) {
    Vector v(s);
    long nspecial = static_cast<long>(spec.specials(s).size());
    for (long t = 0; t < terms; ++t) {
      if (nspecial > 0 && coin(0.25)) v.add(BasisKey::named(uniform(0, nspecial - 1)), coefficient());
      else v.add(BasisKey::regular(index(spec, reach)), coefficient());
    }
    return v;
  }

  IndexPattern pattern(const SpaceSpec& spec) {
    long m = uniform(1, 4);
    std::set<long> res;
    for (long r = 0; r < m; ++r)
      if (coin()) res.insert(r);
    if (res.empty()) res.insert(uniform(0, m - 1));
    long lo = uniform(2, 5);
    if (!spec.universe().two_sided()) return IndexPattern::residue_classes(m, res, lo, std::nullopt);
    switch (uniform(0, 2)) {
      case 0: return IndexPattern::residue_classes(m, res, lo, std::nullopt);
      case 1: return IndexPattern::residue_classes(m, res, std::nullopt, -lo);
      default: return difference(IndexPattern::residue_classes(m, res, std::nullopt, std::nullopt),
                                 IndexPattern::residue_classes(1, {0}, -lo, lo));
    }
  }

  Subspace subspace(const SpecPtr& spec, Side s) {
    std::vector<Vector> gens;
    for (long k = uniform(0, 2); k > 0; --k) gens.push_back(vector(*spec, s, uniform(1, 3), 6));
    std::vector<TailFamily> fams;
    for (long k = uniform(0, 2); k > 0; --k) {
      Vector anchor = coin(0.4) ? Vector(s) : vector(*spec, s, uniform(1, 2), 2);
      fams.push_back({pattern(*spec), anchor});
    }
    return Subspace::span(spec, s, gens, fams);
  }

  // X in V, Y on the pairing side, with nondegenerate restriction
  std::pair<Subspace, Subspace> nondegenerate_pair(const SpecPtr& spec) {
    Side r = pairing_side(*spec);
    for (;;) {
      long m = uniform(1, 3), lo = uniform(2, 4);
      std::set<long> res, mirrored;
      for (long k = 0; k < m; ++k)
        if (coin()) res.insert(k);
      if (res.empty()) res.insert(0);
      for (long k : res) mirrored.insert(-k);
      auto p = IndexPattern::residue_classes(m, res, lo, std::nullopt);
      auto q = spec->selfdual() ? IndexPattern::residue_classes(m, mirrored, std::nullopt, -lo) : p;
      auto anchor = [&](Side s) { return coin() ? Vector(s) : vector(*spec, s, 1, 1); };
      std::vector<Vector> xg, yg;
      if (coin(0.3)) {
        xg.push_back(Vector::regular(Side::left, 1));
        yg.push_back(Vector::regular(r, spec->selfdual() ? -1 : 1));
      }
      Subspace x = Subspace::span(spec, Side::left, xg, {{p, anchor(Side::left)}});
      Subspace y = Subspace::span(spec, r, yg, {{q, anchor(r)}});
      if (nondegenerate(x, y)) return {x, y};
    }
  }

 private:
  std::mt19937_64 rng_;
};

// A random gl datum with n summands: the indices beyond a short window split
// into n groups of residue classes, each summand a family over its group with
// anchors in the window. Candidates failing validation are skipped.
inline std::optional<LeviDatum> random_levi(Gen& g, const SpecPtr& spec, long n) {
  long m = n * g.uniform(1, 2);
  long window = g.uniform(0, 2);
  std::vector<std::set<long>> groups(n);
  for (long r = 0; r < m; ++r) groups[r < n ? r : g.uniform(0, n - 1)].insert(r);
  auto anchor = [&](Side s) {
    Vector a(s);
    for (long i = 1; i <= window; ++i)
      if (g.coin(0.4)) a.add(BasisKey::regular(i), g.uniform(-1, 1));
    long ns = static_cast<long>(spec->specials(s).size());
    if (ns > 0 && g.coin(0.3)) a.add(BasisKey::named(g.uniform(0, ns - 1)), 1);
    return a;
  };
  LeviDatum l;
  l.kind = g.coin() ? AlgebraKind::gl : AlgebraKind::sl;
  for (long k = 0; k < n; ++k) {
    auto p = IndexPattern::residue_classes(m, groups[k], window + 1, std::nullopt);
    Subspace x = Subspace::span(spec, Side::left, {}, {{p, anchor(Side::left)}});
    Subspace y = Subspace::span(spec, Side::right, {}, {{p, anchor(Side::right)}});
    l.summands.push_back({x, y});
  }
  if (!validate_levi(l).pass) return std::nullopt;
  return l;
}

inline SpecPtr random_dual_spec(Gen& g) {
  auto s = SpaceSpec::dual_pair(Universe{});
  if (g.coin(0.3)) {
    long v = s.add_special(Side::left, "v");
    s.add_row(Side::left, v, IndexPattern::all(), 1);
  }
  return freeze(std::move(s));
}

inline long bound_for(long n) {
  if (n == 1) return 2;
  long f = 1;
  for (long k = 2; k <= n; ++k) f *= k;
  return 3 * (1L << (n - 2)) * f;
}

inline std::set<std::string> member_keys(const Flag& f) {
  std::set<std::string> out;
  for (const auto& s : f.members()) out.insert(s.key());
  return out;
}

inline std::string flag_key(const Flag& f) {
  std::string k;
  for (const auto& s : f.members()) k += s.key() + "|";
  return k;
}

}  // namespace levi::testing
