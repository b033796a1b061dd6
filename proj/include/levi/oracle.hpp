#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "levi/subspace.hpp"

// Brute force shadows of the subspace calculus. Everything here works on dense
// rows over the basis vectors with |i| <= cutoff plus all specials, and only
// uses generators and the pairing, never the pattern-level algorithms.
namespace levi::oracle {

struct Window {
  Side side;
  long cutoff;
  std::vector<BasisKey> keys;
  std::map<BasisKey, std::size_t> col;

  Window(const SpaceSpec& spec, Side s, long n) : side(s), cutoff(n) {
    for (long i = -n; i <= n; ++i)
      if (spec.universe().contains(i)) keys.push_back(BasisKey::regular(i));
    for (std::size_t k = 0; k < spec.specials(s).size(); ++k) keys.push_back(BasisKey::named(static_cast<long>(k)));
    for (std::size_t k = 0; k < keys.size(); ++k) col[keys[k]] = k;
  }
  std::size_t size() const { return keys.size(); }
  bool inside(BasisKey k) const { return k.special || std::labs(k.index) <= cutoff; }

  Row dense(const Vector& v) const {
    Row r(size());
    for (const auto& [k, c] : v.terms()) {
      auto it = col.find(k);
      if (it == col.end()) fail(ErrorCode::internal, "vector leaves the oracle window");
      r[it->second] = c;
    }
    return r;
  }
  Vector sparse(const Row& r) const {
    Vector v(side);
    for (std::size_t k = 0; k < size(); ++k)
      if (sgn(r[k]) != 0) v.add(keys[k], r[k]);
    return v;
  }
};

struct TruncatedSpace {
  long cutoff = 0;
  std::vector<BasisKey> left, right;
  Matrix gram;  // left × right
};

inline TruncatedSpace truncate(const SpaceSpec& spec, long n) {
  long need = std::max(spec.threshold(), spec.period());
  if (n < need)
    fail(ErrorCode::precondition, "cutoff " + std::to_string(n) + " below the pairing threshold and period " + std::to_string(need));
  Window l(spec, Side::left, n), r(spec, pairing_side(spec), n);
  TruncatedSpace t{n, l.keys, r.keys, Matrix(l.size(), r.size())};
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) t.gram(i, j) = spec.pair_basis(l.keys[i], r.keys[j]);
  return t;
}

inline Vector unit(Side side, BasisKey k) {
  Vector e(side);
  e.add(k, 1);
  return e;
}

// generators past the cutoff needed so that every periodic effect is seen
inline long guard(const Subspace& s) {
  const SpaceSpec& spec = s.space();
  return std::lcm(s.modulus(), spec.period()) + std::max(s.threshold(), spec.threshold());
}

// basis vectors plus every tail member with |j| <= n
inline std::vector<Vector> generators(const Subspace& s, long n) {
  const SpaceSpec& spec = s.space();
  std::vector<Vector> out = s.basis();
  long m = s.modulus();
  for (const auto& [c, anchor] : s.tails())
    for (long a = s.threshold() + 1; a <= n; ++a) {
      long j = c.sign * a;
      if (mod(j, m) != c.residue || !spec.universe().contains(j)) continue;
      Vector v = anchor;
      v.add(BasisKey::regular(j), 1);
      out.push_back(std::move(v));
    }
  return out;
}

// span(gens) ∩ window(n); gens may reach beyond the window
inline RowSpace restrict_span(const SpaceSpec& spec, Side side, const std::vector<Vector>& gens, long n) {
  long big = n;
  for (const auto& g : gens) big = std::max(big, g.max_abs_index());
  Window wide(spec, side, big), small(spec, side, n);
  // outside columns first so that RREF rows with an inside pivot vanish outside
  std::vector<std::size_t> perm;
  for (std::size_t k = 0; k < wide.size(); ++k)
    if (!small.inside(wide.keys[k])) perm.push_back(k);
  std::size_t outside = perm.size();
  for (std::size_t k = 0; k < wide.size(); ++k)
    if (small.inside(wide.keys[k])) perm.push_back(k);
  std::vector<Row> rows;
  for (const auto& g : gens) {
    Row d = wide.dense(g), p(wide.size());
    for (std::size_t k = 0; k < perm.size(); ++k) p[k] = d[perm[k]];
    rows.push_back(std::move(p));
  }
  auto piv = rref_in_place(rows, wide.size());
  RowSpace out(small.size());
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] < outside) continue;
    Vector v(side);
    for (std::size_t k = outside; k < perm.size(); ++k)
      if (sgn(rows[r][k]) != 0) v.add(wide.keys[perm[k]], rows[r][k]);
    out.insert(small.dense(v));
  }
  return out;
}

inline RowSpace project_subspace(const Subspace& s, long n) {
  return restrict_span(s.space(), s.side(), generators(s, n + guard(s)), n);
}

// {y in window(n) on the pairing side : <g, y> = 0 for all generators g}
inline RowSpace dense_perp(const Subspace& s, long n) {
  const SpaceSpec& spec = s.space();
  Side other = spec.selfdual() ? Side::left : (s.side() == Side::left ? Side::right : Side::left);
  Window w(spec, other, n);
  Matrix cons(0, w.size());
  for (const auto& g : generators(s, n + guard(s))) {
    Row r(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) r[k] = spec.pair_any(g, unit(other, w.keys[k]));
    cons.append(std::move(r));
  }
  RowSpace out(w.size());
  for (auto& k : kernel(cons)) out.insert(std::move(k));
  return out;
}

// closure(s) ∩ window(n): annihilator of perp(s) seen at a wider cutoff
inline RowSpace dense_closure(const Subspace& s, long n) {
  const SpaceSpec& spec = s.space();
  long wide = n + 2 * guard(s);
  Side other = spec.selfdual() ? Side::left : (s.side() == Side::left ? Side::right : Side::left);
  Window wp(spec, other, wide), w(spec, s.side(), n);
  RowSpace p = dense_perp(s, wide);
  Matrix cons(0, w.size());
  for (const auto& row : p.rows()) {
    Vector y = wp.sparse(row);
    Row r(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) r[k] = spec.pair_any(unit(s.side(), w.keys[k]), y);
    cons.append(std::move(r));
  }
  RowSpace out(w.size());
  for (auto& k : kernel(cons)) out.insert(std::move(k));
  return out;
}

inline RowSpace intersect_spaces(const RowSpace& a, const RowSpace& b) {
  // x = λA = μB: kernel of [A; -B]^T
  std::size_t cols = a.cols();
  std::size_t na = a.dim(), nb = b.dim();
  Matrix m(cols, na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t c = 0; c < cols; ++c) m(c, i) = a.rows()[i][c];
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t c = 0; c < cols; ++c) m(c, na + i) = -b.rows()[i][c];
  RowSpace out(cols);
  for (const auto& k : kernel(m)) {
    Row x(cols);
    for (std::size_t i = 0; i < na; ++i)
      if (sgn(k[i]) != 0)
        for (std::size_t c = 0; c < cols; ++c) x[c] += k[i] * a.rows()[i][c];
    out.insert(std::move(x));
  }
  return out;
}

inline bool same_space(const RowSpace& a, const RowSpace& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& r : a.rows())
    if (!b.contains(r)) return false;
  return true;
}

// restriction of a space over window(big) to window(small)
inline RowSpace shrink_space(const SpaceSpec& spec, Side side, const RowSpace& s, long big, long small) {
  Window w(spec, side, big);
  std::vector<Vector> gens;
  for (const auto& r : s.rows()) gens.push_back(w.sparse(r));
  return restrict_span(spec, side, gens, small);
}

enum class CheckKind { membership, perp, closure, sum, intersect, quotient_dim };

inline const char* check_name(CheckKind k) {
  switch (k) {
    case CheckKind::membership: return "membership";
    case CheckKind::perp: return "perp";
    case CheckKind::closure: return "closure";
    case CheckKind::sum: return "sum";
    case CheckKind::intersect: return "intersect";
    case CheckKind::quotient_dim: return "quotient_dim";
  }
  return "";
}

struct CutoffResult {
  long cutoff = 0;
  bool agree = false;
  std::string detail;
};

struct OracleReport {
  CheckKind kind = CheckKind::membership;
  std::vector<CutoffResult> cutoffs;
  bool stable = false;

  bool pass() const {
    for (const auto& c : cutoffs)
      if (!c.agree) return false;
    return stable;
  }
};

inline OracleReport oracle_check(CheckKind kind, const std::vector<Subspace>& ops, const std::vector<long>& cutoffs,
                                 std::uint64_t seed = 1) {
  if (ops.empty()) fail(ErrorCode::precondition, "oracle check needs operands");
  for (std::size_t k = 1; k < cutoffs.size(); ++k)
    if (cutoffs[k] <= cutoffs[k - 1]) fail(ErrorCode::precondition, "cutoffs must increase");
  std::size_t want = (kind == CheckKind::sum || kind == CheckKind::intersect || kind == CheckKind::quotient_dim) ? 2 : 1;
  if (ops.size() != want) fail(ErrorCode::precondition, std::string(check_name(kind)) + " takes " + std::to_string(want) + " operands");
  const Subspace& a = ops[0];
  const SpaceSpec& spec = a.space();
  OracleReport rep;
  rep.kind = kind;
  std::vector<RowSpace> dense;
  std::vector<long> diffs;
  std::optional<Subspace> result;
  Side rside = a.side();
  switch (kind) {
    case CheckKind::perp: result = perp(a); rside = result->side(); break;
    case CheckKind::closure: result = closure(a); break;
    case CheckKind::sum: result = sum(a, ops[1]); break;
    case CheckKind::intersect: result = intersect(a, ops[1]); break;
    default: break;
  }
  std::mt19937_64 rng(seed);
  for (long n : cutoffs) {
    CutoffResult cr;
    cr.cutoff = n;
    switch (kind) {
      case CheckKind::membership: {
        RowSpace p = project_subspace(a, n);
        Window w(spec, a.side(), n);
        std::uniform_int_distribution<int> coef(-2, 2);
        cr.agree = true;
        for (int t = 0; t < 20 && cr.agree; ++t) {
          Row x(w.size());
          if (t % 2 == 0 && p.dim() > 0) {
            for (const auto& r : p.rows()) {
              Scalar c = coef(rng);
              for (std::size_t k = 0; k < x.size(); ++k) x[k] += c * r[k];
            }
          } else {
            for (auto& e : x) e = coef(rng);
          }
          bool pattern = contains_vector(a, w.sparse(x));
          if (pattern != p.contains(x)) {
            cr.agree = false;
            cr.detail = "membership differs for " + format_vector(spec, w.sparse(x));
          }
        }
        dense.push_back(p);
        break;
      }
      case CheckKind::quotient_dim: {
        const Subspace& b = ops[1];
        long d = static_cast<long>(project_subspace(b, n).dim()) - static_cast<long>(project_subspace(a, n).dim());
        diffs.push_back(d);
        auto q = quotient_dim(a, b);
        // before the periodic part is in view the window only bounds the quotient from below
        bool settled = n >= std::max(guard(a), guard(b));
        if (settled) cr.agree = q.infinite ? d > 0 : d == q.value;
        else cr.agree = d >= 0 && (q.infinite || d <= q.value);
        cr.detail = "window codimension " + std::to_string(d) + ", pattern " + q.to_string() + (settled ? "" : " (below guard)");
        break;
      }
      default: {
        RowSpace d(0);
        if (kind == CheckKind::perp) d = dense_perp(a, n);
        else if (kind == CheckKind::closure) d = dense_closure(a, n);
        else if (kind == CheckKind::sum) {
          auto g = generators(a, n + guard(a));
          for (auto& v : generators(ops[1], n + guard(ops[1]))) g.push_back(std::move(v));
          d = restrict_span(spec, a.side(), g, n);
        } else {
          d = intersect_spaces(project_subspace(a, n), project_subspace(ops[1], n));
        }
        cr.agree = same_space(d, project_subspace(*result, n));
        cr.detail = "window dimension " + std::to_string(d.dim());
        dense.push_back(std::move(d));
        break;
      }
    }
    rep.cutoffs.push_back(std::move(cr));
  }
  std::size_t k = cutoffs.size();
  if (k < 2) {
    rep.stable = true;
  } else if (kind == CheckKind::quotient_dim) {
    auto q = quotient_dim(a, ops[1]);
    rep.stable = q.infinite ? diffs[k - 1] > diffs[k - 2] : diffs[k - 1] == diffs[k - 2];
  } else {
    rep.stable = same_space(shrink_space(spec, rside, dense[k - 1], cutoffs[k - 1], cutoffs[k - 2]), dense[k - 2]);
  }
  return rep;
}

}  // namespace levi::oracle
