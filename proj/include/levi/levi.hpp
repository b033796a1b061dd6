#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levi/flag.hpp"

namespace levi {

enum class AlgebraKind { gl, sl, so, sp };

inline const char* kind_name(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::gl: return "gl";
    case AlgebraKind::sl: return "sl";
    case AlgebraKind::so: return "so";
    case AlgebraKind::sp: return "sp";
  }
  return "";
}

struct Summand {
  Subspace x, y;
};

struct LeviDatum {
  AlgebraKind kind = AlgebraKind::sl;
  std::vector<Summand> summands;
  std::optional<Subspace> w;

  std::size_t size() const { return summands.size(); }
  bool orthogonal_kind() const { return kind == AlgebraKind::so || kind == AlgebraKind::sp; }
};

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::pair<Vector, Vector>> witnesses;

  void add(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
};

namespace detail {

// generators of s: window basis at threshold n plus one member per tail class
inline std::vector<Vector> probes(const Subspace& s, long m, long n) {
  const SpaceSpec& spec = s.space();
  m = std::lcm(m, s.modulus());
  n = std::max(n, s.threshold());
  auto f = frame(spec, s.data(), m, n);
  std::vector<Vector> out;
  for (const auto& r : f.space.rows()) out.push_back(f.layout.sparse(r));
  for (const auto& [c, a] : f.tails) {
    Vector x = f.layout.sparse(a);
    x.add(BasisKey::regular(representative(c, m, n)), 1);
    out.push_back(std::move(x));
  }
  return out;
}

// a pair x ∈ a, y ∈ b with <x,y> != 0, if any
inline std::optional<std::pair<Vector, Vector>> pairing_witness(const Subspace& a, const Subspace& b) {
  if (includes(perp(b), a)) return std::nullopt;
  const SpaceSpec& spec = a.space();
  Subspace pb = perp(b);
  long m = std::lcm(pb.modulus(), spec.period());
  for (const auto& x : probes(a, m, std::max(pb.threshold(), spec.threshold()))) {
    if (contains_vector(pb, x)) continue;
    for (const auto& y : probes(b, spec.period(), std::max(x.max_abs_index(), spec.threshold())))
      if (sgn(spec.pair_any(x, y)) != 0) return std::make_pair(x, y);
  }
  fail(ErrorCode::internal, "no pairing witness found for non-orthogonal subspaces");
}

inline bool direct_sum_is(const Subspace& a, const Subspace& x, const Subspace& b) {
  return includes(b, x) && intersect(a, x).is_zero() && sum(a, x) == b;
}

// perfect matching rows -> cols in a boolean table, by augmenting paths
inline std::optional<std::vector<std::size_t>> perfect_matching(const std::vector<std::vector<bool>>& ok, std::size_t ncols) {
  std::size_t n = ok.size();
  if (n != ncols) return std::nullopt;
  std::vector<long> owner(ncols, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t r, std::vector<bool>& seen) {
    for (std::size_t c = 0; c < ncols; ++c) {
      if (!ok[r][c] || seen[c]) continue;
      seen[c] = true;
      if (owner[c] < 0 || augment(static_cast<std::size_t>(owner[c]), seen)) {
        owner[c] = static_cast<long>(r);
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<bool> seen(ncols, false);
    if (!augment(r, seen)) return std::nullopt;
  }
  std::vector<std::size_t> match(n);
  for (std::size_t c = 0; c < ncols; ++c) match[static_cast<std::size_t>(owner[c])] = c;
  return match;
}

}  // namespace detail

inline ValidationReport validate_levi(const LeviDatum& l) {
  ValidationReport rep;
  std::vector<const Subspace*> all;
  for (const auto& s : l.summands) {
    all.push_back(&s.x);
    all.push_back(&s.y);
  }
  if (l.w) all.push_back(&*l.w);
  if (all.empty()) return rep;
  const SpecPtr& spec = all.front()->spec();
  for (const auto* s : all)
    if (s->spec() != spec) {
      rep.add("subspaces from different spaces");
      return rep;
    }
  bool selfdual = spec->selfdual();
  if (l.orthogonal_kind()) {
    if (!selfdual) rep.add("so/sp data needs a selfdual space");
    if (l.kind == AlgebraKind::so && spec->kind() != SpaceKind::symmetric) rep.add("so needs a symmetric form");
    if (l.kind == AlgebraKind::sp && spec->kind() != SpaceKind::antisymmetric) rep.add("sp needs an antisymmetric form");
  } else {
    if (selfdual) rep.add("gl/sl data needs a dual pair");
    if (l.w) rep.add("a W part is only allowed for so/sp");
  }
  if (!rep.pass) return rep;
  Side yside = pairing_side(*spec);
  for (std::size_t i = 0; i < l.size(); ++i) {
    const auto& s = l.summands[i];
    std::string tag = "summand " + std::to_string(i + 1);
    if (s.x.side() != Side::left || s.y.side() != yside) {
      rep.add(tag + ": X must lie in V and Y in the pairing space");
      continue;
    }
    if (!nondegenerate(s.x, s.y)) rep.add(tag + ": pairing on X × Y is degenerate");
    if (dimension(s.x).at_most(1)) rep.add(tag + ": dim X < 2");
    if (selfdual) {
      if (!is_isotropic(s.x)) rep.add(tag + ": X is not isotropic");
      if (!is_isotropic(s.y)) rep.add(tag + ": Y is not isotropic");
    }
  }
  if (!rep.pass) return rep;
  auto orth = [&](const Subspace& a, const Subspace& b, const std::string& what) {
    if (auto w = detail::pairing_witness(a, b)) {
      rep.add(what);
      rep.witnesses.push_back(*w);
    }
  };
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (i == j) continue;
      std::string ij = std::to_string(i + 1) + "," + std::to_string(j + 1);
      orth(l.summands[i].x, l.summands[j].y, "<X_" + std::to_string(i + 1) + ", Y_" + std::to_string(j + 1) + "> != 0");
      if (selfdual && i < j) {
        orth(l.summands[i].x, l.summands[j].x, "<X_i, X_j> != 0 for " + ij);
        orth(l.summands[i].y, l.summands[j].y, "<Y_i, Y_j> != 0 for " + ij);
      }
    }
  if (l.w) {
    if (l.w->side() != Side::left) rep.add("W must lie in V");
    else if (!nondegenerate(*l.w, *l.w)) rep.add("form restricted to W is degenerate");
    for (std::size_t i = 0; i < l.size() && rep.pass; ++i) {
      orth(*l.w, l.summands[i].x, "<W, X_" + std::to_string(i + 1) + "> != 0");
      orth(*l.w, l.summands[i].y, "<W, Y_" + std::to_string(i + 1) + "> != 0");
    }
  }
  return rep;
}

inline void require_valid(const LeviDatum& l) {
  auto rep = validate_levi(l);
  if (!rep.pass) fail(ErrorCode::invalid_levi, "invalid Levi datum: " + rep.failures.front());
}

struct LeviCertificate {
  bool is_levi = false;
  std::vector<std::size_t> kappa;  // summand -> pair index in the V flag
  std::string reason;
};

namespace detail {

// is_levi_component on a datum already known to be valid
inline LeviCertificate levi_certificate(const TautCouple& tc, const LeviDatum& l) {
  const Flag& f = tc.flag_v;
  const Flag& g = *tc.flag_vstar;
  auto pi = pair_index(f);
  LeviCertificate cert;
  if (pi.d.size() != l.size()) {
    cert.reason = std::to_string(pi.d.size()) + " wide closed pairs but " + std::to_string(l.size()) + " summands";
    return cert;
  }
  std::vector<std::vector<bool>> ok(l.size(), std::vector<bool>(pi.d.size(), false));
  for (std::size_t k = 0; k < pi.d.size(); ++k) {
    std::size_t gamma = pi.d[k];
    auto beta = matched_pair(tc, gamma);
    if (!beta) fail(ErrorCode::precondition, "couple has no matched pair for a closed pair of the V flag");
    for (std::size_t i = 0; i < l.size(); ++i)
      ok[i][k] = detail::direct_sum_is(f.lower(gamma), l.summands[i].x, f.upper(gamma)) &&
                 detail::direct_sum_is(g.lower(*beta), l.summands[i].y, g.upper(*beta));
  }
  auto match = detail::perfect_matching(ok, pi.d.size());
  if (!match) {
    cert.reason = "no bijection between summands and wide closed pairs";
    return cert;
  }
  cert.is_levi = true;
  for (std::size_t i = 0; i < l.size(); ++i) cert.kappa.push_back(pi.d[(*match)[i]]);
  return cert;
}

inline std::vector<std::size_t> order_of(const LeviCertificate& cert) {
  std::vector<std::size_t> order(cert.kappa.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cert.kappa[a] < cert.kappa[b]; });
  return order;
}

}  // namespace detail

inline LeviCertificate is_levi_component(const TautCouple& tc, const LeviDatum& l) {
  if (l.orthogonal_kind() || tc.selfdual()) fail(ErrorCode::precondition, "is_levi_component handles gl/sl only");
  require_valid(l);
  return detail::levi_certificate(tc, l);
}

// summand labels (0-based) sorted by the position of their pair
inline std::vector<std::size_t> induced_order(const TautCouple& tc, const LeviDatum& l) {
  auto cert = is_levi_component(tc, l);
  if (!cert.is_levi) fail(ErrorCode::not_levi, "not a Levi component: " + cert.reason);
  return detail::order_of(cert);
}

struct Block {
  std::size_t pair = 0;
  Subspace x, y;
  bool infinite = false;
};

namespace detail {

// complements X_γ ⊕ F'_γ = F''_γ, then Y_γ ⊥ X_η (η != γ) inside G''_γ
inline std::vector<Block> blocks_for(const TautCouple& tc, const std::vector<std::size_t>& pairs) {
  const Flag& f = tc.flag_v;
  const Flag& g = *tc.flag_vstar;
  std::vector<Block> out;
  for (std::size_t p : pairs) {
    Block b;
    b.pair = p;
    b.x = complement_in(f.lower(p), f.upper(p));
    b.infinite = quotient_dim(f.lower(p), f.upper(p)).infinite;
    out.push_back(std::move(b));
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto beta = matched_pair(tc, out[k].pair);
    if (!beta) fail(ErrorCode::precondition, "couple has no matched pair for a closed pair of the V flag");
    Subspace others = Subspace::zero(f.spec(), Side::left);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != k) others = sum(others, out[j].x);
    Subspace z = intersect(g.upper(*beta), perp(others));
    if (!(sum(g.lower(*beta), z) == g.upper(*beta)))
      fail(ErrorCode::internal, "orthogonalization failed for pair " + std::to_string(out[k].pair));
    out[k].y = complement_in(intersect(g.lower(*beta), z), z);
  }
  return out;
}

}  // namespace detail

inline LeviDatum levi_from_couple(const TautCouple& tc) {
  if (tc.selfdual()) fail(ErrorCode::precondition, "levi_from_couple handles gl/sl only");
  auto pi = pair_index(tc.flag_v);
  LeviDatum l;
  l.kind = AlgebraKind::sl;
  for (auto& b : detail::blocks_for(tc, pi.d)) l.summands.push_back({b.x, b.y});
  return l;
}

inline std::vector<Block> reductive_part(const TautCouple& tc) {
  if (tc.selfdual()) fail(ErrorCode::precondition, "reductive_part handles gl/sl only");
  auto pi = pair_index(tc.flag_v);
  return detail::blocks_for(tc, pi.c);
}

inline Subspace socle(const LeviDatum& l, const SpecPtr& spec) {
  Subspace xs = Subspace::zero(spec, Side::left);
  Subspace ys = Subspace::zero(spec, pairing_side(*spec));
  for (const auto& s : l.summands) {
    xs = sum(xs, s.x);
    ys = sum(ys, s.y);
  }
  return sum(xs, perp(ys));
}

// ---- taut couples from Levi data --------------------------------------------

inline TautCouple minimal_taut_couple(const LeviDatum& l, const SpecPtr& spec, const std::vector<std::size_t>& order) {
  if (l.orthogonal_kind()) fail(ErrorCode::precondition, "minimal_taut_couple handles gl/sl only");
  require_valid(l);
  if (order.size() != l.size()) fail(ErrorCode::precondition, "order must list every summand once");
  Subspace xs = Subspace::zero(spec, Side::left);
  std::vector<Subspace> vchain, wchain;
  for (std::size_t s : order) {
    const auto& sm = l.summands.at(s);
    xs = sum(xs, sm.x);
    Subspace u = perp(sum(perp(xs), sm.y));
    Subspace ux = sum(u, sm.x);
    vchain.push_back(u);
    vchain.push_back(ux);
    wchain.push_back(perp(ux));
    wchain.push_back(sum(perp(ux), sm.y));
  }
  TautCouple tc{semiclosed_flag_from_chain(spec, Side::left, vchain),
                semiclosed_flag_from_chain(spec, Side::right, wchain)};
  return tc;
}

// U_i with U_i ⊂ U_i ⊕ X_i an immediate pair of f, per summand
inline std::vector<Subspace> locate_u(const Flag& f, const LeviDatum& l) {
  std::vector<Subspace> us;
  for (std::size_t i = 0; i < l.size(); ++i) {
    std::optional<Subspace> u;
    for (std::size_t a = 0; a < f.pairs() && !u; ++a)
      if (detail::direct_sum_is(f.lower(a), l.summands[i].x, f.upper(a))) u = f.lower(a);
    if (!u) fail(ErrorCode::precondition, "no immediate pair U ⊂ U ⊕ X for summand " + std::to_string(i + 1));
    us.push_back(*u);
  }
  return us;
}

inline Flag complete_to_taut(const Flag& f, const LeviDatum& l) {
  if (l.orthogonal_kind()) fail(ErrorCode::precondition, "complete_to_taut handles gl/sl only");
  const SpecPtr& spec = f.spec();
  auto us = locate_u(f, l);
  std::vector<std::size_t> upairs;
  for (std::size_t i = 0; i < l.size(); ++i) {
    const auto& sm = l.summands[i];
    Subspace ux = sum(us[i], sm.x);
    if (!(perp(sum(perp(ux), sm.y)) == us[i]))
      fail(ErrorCode::precondition, "U_" + std::to_string(i + 1) + " fails U = ((U ⊕ X)^⊥ ⊕ Y)^⊥");
    upairs.push_back(*f.find(us[i]));
  }
  if (!is_semiclosed(f)) fail(ErrorCode::precondition, "flag is not semiclosed");
  for (std::size_t a = 0; a < f.pairs(); ++a) {
    if (std::find(upairs.begin(), upairs.end(), a) != upairs.end()) continue;
    if (!is_closed(f.lower(a))) continue;
    if (!quotient_dim(f.lower(a), f.upper(a)).at_most(1))
      fail(ErrorCode::precondition, "flag is not maximal: pair " + std::to_string(a) + " can be refined");
  }
  std::vector<Subspace> chain;
  for (const auto& m : f.members()) chain.push_back(perp(m));
  for (std::size_t i = 0; i < l.size(); ++i) chain.push_back(sum(perp(sum(us[i], l.summands[i].x)), l.summands[i].y));
  return semiclosed_flag_from_chain(spec, pairing_side(*spec), chain);
}

// ---- so / sp -----------------------------------------------------------------

inline bool is_levi_orthogonal(const Flag& f, const LeviDatum& l, AlgebraKind kind) {
  const SpaceSpec& spec = *f.spec();
  if (!spec.selfdual()) fail(ErrorCode::invalid_spec, "so/sp Levi test needs a selfdual space");
  SpaceKind want = kind == AlgebraKind::so ? SpaceKind::symmetric : SpaceKind::antisymmetric;
  if (spec.kind() != want) fail(ErrorCode::invalid_spec, "form symmetry does not match the algebra");
  LeviDatum lk = l;
  lk.kind = kind;
  require_valid(lk);
  auto pi = pair_index(f);
  // F: largest isotropic upper member, G: smallest coisotropic lower member
  Subspace big_f = Subspace::zero(f.spec(), Side::left);
  Subspace big_g = Subspace::full(f.spec(), Side::left);
  for (std::size_t a = 0; a < f.pairs(); ++a) {
    if (is_isotropic(f.upper(a))) big_f = f.upper(a);
  }
  for (std::size_t a = f.pairs(); a-- > 0;)
    if (is_coisotropic(f.lower(a))) big_g = f.lower(a);
  if (pi.d.size() != l.size()) return false;
  std::vector<std::vector<bool>> ok(l.size(), std::vector<bool>(pi.d.size(), false));
  for (std::size_t k = 0; k < pi.d.size(); ++k) {
    std::size_t gamma = pi.d[k];
    Subspace glo = perp(f.upper(gamma)), ghi = perp(f.lower(gamma));
    for (std::size_t i = 0; i < l.size(); ++i)
      ok[i][k] = detail::direct_sum_is(f.lower(gamma), l.summands[i].x, f.upper(gamma)) &&
                 detail::direct_sum_is(glo, l.summands[i].y, ghi);
  }
  if (!detail::perfect_matching(ok, pi.d.size())) return false;
  Subspace w = l.w ? *l.w : Subspace::zero(f.spec(), Side::left);
  if (kind == AlgebraKind::so && quotient_dim(big_f, big_g).at_most(2)) return w.is_zero();
  return detail::direct_sum_is(big_f, w, big_g);
}

inline bool is_levi_so(const Flag& f, const LeviDatum& l) { return is_levi_orthogonal(f, l, AlgebraKind::so); }
inline bool is_levi_sp(const Flag& f, const LeviDatum& l) { return is_levi_orthogonal(f, l, AlgebraKind::sp); }

// Self-taut flags with Levi component so(W) / sp(W) and no sl summands. Any such
// flag has a pair U ⊂ U ⊕ W with U isotropic and U = (U ⊕ W)^⊥, so U ⊆ W^⊥.
// U runs over spans of subsets of a basis of W^⊥; that is every subspace when
// dim W^⊥ <= 1, which is what `exhaustive` reports.
struct SelfTautSearch {
  Subspace forced;  // W^⊥⊥ ∩ W^⊥, contained in every U
  std::vector<Flag> flags;
  bool exhaustive = false;
  std::vector<std::string> diagnostics;
};

inline SelfTautSearch search_self_taut(const LeviDatum& l) {
  if (!l.orthogonal_kind() || !l.w || !l.summands.empty())
    fail(ErrorCode::precondition, "search needs an so/sp datum with W and no sl summands");
  require_valid(l);
  const Subspace& w = *l.w;
  const SpecPtr& spec = w.spec();
  SelfTautSearch out;
  Subspace wp = perp(w);
  out.forced = intersect(closure(w), wp);
  if (!wp.tails().empty()) fail(ErrorCode::precondition, "W^⊥ is infinite dimensional");
  const auto& basis = wp.basis();
  if (basis.size() > 16) fail(ErrorCode::precondition, "W^⊥ too large for subset search");
  out.exhaustive = basis.size() <= 1;
  for (unsigned long mask = 0; mask < (1UL << basis.size()); ++mask) {
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (mask >> i & 1UL) gens.push_back(basis[i]);
    Subspace u = Subspace::span(spec, Side::left, gens, {});
    if (!includes(u, out.forced) || !is_isotropic(u) || !intersect(u, w).is_zero()) continue;
    Subspace uw = sum(u, w);
    if (!(perp(uw) == u)) continue;
    Flag f;
    try {
      f = semiclosed_flag_from_chain(spec, Side::left, {u, uw, perp(u), perp(uw)});
    } catch (const Error& e) {
      out.diagnostics.push_back(to_string(u) + ": " + e.what());
      continue;
    }
    bool refinable = false;
    for (std::size_t a = 0; a < f.pairs(); ++a)
      if (!(f.lower(a) == u) && is_closed(f.lower(a)) && !quotient_dim(f.lower(a), f.upper(a)).at_most(1))
        refinable = true;
    if (refinable) {
      out.exhaustive = false;
      out.diagnostics.push_back(to_string(u) + ": flag has a refinable gap, skipped");
      continue;
    }
    if (is_self_taut(f) && is_levi_orthogonal(f, l, l.kind)) out.flags.push_back(f);
  }
  return out;
}

}  // namespace levi
