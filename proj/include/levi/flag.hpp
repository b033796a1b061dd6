#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levi/subspace.hpp"

namespace levi {

// Finite chain 0 = F_0 ⊊ F_1 ⊊ ... ⊊ F_k = full space. Pair α joins
// members α and α + 1.
class Flag {
 public:
  Flag() = default;

  static Flag from_members(std::vector<Subspace> members) {
    if (members.size() < 2) fail(ErrorCode::precondition, "a flag needs at least 0 and the full space");
    const auto& spec = members.front().spec();
    Side side = members.front().side();
    if (!members.front().is_zero()) fail(ErrorCode::precondition, "flag must start at 0");
    if (!(members.back() == Subspace::full(spec, side))) fail(ErrorCode::precondition, "flag must end at the full space");
    for (std::size_t k = 0; k + 1 < members.size(); ++k) {
      detail::same_side(members[k], members[k + 1]);
      if (members[k] == members[k + 1] || !includes(members[k + 1], members[k]))
        fail(ErrorCode::precondition, "flag members must increase strictly");
    }
    Flag f;
    f.members_ = std::move(members);
    return f;
  }

  const SpecPtr& spec() const { return members_.front().spec(); }
  Side side() const { return members_.front().side(); }
  const std::vector<Subspace>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::size_t pairs() const { return members_.size() - 1; }
  const Subspace& lower(std::size_t a) const { return members_.at(a); }
  const Subspace& upper(std::size_t a) const { return members_.at(a + 1); }
  std::optional<std::size_t> find(const Subspace& s) const {
    for (std::size_t k = 0; k < members_.size(); ++k)
      if (members_[k] == s) return k;
    return std::nullopt;
  }

  friend bool operator==(const Flag& a, const Flag& b) { return a.members_ == b.members_; }
  friend bool operator<(const Flag& a, const Flag& b) {
    return std::lexicographical_compare(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                                        [](const Subspace& x, const Subspace& y) { return x.key() < y.key(); });
  }

 private:
  std::vector<Subspace> members_;
};

namespace detail {

// sort a chain by inclusion, dropping duplicates; fails if not totally ordered
inline std::vector<Subspace> sort_chain(std::vector<Subspace> chain) {
  std::vector<Subspace> out;
  for (auto& s : chain) {
    bool dup = false;
    for (const auto& t : out)
      if (t == s) dup = true;
    if (!dup) out.push_back(std::move(s));
  }
  // binary insertion, then adjacent inclusions give a total order by transitivity
  std::vector<Subspace> sorted;
  for (auto& s : out) {
    std::size_t lo = 0, hi = sorted.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (includes(s, sorted[mid])) lo = mid + 1;
      else hi = mid;
    }
    sorted.insert(sorted.begin() + static_cast<long>(lo), std::move(s));
  }
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (!includes(sorted[i], sorted[i - 1])) fail(ErrorCode::precondition, "chain is not totally ordered by inclusion");
  return sorted;
}

inline Flag close_up(const SpecPtr& spec, Side side, std::vector<Subspace> chain) {
  chain.push_back(Subspace::zero(spec, side));
  chain.push_back(Subspace::full(spec, side));
  return Flag::from_members(sort_chain(std::move(chain)));
}

}  // namespace detail

inline Flag flag_from_chain(const SpecPtr& spec, Side side, const std::vector<Subspace>& chain) {
  for (const auto& s : chain)
    if (s.spec() != spec || s.side() != side) fail(ErrorCode::side_mismatch, "chain member on the wrong side");
  return detail::close_up(spec, side, chain);
}

inline bool is_semiclosed(const Flag& f) {
  for (std::size_t a = 0; a < f.pairs(); ++a) {
    Subspace c = closure(f.lower(a));
    if (!(c == f.lower(a)) && !(c == f.upper(a))) return false;
  }
  return true;
}

inline Flag semiclosed_flag_from_chain(const SpecPtr& spec, Side side, const std::vector<Subspace>& chain) {
  for (const auto& s : chain)
    if (s.spec() != spec || s.side() != side) fail(ErrorCode::side_mismatch, "chain member on the wrong side");
  auto sorted = detail::sort_chain(chain);
  std::vector<Subspace> all = sorted;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (is_closed(sorted[k])) continue;
    if (k > 0 && !is_closed(sorted[k - 1]))
      fail(ErrorCode::precondition, "nonclosed chain member without a closed immediate predecessor: " + to_string(sorted[k]));
    all.push_back(closure(sorted[k]));
  }
  Flag f = detail::close_up(spec, side, all);
  if (!is_semiclosed(f)) fail(ErrorCode::internal, "closure insertion did not give a semiclosed flag");
  return f;
}

struct PairIndex {
  std::vector<std::size_t> a, c, d;
  std::map<std::size_t, std::size_t> partner;  // selfdual: order reversing bijection on C
  bool in_c(std::size_t x) const { return std::find(c.begin(), c.end(), x) != c.end(); }
  bool in_d(std::size_t x) const { return std::find(d.begin(), d.end(), x) != d.end(); }
};

inline PairIndex pair_index(const Flag& f) {
  if (!is_semiclosed(f)) fail(ErrorCode::precondition, "pair bookkeeping needs a semiclosed flag");
  const SpaceSpec& spec = *f.spec();
  PairIndex p;
  for (std::size_t a = 0; a < f.pairs(); ++a) {
    p.a.push_back(a);
    if (!is_closed(f.lower(a))) continue;
    if (spec.selfdual() && !is_isotropic(f.upper(a))) continue;
    p.c.push_back(a);
    auto q = quotient_dim(f.lower(a), f.upper(a));
    if (q.infinite || q.value > 1) p.d.push_back(a);
  }
  if (spec.selfdual())
    for (std::size_t g : p.c) {
      auto lo = f.find(perp(f.upper(g)));
      auto hi = f.find(perp(f.lower(g)));
      if (lo && hi && *hi == *lo + 1) p.partner[g] = *lo;
    }
  return p;
}

// P stable under St_H = Σ H''_α ⊗ (H'_α)^⊥, with H on the pairing side of P
inline bool stable_under(const Subspace& p, const Flag& h) {
  for (std::size_t a = 0; a < h.pairs(); ++a)
    if (!includes(p, h.upper(a)) && !includes(closure(h.lower(a)), p)) return false;
  return true;
}

inline bool is_taut_couple(const Flag& f, const Flag& g) {
  if (f.spec() != g.spec() || f.spec()->selfdual() || f.side() != Side::left || g.side() != Side::right)
    fail(ErrorCode::side_mismatch, "a taut couple needs a flag in V and a flag in V_*");
  if (!is_semiclosed(f) || !is_semiclosed(g)) fail(ErrorCode::precondition, "taut couples need semiclosed flags");
  for (const auto& m : f.members())
    if (!stable_under(perp(m), g)) return false;
  for (const auto& m : g.members())
    if (!stable_under(perp(m), f)) return false;
  return true;
}

inline bool is_self_taut(const Flag& f) {
  if (!f.spec()->selfdual()) fail(ErrorCode::invalid_spec, "self-tautness needs a selfdual space");
  if (!is_semiclosed(f)) fail(ErrorCode::precondition, "self-taut flags must be semiclosed");
  for (const auto& m : f.members())
    if (!stable_under(perp(m), f)) return false;
  return true;
}

// T·F_j ⊆ F_j for every member, by direct action on generators and on one
// representative per tail class beyond the point where the action is periodic
inline bool stabilizer_contains(const Flag& f, const Operator& t) {
  const SpaceSpec& spec = *f.spec();
  bool dual = f.side() != Side::left;
  auto act = [&](const Vector& x) { return dual ? operator_apply_dual(spec, t, x) : operator_apply(spec, t, x); };
  for (const auto& s : f.members()) {
    long m = std::lcm(s.modulus(), spec.period());
    long n = std::max({s.threshold(), t.max_abs_index(), spec.threshold()});
    auto fr = detail::frame(spec, s.data(), m, n);
    std::vector<Vector> probes;
    for (const auto& r : fr.space.rows()) probes.push_back(fr.layout.sparse(r));
    for (const auto& [c, a] : fr.tails) {
      Vector x = fr.layout.sparse(a);
      x.add(BasisKey::regular(detail::representative(c, m, n)), 1);
      probes.push_back(std::move(x));
    }
    for (const auto& x : probes)
      if (!contains_vector(s, act(x))) return false;
  }
  return true;
}

struct TautCouple {
  Flag flag_v;
  std::optional<Flag> flag_vstar;  // absent for a self-taut flag

  bool selfdual() const { return !flag_vstar.has_value(); }
  friend bool operator==(const TautCouple& a, const TautCouple& b) {
    return a.flag_v == b.flag_v && a.flag_vstar == b.flag_vstar;
  }
};

// β in G matched with γ ∈ C: G'_β = (F''_γ)^⊥ and (G''_β)^⊥ = F'_γ
inline std::optional<std::size_t> matched_pair(const TautCouple& tc, std::size_t gamma) {
  const Flag& g = *tc.flag_vstar;
  auto lo = g.find(perp(tc.flag_v.upper(gamma)));
  if (!lo || *lo + 1 >= g.size()) return std::nullopt;
  if (!(perp(g.upper(*lo)) == tc.flag_v.lower(gamma))) return std::nullopt;
  return *lo;
}

}  // namespace levi
