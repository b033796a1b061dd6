#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "levi/levi.hpp"

namespace levi {

struct Count {
  bool uncountable = false;
  long value = 0;

  static Count finite(long v) { return {false, v}; }
  static Count infinity() { return {true, 0}; }
  std::string to_string() const { return uncountable ? "uncountable" : std::to_string(value); }
  friend bool operator==(const Count&, const Count&) = default;
};

struct FinitenessResult {
  bool finite = true;
  std::vector<std::size_t> witness;  // J with dim > 1, 0-based
  // per J (bitmask over summands): dim (Σ_{i∉J} Y_i)^⊥ / closure(Σ_{j∈J} X_j)
  std::map<unsigned long, QuotientDim> quotients;
};

inline std::vector<std::size_t> bits_of(unsigned long mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1UL) out.push_back(i);
  return out;
}

inline FinitenessResult finiteness_test(const LeviDatum& l, const SpecPtr& spec) {
  if (l.orthogonal_kind()) fail(ErrorCode::precondition, "finiteness test handles gl/sl only");
  require_valid(l);
  std::size_t n = l.size();
  if (n > 20) fail(ErrorCode::precondition, "too many summands for subset enumeration");
  FinitenessResult res;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    Subspace xs = Subspace::zero(spec, Side::left);
    Subspace ys = Subspace::zero(spec, Side::right);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1UL) xs = sum(xs, l.summands[i].x);
      else ys = sum(ys, l.summands[i].y);
    }
    auto q = quotient_dim(closure(xs), perp(ys));
    res.quotients[mask] = q;
    if (res.finite && !q.at_most(1)) {
      res.finite = false;
      res.witness = bits_of(mask, n);
    }
  }
  return res;
}

struct EnumeratedCouple {
  std::vector<std::size_t> order;
  std::vector<Subspace> u;  // U per position in the order
  TautCouple couple;
};

struct Enumeration {
  std::vector<EnumeratedCouple> couples;
  std::vector<std::string> diagnostics;
};

namespace detail {

inline std::string order_string(const std::vector<std::size_t>& order) {
  std::string s = "(";
  for (std::size_t k = 0; k < order.size(); ++k) s += (k ? "," : "") + std::to_string(order[k] + 1);
  return s + ")";
}

inline Flag flag_for_us(const SpecPtr& spec, const LeviDatum& l, const std::vector<std::size_t>& order,
                        const std::vector<Subspace>& us) {
  std::vector<Subspace> chain;
  for (std::size_t p = 0; p < order.size(); ++p) {
    Subspace ux = sum(us[p], l.summands[order[p]].x);
    chain.push_back(us[p]);
    chain.push_back(ux);
    chain.push_back(closure(ux));
  }
  Flag f = flag_from_chain(spec, Side::left, chain);
  for (std::size_t a = 0; a < f.pairs(); ++a) {
    bool upair = false;
    for (std::size_t p = 0; p < order.size(); ++p)
      if (f.lower(a) == us[p]) upair = true;
    if (upair || !is_closed(f.lower(a))) continue;
    if (!quotient_dim(f.lower(a), f.upper(a)).at_most(1))
      fail(ErrorCode::non_unique, "closure gap of dimension > 1 leaves the refinement non-unique");
  }
  return f;
}

inline void require_finite(const LeviDatum& l, const SpecPtr& spec) {
  auto fin = finiteness_test(l, spec);
  if (!fin.finite) {
    std::string j;
    for (auto i : fin.witness) j += " " + std::to_string(i + 1);
    fail(ErrorCode::infinite_family, "uncountably many couples; witness J = {" + j + " }");
  }
}

// taut couples for one order, assuming the finiteness test passed
inline Enumeration enumerate_order(const LeviDatum& l, const SpecPtr& spec, const std::vector<std::size_t>& order) {
  {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
      if (sorted[k] != k) fail(ErrorCode::precondition, "order must be a permutation of the summands");
  }
  std::size_t n = l.size();
  std::vector<std::vector<Subspace>> cand(n);
  Subspace xs = Subspace::zero(spec, Side::left);
  for (std::size_t p = 0; p < n; ++p) {
    const auto& sm = l.summands[order[p]];
    xs = sum(xs, sm.x);
    Subspace ys = Subspace::zero(spec, Side::right);
    for (std::size_t q = p; q < n; ++q) ys = sum(ys, l.summands[order[q]].y);
    Subspace lo = perp(sum(perp(xs), sm.y));
    Subspace hi = perp(ys);
    for (const Subspace& u : {lo, hi}) {
      if (!cand[p].empty() && cand[p].front() == u) continue;
      if (!intersect(u, sm.x).is_zero()) continue;
      if (!(perp(sum(perp(sum(u, sm.x)), sm.y)) == u)) continue;
      cand[p].push_back(u);
    }
  }
  Enumeration out;
  std::vector<Subspace> us;
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == n) {
      Flag f = detail::flag_for_us(spec, l, order, us);
      TautCouple tc{f, complete_to_taut(f, l)};
      auto cert = detail::levi_certificate(tc, l);
      if (!cert.is_levi) {
        out.diagnostics.push_back("order " + detail::order_string(order) + ": candidate rejected: " + cert.reason);
        return;
      }
      if (detail::order_of(cert) != order) {
        out.diagnostics.push_back("order " + detail::order_string(order) + ": candidate induces another order");
        return;
      }
      out.couples.push_back({order, us, tc});
      return;
    }
    for (const auto& u : cand[p]) {
      if (p > 0 && !includes(u, sum(us[p - 1], l.summands[order[p - 1]].x))) continue;
      us.push_back(u);
      rec(p + 1);
      us.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace detail

// all taut couples with Levi component l inducing the given order
inline Enumeration enumerate_couples(const LeviDatum& l, const SpecPtr& spec, const std::vector<std::size_t>& order) {
  if (l.orthogonal_kind()) fail(ErrorCode::precondition, "enumeration handles gl/sl only");
  detail::require_finite(l, spec);
  return detail::enumerate_order(l, spec, order);
}

inline Enumeration enumerate_all(const LeviDatum& l, const SpecPtr& spec) {
  std::vector<std::size_t> order(l.size());
  std::iota(order.begin(), order.end(), 0);
  if (l.orthogonal_kind()) fail(ErrorCode::precondition, "enumeration handles gl/sl only");
  detail::require_finite(l, spec);
  Enumeration all;
  do {
    auto e = detail::enumerate_order(l, spec, order);
    for (auto& c : e.couples) all.couples.push_back(std::move(c));
    for (auto& d : e.diagnostics) all.diagnostics.push_back(std::move(d));
  } while (std::next_permutation(order.begin(), order.end()));
  return all;
}

struct CountResult {
  Count total;
  std::map<std::vector<std::size_t>, long> per_order;
  FinitenessResult finiteness;
};

inline CountResult count_self_normalizing(const LeviDatum& l, const SpecPtr& spec) {
  CountResult r;
  r.finiteness = finiteness_test(l, spec);
  if (!r.finiteness.finite) {
    r.total = Count::infinity();
    return r;
  }
  std::vector<std::size_t> order(l.size());
  std::iota(order.begin(), order.end(), 0);
  long total = 0;
  do {
    long k = static_cast<long>(detail::enumerate_order(l, spec, order).couples.size());
    r.per_order[order] = k;
    total += k;
  } while (std::next_permutation(order.begin(), order.end()));
  r.total = Count::finite(total);
  return r;
}

// one summand: count of taut couples from the codimensions of X^⊥ and Y^⊥
inline Count one_block_analysis(const Subspace& x, const Subspace& y) {
  const SpaceSpec& spec = x.space();
  if (spec.selfdual()) fail(ErrorCode::precondition, "one-block analysis needs a dual pair");
  if (x.side() != Side::left || y.side() != Side::right) fail(ErrorCode::side_mismatch, "X must lie in V and Y in V_*");
  if (!nondegenerate(x, y)) fail(ErrorCode::degenerate_pairing, "pairing on X × Y is degenerate");
  Subspace xp = perp(x), yp = perp(y);
  auto dx = dimension(xp), dy = dimension(yp);
  if (!dx.at_most(1) || !dy.at_most(1)) return Count::infinity();
  if (xp.is_zero() || yp.is_zero()) return Count::finite(1);
  return Count::finite(sgn(spec.pair(yp.basis().front(), xp.basis().front())) != 0 ? 2 : 1);
}

// count of self-normalizing subalgebras with the given reductive part, from the
// number k of infinite blocks: 0 -> 1, 1 -> 2, more -> uncountable
inline Count trace_condition_count(const TautCouple& tc, AlgebraKind kind) {
  if (kind == AlgebraKind::so || kind == AlgebraKind::sp)
    fail(ErrorCode::precondition, "trace condition count is defined for gl and sl");
  auto blocks = reductive_part(tc);
  long k = std::count_if(blocks.begin(), blocks.end(), [](const Block& b) { return b.infinite; });
  if (k == 0) return Count::finite(1);
  if (k == 1) return Count::finite(2);
  return Count::infinity();
}

}  // namespace levi
