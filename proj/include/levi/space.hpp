#pragma once

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "levi/exact.hpp"
#include "levi/index_pattern.hpp"

namespace levi {

enum class Side { left, right };
enum class SpaceKind { dual_pair, symmetric, antisymmetric };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

// A basis element: regular index or special id. Regular keys order first.
struct BasisKey {
  bool special = false;
  long index = 0;
  static BasisKey regular(long i) { return {false, i}; }
  static BasisKey named(long id) { return {true, id}; }
  auto operator<=>(const BasisKey&) const = default;
};

class Vector {
 public:
  Vector() = default;
  explicit Vector(Side s) : side_(s) {}
  static Vector regular(Side s, long i, const Scalar& c = 1) {
    Vector v(s);
    v.add(BasisKey::regular(i), c);
    return v;
  }
  static Vector special(Side s, long id, const Scalar& c = 1) {
    Vector v(s);
    v.add(BasisKey::named(id), c);
    return v;
  }

  Side side() const { return side_; }
  const std::map<BasisKey, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(BasisKey k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add(BasisKey k, const Scalar& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  long max_abs_index() const {
    long n = 0;
    for (const auto& [k, c] : terms_)
      if (!k.special) n = std::max(n, std::labs(k.index));
    return n;
  }

  Vector& operator+=(const Vector& o) {
    check(o);
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check(o);
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  Vector& operator*=(const Scalar& a) {
    if (sgn(a) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= a;
    return *this;
  }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Scalar& a, Vector v) { return v *= a; }
  friend Vector operator-(Vector v) { return v *= Scalar(-1); }
  friend bool operator==(const Vector& a, const Vector& b) {
    return a.side_ == b.side_ && a.terms_ == b.terms_;
  }

 private:
  void check(const Vector& o) const {
    if (o.side_ != side_) fail(ErrorCode::side_mismatch, "vectors live on different sides");
  }
  Side side_ = Side::left;
  std::map<BasisKey, Scalar> terms_;
};

// Eventually periodic special-regular row; the last matching piece wins.
struct PeriodicRow {
  std::vector<std::pair<IndexPattern, Scalar>> pieces;

  Scalar value(long i) const {
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it)
      if (it->first.contains(i)) return it->second;
    return 0;
  }
  long period() const {
    long m = 1;
    for (const auto& p : pieces) m = std::lcm(m, p.first.modulus());
    return m;
  }
  long threshold() const {
    long n = 0;
    for (const auto& p : pieces) n = std::max(n, p.first.threshold());
    return n;
  }
};

class SpaceSpec;
using SpecPtr = std::shared_ptr<const SpaceSpec>;

namespace detail {
struct SubspaceData;
// memo table for perps, keyed by canonical text of the operand
struct PerpCache {
  std::mutex mu;
  std::unordered_map<std::string, std::shared_ptr<const SubspaceData>> perp;
};
}  // namespace detail

class SpaceSpec {
 public:
  static SpaceSpec dual_pair(Universe u, std::string left = "V", std::string right = "Vstar") {
    SpaceSpec s;
    s.kind_ = SpaceKind::dual_pair;
    s.universe_ = std::move(u);
    s.names_[0] = std::move(left);
    s.names_[1] = std::move(right);
    return s;
  }
  static SpaceSpec selfdual(Universe u, bool symmetric, std::string name = "V") {
    if (u.kind == Universe::Kind::positive || u.contains(0))
      fail(ErrorCode::invalid_spec, "hyperbolic pairing needs a universe symmetric about 0 without 0");
    for (long i : u.excluded)
      if (!u.excluded.count(-i)) fail(ErrorCode::invalid_spec, "excluded indices must be symmetric");
    SpaceSpec s;
    s.kind_ = symmetric ? SpaceKind::symmetric : SpaceKind::antisymmetric;
    s.universe_ = std::move(u);
    s.names_[0] = name;
    s.names_[1] = name;
    return s;
  }

  SpaceKind kind() const { return kind_; }
  bool selfdual() const { return kind_ != SpaceKind::dual_pair; }
  // sign relating <y,x> to <x,y> in the selfdual case
  int epsilon() const { return kind_ == SpaceKind::antisymmetric ? -1 : 1; }
  const Universe& universe() const { return universe_; }
  const std::string& name(Side s) const { return names_[index(s)]; }
  Side side_of(const std::string& space_name) const {
    if (space_name == names_[0]) return Side::left;
    if (space_name == names_[1]) return Side::right;
    fail(ErrorCode::semantic, "unknown space " + space_name);
  }
  // side on which perps of subspaces of side s live
  Side opposite(Side s) const {
    if (selfdual()) return Side::left;
    return s == Side::left ? Side::right : Side::left;
  }
  void check_side(Side s) const {
    if (selfdual() && s != Side::left) fail(ErrorCode::side_mismatch, "selfdual spaces have a single side");
  }

  const std::vector<std::string>& specials(Side s) const { return specials_[index(s)]; }
  std::optional<long> find_special(Side s, const std::string& n) const {
    const auto& v = specials(s);
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] == n) return static_cast<long>(k);
    return std::nullopt;
  }

  long add_special(Side s, const std::string& n) {
    check_side(s);
    for (int k = 0; k < 2; ++k)
      for (const auto& e : specials_[k])
        if (e == n) fail(ErrorCode::invalid_spec, "duplicate special name " + n);
    if (n == names_[0] || n == names_[1]) fail(ErrorCode::invalid_spec, "special name clashes with a space name");
    specials_[index(s)].push_back(n);
    rows_[index(s)].emplace_back();
    touch();
    return static_cast<long>(specials_[index(s)].size()) - 1;
  }

  // <s, t> for a left special s and a right special t (selfdual: both left)
  void set_gram(long s, long t, const Scalar& value) {
    if (selfdual()) {
      if (s == t && epsilon() < 0 && sgn(value) != 0)
        fail(ErrorCode::invalid_spec, "antisymmetric form needs <s,s> = 0");
      gram_[{t, s}] = epsilon() * value;
    }
    gram_[{s, t}] = value;
    touch();
  }
  // row of a special of side `s` against the opposite regular basis
  void add_row(Side s, long id, IndexPattern where, const Scalar& value) {
    check_side(s);
    rows_[index(s)].at(id).pieces.emplace_back(std::move(where), value);
    touch();
  }
  const PeriodicRow& row(Side s, long id) const { return rows_[index(s)].at(id); }

  long period() const {
    long m = 1;
    for (int k = 0; k < 2; ++k)
      for (const auto& r : rows_[k]) m = std::lcm(m, r.period());
    return m;
  }
  long threshold() const {
    long n = universe_.max_excluded();
    for (int k = 0; k < 2; ++k)
      for (const auto& r : rows_[k]) n = std::max(n, r.threshold());
    return n;
  }

  // pairing of a basis element of `a_side` with one of the opposite side
  Scalar pair_basis(BasisKey a, BasisKey b) const {
    if (!a.special && !b.special) {
      if (!selfdual()) return a.index == b.index ? 1 : 0;
      if (a.index != -b.index) return 0;
      return a.index > 0 ? 1 : epsilon();
    }
    if (a.special && b.special) {
      auto it = gram_.find({a.index, b.index});
      return it == gram_.end() ? Scalar(0) : it->second;
    }
    if (a.special) return rows_[0].at(a.index).value(b.index);
    if (selfdual()) return epsilon() * rows_[0].at(b.index).value(a.index);
    return rows_[1].at(b.index).value(a.index);
  }

  // <x, u>; x on the left, u on the right (both left when selfdual)
  Scalar pair(const Vector& x, const Vector& u) const {
    if (x.side() != Side::left || u.side() != (selfdual() ? Side::left : Side::right))
      fail(ErrorCode::side_mismatch, "pair expects a left and a right vector");
    Scalar out = 0;
    for (const auto& [a, c] : x.terms())
      for (const auto& [b, d] : u.terms()) {
        Scalar p = pair_basis(a, b);
        if (sgn(p) != 0) out += c * d * p;
      }
    return out;
  }
  // pairing of vectors from the two sides in either order
  Scalar pair_any(const Vector& x, const Vector& u) const {
    if (!selfdual() && x.side() == Side::right) return pair(u, x);
    return pair(x, u);
  }

  detail::PerpCache& cache() const { return *cache_; }

 private:
  SpaceSpec() = default;
  static int index(Side s) { return s == Side::left ? 0 : 1; }
  void touch() { cache_ = std::make_shared<detail::PerpCache>(); }

  SpaceKind kind_ = SpaceKind::dual_pair;
  Universe universe_;
  std::string names_[2];
  std::vector<std::string> specials_[2];
  std::vector<PeriodicRow> rows_[2];
  std::map<std::pair<long, long>, Scalar> gram_;
  std::shared_ptr<detail::PerpCache> cache_ = std::make_shared<detail::PerpCache>();
};

inline SpecPtr freeze(SpaceSpec s) { return std::make_shared<const SpaceSpec>(std::move(s)); }

// ---- operators -------------------------------------------------------------

// Finite sum of rank one tensors w ⊗ u, w on the left, u on the pairing side.
class Operator {
 public:
  using Key = std::pair<BasisKey, BasisKey>;
  Operator() = default;
  static Operator tensor(const Vector& w, const Vector& u) {
    Operator t;
    for (const auto& [a, c] : w.terms())
      for (const auto& [b, d] : u.terms()) t.add({a, b}, c * d);
    return t;
  }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Key& k, const Scalar& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  Operator& operator+=(const Operator& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  Operator& operator*=(const Scalar& a) {
    if (sgn(a) == 0) terms_.clear();
    for (auto& [k, c] : terms_) c *= a;
    return *this;
  }
  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(const Scalar& a, Operator t) { return t *= a; }
  friend bool operator==(const Operator& a, const Operator& b) { return a.terms_ == b.terms_; }

  long max_abs_index() const {
    long n = 0;
    for (const auto& [k, c] : terms_) {
      if (!k.first.special) n = std::max(n, std::labs(k.first.index));
      if (!k.second.special) n = std::max(n, std::labs(k.second.index));
    }
    return n;
  }

 private:
  std::map<Key, Scalar> terms_;
};

inline Side pairing_side(const SpaceSpec& spec) { return spec.selfdual() ? Side::left : Side::right; }

// (w⊗u)·x = <x,u> w
inline Vector operator_apply(const SpaceSpec& spec, const Operator& t, const Vector& x) {
  if (x.side() != Side::left) fail(ErrorCode::side_mismatch, "operators act on left vectors");
  Vector out(Side::left);
  for (const auto& [k, c] : t.terms()) {
    Scalar s = 0;
    for (const auto& [a, d] : x.terms()) s += d * spec.pair_basis(a, k.second);
    if (sgn(s) != 0) out.add(k.first, c * s);
  }
  return out;
}

// action on the pairing side, up to the overall sign: (w⊗u)·y = <w,y> u
inline Vector operator_apply_dual(const SpaceSpec& spec, const Operator& t, const Vector& y) {
  if (y.side() != pairing_side(spec)) fail(ErrorCode::side_mismatch, "dual action needs a pairing-side vector");
  Vector out(y.side());
  for (const auto& [k, c] : t.terms()) {
    Scalar s = 0;
    for (const auto& [b, d] : y.terms()) s += d * spec.pair_basis(k.first, b);
    if (sgn(s) != 0) out.add(k.second, c * s);
  }
  return out;
}

// (a⊗b)(c⊗d) = <c,b> a⊗d
inline Operator operator_compose(const SpaceSpec& spec, const Operator& s, const Operator& t) {
  Operator out;
  for (const auto& [k1, c1] : s.terms())
    for (const auto& [k2, c2] : t.terms()) {
      Scalar p = spec.pair_basis(k2.first, k1.second);
      if (sgn(p) != 0) out.add({k1.first, k2.second}, c1 * c2 * p);
    }
  return out;
}

inline Operator operator_bracket(const SpaceSpec& spec, const Operator& s, const Operator& t) {
  return operator_compose(spec, s, t) - operator_compose(spec, t, s);
}

inline Operator swap_factors(const SpaceSpec& spec, const Operator& t) {
  if (!spec.selfdual()) fail(ErrorCode::invalid_spec, "Λ and S need a selfdual space");
  Operator out;
  for (const auto& [k, c] : t.terms()) out.add({k.second, k.first}, c);
  return out;
}
inline Operator lambda_embed(const SpaceSpec& spec, const Operator& t) { return t - swap_factors(spec, t); }
inline Operator s_embed(const SpaceSpec& spec, const Operator& t) { return t + swap_factors(spec, t); }

// ---- pairing validation ------------------------------------------------------

struct PairingReport {
  bool pass = true;
  long band = 0;
  std::optional<Vector> witness;
  std::string message;
};

// Looks for vectors supported on |i| <= cutoff - period (plus specials) that
// annihilate the opposite window up to cutoff. Inside that band no boundary
// artefact can fake degeneracy, so a witness is a true radical vector.
inline PairingReport validate_pairing(const SpaceSpec& spec, long cutoff) {
  PairingReport rep;
  rep.band = cutoff - spec.period();
  if (cutoff < spec.period() || rep.band < spec.threshold()) {
    rep.pass = false;
    rep.message = "cutoff too small for the pairing period and threshold";
    return rep;
  }
  auto window = [&](Side s, long n) {
    std::vector<BasisKey> keys;
    for (long i = -n; i <= n; ++i)
      if (spec.universe().contains(i)) keys.push_back(BasisKey::regular(i));
    for (std::size_t k = 0; k < spec.specials(s).size(); ++k) keys.push_back(BasisKey::named(static_cast<long>(k)));
    return keys;
  };
  std::vector<Side> sides = {Side::left};
  if (!spec.selfdual()) sides.push_back(Side::right);
  for (Side s : sides) {
    Side o = spec.opposite(s);
    auto cols = window(s, rep.band);
    auto rows = window(o, cutoff);
    Matrix m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        m(r, c) = s == Side::left || spec.selfdual() ? spec.pair_basis(cols[c], rows[r])
                                                     : spec.pair_basis(rows[r], cols[c]);
    auto ker = kernel(m);
    if (!ker.empty()) {
      Vector w(s);
      for (std::size_t c = 0; c < cols.size(); ++c) w.add(cols[c], ker[0][c]);
      rep.pass = false;
      rep.witness = w;
      rep.message = std::string("degenerate vector on the ") + side_name(s) + " side";
      return rep;
    }
  }
  return rep;
}

}  // namespace levi
