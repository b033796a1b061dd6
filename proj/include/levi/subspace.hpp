#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "levi/exact.hpp"
#include "levi/index_pattern.hpp"
#include "levi/space.hpp"

namespace levi {

// residue class of indices beyond the frame threshold
struct TailClass {
  int sign = 1;
  long residue = 0;
  auto operator<=>(const TailClass&) const = default;
};

// {v_i + anchor : i in pattern}
struct TailFamily {
  IndexPattern pattern;
  Vector anchor;
};

struct QuotientDim {
  bool infinite = false;
  long value = 0;
  static QuotientDim finite(long n) { return {false, n}; }
  static QuotientDim infinity() { return {true, 0}; }
  bool at_most(long n) const { return !infinite && value <= n; }
  std::string to_string() const { return infinite ? "infinite" : std::to_string(value); }
  friend bool operator==(const QuotientDim&, const QuotientDim&) = default;
};

namespace detail {

// Canonical representation at a frame (m, n): the subspace is the span of
// `basis` (supported on |i| <= n plus specials) and, for every class c in
// `tails`, of all v_j + tails[c] with |j| > n in class c.
struct SubspaceData {
  Side side = Side::left;
  long m = 1;
  long n = 0;
  std::vector<Vector> basis;
  std::map<TailClass, Vector> tails;
  std::string key;
};

inline std::vector<int> signs(const SpaceSpec& spec) {
  if (spec.universe().two_sided()) return {1, -1};
  return {1};
}

inline TailClass class_of(long j, long m) { return {j > 0 ? 1 : -1, mod(j, m)}; }

// smallest |j| > beyond in the class
inline long representative(TailClass c, long m, long beyond) {
  if (c.sign > 0) return beyond + 1 + mod(c.residue - (beyond + 1), m);
  long top = -(beyond + 1);
  return top - mod(top - c.residue, m);
}

struct Layout {
  Side side;
  long n;
  std::vector<BasisKey> keys;
  std::vector<long> regular_col;  // indexed by i + n, -1 when absent
  std::size_t nregular = 0;
  std::size_t nspecial = 0;

  Layout(const SpaceSpec& spec, Side s, long frame_n) : side(s), n(frame_n), regular_col(2 * frame_n + 1, -1) {
    for (long i = -n; i <= n; ++i)
      if (spec.universe().contains(i)) {
        regular_col[i + n] = static_cast<long>(keys.size());
        keys.push_back(BasisKey::regular(i));
      }
    nregular = keys.size();
    nspecial = spec.specials(s).size();
    for (std::size_t k = 0; k < nspecial; ++k) keys.push_back(BasisKey::named(static_cast<long>(k)));
  }
  std::size_t cols() const { return keys.size(); }
  long column(BasisKey k) const {
    if (k.special) return static_cast<long>(nregular) + k.index;
    if (std::labs(k.index) > n) return -1;
    return regular_col[k.index + n];
  }
  Row dense(const Vector& v) const {
    Row r(cols());
    for (const auto& [k, c] : v.terms()) {
      long col = column(k);
      if (col < 0) fail(ErrorCode::internal, "vector support outside the frame window");
      r[col] = c;
    }
    return r;
  }
  Vector sparse(const Row& r) const {
    Vector v(side);
    for (std::size_t c = 0; c < r.size(); ++c)
      if (sgn(r[c]) != 0) v.add(keys[c], r[c]);
    return v;
  }
};

struct Framed {
  long m, n;
  Layout layout;
  RowSpace space;
  std::map<TailClass, Row> tails;
};

inline Framed frame(const SpaceSpec& spec, const SubspaceData& d, long m, long n) {
  if (m % d.m != 0 || n < d.n) fail(ErrorCode::internal, "frame must refine the representation");
  Framed f{m, n, Layout(spec, d.side, n), RowSpace(), {}};
  f.space = RowSpace(f.layout.cols());
  for (const auto& b : d.basis) f.space.insert(f.layout.dense(b));
  for (long j = -n; j <= n; ++j) {
    if (std::labs(j) <= d.n || !spec.universe().contains(j)) continue;
    auto it = d.tails.find(class_of(j, d.m));
    if (it == d.tails.end()) continue;
    Row r = f.layout.dense(it->second);
    r[f.layout.column(BasisKey::regular(j))] += 1;
    f.space.insert(std::move(r));
  }
  for (int s : signs(spec))
    for (long r = 0; r < m; ++r) {
      auto it = d.tails.find({s, r % d.m});
      if (it == d.tails.end()) continue;
      f.tails[{s, r}] = f.space.reduced(f.layout.dense(it->second));
    }
  return f;
}

inline std::string make_key(const SubspaceData& d) {
  std::ostringstream os;
  os << (d.side == Side::left ? 'L' : 'R') << d.m << ':' << d.n << '|';
  auto put = [&](const Vector& v) {
    for (const auto& [k, c] : v.terms()) os << (k.special ? 's' : 'r') << k.index << '=' << c.get_str() << ',';
    os << ';';
  };
  for (const auto& b : d.basis) put(b);
  os << '|';
  for (const auto& [c, a] : d.tails) {
    os << c.sign << '/' << c.residue << ':';
    put(a);
  }
  return os.str();
}

inline SubspaceData to_data(const Framed& f, Side side) {
  SubspaceData d;
  d.side = side;
  d.m = f.m;
  d.n = f.n;
  for (const auto& r : f.space.rows()) d.basis.push_back(f.layout.sparse(r));
  for (const auto& [c, a] : f.tails) d.tails[c] = f.layout.sparse(a);
  return d;
}

inline bool same_framed(const Framed& a, const Framed& b) {
  return a.space.rows() == b.space.rows() && a.tails == b.tails;
}

// candidate representation at threshold n2 < d.n, or nothing if impossible
inline std::optional<SubspaceData> shrink(const SubspaceData& d, const Framed& f, long n2) {
  std::vector<std::size_t> removed;
  for (long j = -d.n; j <= d.n; ++j) {
    if (std::labs(j) <= n2) continue;
    long col = f.layout.column(BasisKey::regular(j));
    if (col >= 0) removed.push_back(static_cast<std::size_t>(col));
  }
  const auto& rows = f.space.rows();
  std::size_t k = rows.size();
  // B_R^T: one row per removed column, one column per basis row
  Matrix brt(removed.size(), k);
  for (std::size_t a = 0; a < removed.size(); ++a)
    for (std::size_t b = 0; b < k; ++b) brt(a, b) = rows[b][removed[a]];
  auto combine = [&](const Row& lambda, Row base) {
    for (std::size_t b = 0; b < k; ++b)
      if (sgn(lambda[b]) != 0)
        for (std::size_t c = 0; c < base.size(); ++c)
          if (sgn(rows[b][c]) != 0) base[c] += lambda[b] * rows[b][c];
    return base;
  };
  auto restrict = [&](const Row& r) {
    Vector v = f.layout.sparse(r);
    return v;
  };
  SubspaceData out;
  out.side = d.side;
  out.m = d.m;
  out.n = n2;
  Row zero(f.layout.cols());
  if (k > 0)
    for (const auto& lambda : kernel(brt)) out.basis.push_back(restrict(combine(lambda, zero)));
  for (const auto& [c, a] : f.tails) {
    Row rhs(removed.size());
    for (std::size_t x = 0; x < removed.size(); ++x) rhs[x] = -a[removed[x]];
    Row fixed = a;
    if (!removed.empty()) {
      if (k == 0) {
        if (!is_zero(rhs)) return std::nullopt;
      } else {
        auto mu = solve(brt, rhs);
        if (!mu) return std::nullopt;
        fixed = combine(*mu, a);
      }
    }
    out.tails[c] = restrict(fixed);
  }
  return out;
}

inline SubspaceData minimize(const SpaceSpec& spec, SubspaceData d) {
  // smallest modulus
  for (long q = 1; q < d.m; ++q) {
    if (d.m % q != 0) continue;
    bool ok = true;
    for (int s : signs(spec))
      for (long r = 0; r < d.m && ok; ++r) {
        auto a = d.tails.find({s, r});
        auto b = d.tails.find({s, r % q});
        bool ha = a != d.tails.end(), hb = b != d.tails.end();
        ok = ha == hb && (!ha || a->second == b->second);
      }
    if (!ok) continue;
    std::map<TailClass, Vector> t;
    for (const auto& [c, a] : d.tails)
      if (c.residue < q) t[c] = a;
    d.tails = std::move(t);
    d.m = q;
    break;
  }
  // smallest threshold, by bisection (validity is monotone in n)
  long lo = spec.universe().max_excluded(), hi = d.n;
  if (lo < hi) {
    Framed f = frame(spec, d, d.m, d.n);
    std::optional<SubspaceData> best;
    while (lo < hi) {
      long mid = lo + (hi - lo) / 2;
      auto cand = shrink(d, f, mid);
      bool valid = false;
      if (cand) {
        Framed g = frame(spec, *cand, d.m, d.n);
        valid = same_framed(f, g);
      }
      if (valid) {
        hi = mid;
        best = std::move(cand);
      } else {
        lo = mid + 1;
      }
    }
    if (best && best->n == hi) {
      Framed g = frame(spec, *best, best->m, best->n);
      d = to_data(g, d.side);
    }
  }
  d.key = make_key(d);
  return d;
}

// echelonize window generators, reduce anchors, minimize
inline std::shared_ptr<const SubspaceData> assemble(const SpaceSpec& spec, Side side, long m, long n,
                                                   const std::vector<Row>& window, const std::map<TailClass, Row>& tails,
                                                   const Layout& layout) {
  SubspaceData raw;
  raw.side = side;
  raw.m = m;
  raw.n = n;
  RowSpace space(layout.cols());
  for (const auto& r : window) space.insert(r);
  for (const auto& r : space.rows()) raw.basis.push_back(layout.sparse(r));
  for (const auto& [c, a] : tails) raw.tails[c] = layout.sparse(space.reduced(a));
  return std::make_shared<const SubspaceData>(minimize(spec, std::move(raw)));
}

}  // namespace detail

class Subspace {
 public:
  Subspace() = default;
  Subspace(SpecPtr spec, std::shared_ptr<const detail::SubspaceData> data)
      : spec_(std::move(spec)), data_(std::move(data)) {}

  static Subspace zero(const SpecPtr& spec, Side side) {
    spec->check_side(side);
    detail::SubspaceData d;
    d.side = side;
    d.n = spec->universe().max_excluded();
    d = detail::minimize(*spec, d);
    return Subspace(spec, std::make_shared<const detail::SubspaceData>(std::move(d)));
  }
  static Subspace full(const SpecPtr& spec, Side side) {
    spec->check_side(side);
    std::vector<Vector> gens;
    for (std::size_t k = 0; k < spec->specials(side).size(); ++k) gens.push_back(Vector::special(side, static_cast<long>(k)));
    return span(spec, side, gens, {TailFamily{IndexPattern::all(), Vector(side)}});
  }

  static Subspace span(const SpecPtr& spec, Side side, const std::vector<Vector>& gens,
                       const std::vector<TailFamily>& families = {}) {
    spec->check_side(side);
    const Universe& u = spec->universe();
    IndexPattern up = u.pattern();
    long m = 1, n = u.max_excluded();
    for (const auto& g : gens) {
      if (g.side() != side) fail(ErrorCode::side_mismatch, "generator on the wrong side");
      n = std::max(n, g.max_abs_index());
    }
    std::vector<IndexPattern> pats;
    for (const auto& f : families) {
      if (f.anchor.side() != side) fail(ErrorCode::side_mismatch, "anchor on the wrong side");
      IndexPattern p = intersect(f.pattern, up);
      if (p.is_finite()) fail(ErrorCode::invalid_pattern, "tail family needs an infinite pattern");
      m = std::lcm(m, p.modulus());
      n = std::max({n, p.threshold(), f.anchor.max_abs_index()});
      pats.push_back(std::move(p));
    }
    detail::Layout layout(*spec, side, n);
    std::vector<Row> window;
    for (const auto& g : gens) window.push_back(layout.dense(g));
    std::map<TailClass, Row> tails;
    for (std::size_t k = 0; k < families.size(); ++k) {
      Row a = layout.dense(families[k].anchor);
      for (long j = -n; j <= n; ++j)
        if (pats[k].contains(j)) {
          Row r = a;
          r[layout.column(BasisKey::regular(j))] += 1;
          window.push_back(std::move(r));
        }
      for (int s : detail::signs(*spec))
        for (long r = 0; r < m; ++r) {
          if (!pats[k].tail(s, r)) continue;
          auto [it, fresh] = tails.emplace(TailClass{s, r}, a);
          if (!fresh) {
            Row diff = a;
            for (std::size_t c = 0; c < diff.size(); ++c) diff[c] -= it->second[c];
            window.push_back(std::move(diff));
          }
        }
    }
    return Subspace(spec, detail::assemble(*spec, side, m, n, window, tails, layout));
  }

  const SpecPtr& spec() const { return spec_; }
  const SpaceSpec& space() const { return *spec_; }
  const detail::SubspaceData& data() const { return *data_; }
  Side side() const { return data_->side; }
  long modulus() const { return data_->m; }
  long threshold() const { return data_->n; }
  const std::vector<Vector>& basis() const { return data_->basis; }
  const std::map<TailClass, Vector>& tails() const { return data_->tails; }
  const std::string& key() const { return data_->key; }
  bool is_zero() const { return data_->basis.empty() && data_->tails.empty(); }

  // tail families grouped by sign and anchor
  std::vector<TailFamily> families() const {
    std::vector<TailFamily> out;
    std::vector<std::pair<std::pair<int, Vector>, std::set<long>>> groups;
    for (const auto& [c, a] : data_->tails) {
      bool placed = false;
      for (auto& g : groups)
        if (g.first.first == c.sign && g.first.second == a) {
          g.second.insert(c.residue);
          placed = true;
          break;
        }
      if (!placed) groups.push_back({{c.sign, a}, {c.residue}});
    }
    std::stable_sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) { return x.first.first > y.first.first; });
    for (const auto& g : groups) {
      long n = data_->n;
      auto p = g.first.first > 0 ? IndexPattern::residue_classes(data_->m, g.second, n + 1, std::nullopt)
                                 : IndexPattern::residue_classes(data_->m, g.second, std::nullopt, -n - 1);
      out.push_back({p, g.first.second});
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.spec_ == b.spec_ && a.data_->key == b.data_->key;
  }

 private:
  SpecPtr spec_;
  std::shared_ptr<const detail::SubspaceData> data_;
};

// ---- printing -------------------------------------------------------------

inline std::string format_scalar_coefficient(const Scalar& c, bool first) {
  std::string s;
  Scalar a = abs(c);
  if (sgn(c) < 0)
    s = first ? "-" : " - ";
  else if (!first)
    s = " + ";
  if (a != 1) s += a.get_str() + "*";
  return s;
}

inline std::string format_key(const SpaceSpec& spec, Side side, BasisKey k, const std::string& index_var = "") {
  if (k.special) return spec.specials(side).at(k.index);
  return spec.name(side) + "[" + (index_var.empty() ? std::to_string(k.index) : index_var) + "]";
}

inline std::string format_vector(const SpaceSpec& spec, const Vector& v) {
  if (v.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, c] : v.terms()) {
    s += format_scalar_coefficient(c, first) + format_key(spec, v.side(), k);
    first = false;
  }
  return s;
}

inline std::string format_residues(const IndexPattern& p, int sign) {
  std::vector<long> rs;
  for (long r = 0; r < p.modulus(); ++r)
    if (p.tail(sign, r)) rs.push_back(r);
  std::string s;
  if (rs.size() == 1) {
    s = std::to_string(rs[0]);
  } else {
    s = "{";
    for (std::size_t k = 0; k < rs.size(); ++k) s += (k ? "," : "") + std::to_string(rs[k]);
    s += "}";
  }
  return s + " mod " + std::to_string(p.modulus());
}

inline std::string to_string(const Subspace& s) {
  const SpaceSpec& spec = s.space();
  std::string out = "span { ";
  bool first = true;
  for (const auto& b : s.basis()) {
    out += (first ? "" : ", ") + format_vector(spec, b);
    first = false;
  }
  for (const auto& f : s.families()) {
    std::string fam = format_key(spec, s.side(), BasisKey::regular(0), "i");
    if (!f.anchor.is_zero()) {
      std::string a = format_vector(spec, f.anchor);
      fam += a[0] == '-' ? " - " + a.substr(1) : " + " + a;
    }
    bool pos = !f.pattern.positive_tail().empty() &&
               std::find(f.pattern.positive_tail().begin(), f.pattern.positive_tail().end(), true) !=
                   f.pattern.positive_tail().end();
    fam += " for i in " + format_residues(f.pattern, pos ? 1 : -1);
    fam += pos ? " from " + std::to_string(f.pattern.threshold() + 1) : " to " + std::to_string(-f.pattern.threshold() - 1);
    out += (first ? "" : ", ") + fam;
    first = false;
  }
  return out + (first ? "}" : " }");
}

// ---- operations ---------------------------------------------------------------

namespace detail {

inline void same_side(const Subspace& a, const Subspace& b) {
  if (a.spec() != b.spec()) fail(ErrorCode::side_mismatch, "subspaces of different spaces");
  if (a.side() != b.side()) fail(ErrorCode::side_mismatch, "subspaces on different sides");
}

inline std::pair<long, long> common_frame(const Subspace& a, const Subspace& b) {
  return {std::lcm(a.modulus(), b.modulus()), std::max(a.threshold(), b.threshold())};
}

inline TailClass partner(const SpaceSpec& spec, TailClass c, long m) {
  if (!spec.selfdual()) return c;
  return {-c.sign, mod(-c.residue, m)};
}

}  // namespace detail

inline bool contains_vector(const Subspace& s, const Vector& x) {
  if (x.side() != s.side()) fail(ErrorCode::side_mismatch, "vector on the wrong side");
  auto f = detail::frame(s.space(), s.data(), s.modulus(), std::max(s.threshold(), x.max_abs_index()));
  return f.space.contains(f.layout.dense(x));
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  detail::same_side(a, b);
  auto [m, n] = detail::common_frame(a, b);
  const SpaceSpec& spec = a.space();
  auto fa = detail::frame(spec, a.data(), m, n);
  auto fb = detail::frame(spec, b.data(), m, n);
  std::vector<Row> window = fa.space.rows();
  for (const auto& r : fb.space.rows()) window.push_back(r);
  std::map<TailClass, Row> tails = fa.tails;
  for (const auto& [c, t] : fb.tails) {
    auto it = tails.find(c);
    if (it == tails.end()) {
      tails[c] = t;
    } else {
      Row d = it->second;
      for (std::size_t k = 0; k < d.size(); ++k) d[k] -= t[k];
      window.push_back(std::move(d));
    }
  }
  return Subspace(a.spec(), detail::assemble(spec, a.side(), m, n, window, tails, fa.layout));
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  detail::same_side(a, b);
  auto [m, n0] = detail::common_frame(a, b);
  const SpaceSpec& spec = a.space();
  long n = n0 + m;
  auto fa = detail::frame(spec, a.data(), m, n);
  auto fb = detail::frame(spec, b.data(), m, n);
  // λ·A = μ·B
  const auto& ra = fa.space.rows();
  const auto& rb = fb.space.rows();
  std::size_t cols = fa.layout.cols();
  std::vector<Row> window;
  if (!ra.empty() && !rb.empty()) {
    Matrix sys(cols, ra.size() + rb.size());
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t i = 0; i < ra.size(); ++i) sys(c, i) = ra[i][c];
      for (std::size_t i = 0; i < rb.size(); ++i) sys(c, ra.size() + i) = -rb[i][c];
    }
    for (const auto& k : kernel(sys)) {
      Row v(cols);
      for (std::size_t i = 0; i < ra.size(); ++i)
        if (sgn(k[i]) != 0)
          for (std::size_t c = 0; c < cols; ++c) v[c] += k[i] * ra[i][c];
      window.push_back(std::move(v));
    }
  }
  std::map<TailClass, Row> tails;
  for (const auto& [c, t] : fa.tails) {
    if (!fb.tails.count(c)) continue;
    Row r(cols);
    r[fa.layout.column(BasisKey::regular(detail::representative(c, m, n0)))] = -1;
    tails[c] = std::move(r);
  }
  return Subspace(a.spec(), detail::assemble(spec, a.side(), m, n, window, tails, fa.layout));
}

// T ⊆ S
inline bool includes(const Subspace& s, const Subspace& t) {
  detail::same_side(s, t);
  auto [m, n] = detail::common_frame(s, t);
  const SpaceSpec& spec = s.space();
  auto fs = detail::frame(spec, s.data(), m, n);
  auto ft = detail::frame(spec, t.data(), m, n);
  for (const auto& r : ft.space.rows())
    if (!fs.space.contains(r)) return false;
  for (const auto& [c, a] : ft.tails) {
    auto it = fs.tails.find(c);
    if (it == fs.tails.end()) return false;
    Row d = a;
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= it->second[k];
    if (!fs.space.contains(d)) return false;
  }
  return true;
}

inline bool equals(const Subspace& a, const Subspace& b) {
  detail::same_side(a, b);
  return a == b;
}

inline Subspace perp(const Subspace& s) {
  const SpaceSpec& spec = s.space();
  {
    std::lock_guard<std::mutex> lock(spec.cache().mu);
    auto it = spec.cache().perp.find(s.key());
    if (it != spec.cache().perp.end()) return Subspace(s.spec(), it->second);
  }
  Side from = s.side();
  Side to = spec.opposite(from);
  long m = std::lcm(s.modulus(), spec.period());
  long n0 = std::max(s.threshold(), spec.threshold());
  long n = n0 + m;
  auto fs = detail::frame(spec, s.data(), m, n0);
  detail::Layout out(spec, to, n);
  auto pb = [&](BasisKey a, BasisKey b) {
    return from == Side::left || spec.selfdual() ? spec.pair_basis(a, b) : spec.pair_basis(b, a);
  };
  auto constraint = [&](const Vector& x) {
    Row r(out.cols());
    for (const auto& [a, c] : x.terms())
      for (std::size_t col = 0; col < out.cols(); ++col) {
        Scalar p = pb(a, out.keys[col]);
        if (sgn(p) != 0) r[col] += c * p;
      }
    return r;
  };
  std::vector<Row> rows;
  for (const auto& g : fs.space.rows()) rows.push_back(constraint(fs.layout.sparse(g)));
  std::set<TailClass> blocked;
  long far = n + 4 * m;
  for (const auto& [c, a] : fs.tails) {
    blocked.insert(detail::partner(spec, c, m));
    Vector x = fs.layout.sparse(a);
    x.add(BasisKey::regular(detail::representative(c, m, far)), 1);
    rows.push_back(constraint(x));
  }
  for (long j = -n; j <= n; ++j) {
    if (std::labs(j) <= n0 || !spec.universe().contains(j)) continue;
    if (!blocked.count(detail::class_of(j, m))) continue;
    Row r(out.cols());
    r[out.column(BasisKey::regular(j))] = 1;
    rows.push_back(std::move(r));
  }
  std::vector<Row> window;
  if (rows.empty()) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      Row r(out.cols());
      r[c] = 1;
      window.push_back(std::move(r));
    }
  } else {
    window = kernel(Matrix::from_rows(out.cols(), rows));
  }
  std::map<TailClass, Row> tails;
  for (int sg : detail::signs(spec))
    for (long r = 0; r < m; ++r) {
      TailClass c{sg, r};
      if (blocked.count(c)) continue;
      Row a(out.cols());
      a[out.column(BasisKey::regular(detail::representative(c, m, n0)))] = -1;
      tails[c] = std::move(a);
    }
  auto data = detail::assemble(spec, to, m, n, window, tails, out);
  {
    std::lock_guard<std::mutex> lock(spec.cache().mu);
    spec.cache().perp.emplace(s.key(), data);
  }
  return Subspace(s.spec(), data);
}

inline Subspace closure(const Subspace& s) { return perp(perp(s)); }
inline bool is_closed(const Subspace& s) { return closure(s) == s; }

inline QuotientDim quotient_dim(const Subspace& a, const Subspace& b) {
  if (!includes(b, a)) fail(ErrorCode::precondition, "quotient needs A ⊆ B");
  auto [m, n] = detail::common_frame(a, b);
  const SpaceSpec& spec = a.space();
  auto fa = detail::frame(spec, a.data(), m, n);
  auto fb = detail::frame(spec, b.data(), m, n);
  for (const auto& [c, t] : fb.tails)
    if (!fa.tails.count(c)) return QuotientDim::infinity();
  return QuotientDim::finite(static_cast<long>(fb.space.dim() - fa.space.dim()));
}

inline QuotientDim dimension(const Subspace& s) {
  if (!s.tails().empty()) return QuotientDim::infinity();
  return QuotientDim::finite(static_cast<long>(s.basis().size()));
}

// C with A ∩ C = 0 and A + C = B
inline Subspace complement_in(const Subspace& a, const Subspace& b) {
  if (!includes(b, a)) fail(ErrorCode::precondition, "complement needs A ⊆ B");
  auto [m, n] = detail::common_frame(a, b);
  const SpaceSpec& spec = a.space();
  auto fa = detail::frame(spec, a.data(), m, n);
  auto fb = detail::frame(spec, b.data(), m, n);
  std::map<TailClass, Row> tails;
  for (const auto& [c, t] : fb.tails)
    if (!fa.tails.count(c)) tails[c] = t;
  RowSpace acc = fa.space;
  std::vector<Row> window;
  for (const auto& r : fb.space.rows())
    if (acc.insert(r)) window.push_back(r);
  return Subspace(a.spec(), detail::assemble(spec, a.side(), m, n, window, tails, fa.layout));
}

inline bool is_isotropic(const Subspace& s) {
  if (!s.space().selfdual()) fail(ErrorCode::invalid_spec, "isotropy needs a selfdual space");
  return includes(perp(s), s);
}
inline bool is_coisotropic(const Subspace& s) {
  if (!s.space().selfdual()) fail(ErrorCode::invalid_spec, "isotropy needs a selfdual space");
  return includes(s, perp(s));
}

// nondegeneracy of the pairing restricted to X × Y
inline bool nondegenerate(const Subspace& x, const Subspace& y) {
  if (x.spec() != y.spec()) fail(ErrorCode::side_mismatch, "subspaces of different spaces");
  const SpaceSpec& spec = x.space();
  if (!spec.selfdual() && x.side() == y.side()) fail(ErrorCode::side_mismatch, "X and Y must lie on opposite sides");
  return intersect(x, perp(y)).is_zero() && intersect(y, perp(x)).is_zero();
}

inline Subspace triple_perp(const Subspace& t, const Subspace& x, const Subspace& y) {
  if (!nondegenerate(x, y)) fail(ErrorCode::degenerate_pairing, "pairing restricted to X × Y is degenerate");
  return perp(sum(perp(sum(t, x)), y));
}

}  // namespace levi
