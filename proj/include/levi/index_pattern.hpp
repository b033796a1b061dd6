#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "levi/error.hpp"

namespace levi {

inline long mod(long i, long m) {
  long r = i % m;
  return r < 0 ? r + m : r;
}

// Eventually periodic set of integers. Beyond |i| > threshold membership is
// decided by the residue of i and its sign; inside it is listed explicitly.
class IndexPattern {
 public:
  IndexPattern() : pos_(1, false), neg_(1, false) {}

  // general constructor; members with |i| <= n are taken from `inside`
  static IndexPattern build(long m, std::vector<bool> pos, std::vector<bool> neg, long n,
                            const std::function<bool(long)>& inside) {
    if (m <= 0) fail(ErrorCode::invalid_pattern, "modulus must be positive");
    if (n < 0) fail(ErrorCode::invalid_pattern, "threshold must be nonnegative");
    if (pos.size() != static_cast<std::size_t>(m) || neg.size() != static_cast<std::size_t>(m))
      fail(ErrorCode::invalid_pattern, "residue table size differs from modulus");
    IndexPattern p;
    p.m_ = m;
    p.n_ = n;
    p.pos_ = std::move(pos);
    p.neg_ = std::move(neg);
    for (long i = -n; i <= n; ++i)
      if (inside(i)) p.members_.insert(i);
    p.normalize();
    return p;
  }

  static IndexPattern finite(const std::set<long>& s) {
    long n = 0;
    for (long i : s) n = std::max(n, std::labs(i));
    return build(1, {false}, {false}, n, [&](long i) { return s.count(i) > 0; });
  }
  static IndexPattern all() { return build(1, {true}, {true}, 0, [](long) { return true; }); }

  // {i : i ≡ r mod m for some r in residues, lo <= i <= hi}; bounds optional
  static IndexPattern residue_classes(long m, const std::set<long>& residues, std::optional<long> lo,
                                      std::optional<long> hi) {
    if (m <= 0) fail(ErrorCode::invalid_pattern, "modulus must be positive");
    std::vector<bool> table(m, false);
    for (long r : residues) table[mod(r, m)] = true;
    long n = 0;
    if (lo) n = std::max(n, std::labs(*lo));
    if (hi) n = std::max(n, std::labs(*hi));
    std::vector<bool> pos = table, neg = table;
    if (hi) pos.assign(m, false);
    if (lo) neg.assign(m, false);
    return build(m, pos, neg, n, [&](long i) {
      return table[mod(i, m)] && (!lo || i >= *lo) && (!hi || i <= *hi);
    });
  }

  long modulus() const { return m_; }
  long threshold() const { return n_; }
  const std::set<long>& members() const { return members_; }
  bool tail(int sign, long r) const { return sign > 0 ? pos_[mod(r, m_)] : neg_[mod(r, m_)]; }
  const std::vector<bool>& positive_tail() const { return pos_; }
  const std::vector<bool>& negative_tail() const { return neg_; }

  bool contains(long i) const {
    if (std::labs(i) <= n_) return members_.count(i) > 0;
    return i > 0 ? pos_[mod(i, m_)] : neg_[mod(i, m_)];
  }
  bool is_finite() const {
    for (long r = 0; r < m_; ++r)
      if (pos_[r] || neg_[r]) return false;
    return true;
  }
  bool empty() const { return is_finite() && members_.empty(); }

  IndexPattern rebased(long m, long n) const {
    if (m % m_ != 0 || n < n_) fail(ErrorCode::invalid_pattern, "rebase target must refine the pattern frame");
    IndexPattern p;
    p.m_ = m;
    p.n_ = n;
    p.pos_.resize(m);
    p.neg_.resize(m);
    for (long r = 0; r < m; ++r) {
      p.pos_[r] = pos_[r % m_];
      p.neg_[r] = neg_[r % m_];
    }
    for (long i = -n; i <= n; ++i)
      if (contains(i)) p.members_.insert(i);
    return p;
  }

  friend IndexPattern combine(const IndexPattern& a, const IndexPattern& b,
                              const std::function<bool(bool, bool)>& op) {
    long m = std::lcm(a.m_, b.m_);
    long n = std::max(a.n_, b.n_);
    std::vector<bool> pos(m), neg(m);
    for (long r = 0; r < m; ++r) {
      pos[r] = op(a.pos_[r % a.m_], b.pos_[r % b.m_]);
      neg[r] = op(a.neg_[r % a.m_], b.neg_[r % b.m_]);
    }
    return build(m, pos, neg, n, [&](long i) { return op(a.contains(i), b.contains(i)); });
  }
  friend IndexPattern unite(const IndexPattern& a, const IndexPattern& b) {
    return combine(a, b, [](bool x, bool y) { return x || y; });
  }
  friend IndexPattern intersect(const IndexPattern& a, const IndexPattern& b) {
    return combine(a, b, [](bool x, bool y) { return x && y; });
  }
  friend IndexPattern difference(const IndexPattern& a, const IndexPattern& b) {
    return combine(a, b, [](bool x, bool y) { return x && !y; });
  }
  friend IndexPattern complement(const IndexPattern& a) { return difference(all(), a); }
  friend bool subset(const IndexPattern& a, const IndexPattern& b) { return difference(a, b).empty(); }

  friend bool operator==(const IndexPattern& a, const IndexPattern& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.pos_ == b.pos_ && a.neg_ == b.neg_ && a.members_ == b.members_;
  }

  std::string to_string() const {
    std::string out;
    auto residues = [&](const std::vector<bool>& t) {
      std::vector<long> rs;
      for (long r = 0; r < m_; ++r)
        if (t[r]) rs.push_back(r);
      std::string s;
      if (rs.size() == 1) {
        s = std::to_string(rs[0]);
      } else {
        s = "{";
        for (std::size_t k = 0; k < rs.size(); ++k) s += (k ? "," : "") + std::to_string(rs[k]);
        s += "}";
      }
      return s + " mod " + std::to_string(m_);
    };
    auto add = [&](const std::string& s) { out += (out.empty() ? "" : " | ") + s; };
    bool any_pos = false, any_neg = false;
    for (long r = 0; r < m_; ++r) {
      any_pos = any_pos || pos_[r];
      any_neg = any_neg || neg_[r];
    }
    if (any_pos) add(residues(pos_) + " from " + std::to_string(n_ + 1));
    if (any_neg) add(residues(neg_) + " to " + std::to_string(-n_ - 1));
    if (!members_.empty()) {
      std::string s = "{";
      bool first = true;
      for (long i : members_) {
        s += (first ? "" : ",") + std::to_string(i);
        first = false;
      }
      add(s + "}");
    }
    return out.empty() ? "{}" : out;
  }

 private:
  void normalize() {
    // smallest period first, then the smallest threshold
    for (long d = 1; d < m_; ++d) {
      if (m_ % d != 0) continue;
      bool ok = true;
      for (long r = 0; r < m_ && ok; ++r) ok = pos_[r] == pos_[r % d] && neg_[r] == neg_[r % d];
      if (!ok) continue;
      pos_.resize(d);
      neg_.resize(d);
      m_ = d;
      break;
    }
    while (n_ > 0) {
      bool up = members_.count(n_) > 0, down = members_.count(-n_) > 0;
      if (up != pos_[mod(n_, m_)] || down != neg_[mod(-n_, m_)]) break;
      members_.erase(n_);
      members_.erase(-n_);
      --n_;
    }
  }

  long m_ = 1;
  long n_ = 0;
  std::vector<bool> pos_, neg_;
  std::set<long> members_;
};

struct Universe {
  enum class Kind { positive, nonzero, integers };
  Kind kind = Kind::positive;
  std::set<long> excluded;

  bool contains(long i) const {
    if (excluded.count(i)) return false;
    switch (kind) {
      case Kind::positive: return i > 0;
      case Kind::nonzero: return i != 0;
      case Kind::integers: return true;
    }
    return false;
  }
  bool two_sided() const { return kind != Kind::positive; }
  long max_excluded() const {
    long n = 0;
    for (long i : excluded) n = std::max(n, std::labs(i));
    return n;
  }
  IndexPattern pattern() const {
    bool neg = two_sided();
    return IndexPattern::build(1, {true}, {neg}, std::max(1L, max_excluded()),
                               [&](long i) { return contains(i); });
  }
  std::string name() const {
    switch (kind) {
      case Kind::positive: return "positive";
      case Kind::nonzero: return "nonzero";
      case Kind::integers: return "integers";
    }
    return "";
  }
  friend bool operator==(const Universe& a, const Universe& b) {
    return a.kind == b.kind && a.excluded == b.excluded;
  }
};

enum class PatternOp { unite, intersect, complement };

inline IndexPattern pattern_algebra(PatternOp op, const IndexPattern& p, const IndexPattern& q,
                                    const Universe& u) {
  IndexPattern up = u.pattern();
  if (!subset(p, up) || (op != PatternOp::complement && !subset(q, up)))
    fail(ErrorCode::universe_mismatch, "pattern reaches outside the universe");
  switch (op) {
    case PatternOp::unite: return unite(p, q);
    case PatternOp::intersect: return intersect(p, q);
    case PatternOp::complement: return difference(up, p);
  }
  return p;
}

}  // namespace levi
