#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levi/levi.hpp"

namespace levi::dsl {

struct Model {
  SpecPtr spec;
  std::map<std::string, Subspace> subspaces;
  std::vector<std::string> subspace_names;  // declaration order
  std::map<std::string, Flag> flags;
  std::map<std::string, TautCouple> couples;
  std::map<std::string, LeviDatum> levis;
  std::map<std::string, std::vector<std::size_t>> orders;  // 0-based summand labels

  const Subspace& subspace(const std::string& n) const { return lookup(subspaces, n, "subspace"); }
  const Flag& flag(const std::string& n) const { return lookup(flags, n, "flag"); }
  const TautCouple& couple(const std::string& n) const { return lookup(couples, n, "couple"); }
  const LeviDatum& levi(const std::string& n) const { return lookup(levis, n, "levi datum"); }
  const std::vector<std::size_t>& order(const std::string& n) const { return lookup(orders, n, "order"); }

 private:
  template <class M>
  static const typename M::mapped_type& lookup(const M& m, const std::string& n, const char* what) {
    auto it = m.find(n);
    if (it == m.end()) fail(ErrorCode::semantic, std::string("unknown ") + what + " '" + n + "'");
    return it->second;
  }
};

namespace detail {

enum class Tok { name, integer, punct, end };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
  std::size_t offset;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t k) {
    for (std::size_t t = 0; t < k; ++t) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    if (std::isspace(c)) {
      bump(1);
      continue;
    }
    std::size_t j = i;
    Token t{Tok::punct, "", line, col, i};
    if (std::isalpha(c) || c == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\'')) ++j;
      t.kind = Tok::name;
    } else if (std::isdigit(c)) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::integer;
    } else if (std::string("{}()[],.=+-*/").find(static_cast<char>(c)) != std::string::npos) {
      j = i + 1;
    } else {
      fail(ErrorCode::parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": unexpected character '" +
                                 std::string(1, static_cast<char>(c)) + "'");
    }
    t.text = src.substr(i, j - i);
    out.push_back(t);
    bump(j - i);
  }
  out.push_back({Tok::end, "", line, col, src.size()});
  return out;
}

// one term of a vector expression; index_var set when the index is the loop variable
struct Term {
  Scalar coef = 1;
  std::string name;
  std::optional<long> index;
  std::string index_var;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src), toks_(lex(src)) {}

  Model parse() {
    while (peek().kind != Tok::end) statement();
    if (!model_.spec && spec_) model_.spec = freeze(std::move(*spec_));
    if (!model_.spec) fail(ErrorCode::semantic, "model declares no space");
    return std::move(model_);
  }

 private:
  const std::string& src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t stmt_start_ = 0;
  std::optional<SpaceSpec> spec_;
  Model model_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void syntax(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    fail(ErrorCode::parse, "line " + std::to_string(t.line) + ", column " + std::to_string(t.col) + ": " + msg + ", got " + got);
  }
  [[noreturn]] void semantic(const std::string& msg) const {
    const Token& first = toks_[stmt_start_];
    std::size_t end = src_.find('\n', first.offset);
    std::string text = src_.substr(first.offset, end == std::string::npos ? std::string::npos : end - first.offset);
    fail(ErrorCode::semantic, "line " + std::to_string(first.line) + ": " + msg + " in statement '" + text + "'");
  }

  bool accept(const std::string& s) {
    if (peek().kind != Tok::end && peek().text == s && peek().kind != Tok::integer) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& s) {
    if (!accept(s)) syntax("expected '" + s + "'");
  }
  std::string name() {
    if (peek().kind != Tok::name) syntax("expected a name");
    return next().text;
  }
  long integer() {
    bool neg = accept("-");
    if (peek().kind != Tok::integer) syntax("expected an integer");
    long v = std::stol(next().text);
    return neg ? -v : v;
  }
  Scalar rational() {
    bool neg = accept("-");
    if (peek().kind != Tok::integer) syntax("expected a number");
    Scalar v(next().text);
    if (accept("/")) {
      if (peek().kind != Tok::integer) syntax("expected a denominator");
      Scalar d(next().text);
      if (d == 0) syntax("zero denominator");
      v /= d;
    }
    v.canonicalize();
    return neg ? Scalar(-v) : v;
  }

  SpaceSpec& open_spec() {
    if (!spec_) semantic("no space declared yet");
    if (model_.spec) semantic("specials and pairings must come before subspaces");
    return *spec_;
  }
  const SpaceSpec& frozen() {
    if (!model_.spec) {
      if (!spec_) semantic("no space declared yet");
      model_.spec = freeze(std::move(*spec_));
    }
    return *model_.spec;
  }
  Side side_named(const SpaceSpec& spec, const std::string& n) {
    try {
      return spec.side_of(n);
    } catch (const Error&) {
      semantic("unknown space '" + n + "'");
    }
  }
  void fresh(const std::string& n) {
    if (model_.subspaces.count(n) || model_.flags.count(n) || model_.couples.count(n) || model_.levis.count(n) ||
        model_.orders.count(n))
      semantic("name '" + n + "' already declared");
  }

  void statement() {
    stmt_start_ = pos_;
    if (peek().kind != Tok::name) syntax("expected a statement keyword");
    std::string kw = next().text;
    if (kw == "space") space_stmt();
    else if (kw == "special") special_stmt();
    else if (kw == "pair") pair_stmt();
    else if (kw == "subspace") subspace_stmt();
    else if (kw == "levi") levi_stmt();
    else if (kw == "flag") flag_stmt();
    else if (kw == "couple") couple_stmt();
    else if (kw == "order") order_stmt();
    else {
      pos_ = stmt_start_;
      syntax("unknown statement");
    }
  }

  Universe range() {
    Universe u;
    std::string r = name();
    if (r == "positive") u.kind = Universe::Kind::positive;
    else if (r == "nonzero") u.kind = Universe::Kind::nonzero;
    else if (r == "integers") u.kind = Universe::Kind::integers;
    else {
      --pos_;
      syntax("expected positive, nonzero or integers");
    }
    if (accept("excluding")) u.excluded = int_set();
    return u;
  }

  void space_stmt() {
    if (spec_ || model_.spec) semantic("only one space declaration is allowed");
    std::string left = name();
    if (accept("dual")) {
      std::string right = name();
      expect("indices");
      Universe u = range();
      if (left == right) semantic("the two spaces need different names");
      spec_ = SpaceSpec::dual_pair(u, left, right);
    } else if (accept("selfdual")) {
      bool sym;
      if (accept("symmetric")) sym = true;
      else if (accept("antisymmetric")) sym = false;
      else syntax("expected symmetric or antisymmetric");
      expect("indices");
      Universe u = range();
      try {
        spec_ = SpaceSpec::selfdual(u, sym, left);
      } catch (const Error& e) {
        semantic(e.what());
      }
    } else {
      syntax("expected 'dual' or 'selfdual'");
    }
  }

  void special_stmt() {
    std::vector<std::string> names;
    while (peek().kind == Tok::name && peek().text != "in") names.push_back(name());
    if (names.empty()) syntax("expected special names");
    expect("in");
    std::string sp = name();
    SpaceSpec& spec = open_spec();
    Side s = side_named(spec, sp);
    for (const auto& n : names) {
      try {
        spec.add_special(s, n);
      } catch (const Error& e) {
        semantic(e.what());
      }
    }
  }

  std::set<long> int_set() {
    std::set<long> out;
    expect("{");
    if (!accept("}")) {
      do out.insert(integer());
      while (accept(","));
      expect("}");
    }
    return out;
  }

  // all | RESIDUES mod INT, then optional from / to / excluding
  IndexPattern pattern() {
    long m = 1;
    std::set<long> residues{0};
    if (!accept("all")) {
      if (peek().text == "{") residues = int_set();
      else residues = {integer()};
      expect("mod");
      m = integer();
      if (m <= 0) syntax("modulus must be positive");
      std::set<long> norm;
      for (long r : residues) norm.insert(mod(r, m));
      residues = norm;
    }
    std::optional<long> lo, hi;
    std::set<long> excluded;
    for (;;) {
      if (accept("from")) lo = integer();
      else if (accept("to")) hi = integer();
      else if (accept("excluding")) {
        auto e = int_set();
        excluded.insert(e.begin(), e.end());
      } else break;
    }
    IndexPattern p = IndexPattern::residue_classes(m, residues, lo, hi);
    if (!excluded.empty()) p = difference(p, IndexPattern::finite(excluded));
    return p;
  }

  // NAME or NAME[INT] or NAME[var]
  Term basis_term() {
    Term t;
    t.name = name();
    if (accept("[")) {
      if (peek().kind == Tok::name) t.index_var = name();
      else t.index = integer();
      expect("]");
    }
    return t;
  }

  std::vector<Term> vector_expr() {
    std::vector<Term> terms;
    for (bool first = true;; first = false) {
      Scalar sign = 1;
      if (accept("-")) sign = -1;
      else if (!accept("+") && !first) break;
      Scalar c = 1;
      if (peek().kind == Tok::integer) {
        c = rational();
        expect("*");
      }
      Term t = basis_term();
      t.coef = sign * c;
      terms.push_back(std::move(t));
    }
    return terms;
  }

  BasisKey key_of(const SpaceSpec& spec, Side side, const Term& t) {
    if (t.index) {
      if (t.name != spec.name(side)) semantic("'" + t.name + "' is not the space " + spec.name(side));
      if (!spec.universe().contains(*t.index)) semantic("index " + std::to_string(*t.index) + " outside the index range");
      return BasisKey::regular(*t.index);
    }
    if (!t.index_var.empty()) semantic("unexpected index variable '" + t.index_var + "'");
    auto id = spec.find_special(side, t.name);
    if (!id) semantic("unknown special '" + t.name + "' in " + spec.name(side));
    return BasisKey::named(*id);
  }

  void pair_stmt() {
    auto lhs = special_list_or_term();
    expect(".");
    auto rhs = special_list_or_term();
    expect("=");
    Scalar value = rational();
    std::optional<std::string> var;
    std::optional<IndexPattern> where;
    if (accept("for")) {
      var = name();
      expect("in");
      where = pattern();
    }
    SpaceSpec& spec = open_spec();
    auto is_regular = [](const std::vector<Term>& ts) { return ts.size() == 1 && !ts[0].index_var.empty(); };
    auto special_side = [&](const Term& t) -> std::pair<Side, long> {
      if (!t.index_var.empty() || t.index) semantic("expected a special vector, got '" + t.name + "[...]'");
      for (Side s : {Side::left, Side::right}) {
        if (spec.selfdual() && s == Side::right) break;
        if (auto id = spec.find_special(s, t.name)) return {s, *id};
      }
      semantic("unknown special '" + t.name + "'");
    };
    try {
      if (is_regular(lhs) || is_regular(rhs)) {
        if (is_regular(lhs) && is_regular(rhs)) semantic("regular basis pairings are fixed by the space kind");
        const auto& reg = is_regular(lhs) ? lhs[0] : rhs[0];
        const auto& sps = is_regular(lhs) ? rhs : lhs;
        if (!var || reg.index_var != *var) semantic("indexed pairing needs 'for " + reg.index_var + " in PATTERN'");
        Side rs = side_named(spec, reg.name);
        for (const auto& t : sps) {
          auto [s, id] = special_side(t);
          if (!spec.selfdual() && s == rs) semantic("special '" + t.name + "' lies in the same space as " + reg.name);
          spec.add_row(s, id, *where, value);
        }
        return;
      }
      if (var) semantic("'for' clause without an indexed term");
      for (const auto& a : lhs)
        for (const auto& b : rhs) {
          auto [sa, ia] = special_side(a);
          auto [sb, ib] = special_side(b);
          if (!spec.selfdual()) {
            if (sa == sb) semantic("'" + a.name + "' and '" + b.name + "' lie in the same space");
            if (sa == Side::right) std::swap(ia, ib);
          }
          spec.set_gram(ia, ib, value);
        }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::semantic) throw;
      semantic(e.what());
    }
  }

  std::vector<Term> special_list_or_term() {
    std::vector<Term> out;
    if (accept("{")) {
      do out.push_back(basis_term());
      while (accept(","));
      expect("}");
      return out;
    }
    out.push_back(basis_term());
    return out;
  }

  void subspace_stmt() {
    std::string n = name();
    expect("in");
    std::string sp = name();
    expect("=");
    expect("span");
    expect("{");
    struct Fam {
      std::vector<Term> terms;
      std::optional<std::string> var;
      std::optional<IndexPattern> pat;
    };
    std::vector<Fam> fams;
    if (!accept("}")) {
      do {
        Fam f;
        f.terms = vector_expr();
        if (accept("for")) {
          f.var = name();
          expect("in");
          f.pat = pattern();
        }
        fams.push_back(std::move(f));
      } while (accept(","));
      expect("}");
    }
    fresh(n);
    const SpaceSpec& spec = frozen();
    Side side = side_named(spec, sp);
    std::vector<Vector> gens;
    std::vector<TailFamily> tails;
    for (const auto& f : fams) {
      Vector anchor(side);
      std::optional<Scalar> lead;
      for (const auto& t : f.terms) {
        if (!t.index_var.empty()) {
          if (!f.var || t.index_var != *f.var) semantic("unbound index variable '" + t.index_var + "'");
          if (t.name != spec.name(side)) semantic("'" + t.name + "' is not the space " + spec.name(side));
          if (lead) semantic("the index variable may appear only once per family");
          lead = t.coef;
          continue;
        }
        anchor.add(key_of(spec, side, t), t.coef);
      }
      if (!f.var) {
        gens.push_back(anchor);
        continue;
      }
      if (!lead) semantic("family does not use its index variable '" + *f.var + "'");
      anchor *= Scalar(1 / *lead);
      IndexPattern p = intersect(*f.pat, spec.universe().pattern());
      if (p.is_finite()) {
        for (long j = -p.threshold(); j <= p.threshold(); ++j)
          if (p.contains(j)) {
            Vector g = anchor;
            g.add(BasisKey::regular(j), 1);
            gens.push_back(std::move(g));
          }
      } else {
        tails.push_back({p, anchor});
      }
    }
    try {
      model_.subspaces.emplace(n, Subspace::span(model_.spec, side, gens, tails));
    } catch (const Error& e) {
      semantic(e.what());
    }
    model_.subspace_names.push_back(n);
  }

  const Subspace& subspace_ref() {
    std::string n = name();
    auto it = model_.subspaces.find(n);
    if (it == model_.subspaces.end()) semantic("unknown subspace '" + n + "'");
    return it->second;
  }

  void levi_stmt() {
    std::string n = name();
    expect("=");
    LeviDatum l;
    std::optional<AlgebraKind> kind;
    std::vector<std::pair<std::string, std::vector<const Subspace*>>> parts;
    do {
      std::string k = name();
      expect("(");
      std::vector<const Subspace*> args{&subspace_ref()};
      while (accept(",")) args.push_back(&subspace_ref());
      expect(")");
      parts.push_back({k, args});
    } while (accept("+"));
    fresh(n);
    for (const auto& [k, args] : parts) {
      if (k == "sl" || k == "gl") {
        if (args.size() != 2) semantic(k + " takes two subspaces");
        l.summands.push_back({*args[0], *args[1]});
        if (k == "gl") kind = AlgebraKind::gl;
      } else if (k == "so" || k == "sp") {
        if (args.size() != 1) semantic(k + " takes one subspace");
        if (l.w) semantic("at most one so/sp part");
        l.w = *args[0];
        kind = k == "so" ? AlgebraKind::so : AlgebraKind::sp;
      } else {
        semantic("unknown summand kind '" + k + "'");
      }
    }
    if (kind) l.kind = *kind;
    else if (model_.spec && model_.spec->selfdual())
      l.kind = model_.spec->kind() == SpaceKind::symmetric ? AlgebraKind::so : AlgebraKind::sp;
    auto rep = validate_levi(l);
    if (!rep.pass) semantic("invalid Levi datum: " + rep.failures.front());
    model_.levis.emplace(n, std::move(l));
  }

  void flag_stmt() {
    std::string n = name();
    expect("in");
    std::string sp = name();
    expect("=");
    expect("(");
    std::vector<Subspace> chain;
    if (!accept(")")) {
      do chain.push_back(subspace_ref());
      while (accept(","));
      expect(")");
    }
    fresh(n);
    const SpaceSpec& spec = frozen();
    Side side = side_named(spec, sp);
    try {
      model_.flags.emplace(n, flag_from_chain(model_.spec, side, chain));
    } catch (const Error& e) {
      semantic(e.what());
    }
  }

  void couple_stmt() {
    std::string n = name();
    expect("=");
    expect("(");
    std::string f = name();
    std::optional<std::string> g;
    if (accept(",")) g = name();
    expect(")");
    fresh(n);
    auto flag = [&](const std::string& k) {
      auto it = model_.flags.find(k);
      if (it == model_.flags.end()) semantic("unknown flag '" + k + "'");
      return it->second;
    };
    TautCouple tc{flag(f), std::nullopt};
    if (g) tc.flag_vstar = flag(*g);
    if (tc.flag_v.side() != Side::left) semantic("the first flag of a couple must lie in " + model_.spec->name(Side::left));
    if (model_.spec->selfdual() == tc.flag_vstar.has_value())
      semantic(model_.spec->selfdual() ? "a selfdual couple has one flag" : "a couple needs a flag in each space");
    if (tc.flag_vstar && tc.flag_vstar->side() != Side::right)
      semantic("the second flag of a couple must lie in " + model_.spec->name(Side::right));
    model_.couples.emplace(n, std::move(tc));
  }

  void order_stmt() {
    std::string n = name();
    expect("=");
    expect("(");
    std::vector<std::size_t> o;
    do {
      long k = integer();
      if (k < 1) semantic("order labels start at 1");
      o.push_back(static_cast<std::size_t>(k - 1));
    } while (accept(","));
    expect(")");
    fresh(n);
    auto sorted = o;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
      if (sorted[k] != k) semantic("an order must list 1..n once each");
    model_.orders.emplace(n, std::move(o));
  }
};

}  // namespace detail

inline Model parse_model(const std::string& text) { return detail::Parser(text).parse(); }

}  // namespace levi::dsl
