#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "levi/dsl.hpp"
#include "levi/enumerate.hpp"
#include "levi/oracle.hpp"

namespace levi {

using Json = nlohmann::ordered_json;

struct CoupleView {
  std::vector<std::size_t> order;  // 1-based, empty when not known
  std::vector<std::string> flag_v, flag_vstar;
  std::string v_name, vstar_name;
};

struct Report {
  std::string command;
  Json result = Json::object();
  std::vector<CoupleView> couples;
  std::vector<std::string> diagnostics;
};

namespace detail {

inline std::vector<std::string> flag_strings(const Flag& f) {
  std::vector<std::string> out;
  for (const auto& m : f.members()) out.push_back(to_string(m));
  return out;
}

inline CoupleView view(const TautCouple& tc, std::vector<std::size_t> order) {
  for (auto& o : order) ++o;
  const SpaceSpec& spec = *tc.flag_v.spec();
  CoupleView v{std::move(order), flag_strings(tc.flag_v), {}, spec.name(Side::left), spec.name(pairing_side(spec))};
  if (tc.flag_vstar) v.flag_vstar = flag_strings(*tc.flag_vstar);
  return v;
}

inline Json count_json(const Count& c) {
  if (c.uncountable) return {{"kind", "uncountable"}};
  return {{"kind", "finite"}, {"value", c.value}};
}

inline Json dim_json(const QuotientDim& q) {
  if (q.infinite) return {{"kind", "infinite"}};
  return {{"kind", "finite"}, {"value", q.value}};
}

inline Json labels(const std::vector<std::size_t>& xs) {
  Json a = Json::array();
  for (auto x : xs) a.push_back(x + 1);
  return a;
}

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> options;

  const std::string& option(const std::string& k) const {
    auto it = options.find(k);
    if (it == options.end()) fail(ErrorCode::parse, "missing option --" + k);
    return it->second;
  }
  bool has(const std::string& k) const { return options.count(k) > 0; }
};

inline Args split_args(const std::vector<std::string>& words) {
  Args a;
  for (std::size_t k = 1; k < words.size(); ++k) {
    if (words[k].rfind("--", 0) == 0) {
      if (k + 1 >= words.size()) fail(ErrorCode::parse, "option " + words[k] + " needs a value");
      a.options[words[k].substr(2)] = words[k + 1];
      ++k;
    } else {
      a.positional.push_back(words[k]);
    }
  }
  return a;
}

inline std::vector<long> int_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      fail(ErrorCode::parse, "expected a comma separated integer list, got '" + s + "'");
    }
  }
  return out;
}

// named order or an inline list such as 2,1
inline std::vector<std::size_t> order_arg(const dsl::Model& m, const std::string& s, std::size_t n) {
  auto it = m.orders.find(s);
  std::vector<std::size_t> o;
  if (it != m.orders.end()) {
    o = it->second;
  } else {
    for (long k : int_list(s)) {
      if (k < 1) fail(ErrorCode::semantic, "order labels start at 1");
      o.push_back(static_cast<std::size_t>(k - 1));
    }
  }
  auto sorted = o;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != k || sorted.size() != n) fail(ErrorCode::semantic, "order must be a permutation of 1.." + std::to_string(n));
  return o;
}

inline void need(const Args& a, std::size_t lo, std::size_t hi, const std::string& usage) {
  if (a.positional.size() < lo || a.positional.size() > hi) fail(ErrorCode::parse, "usage: " + usage);
}

inline Report oracle_all(const dsl::Model& m, const std::vector<long>& cutoffs, std::uint64_t seed) {
  using oracle::CheckKind;
  Report r;
  long checks = 0, failures = 0;
  auto record = [&](const std::string& what, const oracle::OracleReport& rep) {
    ++checks;
    if (rep.pass()) return;
    ++failures;
    std::string why = what + ":";
    for (const auto& c : rep.cutoffs)
      if (!c.agree) why += " disagrees at " + std::to_string(c.cutoff) + " (" + c.detail + ")";
    if (!rep.stable) why += " not stable between the last two cutoffs";
    r.diagnostics.push_back(why);
  };
  const auto& names = m.subspace_names;
  for (const auto& n : names) {
    const Subspace& s = m.subspace(n);
    for (auto k : {CheckKind::membership, CheckKind::perp, CheckKind::closure})
      record(std::string(oracle::check_name(k)) + " " + n, oracle::oracle_check(k, {s}, cutoffs, seed));
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      const Subspace& a = m.subspace(names[i]);
      const Subspace& b = m.subspace(names[j]);
      if (a.side() != b.side()) continue;
      std::string pr = names[i] + ", " + names[j];
      record("sum " + pr, oracle::oracle_check(CheckKind::sum, {a, b}, cutoffs, seed));
      record("intersect " + pr, oracle::oracle_check(CheckKind::intersect, {a, b}, cutoffs, seed));
      if (includes(b, a)) record("quotient_dim " + pr, oracle::oracle_check(CheckKind::quotient_dim, {a, b}, cutoffs, seed));
      if (includes(a, b)) record("quotient_dim " + names[j] + ", " + names[i], oracle::oracle_check(CheckKind::quotient_dim, {b, a}, cutoffs, seed));
    }
  r.result = {{"kind", "bool"}, {"value", failures == 0}, {"checks", checks}, {"failures", failures}};
  return r;
}

}  // namespace detail

inline std::uint64_t default_seed() {
  if (const char* s = std::getenv("TOOL_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      fail(ErrorCode::parse, std::string("TOOL_SEED is not an unsigned integer: ") + s);
    }
  }
  return 20240601;
}

inline Report run_command(const dsl::Model& m, const std::vector<std::string>& words) {
  using namespace detail;
  if (words.empty()) fail(ErrorCode::parse, "empty command");
  Report r;
  for (std::size_t k = 0; k < words.size(); ++k) r.command += (k ? " " : "") + words[k];
  const std::string& cmd = words[0];
  Args a = split_args(words);
  const SpecPtr& spec = m.spec;

  if (cmd == "perp" || cmd == "closure") {
    need(a, 1, 1, cmd + " NAME");
    const Subspace& s = m.subspace(a.positional[0]);
    r.result = {{"kind", "subspace"}, {"value", to_string(cmd == "perp" ? perp(s) : closure(s))}};
  } else if (cmd == "dim") {
    if (a.positional.size() == 1) {
      r.result = dim_json(dimension(m.subspace(a.positional[0])));
    } else {
      need(a, 3, 3, "dim NAME [mod NAME]");
      if (a.positional[1] != "mod") fail(ErrorCode::parse, "usage: dim NAME [mod NAME]");
      const Subspace& big = m.subspace(a.positional[0]);
      const Subspace& small = m.subspace(a.positional[2]);
      r.result = dim_json(quotient_dim(small, big));
    }
  } else if (cmd == "flag-from-chain") {
    if (a.positional.empty()) fail(ErrorCode::parse, "usage: flag-from-chain NAMES...");
    std::vector<Subspace> chain;
    for (const auto& n : a.positional) chain.push_back(m.subspace(n));
    Flag f = flag_from_chain(spec, chain.front().side(), chain);
    r.result = {{"kind", "flag"}, {"value", flag_strings(f)}, {"semiclosed", is_semiclosed(f)}};
  } else if (cmd == "taut-check") {
    need(a, 1, 2, "taut-check F [G]");
    bool value;
    if (a.positional.size() == 1 && m.couples.count(a.positional[0])) {
      const TautCouple& tc = m.couple(a.positional[0]);
      value = tc.selfdual() ? is_self_taut(tc.flag_v) : is_taut_couple(tc.flag_v, *tc.flag_vstar);
    } else if (a.positional.size() == 1) {
      value = is_self_taut(m.flag(a.positional[0]));
    } else {
      value = is_taut_couple(m.flag(a.positional[0]), m.flag(a.positional[1]));
    }
    r.result = {{"kind", "bool"}, {"value", value}};
  } else if (cmd == "levi-check") {
    const TautCouple& tc = m.couple(a.option("couple"));
    const LeviDatum& l = m.levi(a.option("levi"));
    if (tc.selfdual()) {
      bool v = l.kind == AlgebraKind::sp ? is_levi_sp(tc.flag_v, l) : is_levi_so(tc.flag_v, l);
      r.result = {{"kind", "bool"}, {"value", v}};
    } else {
      auto cert = is_levi_component(tc, l);
      r.result = {{"kind", "bool"}, {"value", cert.is_levi}};
      if (cert.is_levi) r.result["kappa"] = labels(cert.kappa);
      else r.diagnostics.push_back(cert.reason);
    }
  } else if (cmd == "validate") {
    auto rep = validate_levi(m.levi(a.option("levi")));
    r.result = {{"kind", "bool"}, {"value", rep.pass}};
    for (const auto& f : rep.failures) r.diagnostics.push_back(f);
    for (const auto& [x, y] : rep.witnesses)
      r.diagnostics.push_back("witness <" + format_vector(*spec, x) + ", " + format_vector(*spec, y) + "> != 0");
  } else if (cmd == "minimal-couple") {
    const LeviDatum& l = m.levi(a.option("levi"));
    auto order = order_arg(m, a.option("order"), l.size());
    TautCouple tc = minimal_taut_couple(l, spec, order);
    r.couples.push_back(view(tc, order));
    r.result = {{"kind", "couples"}, {"value", 1}};
  } else if (cmd == "finiteness") {
    const LeviDatum& l = m.levi(a.option("levi"));
    auto fin = finiteness_test(l, spec);
    r.result = {{"kind", "bool"}, {"value", fin.finite}};
    if (!fin.finite) r.result["witness_J"] = labels(fin.witness);
    Json qs = Json::array();
    for (const auto& [mask, q] : fin.quotients) qs.push_back({{"J", labels(bits_of(mask, l.size()))}, {"dim", dim_json(q)}});
    r.result["quotients"] = qs;
  } else if (cmd == "enumerate") {
    const LeviDatum& l = m.levi(a.option("levi"));
    Enumeration e;
    if (a.has("order")) e = enumerate_couples(l, spec, order_arg(m, a.option("order"), l.size()));
    else e = enumerate_all(l, spec);
    for (const auto& c : e.couples) r.couples.push_back(view(c.couple, c.order));
    r.diagnostics = e.diagnostics;
    r.result = {{"kind", "couples"}, {"value", e.couples.size()}};
  } else if (cmd == "count") {
    const LeviDatum& l = m.levi(a.option("levi"));
    if (l.orthogonal_kind()) {
      auto s = search_self_taut(l);
      if (!s.exhaustive) fail(ErrorCode::non_unique, "self-taut search over W^⊥ is not exhaustive for this datum");
      r.result = count_json(Count::finite(static_cast<long>(s.flags.size())));
      for (const auto& f : s.flags) r.couples.push_back(view(TautCouple{f, std::nullopt}, {}));
      r.diagnostics = s.diagnostics;
    } else {
      auto c = count_self_normalizing(l, spec);
      r.result = count_json(c.total);
      if (c.total.uncountable) {
        r.result["witness_J"] = labels(c.finiteness.witness);
      } else {
        Json per = Json::array();
        for (const auto& [o, k] : c.per_order) per.push_back({{"order", labels(o)}, {"count", k}});
        r.result["per_order"] = per;
      }
    }
  } else if (cmd == "self-taut-search") {
    auto s = search_self_taut(m.levi(a.option("levi")));
    r.result = {{"kind", "couples"}, {"value", s.flags.size()}, {"forced", to_string(s.forced)}, {"exhaustive", s.exhaustive}};
    for (const auto& f : s.flags) r.couples.push_back(view(TautCouple{f, std::nullopt}, {}));
    r.diagnostics = s.diagnostics;
  } else if (cmd == "trace-count") {
    r.result = count_json(trace_condition_count(m.couple(a.option("couple")), AlgebraKind::gl));
  } else if (cmd == "socle") {
    r.result = {{"kind", "subspace"}, {"value", to_string(socle(m.levi(a.option("levi")), spec))}};
  } else if (cmd == "oracle") {
    if (a.option("verify") != "all") fail(ErrorCode::parse, "only --verify all is supported");
    std::vector<long> cutoffs = a.has("cutoffs") ? int_list(a.option("cutoffs")) : std::vector<long>{10, 20, 40};
    Report o = oracle_all(m, cutoffs, default_seed());
    r.result = o.result;
    r.diagnostics = o.diagnostics;
  } else {
    fail(ErrorCode::parse, "unknown command '" + cmd + "'");
  }
  return r;
}

inline Report run_command(const dsl::Model& m, const std::string& command) {
  std::vector<std::string> words;
  std::stringstream in(command);
  for (std::string w; in >> w;) words.push_back(w);
  return run_command(m, words);
}

enum class Format { text, json };

inline std::string format_report(const Report& r, Format fmt) {
  if (fmt == Format::json) {
    Json j;
    j["command"] = r.command;
    j["result"] = r.result;
    Json cs = Json::array();
    for (const auto& c : r.couples) {
      Json cj;
      cj["order"] = c.order;
      cj["flagV"] = c.flag_v;
      if (!c.flag_vstar.empty()) cj["flagVstar"] = c.flag_vstar;
      cs.push_back(cj);
    }
    j["couples"] = cs;
    j["diagnostics"] = r.diagnostics;
    return j.dump(2) + "\n";
  }
  std::string out;
  const Json& res = r.result;
  std::string kind = res.value("kind", "");
  auto set_str = [](const Json& a) {
    std::string s = "{";
    for (std::size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + std::to_string(a[k].get<long>());
    return s + "}";
  };
  if (kind == "finite") out += "finite " + std::to_string(res["value"].get<long>()) + "\n";
  else if (kind == "infinite") out += "infinite\n";
  else if (kind == "uncountable") out += "uncountable" + (res.contains("witness_J") ? " (witness J = " + set_str(res["witness_J"]) + ")" : "") + "\n";
  else if (kind == "bool") out += std::string(res["value"].get<bool>() ? "true" : "false") + "\n";
  else if (kind == "subspace") out += res["value"].get<std::string>() + "\n";
  else if (kind == "couples") out += std::to_string(res["value"].get<long>()) + " couple(s)\n";
  else if (kind == "flag") {
    std::string s;
    for (const auto& m : res["value"]) s += (s.empty() ? "" : " ⊂ ") + m.get<std::string>();
    out += s + "\n";
  }
  for (auto it = res.begin(); it != res.end(); ++it) {
    if (it.key() == "kind" || it.key() == "value") continue;
    if (it.key() == "per_order") {
      for (const auto& p : *it) {
        std::string o;
        for (const auto& x : p["order"]) o += (o.empty() ? "" : ",") + std::to_string(x.get<long>());
        out += "  order (" + o + "): " + std::to_string(p["count"].get<long>()) + "\n";
      }
    } else if (it.key() == "quotients") {
      for (const auto& q : *it)
        out += "  J = " + set_str(q["J"]) + ": " +
               (q["dim"]["kind"] == "infinite" ? std::string("infinite") : std::to_string(q["dim"]["value"].get<long>())) + "\n";
    } else if (it.key() != "witness_J") {
      out += "  " + it.key() + ": " + it->dump() + "\n";
    }
  }
  for (const auto& c : r.couples) {
    if (!c.order.empty()) {
      std::string o;
      for (auto x : c.order) o += (o.empty() ? "" : ",") + std::to_string(x);
      out += "order (" + o + ")\n";
    }
    // ends of a flag are always 0 and the whole space
    auto chain = [](const std::vector<std::string>& ms, const std::string& whole, bool down, const char* rel) {
      std::vector<std::string> xs(ms.begin(), ms.end());
      xs.front() = "0";
      xs.back() = whole;
      if (down) std::reverse(xs.begin(), xs.end());
      std::string s = " ";
      for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? rel : " ") + xs[k];
      return s + "\n";
    };
    out += chain(c.flag_v, c.v_name, false, " ⊂ ");
    if (!c.flag_vstar.empty()) out += chain(c.flag_vstar, c.vstar_name, true, " ⊃ ");
  }
  for (const auto& d : r.diagnostics) out += "note: " + d + "\n";
  return out;
}

}  // namespace levi
