#ifndef BSV_SCENARIO_HPP
#define BSV_SCENARIO_HPP

// Scenario documents: the ambient space, the hypersurface and function, the
// generators, caps and command-specific data, loaded from the TOML subset.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsv/bfunction.hpp"
#include "bsv/certify.hpp"
#include "bsv/graph.hpp"
#include "bsv/ledger.hpp"
#include "bsv/locoh.hpp"
#include "bsv/parse.hpp"
#include "bsv/toml_subset.hpp"

namespace bsv {

struct IdentitySpec {
  std::string name;
  std::vector<std::pair<std::string, std::string>> lhs;  // (operator, element)
  std::vector<std::pair<std::string, std::string>> rhs;
  bool check_membership = false;  // also certify lhs in V^min D . generators
  std::string note;
};

struct SearchSpec {
  Rat lo = 0;
  Rat hi = 2;
  int max_roots = 3;
  std::optional<long> denominator;  // defaults to the weight of the filtration variable
  bool per_generator = false;       // one search per target instead of a joint one
};

struct CombineSpec {
  std::string op;  // "lcm" or "product"
  std::vector<std::string> inputs;
};

struct KashiwaraSpec {
  long base_dim = 1;
  int codim = 1;
  std::vector<Rat> lambdas;
};

struct LedgerSpec {
  std::vector<Divisor> divisors;
  Rat bound = 2;
};

struct Scenario {
  std::string name;
  std::string description;
  std::vector<std::string> vars;
  std::vector<int> weights;
  std::optional<std::string> g;
  std::optional<std::string> f;
  std::string mode = "direct";
  std::optional<std::string> direct_var;
  std::vector<std::string> generators;
  std::vector<std::size_t> targets;
  long min_v_degree = 1;
  MembershipSet membership = MembershipSet::v_filtration;
  CapOverrides caps;
  std::optional<SearchSpec> search;
  std::optional<std::string> certify_b;  // in theta
  std::optional<std::string> expect_b;   // in s
  std::optional<Rat> expect_lct;
  std::vector<IdentitySpec> identities;
  std::optional<CombineSpec> combine;
  std::optional<KashiwaraSpec> kashiwara;
  std::optional<LedgerSpec> ledger;
  std::vector<std::string> notes;
};

namespace detail {

inline const nlohmann::json* find(const nlohmann::json& j, const std::string& key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline std::string get_string(const nlohmann::json& v, const std::string& what) {
  if (!v.is_string()) throw Error(what + " must be a string");
  return v.get<std::string>();
}

inline long get_int(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number_integer()) throw Error(what + " must be an integer");
  return v.get<long>();
}

inline Rat get_rat(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      throw Error(what + ": " + e.what());
    }
  }
  throw Error(what + " must be a rational (integer or \"p/q\" string)");
}

inline std::vector<std::string> get_strings(const nlohmann::json& v, const std::string& what) {
  if (!v.is_array()) throw Error(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(get_string(x, what));
  return out;
}

inline std::vector<std::pair<std::string, std::string>> get_terms(const nlohmann::json& v,
                                                                  const std::string& what) {
  if (!v.is_array()) throw Error(what + " must be an array of [operator, element] pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : v) {
    if (!p.is_array() || p.size() != 2) throw Error(what + " entries must be [operator, element]");
    out.emplace_back(get_string(p[0], what), get_string(p[1], what));
  }
  return out;
}

inline void check_keys(const nlohmann::json& table, const std::string& section,
                       std::initializer_list<const char*> allowed) {
  if (!table.is_object()) throw Error("[" + section + "] must be a table");
  for (const auto& [k, v] : table.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw Error("unknown key '" + k + "' in [" + section + "]");
  }
}

}  // namespace detail

/// Builds a Scenario from parsed TOML, then validates it (variables
/// declared, expressions parse, homogeneity).
inline Scenario scenario_from_json(const nlohmann::json& doc) {
  using namespace detail;
  Scenario sc;
  for (const auto& [k, v] : doc.items()) {
    static const char* top[] = {"name", "description", "notes", "space", "problem", "caps", "search",
                                "certify", "expect", "identities", "combine", "kashiwara", "ledger"};
    bool ok = false;
    for (const char* t : top) ok = ok || k == t;
    if (!ok) throw Error("unknown section or key '" + k + "'");
  }
  if (auto v = find(doc, "name")) sc.name = get_string(*v, "name");
  if (auto v = find(doc, "description")) sc.description = get_string(*v, "description");
  if (auto v = find(doc, "notes")) sc.notes = get_strings(*v, "notes");

  if (auto space = find(doc, "space")) {
    check_keys(*space, "space", {"vars", "weights"});
    if (auto v = find(*space, "vars")) sc.vars = get_strings(*v, "space.vars");
    if (auto v = find(*space, "weights")) {
      if (!v->is_array()) throw Error("space.weights must be an array of integers");
      for (const auto& w : *v) sc.weights.push_back(static_cast<int>(get_int(w, "space.weights")));
    } else {
      sc.weights.assign(sc.vars.size(), 1);
    }
  }
  if (auto prob = find(doc, "problem")) {
    check_keys(*prob, "problem",
               {"g", "f", "mode", "var", "generators", "targets", "min_v_degree", "membership"});
    if (auto v = find(*prob, "g")) sc.g = get_string(*v, "problem.g");
    if (auto v = find(*prob, "f")) sc.f = get_string(*v, "problem.f");
    if (auto v = find(*prob, "mode")) sc.mode = get_string(*v, "problem.mode");
    if (auto v = find(*prob, "var")) sc.direct_var = get_string(*v, "problem.var");
    if (auto v = find(*prob, "generators")) sc.generators = get_strings(*v, "problem.generators");
    if (auto v = find(*prob, "targets")) {
      if (!v->is_array()) throw Error("problem.targets must be an array of integers");
      for (const auto& t : *v) {
        long i = get_int(t, "problem.targets");
        if (i < 0) throw Error("problem.targets must be nonnegative");
        sc.targets.push_back(static_cast<std::size_t>(i));
      }
    }
    if (auto v = find(*prob, "min_v_degree")) sc.min_v_degree = get_int(*v, "problem.min_v_degree");
    if (auto v = find(*prob, "membership")) {
      std::string m = get_string(*v, "problem.membership");
      if (m == "v-filtration") {
        sc.membership = MembershipSet::v_filtration;
      } else if (m == "restricted") {
        sc.membership = MembershipSet::restricted;
      } else {
        throw Error("problem.membership must be \"v-filtration\" or \"restricted\"");
      }
    }
  }
  if (auto caps = find(doc, "caps")) {
    check_keys(*caps, "caps", {"pole", "dop", "coeff_deg"});
    if (auto v = find(*caps, "pole")) sc.caps.pole = static_cast<int>(get_int(*v, "caps.pole"));
    if (auto v = find(*caps, "dop")) sc.caps.dop = static_cast<int>(get_int(*v, "caps.dop"));
    if (auto v = find(*caps, "coeff_deg")) sc.caps.coeff_deg = get_int(*v, "caps.coeff_deg");
  }
  if (auto s = find(doc, "search")) {
    check_keys(*s, "search", {"lo", "hi", "max_roots", "denominator", "per_generator"});
    SearchSpec spec;
    if (auto v = find(*s, "lo")) spec.lo = get_rat(*v, "search.lo");
    if (auto v = find(*s, "hi")) spec.hi = get_rat(*v, "search.hi");
    if (auto v = find(*s, "max_roots")) spec.max_roots = static_cast<int>(get_int(*v, "search.max_roots"));
    if (auto v = find(*s, "denominator")) spec.denominator = get_int(*v, "search.denominator");
    if (auto v = find(*s, "per_generator")) {
      if (!v->is_boolean()) throw Error("search.per_generator must be a boolean");
      spec.per_generator = v->get<bool>();
    }
    if (spec.max_roots < 1) throw Error("search.max_roots must be >= 1");
    if (spec.denominator && *spec.denominator < 1) throw Error("search.denominator must be >= 1");
    sc.search = spec;
  }
  if (auto c = find(doc, "certify")) {
    check_keys(*c, "certify", {"b"});
    if (auto v = find(*c, "b")) sc.certify_b = get_string(*v, "certify.b");
  }
  if (auto e = find(doc, "expect")) {
    check_keys(*e, "expect", {"b", "lct"});
    if (auto v = find(*e, "b")) sc.expect_b = get_string(*v, "expect.b");
    if (auto v = find(*e, "lct")) sc.expect_lct = get_rat(*v, "expect.lct");
  }
  if (auto ids = find(doc, "identities")) {
    if (!ids->is_array()) throw Error("identities must be written as [[identities]] tables");
    for (const auto& t : *ids) {
      check_keys(t, "identities", {"name", "lhs", "rhs", "check_membership", "note"});
      IdentitySpec spec;
      if (auto v = find(t, "name")) spec.name = get_string(*v, "identities.name");
      if (auto v = find(t, "lhs")) spec.lhs = get_terms(*v, "identities.lhs");
      if (auto v = find(t, "rhs")) spec.rhs = get_terms(*v, "identities.rhs");
      if (auto v = find(t, "check_membership")) {
        if (!v->is_boolean()) throw Error("identities.check_membership must be a boolean");
        spec.check_membership = v->get<bool>();
      }
      if (auto v = find(t, "note")) spec.note = get_string(*v, "identities.note");
      if (spec.lhs.empty() && spec.rhs.empty()) throw Error("identity '" + spec.name + "' has no terms");
      sc.identities.push_back(std::move(spec));
    }
  }
  if (auto c = find(doc, "combine")) {
    check_keys(*c, "combine", {"op", "inputs"});
    CombineSpec spec;
    if (auto v = find(*c, "op")) spec.op = get_string(*v, "combine.op");
    if (auto v = find(*c, "inputs")) spec.inputs = get_strings(*v, "combine.inputs");
    if (spec.op != "lcm" && spec.op != "product") throw Error("combine.op must be \"lcm\" or \"product\"");
    if (spec.inputs.empty()) throw Error("combine.inputs is empty");
    sc.combine = spec;
  }
  if (auto k = find(doc, "kashiwara")) {
    check_keys(*k, "kashiwara", {"base_dim", "codim", "lambdas"});
    KashiwaraSpec spec;
    if (auto v = find(*k, "base_dim")) spec.base_dim = get_int(*v, "kashiwara.base_dim");
    if (auto v = find(*k, "codim")) spec.codim = static_cast<int>(get_int(*v, "kashiwara.codim"));
    if (auto v = find(*k, "lambdas")) {
      if (!v->is_array()) throw Error("kashiwara.lambdas must be an array");
      for (const auto& x : *v) spec.lambdas.push_back(get_rat(x, "kashiwara.lambdas"));
    }
    sc.kashiwara = spec;
  }
  if (auto l = find(doc, "ledger")) {
    check_keys(*l, "ledger", {"divisors", "bound"});
    LedgerSpec spec;
    if (auto v = find(*l, "divisors")) {
      if (!v->is_array()) throw Error("ledger.divisors must be an array of [k, a] pairs");
      for (const auto& d : *v) {
        if (!d.is_array() || d.size() != 2) throw Error("ledger.divisors entries must be [k, a]");
        spec.divisors.push_back({get_int(d[0], "ledger k"), get_int(d[1], "ledger a")});
      }
    }
    if (auto v = find(*l, "bound")) spec.bound = get_rat(*v, "ledger.bound");
    sc.ledger = spec;
  }
  return sc;
}

/// The modules a scenario describes, built and validated.
struct ScenarioContext {
  std::optional<WeightSystem> weights;
  HyperPtr hyper;
  GraphPtr graph;  // set in graph mode
  std::vector<LocCohElem> generators;
  std::size_t direct_var = 0;
  long filtration_weight = 1;  // weight of v, or d_f in graph mode

  bool graph_mode() const { return graph != nullptr; }
  std::vector<std::string> operator_vars() const {
    return graph ? graph->operator_vars() : hyper->vars();
  }
  VMode mode() const {
    if (graph) return GraphMode{graph->t_index()};
    return DirectMode{direct_var};
  }
};

inline ScenarioContext build_context(const Scenario& sc) {
  ScenarioContext ctx;
  if (sc.vars.empty()) return ctx;
  ctx.weights = WeightSystem(sc.vars, sc.weights);
  if (sc.mode != "direct" && sc.mode != "graph") throw Error("problem.mode must be \"direct\" or \"graph\"");
  if (!sc.g) {
    if (!sc.generators.empty() || !sc.identities.empty())
      throw Error("this scenario needs a hypersurface: set problem.g (smooth ambients without g are not modeled)");
    return ctx;
  }
  ctx.hyper = HyperData::make(parse_poly(*sc.g, sc.vars), *ctx.weights);
  for (const auto& v : sc.vars)
    if (v == "g" || v == "t") throw Error("variable name '" + v + "' is reserved");
  if (sc.mode == "graph") {
    if (!sc.f) throw Error("graph mode needs problem.f");
    ctx.graph = GraphContext::make(ctx.hyper, parse_poly(*sc.f, sc.vars));
    ctx.filtration_weight = ctx.graph->df();
  } else {
    std::string v = sc.direct_var.value_or(sc.f.value_or(""));
    if (v.empty()) throw Error("direct mode needs problem.var (or f equal to a coordinate)");
    auto idx = ctx.weights->index_of(v);
    if (!idx) throw Error("filtration variable '" + v + "' is not declared in [space]");
    ctx.direct_var = *idx;
    if (sc.f && parse_poly(*sc.f, sc.vars) != Poly::variable(sc.vars.size(), ctx.direct_var))
      throw Error("direct mode needs f to be the filtration coordinate; use graph mode otherwise");
    ctx.filtration_weight = ctx.weights->weight(ctx.direct_var);
  }
  for (const auto& gtext : sc.generators) {
    LocCohElem m = parse_element(gtext, ctx.hyper);
    if (m.is_zero()) throw Error("generator '" + gtext + "' is zero in the module");
    if (!m.weight()) throw Error("generator '" + gtext + "' is not weight homogeneous");
    ctx.generators.push_back(std::move(m));
  }
  for (std::size_t t : sc.targets)
    if (t >= ctx.generators.size()) throw Error("problem.targets index out of range");
  return ctx;
}

inline Scenario parse_scenario(std::string_view text) {
  Scenario sc = scenario_from_json(parse_toml_subset(text));
  build_context(sc);
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace bsv

#endif  // BSV_SCENARIO_HPP
