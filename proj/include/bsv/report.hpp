#ifndef BSV_REPORT_HPP
#define BSV_REPORT_HPP

// Command dispatch over scenarios, producing a JSON report, a text rendering
// and an exit code (0 success, 1 refuted or not found, 2 error).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsv/scenario.hpp"

namespace bsv {

enum ExitCode : int { exit_ok = 0, exit_refuted = 1, exit_error = 2 };

struct RunOptions {
  CapOverrides caps;  // command-line overrides, applied over the scenario's caps
  bool timestamp = true;
};

struct Report {
  nlohmann::json json;
  std::string text;
  int exit_code = exit_ok;
};

inline std::string input_digest(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

inline const std::vector<std::string>& report_commands() {
  static const std::vector<std::string> cmds{"verify", "certify", "search", "grade",
                                             "combine", "kashiwara", "jump"};
  return cmds;
}

namespace detail {

/// One command's outcome before it is wrapped into a Report.
struct Section {
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> lines;
  int code = exit_ok;
  std::optional<Caps> caps;

  void worsen(int c) { code = std::max(code, c); }
};

inline nlohmann::json caps_json(const Caps& c) {
  return {{"pole", c.pole}, {"dop", c.dop}, {"coeff_deg", c.coeff_deg}};
}

inline std::string caps_text(const Caps& c) {
  return "pole " + std::to_string(c.pole) + ", dop " + std::to_string(c.dop) + ", coeff_deg " +
         std::to_string(c.coeff_deg);
}

inline nlohmann::json rats_json(const std::vector<Rat>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

/// The scenario's modules, with generators lifted to graph elements when needed.
class Workspace {
 public:
  Workspace(const Scenario& sc, const RunOptions& opt) : sc_(sc), ctx_(build_context(sc)) {
    caps_ = sc.caps;
    if (opt.caps.pole) caps_.pole = opt.caps.pole;
    if (opt.caps.dop) caps_.dop = opt.caps.dop;
    if (opt.caps.coeff_deg) caps_.coeff_deg = opt.caps.coeff_deg;
  }

  const Scenario& scenario() const { return sc_; }
  const ScenarioContext& context() const { return ctx_; }

  void require_module() const {
    if (!ctx_.hyper) throw Error("this command needs [space] and problem.g");
  }
  void require_generators() const {
    require_module();
    if (ctx_.generators.empty()) throw Error("this command needs problem.generators");
  }

  WeylOp op(const std::string& text) const { return parse_op(text, ctx_.operator_vars()); }
  LocCohElem element(const std::string& text) const { return parse_element(text, ctx_.hyper); }
  GraphElem graph_element(const std::string& text) const {
    return GraphElem::single(element(text), 0, ctx_.graph);
  }

  template <class Elem>
  MembershipProblem<Elem> problem() const {
    MembershipProblem<Elem> p;
    if constexpr (std::is_same_v<Elem, LocCohElem>) {
      p.generators = ctx_.generators;
    } else {
      for (const auto& m : ctx_.generators) p.generators.push_back(GraphElem::single(m, 0, ctx_.graph));
    }
    p.mode = ctx_.mode();
    p.min_v_degree = sc_.min_v_degree;
    p.caps = caps_;
    p.set = sc_.membership;
    p.targets = sc_.targets;
    return p;
  }

  std::string generator_text(std::size_t i) const { return sc_.generators.at(i); }

  std::string word_text(const OperatorWord& w) const {
    return to_string(w, ctx_.operator_vars(), ctx_.mode());
  }

 private:
  const Scenario& sc_;
  ScenarioContext ctx_;
  CapOverrides caps_;
};

template <class Elem>
nlohmann::json certificate_json(const Workspace& ws, const Certificate<Elem>& cert) {
  nlohmann::json combos = nlohmann::json::array();
  for (std::size_t i = 0; i < cert.targets.size(); ++i) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& w : cert.combinations[i])
      terms.push_back({{"operator", ws.word_text(w)}, {"generator", ws.generator_text(w.generator)}});
    combos.push_back({{"target", ws.generator_text(cert.targets[i])}, {"terms", terms}});
  }
  return {{"b_theta", to_string(cert.b_theta)}, {"caps", caps_json(cert.caps)}, {"combinations", combos}};
}

template <class Elem>
void certificate_lines(const Workspace& ws, const Certificate<Elem>& cert, std::vector<std::string>& lines) {
  for (std::size_t i = 0; i < cert.targets.size(); ++i) {
    std::vector<std::string> terms;
    for (const auto& w : cert.combinations[i])
      terms.push_back("[" + ws.word_text(w) + "](" + ws.generator_text(w.generator) + ")");
    lines.push_back("    b(theta)(" + ws.generator_text(cert.targets[i]) + ") = " +
                    (terms.empty() ? std::string("0") : join(terms, " + ")));
  }
}

inline nlohmann::json not_found_json(const Workspace& ws, const NotFoundAtCaps& nf) {
  return {{"caps", caps_json(nf.caps)},
          {"generator", ws.generator_text(nf.generator)},
          {"weight", nf.weight},
          {"unknowns", nf.unknowns},
          {"candidates_tried", nf.candidates_tried}};
}

/// Compares a found b-function (in s) with [expect]; records mismatches.
inline void check_expectations(const Workspace& ws, const BFunction& bs, Section& sec, nlohmann::json& out) {
  const Scenario& sc = ws.scenario();
  std::optional<Rat> min_shift;
  for (const auto& [g, m] : bs.shifts())
    if (g > 0 && (!min_shift || g < *min_shift)) min_shift = g;
  if (min_shift) {
    out["min_positive_shift"] = to_string(*min_shift);
    sec.lines.push_back("  min positive shift: " + to_string(*min_shift));
  }
  auto v = validate_b(bs);
  if (!v.clean()) {
    out["validation"] = v.messages();
    for (const auto& m : v.messages()) sec.lines.push_back("  validation: " + m);
  }
  if (sc.expect_b) {
    BFunction want = parse_bfunction(*sc.expect_b, BVar::s);
    bool ok = want == bs;
    out["expected_b"] = {{"value", to_string(want)}, {"matches", ok}};
    sec.lines.push_back("  expected b " + to_string(want) + ": " + (ok ? "matches" : "MISMATCH"));
    if (!ok) sec.worsen(exit_refuted);
  }
  if (sc.expect_lct) {
    bool ok = min_shift == sc.expect_lct;
    out["expected_lct"] = {{"value", to_string(*sc.expect_lct)}, {"matches", ok}};
    sec.lines.push_back("  expected lct " + to_string(*sc.expect_lct) + ": " + (ok ? "matches" : "MISMATCH"));
    if (!ok) sec.worsen(exit_refuted);
  }
}

template <class Elem>
Section run_verify_as(const Workspace& ws) {
  const Scenario& sc = ws.scenario();
  Section sec;
  nlohmann::json items = nlohmann::json::array();
  sec.lines.push_back("verify: " + std::to_string(sc.identities.size()) + (sc.identities.size() == 1 ? " identity" : " identities"));
  auto elem = [&](const std::string& t) {
    if constexpr (std::is_same_v<Elem, LocCohElem>) {
      return ws.element(t);
    } else {
      return ws.graph_element(t);
    }
  };
  for (const auto& id : sc.identities) {
    std::vector<std::pair<WeylOp, Elem>> lhs, rhs;
    for (const auto& [o, e] : id.lhs) lhs.emplace_back(ws.op(o), elem(e));
    for (const auto& [o, e] : id.rhs) rhs.emplace_back(ws.op(o), elem(e));
    auto r = verify_identity(lhs, rhs);
    nlohmann::json item{{"name", id.name}, {"status", r.holds ? "verified" : "refuted"}};
    if (!id.note.empty()) item["note"] = id.note;
    sec.lines.push_back("  [" + std::string(r.holds ? "verified" : "REFUTED") + "] " + id.name);
    if (!r.holds) {
      item["residual"] = element_string(r.residual);
      sec.lines.push_back("    residual (lhs - rhs): " + element_string(r.residual));
      sec.worsen(exit_refuted);
    }
    if (!id.note.empty()) sec.lines.push_back("    note: " + id.note);
    if (id.check_membership) {
      ws.require_generators();
      auto prob = ws.problem<Elem>();
      Elem target = zero_like(lhs.empty() ? rhs.front().second : lhs.front().second);
      for (const auto& [o, e] : lhs) target += act(o, e);
      nlohmann::json mem;
      try {
        auto m = certify_membership(target, prob);
        if (auto* cert = std::get_if<MembershipCertificate>(&m)) {
          nlohmann::json terms = nlohmann::json::array();
          std::vector<std::string> shown;
          for (const auto& w : cert->combination) {
            terms.push_back({{"operator", ws.word_text(w)}, {"generator", ws.generator_text(w.generator)}});
            shown.push_back("[" + ws.word_text(w) + "](" + ws.generator_text(w.generator) + ")");
          }
          mem = {{"status", "certified"}, {"caps", caps_json(cert->caps)}, {"terms", terms}};
          sec.lines.push_back("    lhs in V^" + std::to_string(sc.min_v_degree) + " D . generators: " +
                              (shown.empty() ? std::string("0") : join(shown, " + ")));
        } else {
          const auto& nf = std::get<NotFoundAtCaps>(m);
          mem = {{"status", "not-found"}, {"caps", caps_json(nf.caps)}};
          sec.lines.push_back("    membership NOT FOUND at caps " + caps_text(nf.caps));
          sec.worsen(exit_refuted);
        }
      } catch (const CapOverflow& e) {
        mem = {{"status", "cap-overflow"}, {"message", e.what()}};
        sec.lines.push_back("    membership: " + std::string(e.what()));
        sec.worsen(exit_refuted);
      }
      item["membership"] = mem;
    }
    items.push_back(item);
  }
  sec.results["identities"] = items;
  return sec;
}

inline Section run_verify(const Workspace& ws) {
  if (ws.scenario().identities.empty()) throw Error("verify needs at least one [[identities]] entry");
  ws.require_module();
  return ws.context().graph_mode() ? run_verify_as<GraphElem>(ws) : run_verify_as<LocCohElem>(ws);
}

template <class Elem>
Section run_certify_as(const Workspace& ws) {
  Section sec;
  BFunction b = parse_bfunction(*ws.scenario().certify_b, BVar::theta);
  auto prob = ws.problem<Elem>();
  sec.lines.push_back("certify: b(theta) = " + to_string(b));
  sec.results["b_theta"] = to_string(b);
  sec.results["b_s"] = to_string(to_bs_polynomial(b));
  try {
    auto r = certify_divides(b, prob);
    if (auto* cert = std::get_if<Certificate<Elem>>(&r)) {
      sec.caps = cert->caps;
      sec.results["status"] = "certified";
      sec.results["certificate"] = certificate_json(ws, *cert);
      sec.lines.push_back("  [certified] b(s) = " + to_string(to_bs_polynomial(b)) + " is an upper bound (caps " +
                          caps_text(cert->caps) + ")");
      certificate_lines(ws, *cert, sec.lines);
      check_expectations(ws, to_bs_polynomial(b), sec, sec.results);
    } else {
      const auto& nf = std::get<NotFoundAtCaps>(r);
      sec.caps = nf.caps;
      sec.results["status"] = "not-found";
      sec.results["not_found"] = not_found_json(ws, nf);
      sec.lines.push_back("  [NOT FOUND] no certificate within caps " + caps_text(nf.caps) + " for generator " +
                          ws.generator_text(nf.generator));
      sec.worsen(exit_refuted);
    }
  } catch (const CapOverflow& e) {
    sec.results["status"] = "cap-overflow";
    sec.results["message"] = e.what();
    sec.lines.push_back("  [CAP OVERFLOW] " + std::string(e.what()));
    sec.worsen(exit_refuted);
  }
  return sec;
}

inline Section run_certify(const Workspace& ws) {
  if (!ws.scenario().certify_b) throw Error("certify needs [certify] b");
  ws.require_generators();
  return ws.context().graph_mode() ? run_certify_as<GraphElem>(ws) : run_certify_as<LocCohElem>(ws);
}

template <class Elem>
Section run_search_as(const Workspace& ws) {
  const Scenario& sc = ws.scenario();
  Section sec;
  SearchSpec spec = sc.search.value_or(SearchSpec{});
  long den = spec.denominator.value_or(ws.context().filtration_weight);
  std::vector<Rat> lattice = theta_lattice(den, spec.lo, spec.hi);
  sec.results["lattice"] = {{"denominator", den}, {"lo", to_string(spec.lo)}, {"hi", to_string(spec.hi)},
                            {"max_roots", spec.max_roots}};
  sec.lines.push_back("search: shifts in (1/" + std::to_string(den) + ")Z within (" + to_string(spec.lo) + ", " +
                      to_string(spec.hi) + "], at most " + std::to_string(spec.max_roots) + " roots");
  auto base = ws.problem<Elem>();
  std::vector<std::vector<std::size_t>> runs;
  if (spec.per_generator) {
    for (std::size_t t : base.target_indices()) runs.push_back({t});
  } else {
    runs.push_back(base.targets);
  }
  nlohmann::json found_items = nlohmann::json::array();
  std::optional<BFunction> joint;
  bool all_found = true;
  for (const auto& targets : runs) {
    auto prob = base;
    prob.targets = targets;
    std::vector<std::string> names;
    for (std::size_t t : prob.target_indices()) names.push_back(ws.generator_text(t));
    nlohmann::json item{{"targets", names}};
    std::string label = join(names, ", ");
    try {
      auto r = search_minimal_b(prob, lattice, spec.max_roots);
      if (auto* res = std::get_if<SearchResult<Elem>>(&r)) {
        BFunction bs = to_bs_polynomial(res->b_theta);
        sec.caps = res->certificate.caps;
        item["status"] = "found";
        item["b_theta"] = to_string(res->b_theta);
        item["b_s"] = to_string(bs);
        item["candidates_tried"] = res->candidates_tried;
        item["certificate"] = certificate_json(ws, res->certificate);
        sec.lines.push_back("  [found] " + label + ": b(theta) = " + to_string(res->b_theta) + ", b(s) = " +
                            to_string(bs) + " after " + std::to_string(res->candidates_tried) + " candidates");
        certificate_lines(ws, res->certificate, sec.lines);
        joint = joint ? lcm_b(*joint, bs) : bs;
      } else {
        const auto& nf = std::get<NotFoundAtCaps>(r);
        sec.caps = nf.caps;
        item["status"] = "not-found";
        item["not_found"] = not_found_json(ws, nf);
        sec.lines.push_back("  [NOT FOUND] " + label + ": no candidate certified within caps " + caps_text(nf.caps) +
                            " (" + std::to_string(nf.candidates_tried) + " tried)");
        all_found = false;
      }
    } catch (const CapOverflow& e) {
      item["status"] = "cap-overflow";
      item["message"] = e.what();
      sec.lines.push_back("  [CAP OVERFLOW] " + label + ": " + e.what());
      all_found = false;
    }
    found_items.push_back(item);
  }
  sec.results["searches"] = found_items;
  if (!all_found) {
    sec.results["status"] = "not-found";
    sec.worsen(exit_refuted);
    return sec;
  }
  sec.results["status"] = "found";
  sec.results["b_s"] = to_string(*joint);
  if (runs.size() > 1) sec.lines.push_back("  lcm over generators: b(s) = " + to_string(*joint));
  check_expectations(ws, *joint, sec, sec.results);
  return sec;
}

inline Section run_search(const Workspace& ws) {
  ws.require_generators();
  return ws.context().graph_mode() ? run_search_as<GraphElem>(ws) : run_search_as<LocCohElem>(ws);
}

inline Section run_grade(const Workspace& ws) {
  ws.require_generators();
  const ScenarioContext& ctx = ws.context();
  Section sec;
  sec.lines.push_back("grade: weights " + join([&] {
                        std::vector<std::string> w;
                        for (std::size_t i = 0; i < ctx.weights->size(); ++i)
                          w.push_back(ctx.weights->vars()[i] + "=" + std::to_string(ctx.weights->weight(i)));
                        return w;
                      }(), ", ") + "; deg g = " + std::to_string(ctx.hyper->degree()));
  nlohmann::json items = nlohmann::json::array();
  for (std::size_t i = 0; i < ctx.generators.size(); ++i) {
    const LocCohElem& m = ctx.generators[i];
    long w = *m.weight();
    auto lam = euler_eigenvalue(m);
    long dim = static_cast<long>(weight_basis(w, m.pole_order(), ctx.hyper).size());
    nlohmann::json item{{"generator", ws.generator_text(i)},
                        {"reduced", to_string(m)},
                        {"weight", w},
                        {"pole_order", m.pole_order()},
                        {"euler_eigenvalue", lam ? to_string(*lam) : "none"},
                        {"weight_space_dimension", dim}};
    std::string line = "  " + ws.generator_text(i) + ": weight " + std::to_string(w) + ", pole order " +
                       std::to_string(m.pole_order()) + ", Euler eigenvalue " + (lam ? to_string(*lam) : "none") +
                       ", dim of weight space at this pole order " + std::to_string(dim);
    if (ctx.graph) {
      GraphElem e = GraphElem::single(m, 0, ctx.graph);
      bool law = graph_euler_residual(e).is_zero();
      item["graph_euler_law"] = law;
      line += law ? ", graph Euler law holds" : ", graph Euler law FAILS";
      if (!law) sec.worsen(exit_refuted);
    }
    if (!lam) sec.worsen(exit_refuted);
    items.push_back(item);
    sec.lines.push_back(line);
  }
  sec.results["generators"] = items;
  return sec;
}

inline Section run_combine(const Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (!sc.combine) throw Error("combine needs a [combine] section");
  Section sec;
  std::vector<BFunction> inputs;
  for (const auto& t : sc.combine->inputs) inputs.push_back(parse_bfunction(t, BVar::s));
  BFunction acc = inputs.front();
  for (std::size_t i = 1; i < inputs.size(); ++i)
    acc = sc.combine->op == "lcm" ? lcm_b(acc, inputs[i]) : product_b(acc, inputs[i]);
  std::vector<std::string> shown;
  for (const auto& b : inputs) shown.push_back(to_string(b));
  sec.results["op"] = sc.combine->op;
  sec.results["inputs"] = shown;
  sec.results["b_s"] = to_string(acc);
  sec.results["status"] = "combined";
  sec.lines.push_back("combine: " + sc.combine->op + "(" + join(shown, ", ") + ") = " + to_string(acc));
  check_expectations(ws, acc, sec, sec.results);
  return sec;
}

inline Section run_kashiwara(const Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (!sc.kashiwara) throw Error("kashiwara needs a [kashiwara] section");
  Section sec;
  DeltaModule d(sc.kashiwara->base_dim, sc.kashiwara->codim);
  DeltaModule pushed = d.pushforward();
  sec.lines.push_back("kashiwara: delta module, base dimension " + std::to_string(d.base_dim) + ", codimension " +
                      std::to_string(d.codim));
  nlohmann::json pieces = nlohmann::json::array();
  for (const Rat& lam : sc.kashiwara->lambdas) {
    VPiece v = delta_v_piece(d, lam);
    long gr = delta_gr_dimension(d, lam);
    long gr_pushed = delta_gr_dimension(pushed, lam);
    pieces.push_back({{"lambda", to_string(lam)},
                      {"v_dimension", v.dimension},
                      {"gr_dimension", gr},
                      {"gr_dimension_after_pushforward", gr_pushed}});
    sec.lines.push_back("  lambda " + to_string(lam) + ": dim V = " + std::to_string(v.dimension) + ", dim Gr = " +
                        std::to_string(gr) + " (" + std::to_string(gr_pushed) + " after one more pushforward)");
  }
  BFunction b = delta_bfunction(d);
  bool stable = b == delta_bfunction(pushed);
  sec.results["pieces"] = pieces;
  sec.results["b_s"] = to_string(b);
  sec.results["b_stable_under_pushforward"] = stable;
  sec.results["status"] = "computed";
  sec.lines.push_back("  b(s) = " + to_string(b) + (stable ? ", unchanged by pushforward" : ", CHANGED by pushforward"));
  if (!stable) sec.worsen(exit_refuted);
  return sec;
}

inline Section run_jump(const Workspace& ws) {
  const Scenario& sc = ws.scenario();
  if (!sc.ledger) throw Error("jump needs a [ledger] section");
  Section sec;
  Ledger L(sc.ledger->divisors);
  Rat lct = lct_ledger(L);
  auto jumps = candidate_jumps(L, sc.ledger->bound);
  auto shift = shift_check(L, sc.ledger->bound);
  nlohmann::json divs = nlohmann::json::array();
  std::vector<std::string> shown;
  for (const auto& d : L.divisors()) {
    divs.push_back({d.k, d.a});
    shown.push_back("(" + std::to_string(d.k) + ", " + std::to_string(d.a) + ")");
  }
  sec.results["divisors"] = divs;
  sec.results["lct"] = to_string(lct);
  sec.results["bound"] = to_string(sc.ledger->bound);
  sec.results["candidate_jumps"] = rats_json(jumps);
  sec.results["shift_closed"] = shift.pass();
  sec.results["status"] = shift.pass() ? "computed" : "shift-violation";
  std::vector<std::string> js;
  for (const auto& j : jumps) js.push_back(to_string(j));
  sec.lines.push_back("jump: ledger " + join(shown, ", "));
  sec.lines.push_back("  lct = " + to_string(lct));
  sec.lines.push_back("  candidate jumps up to " + to_string(sc.ledger->bound) + ": " + join(js, ", "));
  sec.lines.push_back(std::string("  closed under +1: ") + (shift.pass() ? "yes" : "NO"));
  for (const auto& m : shift.messages()) sec.lines.push_back("    " + m);
  if (!shift.pass()) sec.worsen(exit_refuted);
  if (sc.expect_lct) {
    bool ok = lct == *sc.expect_lct;
    sec.results["expected_lct"] = {{"value", to_string(*sc.expect_lct)}, {"matches", ok}};
    sec.lines.push_back("  expected lct " + to_string(*sc.expect_lct) + ": " + (ok ? "matches" : "MISMATCH"));
    if (!ok) sec.worsen(exit_refuted);
  }
  return sec;
}

inline Section run_section(const std::string& command, const Workspace& ws) {
  if (command == "verify") return run_verify(ws);
  if (command == "certify") return run_certify(ws);
  if (command == "search") return run_search(ws);
  if (command == "grade") return run_grade(ws);
  if (command == "combine") return run_combine(ws);
  if (command == "kashiwara") return run_kashiwara(ws);
  if (command == "jump") return run_jump(ws);
  throw Error("unknown command '" + command + "'");
}

/// Commands a scenario has data for, in report order.
inline std::vector<std::string> applicable_commands(const Scenario& sc) {
  std::vector<std::string> out;
  if (!sc.identities.empty()) out.push_back("verify");
  if (sc.certify_b) out.push_back("certify");
  if (sc.search) out.push_back("search");
  if (sc.combine) out.push_back("combine");
  if (sc.kashiwara) out.push_back("kashiwara");
  if (sc.ledger) out.push_back("jump");
  return out;
}

inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

/// Runs `command` on a scenario document. The command "all" runs every
/// command the scenario has data for (this is what presets use).
inline Report run(const std::string& command, std::string_view scenario_text, const RunOptions& opt = {}) {
  auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.json["command"] = command;
  rep.json["input_digest"] = input_digest(scenario_text);
  std::vector<std::string> lines;
  try {
    Scenario sc = scenario_from_json(parse_toml_subset(scenario_text));
    rep.json["scenario"] = sc.name;
    detail::Workspace ws(sc, opt);
    if (!sc.name.empty()) lines.push_back("scenario " + sc.name + (sc.description.empty() ? "" : ": " + sc.description));
    for (const auto& n : sc.notes) lines.push_back("note: " + n);
    if (!sc.notes.empty()) rep.json["notes"] = sc.notes;
    std::vector<std::string> cmds;
    if (command == "all") {
      cmds = detail::applicable_commands(sc);
      if (cmds.empty()) throw Error("scenario has nothing to run");
    } else {
      cmds = {command};
    }
    nlohmann::json results = nlohmann::json::object();
    nlohmann::json caps = nlohmann::json::object();
    int code = exit_ok;
    for (const auto& c : cmds) {
      detail::Section sec = detail::run_section(c, ws);
      code = std::max(code, sec.code);
      sec.results["exit_code"] = sec.code;
      results[c] = sec.results;
      if (sec.caps) caps[c] = detail::caps_json(*sec.caps);
      for (auto& l : sec.lines) lines.push_back(std::move(l));
    }
    rep.json["results"] = command == "all" ? results : results[command];
    if (!caps.empty()) rep.json["caps"] = command == "all" ? caps : caps[command];
    rep.exit_code = code;
    rep.json["status"] = code == exit_ok ? "ok" : "refuted-or-not-found";
  } catch (const std::exception& e) {
    rep.exit_code = exit_error;
    rep.json["status"] = "error";
    rep.json["error"] = e.what();
    lines.push_back(std::string("error: ") + e.what());
  }
  rep.json["exit_code"] = rep.exit_code;
  if (opt.timestamp) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep.json["timing_ms"] = std::round(ms * 1000) / 1000;
    rep.json["timestamp"] = detail::utc_timestamp();
    lines.push_back("time: " + std::to_string(static_cast<long>(std::round(ms))) + " ms");
  }
  rep.text = detail::join(lines, "\n") + "\n";
  return rep;
}

}  // namespace bsv

#endif  // BSV_REPORT_HPP
