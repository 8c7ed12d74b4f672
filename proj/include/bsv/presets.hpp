#ifndef BSV_PRESETS_HPP
#define BSV_PRESETS_HPP

// Built-in scenarios, generated as scenario text so that the files under
// scenarios/ and the `preset` command always agree.

#include <optional>
#include <string>
#include <vector>

#include "bsv/rational.hpp"

namespace bsv {

struct PresetInfo {
  std::string name;
  std::string summary;
  int n_min = 0;  // 0 when the preset takes no size parameter
  int n_max = 0;
  int n_default = 0;
};

inline const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> all{
      {"node", "xy = 0: lcm of the branch b-functions", 0, 0, 0},
      {"quadric-n3", "x^2 + y^2 + z^2 along x: identities, theta^2 certificate and search", 0, 0, 0},
      {"quadric-general", "sum of n squares along x1: upper bound (s + 1)(s + n - 2)", 3, 6, 3},
      {"tau-x1-x2", "sum of n squares along x1 - x2 in coordinates u = x1 - x2", 3, 4, 3},
      {"cusp-fx", "x^3 + y^2 along x: identities and minimal b-function search", 0, 0, 0},
      {"cusp-fy", "x^3 + y^2 along y: identity and per-generator searches", 0, 0, 0},
      {"delta-zero", "g = x: delta module, b-function s and V-filtration dimensions", 0, 0, 0},
  };
  return all;
}

inline const PresetInfo& preset_info(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw Error("unknown preset '" + name + "'");
}

/// File stem under scenarios/ for a preset instance.
inline std::string preset_file_stem(const std::string& name, std::optional<int> n = std::nullopt) {
  const PresetInfo& info = preset_info(name);
  if (info.n_min == 0) return name;
  return name + "-n" + std::to_string(n.value_or(info.n_default));
}

namespace detail {

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string string_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + quoted(items[i]);
  return out + "]";
}

inline std::string term_list(const std::vector<std::pair<std::string, std::string>>& terms) {
  std::string out = "[";
  for (std::size_t i = 0; i < terms.size(); ++i)
    out += (i ? ", " : "") + std::string("[") + quoted(terms[i].first) + ", " + quoted(terms[i].second) + "]";
  return out + "]";
}

struct IdentityText {
  std::string name;
  std::vector<std::pair<std::string, std::string>> lhs;
  std::vector<std::pair<std::string, std::string>> rhs;
  std::string note;
  bool check_membership = false;
};

inline std::string identities_text(const std::vector<IdentityText>& ids) {
  std::string out;
  for (const auto& id : ids) {
    out += "\n[[identities]]\nname = " + quoted(id.name) + "\nlhs = " + term_list(id.lhs) +
           "\nrhs = " + term_list(id.rhs) + "\n";
    if (id.check_membership) out += "check_membership = true\n";
    if (!id.note.empty()) out += "note = " + quoted(id.note) + "\n";
  }
  return out;
}

inline std::string signed_term(long c) {
  return c < 0 ? " - " + std::to_string(-c) : " + " + std::to_string(c);
}

/// theta*(theta + c) written for the scenario grammar.
inline std::string theta_times_shifted(long c) {
  if (c == 0) return "theta^2";
  return "theta*(theta" + signed_term(c) + ")";
}

inline std::vector<std::string> indexed(const std::string& stem, int from, int to) {
  std::vector<std::string> v;
  for (int i = from; i <= to; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

inline std::string sum_of(const std::vector<std::string>& items, const std::string& suffix) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : " + ") + s + suffix;
  return out;
}

inline std::string node() {
  return "name = \"node\"\n"
         "description = \"Node xy = 0: the two branches have b-functions s and s + 1; their lcm\"\n"
         "\n[combine]\nop = \"lcm\"\ninputs = [\"s\", \"s + 1\"]\n"
         "\n[expect]\nb = \"s*(s + 1)\"\n";
}

inline std::string quadric_n3() {
  std::string out =
      "name = \"quadric-n3\"\n"
      "description = \"g = x^2 + y^2 + z^2 with f = x, generator 1/g\"\n"
      "notes = [\"the second identity carries the sign as usually printed and is expected to be refuted; "
      "the third is the sign the expansion actually gives\"]\n"
      "\n[space]\nvars = [\"x\", \"y\", \"z\"]\nweights = [1, 1, 1]\n"
      "\n[problem]\ng = \"x^2 + y^2 + z^2\"\nmode = \"direct\"\nvar = \"x\"\ngenerators = [\"1/g\"]\n"
      "\n[certify]\nb = \"theta^2\"\n"
      "\n[search]\nlo = 0\nhi = 3\nmax_roots = 2\n"
      "\n[expect]\nb = \"(s + 1)^2\"\nlct = 1\n";
  out += identities_text({
      {"(x dx)^2 on 1/g", {{"x*dx*x*dx", "1/g"}}, {{"1", "(-4*g*x^2 + 8*x^4)/g^3"}}, "", false},
      {"(dy^2 + dz^2) on 1/g, printed sign",
       {{"dy^2 + dz^2", "1/g"}},
       {{"1", "(-4*g + 8*x^2)/g^3"}},
       "printed form; the expansion gives (4*g - 8*x^2)/g^3",
       false},
      {"(dy^2 + dz^2) on 1/g", {{"dy^2 + dz^2", "1/g"}}, {{"1", "(4*g - 8*x^2)/g^3"}}, "", false},
      {"(x dx)^2 on 1/g through x/g", {{"x*dx*x*dx", "1/g"}}, {{"-x*(dy^2 + dz^2)", "x/g"}}, "", false},
  });
  return out;
}

inline std::string quadric_general(int n) {
  auto xs = indexed("x", 1, n);
  auto rest = indexed("dx", 2, n);
  std::string lhs_op = n == 3 ? "x1*dx1*x1*dx1" : "x1*dx1*(x1*dx1" + signed_term(3 - n) + ")";
  std::string out = "name = \"quadric-general-n" + std::to_string(n) + "\"\n" +
                    "description = \"g = sum of " + std::to_string(n) +
                    " squares with f = x1: certified upper bound (s + 1)(s + " + std::to_string(n - 2) + ")\"\n" +
                    "\n[space]\nvars = " + string_list(xs) + "\n" +
                    "\n[problem]\ng = \"" + sum_of(xs, "^2") + "\"\nmode = \"direct\"\nvar = \"x1\"\n" +
                    "generators = [\"1/g\"]\n" + "\n[certify]\nb = \"" + theta_times_shifted(3 - n) + "\"\n" +
                    "\n[expect]\nb = \"" +
                    (n == 3 ? std::string("(s + 1)^2") : "(s + 1)*(s + " + std::to_string(n - 2) + ")") + "\"\n";
  out += identities_text({{"x1 dx1 (x1 dx1 - (n - 3)) on 1/g",
                           {{lhs_op, "1/g"}},
                           {{"-x1*(" + sum_of(rest, "^2") + ")", "x1/g"}},
                           "",
                           false}});
  return out;
}

inline std::string tau_x1_x2(int n) {
  // Coordinates u = x1 - x2, x2, ..., xn, so that f = u and tau = u*du.
  std::vector<std::string> vars{"u"};
  for (const auto& v : indexed("x", 2, n)) vars.push_back(v);
  auto tail = indexed("x", 3, n);
  auto dtail = indexed("dx", 3, n);
  const long lambda = 3 - n;
  std::string g = "(u + x2)^2 + x2^2 + " + sum_of(tail, "^2");
  std::string tau_op = lambda == 0 ? "u*du*u*du" : "u*du*(u*du" + signed_term(lambda) + ")";
  std::string first_rhs = "-2*u/g^2*(" + std::to_string(2 + lambda) + "*(u + x2) - x2) + 8*(u + x2)^2*u^2/g^3";
  std::string second_op = to_string(make_rat(n - 6, 2)) + "*dx2 - 1/2*(u + 2*x2)*dx2^2 - 1/2*(3*u + 4*x2)*(" +
                          sum_of(dtail, "^2") + ")";
  std::string second_rhs = "-2*u/g^2*(" + std::to_string(5 - n) + "*(u + x2) - x2) + 8*(u + x2)^2*u^2/g^3";
  std::string out =
      "name = \"tau-x1-x2-n" + std::to_string(n) + "\"\n" +
      "description = \"g = sum of " + std::to_string(n) +
      " squares along f = x1 - x2, written in coordinates u = x1 - x2\"\n" +
      "notes = [\"x1 = u + x2, so tau = (x1 - x2)*dx1 is u*du, dx1 + dx2 is dx2, x1 + x2 is u + 2*x2 and "
      "3*x1 + x2 is 3*u + 4*x2\", \"the second operator uses (dx1 + dx2)^2; with dx1^2 + dx2^2 the identity "
      "does not hold\"]\n" +
      "\n[space]\nvars = " + string_list(vars) + "\n" + "\n[problem]\ng = \"" + g +
      "\"\nmode = \"direct\"\nvar = \"u\"\ngenerators = [\"1/g\"]\n" + "\n[caps]\npole = 4\n" +
      "\n[certify]\nb = \"" + theta_times_shifted(lambda) + "\"\n";
  out += identities_text({
      {"tau (tau + lambda) on 1/g", {{tau_op, "1/g"}}, {{"1", first_rhs}}, "", false},
      {"second operator on (x1 - x2)/g, in V^1 D (1/g)", {{second_op, "u/g"}}, {{"1", second_rhs}}, "", true},
  });
  return out;
}

inline std::string cusp_fx() {
  std::string out =
      "name = \"cusp-fx\"\n"
      "description = \"g = x^3 + y^2 with weights (2, 3), f = x, generators x/g and y/g\"\n"
      "\n[space]\nvars = [\"x\", \"y\"]\nweights = [2, 3]\n"
      "\n[problem]\ng = \"x^3 + y^2\"\nmode = \"direct\"\nvar = \"x\"\ngenerators = [\"x/g\", \"y/g\"]\n"
      "\n[search]\nlo = 0\nhi = 2\nmax_roots = 3\n"
      "\n[expect]\nb = \"(s + 1)*(s + 1/2)\"\nlct = \"1/2\"\n";
  out += identities_text({
      {"(x dx + 1/2) on x/g", {{"x*dx + 1/2", "x/g"}}, {{"-3/2*dy", "x*y/g"}}, "", false},
      {"x dx on y/g", {{"x*dx", "y/g"}}, {{"3/2*x*dy", "x^2/g"}}, "", false},
  });
  return out;
}

inline std::string cusp_fy() {
  std::string out =
      "name = \"cusp-fy\"\n"
      "description = \"g = x^3 + y^2 with weights (2, 3), f = y, generators x/g and y/g\"\n"
      "notes = [\"the root 1/3 is established for y/g only; whether theta + 2/3 alone kills x/g is left open, "
      "so the x/g search result is an upper bound within the caps\"]\n"
      "\n[space]\nvars = [\"x\", \"y\"]\nweights = [2, 3]\n"
      "\n[problem]\ng = \"x^3 + y^2\"\nmode = \"direct\"\nvar = \"y\"\ngenerators = [\"x/g\", \"y/g\"]\n"
      "\n[search]\nlo = 0\nhi = 2\nmax_roots = 3\nper_generator = true\n";
  out += identities_text({
      {"(y dy + 1/3) on y/g", {{"y*dy + 1/3", "y/g"}}, {{"-2/3*dx", "x*y/g"}}, "", false},
  });
  return out;
}

inline std::string delta_zero() {
  return "name = \"delta-zero\"\n"
         "description = \"g = x in one variable: 1/g is the delta function at the origin\"\n"
         "\n[space]\nvars = [\"x\"]\n"
         "\n[problem]\ng = \"x\"\nmode = \"direct\"\nvar = \"x\"\ngenerators = [\"1/g\"]\n"
         "\n[search]\nlo = -1\nhi = 1\nmax_roots = 2\n"
         "\n[expect]\nb = \"s\"\n"
         "\n[kashiwara]\nbase_dim = 1\ncodim = 1\nlambdas = [\"-3\", \"-5/2\", \"-2\", \"-1\", \"-1/2\", 0, "
         "\"1/2\", 1]\n";
}

}  // namespace detail

/// Scenario text for a preset; `n` is required to lie in the preset's range
/// when it takes one and must be absent otherwise.
inline std::string preset_text(const std::string& name, std::optional<int> n = std::nullopt) {
  const PresetInfo& info = preset_info(name);
  if (info.n_min == 0 && n) throw Error("preset '" + name + "' takes no size parameter");
  int size = n.value_or(info.n_default);
  if (info.n_min != 0 && (size < info.n_min || size > info.n_max))
    throw Error("preset '" + name + "' needs n in " + std::to_string(info.n_min) + ".." +
                std::to_string(info.n_max));
  if (name == "node") return detail::node();
  if (name == "quadric-n3") return detail::quadric_n3();
  if (name == "quadric-general") return detail::quadric_general(size);
  if (name == "tau-x1-x2") return detail::tau_x1_x2(size);
  if (name == "cusp-fx") return detail::cusp_fx();
  if (name == "cusp-fy") return detail::cusp_fy();
  return detail::delta_zero();
}

/// Every preset instance, as (file stem, scenario text).
inline std::vector<std::pair<std::string, std::string>> preset_corpus() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : presets()) {
    if (p.n_min == 0) {
      out.emplace_back(preset_file_stem(p.name), preset_text(p.name));
    } else {
      for (int n = p.n_min; n <= p.n_max; ++n) out.emplace_back(preset_file_stem(p.name, n), preset_text(p.name, n));
    }
  }
  return out;
}

}  // namespace bsv

#endif  // BSV_PRESETS_HPP
