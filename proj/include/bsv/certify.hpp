#ifndef BSV_CERTIFY_HPP
#define BSV_CERTIFY_HPP

// Functional equations b(theta) m in V^j D . (generators): verification of
// explicit identities, certification by graded linear algebra, and the
// search for a minimal certified b.

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "bsv/bfunction.hpp"
#include "bsv/graph.hpp"
#include "bsv/linear_solve.hpp"
#include "bsv/locoh.hpp"
#include "bsv/weyl.hpp"

namespace bsv {

// ---------------------------------------------------------------------------
// Uniform access to the two module kinds.

inline std::size_t operator_arity(const LocCohElem& m) { return m.context()->arity(); }
inline std::size_t operator_arity(const GraphElem& e) { return e.context()->hyper()->arity() + 1; }

inline std::vector<std::string> operator_vars(const LocCohElem& m) { return m.context()->vars(); }
inline std::vector<std::string> operator_vars(const GraphElem& e) {
  return e.context()->operator_vars();
}

/// Weights of the operator variables; t carries weight d_f.
inline std::vector<int> operator_weights(const LocCohElem& m) {
  return m.context()->weights().weights();
}
inline std::vector<int> operator_weights(const GraphElem& e) {
  auto w = e.context()->hyper()->weights().weights();
  w.push_back(static_cast<int>(e.context()->df()));
  return w;
}

inline LocCohElem zero_like(const LocCohElem& m) { return LocCohElem(m.context()); }
inline GraphElem zero_like(const GraphElem& e) { return GraphElem(e.context()); }

inline LocCohElem derive(const LocCohElem& m, std::size_t i) { return m.derivative(i); }
inline GraphElem derive(const GraphElem& e, std::size_t i) {
  return act_graph(GraphSymbol::dx(i), e);
}

/// x^a * m; in graph mode the last entry of `a` is the power of t.
inline LocCohElem multiply_monomial(const LocCohElem& m, const Exponent& a) {
  return m.times(Poly::monomial(a));
}
inline GraphElem multiply_monomial(const GraphElem& e, const Exponent& a) {
  const std::size_t n = e.context()->hyper()->arity();
  GraphElem r = e;
  for (int j = 0; j < a[n]; ++j) r = act_graph(GraphSymbol::t(), r);
  Poly xa = Poly::monomial(Exponent(a.begin(), a.begin() + static_cast<long>(n)));
  GraphElem out(e.context());
  for (const auto& [k, m] : r.layers()) out.add_layer(k, m.times(xa));
  return out;
}

/// Largest weighted degree of a numerator.
inline long max_numerator_degree(const LocCohElem& m) {
  long best = 0;
  for (const auto& [k, h] : m.numerators())
    for (const auto& [e, c] : h.terms()) best = std::max(best, m.context()->weights().degree(e));
  return best;
}
inline long max_numerator_degree(const GraphElem& e) {
  long best = 0;
  for (const auto& [k, m] : e.layers()) best = std::max(best, max_numerator_degree(m));
  return best;
}

inline bool same_module(const LocCohElem& a, const LocCohElem& b) { return a.same_context(b); }
inline bool same_module(const GraphElem& a, const GraphElem& b) {
  return a.context() == b.context() ||
         (a.context()->f() == b.context()->f() && a.context()->hyper()->g() == b.context()->hyper()->g());
}

inline std::string element_string(const LocCohElem& m) { return to_string(m); }
inline std::string element_string(const GraphElem& e) { return to_string(e); }

inline std::size_t filtration_variable(const VMode& mode) {
  if (auto d = std::get_if<DirectMode>(&mode)) return d->var;
  return std::get<GraphMode>(mode).t_index;
}
inline bool is_graph_mode(const VMode& mode) { return std::holds_alternative<GraphMode>(mode); }

/// The Euler-type operator theta: v*dv (direct) or t*dt (graph).
inline WeylOp theta_operator(std::size_t arity, const VMode& mode) {
  std::size_t v = filtration_variable(mode);
  return WeylOp::monomial(unit_exponent(arity, v), unit_exponent(arity, v));
}

// ---------------------------------------------------------------------------
// Identities.

template <class Elem>
struct IdentityResult {
  bool holds;
  Elem residual;  // sum lhs - sum rhs
};

/// Checks sum P_i(m_i) == sum Q_j(n_j) in the module.
template <class Elem>
IdentityResult<Elem> verify_identity(const std::vector<std::pair<WeylOp, Elem>>& lhs,
                                     const std::vector<std::pair<WeylOp, Elem>>& rhs) {
  if (lhs.empty() && rhs.empty()) throw Error("verify_identity: both sides are empty");
  const Elem& first = lhs.empty() ? rhs.front().second : lhs.front().second;
  Elem total = zero_like(first);
  auto same = [&](const Elem& e) { return same_module(e, first); };
  for (const auto& [op, e] : lhs) {
    if (!same(e)) throw Error("verify_identity: elements from different modules");
    total += act(op, e);
  }
  for (const auto& [op, e] : rhs) {
    if (!same(e)) throw Error("verify_identity: elements from different modules");
    total -= act(op, e);
  }
  return {total.is_zero(), total};
}

// ---------------------------------------------------------------------------
// Membership problems.

/// Which operators may be used on the right-hand side.
enum class MembershipSet {
  /// x^a d^b theta^p with v-degree >= min (all of V^min D up to caps).
  v_filtration,
  /// x^a d^b only, d never in the filtration variable and no theta powers.
  restricted,
};

struct Caps {
  int pole = 0;
  int dop = 0;
  long coeff_deg = 0;
};

struct CapOverrides {
  std::optional<int> pole;
  std::optional<int> dop;
  std::optional<long> coeff_deg;
};

template <class Elem>
struct MembershipProblem {
  std::vector<Elem> generators;
  VMode mode;
  long min_v_degree = 1;
  CapOverrides caps;
  MembershipSet set = MembershipSet::v_filtration;
  /// Generators whose b(theta)-image must be certified; empty means all.
  std::vector<std::size_t> targets;

  std::vector<std::size_t> target_indices() const {
    if (!targets.empty()) return targets;
    std::vector<std::size_t> all(generators.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
};

/// x^a d^b theta^p with a coefficient, applied to one generator.
struct OperatorWord {
  Exponent x;
  Exponent d;
  int theta_power = 0;
  Rat coeff;
  std::size_t generator = 0;

  WeylOp as_operator(const VMode& mode) const {
    WeylOp theta = theta_operator(x.size(), mode);
    return compose(WeylOp::monomial(x, d, coeff), power(theta, theta_power));
  }
};

inline std::string to_string(const OperatorWord& w, const std::vector<std::string>& vars,
                             const VMode& mode) {
  std::vector<std::string> dvars;
  for (const auto& v : vars) dvars.push_back("d" + v);
  std::string body = monomial_string(w.x, vars);
  std::string d = monomial_string(w.d, dvars);
  if (!d.empty()) body += (body.empty() ? "" : "*") + d;
  if (w.theta_power > 0) {
    std::string v = vars[filtration_variable(mode)];
    std::string th = "(" + v + "*d" + v + ")";
    if (w.theta_power > 1) th += "^" + std::to_string(w.theta_power);
    body += (body.empty() ? "" : "*") + th;
  }
  if (body.empty()) return to_string(w.coeff);
  if (w.coeff == 1) return body;
  if (w.coeff == -1) return "-" + body;
  return to_string(w.coeff) + "*" + body;
}

template <class Elem>
struct Certificate {
  BFunction b_theta;
  Caps caps;
  /// Certified generators, and for each the combination expressing b(theta) m_i.
  std::vector<std::size_t> targets;
  std::vector<std::vector<OperatorWord>> combinations;
};

struct NotFoundAtCaps {
  Caps caps;
  std::size_t generator = 0;  // first generator whose system was inconsistent
  long weight = 0;            // its weighted-degree component
  std::size_t unknowns = 0;
  int candidates_tried = 0;
};

class CapOverflow : public Error {
 public:
  CapOverflow(const std::string& what, std::size_t gen, long weight)
      : Error(what), generator(gen), component_weight(weight) {}
  std::size_t generator;
  long component_weight;
};

template <class Elem>
using CertifyResult = std::variant<Certificate<Elem>, NotFoundAtCaps>;

namespace detail {

template <class Elem>
long element_weight(const Elem& e, std::size_t index) {
  auto w = e.weight();
  if (!w) throw Error("generator " + std::to_string(index) + " is not weight homogeneous");
  return *w;
}

template <class Elem>
void validate(const MembershipProblem<Elem>& prob) {
  if (prob.generators.empty()) throw Error("membership problem without generators");
  if (prob.min_v_degree < 0) throw Error("min_v_degree must be >= 0");
  const std::size_t arity = operator_arity(prob.generators.front());
  if (filtration_variable(prob.mode) >= arity) throw Error("filtration variable out of range");
  if (is_graph_mode(prob.mode) != std::is_same_v<Elem, GraphElem>)
    throw Error("membership mode does not match the element kind");
  for (std::size_t i = 0; i < prob.generators.size(); ++i) {
    if (prob.generators[i].is_zero()) throw Error("generator " + std::to_string(i) + " is zero");
    element_weight(prob.generators[i], i);
  }
  for (std::size_t t : prob.targets)
    if (t >= prob.generators.size()) throw Error("target index " + std::to_string(t) + " out of range");
  if (prob.caps.pole && *prob.caps.pole < 1) throw Error("pole cap must be positive");
  if (prob.caps.dop && *prob.caps.dop < 1) throw Error("dop cap must be positive");
  if (prob.caps.coeff_deg && *prob.caps.coeff_deg < 1) throw Error("coeff_deg cap must be positive");
}

/// theta^j m for j = 0..k.
template <class Elem>
std::vector<Elem> theta_powers(const Elem& m, const VMode& mode, int k) {
  WeylOp theta = theta_operator(operator_arity(m), mode);
  std::vector<Elem> out{m};
  for (int j = 1; j <= k; ++j) out.push_back(act(theta, out.back()));
  return out;
}

/// b(theta) m from the powers theta^j m.
template <class Elem>
Elem evaluate_b(const BFunction& b, const std::vector<Elem>& powers) {
  // Expand prod (theta + c)^m into coefficients of theta^j.
  std::vector<Rat> coeffs{Rat(1)};
  for (const auto& [c, mult] : b.shifts())
    for (int i = 0; i < mult; ++i) {
      std::vector<Rat> next(coeffs.size() + 1, Rat(0));
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        next[j + 1] += coeffs[j];
        next[j] += coeffs[j] * c;
      }
      coeffs = std::move(next);
    }
  if (coeffs.size() > powers.size()) throw Error("evaluate_b: not enough theta powers");
  Elem out = zero_like(powers.front());
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0) out += powers[j] * coeffs[j];
  return out;
}

/// Candidate columns for one generator and one target weight.
template <class Elem>
struct ColumnSet {
  std::vector<OperatorWord> words;
  std::vector<typename Elem::Coordinates> columns;
};

template <class Elem>
ColumnSet<Elem> build_columns(const MembershipProblem<Elem>& prob, std::size_t gen,
                              long target_weight, const Caps& caps) {
  const Elem& m = prob.generators[gen];
  const std::size_t arity = operator_arity(m);
  const std::size_t v = filtration_variable(prob.mode);
  const bool graph = is_graph_mode(prob.mode);
  const std::vector<int> weights = operator_weights(m);
  const long delta = target_weight - element_weight(m, gen);
  const int base_pole = m.pole_order();
  const int max_theta = prob.set == MembershipSet::restricted ? 0 : caps.dop;

  // Variables that may carry a derivative: everything except the filtration
  // variable (in graph mode t's derivative enters only through theta).
  std::vector<std::size_t> dvars;
  for (std::size_t i = 0; i < arity; ++i)
    if (i != v) dvars.push_back(i);

  std::vector<std::string> names(arity);
  for (std::size_t i = 0; i < arity; ++i) names[i] = "v" + std::to_string(i);
  WeightSystem xweights(names, weights);

  ColumnSet<Elem> out;
  std::vector<Elem> thetas = theta_powers(m, prob.mode, max_theta);
  std::map<std::pair<int, Exponent>, Elem> derived;
  auto derived_of = [&](auto&& self, int p, const Exponent& b) -> const Elem& {
    auto key = std::make_pair(p, b);
    if (auto it = derived.find(key); it != derived.end()) return it->second;
    if (total_degree(b) == 0) return derived.emplace(key, thetas[static_cast<std::size_t>(p)]).first->second;
    std::size_t i = 0;
    while (b[i] == 0) ++i;
    Exponent lower(b);
    --lower[i];
    Elem d = derive(self(self, p, lower), i);
    return derived.emplace(key, std::move(d)).first->second;
  };

  // Enumerate d-exponents b with |b| <= dop over dvars.
  std::vector<Exponent> bs;
  {
    Exponent cur(arity, 0);
    auto rec = [&](auto&& self, std::size_t idx, int left) -> void {
      if (idx == dvars.size()) {
        bs.push_back(cur);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        cur[dvars[idx]] = k;
        self(self, idx + 1, left - k);
      }
      cur[dvars[idx]] = 0;
    };
    rec(rec, 0, caps.dop);
  }
  std::sort(bs.begin(), bs.end(), TermOrder(weights));

  for (int p = 0; p <= max_theta; ++p) {
    for (const Exponent& b : bs) {
      int growth = total_degree(b) + (graph ? 0 : p);
      if (base_pole + growth > caps.pole) continue;
      long bweight = 0;
      for (std::size_t i = 0; i < arity; ++i) bweight += static_cast<long>(weights[i]) * b[i];
      long aweight = delta + bweight;
      if (aweight < 0 || aweight > caps.coeff_deg) continue;
      long rest = aweight - prob.min_v_degree * weights[v];
      if (rest < 0) continue;
      for (Exponent a : monomials_of_degree(xweights, rest)) {
        a[v] += static_cast<int>(prob.min_v_degree);
        const Elem& base = derived_of(derived_of, p, b);
        Elem col = multiply_monomial(base, a);
        if (col.is_zero()) continue;
        auto w = col.weight();
        if (!w || *w != target_weight)
          throw Error("grading violated while assembling the membership system");
        out.words.push_back(OperatorWord{a, b, p, Rat(1), gen});
        out.columns.push_back(col.coordinates());
      }
    }
  }
  return out;
}

template <class Elem>
Caps resolve_caps(const MembershipProblem<Elem>& prob, int b_degree,
                  const std::vector<Elem>& targets) {
  Caps c;
  int max_pole = 0;
  for (const auto& g : prob.generators) max_pole = std::max(max_pole, g.pole_order());
  c.pole = prob.caps.pole.value_or(max_pole + b_degree + 1);
  c.dop = prob.caps.dop.value_or(4);
  long d = 0;
  if constexpr (std::is_same_v<Elem, LocCohElem>) {
    d = prob.generators.front().context()->degree();
  } else {
    d = prob.generators.front().context()->hyper()->degree();
  }
  long target_deg = 0;
  for (const auto& t : targets) target_deg = std::max(target_deg, max_numerator_degree(t));
  c.coeff_deg = prob.caps.coeff_deg.value_or(target_deg + 2 * d);
  return c;
}

/// Solves every generator's system; caches columns per (generator, caps).
template <class Elem>
class MembershipSolver {
 public:
  explicit MembershipSolver(const MembershipProblem<Elem>& prob) : prob_(prob) { validate(prob_); }

  CertifyResult<Elem> certify(const BFunction& b_theta) {
    if (b_theta.var() != BVar::theta) throw Error("certify_divides expects a polynomial in theta");
    const int deg = b_theta.degree();
    const std::vector<std::size_t> index = prob_.target_indices();
    std::vector<Elem> targets;
    for (std::size_t i : index) targets.push_back(evaluate_b(b_theta, powers(i, deg)));
    Caps caps = resolve_caps(prob_, deg, targets);
    for (std::size_t i = 0; i < targets.size(); ++i)
      if (targets[i].pole_order() > caps.pole)
        throw CapOverflow("target for generator " + std::to_string(index[i]) + " has pole order " +
                              std::to_string(targets[i].pole_order()) + " above the pole cap " +
                              std::to_string(caps.pole),
                          index[i], element_weight(prob_.generators[index[i]], index[i]));

    // Independent weighted-degree components: one system per generator.
    std::vector<std::future<std::optional<std::vector<OperatorWord>>>> jobs;
    std::vector<const ColumnSet<Elem>*> sets;
    for (std::size_t i : index) sets.push_back(&columns(element_weight(prob_.generators[i], i), caps));
    for (std::size_t i = 0; i < targets.size(); ++i) {
      jobs.push_back(std::async(std::launch::async, [&, i]() -> std::optional<std::vector<OperatorWord>> {
        if (targets[i].is_zero()) return std::vector<OperatorWord>{};
        auto sol = solve_combination(sets[i]->columns, targets[i].coordinates());
        if (!sol) return std::nullopt;
        std::vector<OperatorWord> used;
        for (std::size_t j = 0; j < sol->size(); ++j)
          if ((*sol)[j] != 0) {
            OperatorWord w = sets[i]->words[j];
            w.coeff = (*sol)[j];
            used.push_back(std::move(w));
          }
        return used;
      }));
    }
    Certificate<Elem> cert{b_theta, caps, index, {}};
    std::optional<NotFoundAtCaps> failure;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      auto r = jobs[i].get();
      if (!r) {
        if (!failure)
          failure = NotFoundAtCaps{caps, index[i], element_weight(prob_.generators[index[i]], index[i]),
                                   sets[i]->words.size(), 1};
        continue;
      }
      cert.combinations.push_back(std::move(*r));
    }
    if (failure) return *failure;
    return cert;
  }

  /// Expresses an arbitrary homogeneous element through the generators.
  std::variant<std::pair<Caps, std::vector<OperatorWord>>, NotFoundAtCaps> express(const Elem& target) {
    if (!same_module(target, prob_.generators.front()))
      throw Error("membership target lives in a different module");
    auto w = target.weight();
    if (!w) throw Error("membership target is not weight homogeneous");
    Caps caps = resolve_caps(prob_, 0, std::vector<Elem>{target});
    if (target.pole_order() > caps.pole)
      throw CapOverflow("membership target has pole order " + std::to_string(target.pole_order()) +
                            " above the pole cap " + std::to_string(caps.pole),
                        0, *w);
    const ColumnSet<Elem>& set = columns(*w, caps);
    if (target.is_zero()) return std::make_pair(caps, std::vector<OperatorWord>{});
    auto sol = solve_combination(set.columns, target.coordinates());
    if (!sol) return NotFoundAtCaps{caps, 0, *w, set.words.size(), 1};
    std::vector<OperatorWord> used;
    for (std::size_t j = 0; j < sol->size(); ++j)
      if ((*sol)[j] != 0) {
        OperatorWord word = set.words[j];
        word.coeff = (*sol)[j];
        used.push_back(std::move(word));
      }
    return std::make_pair(caps, std::move(used));
  }

  const MembershipProblem<Elem>& problem() const { return prob_; }

 private:
  const std::vector<Elem>& powers(std::size_t gen, int k) {
    auto& cached = powers_[gen];
    if (static_cast<int>(cached.size()) <= k) cached = theta_powers(prob_.generators[gen], prob_.mode, k);
    return cached;
  }

  const ColumnSet<Elem>& columns(long w, const Caps& caps) {
    auto key = std::make_tuple(w, caps.pole, caps.dop, caps.coeff_deg);
    auto it = columns_.find(key);
    if (it != columns_.end()) return it->second;
    ColumnSet<Elem> all;
    for (std::size_t src = 0; src < prob_.generators.size(); ++src) {
      ColumnSet<Elem> part = build_columns(prob_, src, w, caps);
      for (auto& word : part.words) all.words.push_back(std::move(word));
      for (auto& col : part.columns) all.columns.push_back(std::move(col));
    }
    return columns_.emplace(key, std::move(all)).first->second;
  }

  MembershipProblem<Elem> prob_;
  std::map<std::size_t, std::vector<Elem>> powers_;
  std::map<std::tuple<long, int, int, long>, ColumnSet<Elem>> columns_;
};

}  // namespace detail

/// Re-expands a certificate and checks that, for every generator m_i,
/// sum coeff * word(m_gen) - b(theta) m_i is zero. Uses operator composition
/// and the module action directly, not the solver's cached columns.
template <class Elem>
bool replay(const Certificate<Elem>& cert, const MembershipProblem<Elem>& prob) {
  if (cert.combinations.size() != cert.targets.size()) return false;
  const std::size_t arity = operator_arity(prob.generators.front());
  WeylOp b_op = cert.b_theta.as_operator(theta_operator(arity, prob.mode));
  for (std::size_t i = 0; i < cert.targets.size(); ++i) {
    Elem acc = act(b_op, prob.generators.at(cert.targets[i])) * Rat(-1);
    for (const auto& w : cert.combinations[i]) {
      WeylOp op = w.as_operator(prob.mode);
      if (min_v_degree(WeylOp::monomial(w.x, w.d), prob.mode) < prob.min_v_degree) return false;
      if (prob.set == MembershipSet::restricted &&
          (w.theta_power > 0 || w.d[filtration_variable(prob.mode)] > 0))
        return false;
      acc += act(op, prob.generators.at(w.generator));
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

/// Expresses b(theta)(m) through admissible operator words applied to the
/// generators, one exact linear system per generator. A NotFoundAtCaps
/// result only means no certificate exists within the caps.
template <class Elem>
CertifyResult<Elem> certify_divides(const BFunction& b_theta, const MembershipProblem<Elem>& prob) {
  detail::MembershipSolver<Elem> solver(prob);
  auto r = solver.certify(b_theta);
  if (auto* cert = std::get_if<Certificate<Elem>>(&r))
    if (!replay(*cert, prob)) throw Error("internal error: certificate failed to replay");
  return r;
}

/// A combination of admissible words on the generators equal to a given element.
struct MembershipCertificate {
  Caps caps;
  std::vector<OperatorWord> combination;
};

using MembershipResult = std::variant<MembershipCertificate, NotFoundAtCaps>;

template <class Elem>
bool replay_membership(const MembershipCertificate& cert, const Elem& target,
                       const MembershipProblem<Elem>& prob) {
  Elem acc = target * Rat(-1);
  for (const auto& w : cert.combination) {
    if (min_v_degree(WeylOp::monomial(w.x, w.d), prob.mode) < prob.min_v_degree) return false;
    if (prob.set == MembershipSet::restricted &&
        (w.theta_power > 0 || w.d[filtration_variable(prob.mode)] > 0))
      return false;
    acc += act(w.as_operator(prob.mode), prob.generators.at(w.generator));
  }
  return acc.is_zero();
}

/// Certifies that `target` lies in the admissible span of the generators
/// (V^min applied to them) within the caps.
template <class Elem>
MembershipResult certify_membership(const Elem& target, const MembershipProblem<Elem>& prob) {
  detail::MembershipSolver<Elem> solver(prob);
  auto r = solver.express(target);
  if (auto* nf = std::get_if<NotFoundAtCaps>(&r)) return *nf;
  auto& [caps, words] = std::get<0>(r);
  MembershipCertificate cert{caps, std::move(words)};
  if (!replay_membership(cert, target, prob))
    throw Error("internal error: membership certificate failed to replay");
  return cert;
}

template <class Elem>
struct SearchResult {
  BFunction b_theta;
  Certificate<Elem> certificate;
  int candidates_tried = 0;
};

/// Tries monic products of (theta - r) with roots r from `lattice` (with
/// repetition): by degree, then lexicographically by the ascending root
/// vector. Returns the first certified candidate.
template <class Elem>
std::variant<SearchResult<Elem>, NotFoundAtCaps> search_minimal_b(
    const MembershipProblem<Elem>& prob, std::vector<Rat> lattice, int max_roots) {
  if (lattice.empty()) throw Error("search_minimal_b: empty lattice");
  if (max_roots < 1) throw Error("search_minimal_b: max_roots must be >= 1");
  std::sort(lattice.begin(), lattice.end());
  lattice.erase(std::unique(lattice.begin(), lattice.end()), lattice.end());
  detail::MembershipSolver<Elem> solver(prob);
  int tried = 0;
  std::optional<NotFoundAtCaps> last;
  for (int deg = 1; deg <= max_roots; ++deg) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(deg), 0);
    while (true) {
      BFunction b(BVar::theta);
      for (std::size_t i : idx) b.add_factor(-lattice[i]);
      ++tried;
      auto r = solver.certify(b);
      if (auto* cert = std::get_if<Certificate<Elem>>(&r)) {
        if (!replay(*cert, prob)) throw Error("internal error: certificate failed to replay");
        return SearchResult<Elem>{b, std::move(*cert), tried};
      }
      last = std::get<NotFoundAtCaps>(r);
      // Next nondecreasing index vector.
      int pos = deg - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == lattice.size()) --pos;
      if (pos < 0) break;
      std::size_t v = idx[static_cast<std::size_t>(pos)] + 1;
      for (int j = pos; j < deg; ++j) idx[static_cast<std::size_t>(j)] = v;
    }
  }
  last->candidates_tried = tried;
  return *last;
}

/// Theta-roots gamma - 1 for the s-shifts gamma of candidate_roots.
inline std::vector<Rat> theta_lattice(long df, const Rat& lo, const Rat& hi) {
  std::vector<Rat> out;
  for (const Rat& g : candidate_roots(df, lo, hi)) out.push_back(g - 1);
  return out;
}

}  // namespace bsv

#endif  // BSV_CERTIFY_HPP
