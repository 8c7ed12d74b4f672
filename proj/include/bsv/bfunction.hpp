#ifndef BSV_BFUNCTION_HPP
#define BSV_BFUNCTION_HPP

// b-functions as root multisets, and the combinators on them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsv/rational.hpp"
#include "bsv/weyl.hpp"

namespace bsv {

/// Which variable a b-function is written in. `theta` is the Euler-type
/// operator (v*dv or t*dt); `s` is the Bernstein-Sato variable, s = -theta - 1.
enum class BVar { s, theta };

/// Monic polynomial prod (var + gamma)^m, stored as gamma -> m.
class BFunction {
 public:
  BFunction() = default;
  explicit BFunction(BVar var) : var_(var) {}

  static BFunction from_roots(const std::map<Rat, int>& shifts, BVar var = BVar::s) {
    BFunction b(var);
    for (const auto& [g, m] : shifts) b.add_factor(g, m);
    return b;
  }
  static BFunction one(BVar var = BVar::s) { return BFunction(var); }

  /// Multiplies by (var + gamma)^m.
  void add_factor(const Rat& gamma, int m = 1) {
    if (m < 0) throw Error("b-function: negative multiplicity");
    if (m == 0) return;
    shifts_[gamma] += m;
  }

  BVar var() const { return var_; }
  /// gamma -> multiplicity for each factor (var + gamma).
  const std::map<Rat, int>& shifts() const { return shifts_; }
  int multiplicity(const Rat& gamma) const {
    auto it = shifts_.find(gamma);
    return it == shifts_.end() ? 0 : it->second;
  }
  int degree() const {
    int d = 0;
    for (const auto& [g, m] : shifts_) d += m;
    return d;
  }
  /// Roots of the polynomial, i.e. -gamma, ascending with multiplicity.
  std::vector<Rat> root_vector() const {
    std::vector<Rat> out;
    for (auto it = shifts_.rbegin(); it != shifts_.rend(); ++it)
      for (int i = 0; i < it->second; ++i) out.push_back(-it->first);
    return out;
  }

  /// b(theta) as an operator, given the operator theta.
  WeylOp as_operator(const WeylOp& theta) const {
    WeylOp r = WeylOp::identity(theta.arity());
    for (const auto& [g, m] : shifts_)
      for (int i = 0; i < m; ++i) r = compose(theta + WeylOp::scalar(theta.arity(), g), r);
    return r;
  }

  bool operator==(const BFunction&) const = default;

 private:
  BVar var_ = BVar::s;
  std::map<Rat, int> shifts_;
};

inline std::string to_string(const BFunction& b) {
  const std::string v = b.var() == BVar::s ? "s" : "theta";
  if (b.shifts().empty()) return "1";
  std::string out;
  bool single = b.shifts().size() == 1 && b.shifts().begin()->second == 1;
  for (const auto& [g, m] : b.shifts()) {
    if (!out.empty()) out += "*";
    std::string f;
    if (g == 0) {
      f = v;
    } else {
      f = v + (g > 0 ? " + " : " - ") + to_string(abs(g));
      if (!single || m > 1) f = "(" + f + ")";
    }
    out += f;
    if (m > 1) out += "^" + std::to_string(m);
  }
  return out;
}

/// Substitutes theta = -(s + 1): the factor (theta + c) becomes (s + 1 - c)
/// up to sign. Applied to an s-polynomial it performs s = -(theta + 1), so the
/// substitution is an involution on root multisets.
inline BFunction to_bs_polynomial(const BFunction& b) {
  BFunction out(b.var() == BVar::theta ? BVar::s : BVar::theta);
  for (const auto& [c, m] : b.shifts()) out.add_factor(Rat(1) - c, m);
  return out;
}

/// Per-root maximum of multiplicities.
inline BFunction lcm_b(const BFunction& a, const BFunction& b) {
  if (a.var() != b.var()) throw Error("lcm of b-functions in different variables");
  BFunction out(a.var());
  std::map<Rat, int> m = a.shifts();
  for (const auto& [g, k] : b.shifts()) m[g] = std::max(m[g], k);
  for (const auto& [g, k] : m) out.add_factor(g, k);
  return out;
}

/// b-function of a product: gamma = alpha + beta with multiplicity
/// max(m1(alpha) + m2(beta) - 1) over all such pairs.
inline BFunction product_b(const BFunction& a, const BFunction& b) {
  if (a.var() != b.var()) throw Error("product of b-functions in different variables");
  if (a.shifts().empty() || b.shifts().empty())
    throw Error("product of b-functions needs nonconstant inputs");
  std::map<Rat, int> m;
  for (const auto& [ga, ma] : a.shifts())
    for (const auto& [gb, mb] : b.shifts()) {
      int& slot = m[ga + gb];
      slot = std::max(slot, ma + mb - 1);
    }
  return BFunction::from_roots(m, a.var());
}

struct ValidationReport {
  std::vector<Rat> negative_shifts;  // gamma < 0, i.e. a positive root of b
  int zero_multiplicity = 0;         // multiplicity of the factor s
  bool clean() const { return negative_shifts.empty() && zero_multiplicity <= 1; }
  std::vector<std::string> messages() const {
    std::vector<std::string> out;
    for (const auto& g : negative_shifts)
      out.push_back("factor (s + " + to_string(g) + ") has negative shift");
    if (zero_multiplicity > 1)
      out.push_back("s has multiplicity " + std::to_string(zero_multiplicity));
    return out;
  }
};

/// Checks that every factor is (s + gamma) with gamma >= 0, and that s
/// appears at most once.
inline ValidationReport validate_b(const BFunction& b) {
  if (b.var() != BVar::s) throw Error("validate_b expects a polynomial in s");
  ValidationReport r;
  for (const auto& [g, m] : b.shifts())
    if (g < 0) r.negative_shifts.push_back(g);
  r.zero_multiplicity = b.multiplicity(Rat(0));
  return r;
}

struct LctReport {
  Rat min_positive_shift;
  std::optional<Rat> lct;
  bool consistent = true;
  std::vector<Rat> shifts_in_window;  // gamma in [lct, lct + 1)
};

/// The smallest gamma > 0 among factors (s + gamma) is the log canonical
/// threshold; compared with `lct` when supplied.
inline LctReport lct_report(const BFunction& b, const std::optional<Rat>& lct = std::nullopt) {
  if (b.var() != BVar::s) throw Error("lct_report expects a polynomial in s");
  std::optional<Rat> best;
  for (const auto& [g, m] : b.shifts())
    if (g > 0 && (!best || g < *best)) best = g;
  if (!best) throw Error("lct_report: b-function has no factor (s + gamma) with gamma > 0");
  LctReport r{*best, lct, true, {}};
  if (lct) {
    r.consistent = (*lct == *best);
    for (const auto& [g, m] : b.shifts())
      if (g >= *lct && g < *lct + 1) r.shifts_in_window.push_back(g);
  }
  return r;
}

/// Points of (1/d_f)Z in the half-open window (lo, hi], ascending.
inline std::vector<Rat> candidate_roots(long df, const Rat& lo, const Rat& hi) {
  if (df < 1) throw Error("candidate_roots: d_f must be >= 1");
  if (!(lo < hi)) throw Error("candidate_roots: empty window");
  std::vector<Rat> out;
  BigInt first = floor_of(lo * Rat(df)) + 1;
  BigInt last = floor_of(hi * Rat(df));
  for (BigInt k = first; k <= last; ++k) {
    Rat r(k, BigInt(df));
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

}  // namespace bsv

#endif  // BSV_BFUNCTION_HPP
