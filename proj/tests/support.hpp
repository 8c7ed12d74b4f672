#pragma once

#include <random>
#include <string>
#include <vector>

#include "bsv/bsv.hpp"

namespace bsv::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rat random_rat() {
  int num = uniform(-9, 9);
  int den = uniform(1, 4);
  return make_rat(num, den);
}

inline Exponent random_exponent(std::size_t n, int max_total) {
  Exponent e(n, 0);
  int budget = uniform(0, max_total);
  for (int i = 0; i < budget; ++i) ++e[static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1))];
  return e;
}

inline Poly random_poly(std::size_t n, int max_total, int terms) {
  Poly p(n);
  for (int i = 0; i < terms; ++i) p.add_term(random_exponent(n, max_total), random_rat());
  return p;
}

inline Poly random_homogeneous(const WeightSystem& w, long degree, int terms) {
  auto monos = monomials_of_degree(w, degree);
  Poly p(w.size());
  if (monos.empty()) return p;
  for (int i = 0; i < terms; ++i)
    p.add_term(monos[static_cast<std::size_t>(uniform(0, static_cast<int>(monos.size()) - 1))],
               random_rat());
  return p;
}

inline WeylOp random_op(std::size_t n, int max_order, int terms) {
  WeylOp op(n);
  for (int i = 0; i < terms; ++i)
    op.add_term(random_exponent(n, max_order), random_poly(n, 2, 2));
  return op;
}

inline std::vector<std::string> names(std::size_t n) {
  static const char* base[] = {"x", "y", "z", "u", "w", "v"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(i < 6 ? base[i] : "x" + std::to_string(i));
  return out;
}

/// Independent model of S[1/g]/S: a single fraction N / g^K, differentiated
/// by the plain quotient rule and never reduced. Zero in H^1 iff g^K | N.
struct NaiveFraction {
  Poly num;
  int pole;
  Poly g;

  static NaiveFraction of(const Poly& h, int k, const Poly& g) { return {h, k, g}; }

  NaiveFraction lift(int k) const {
    Poly n = num;
    for (int i = pole; i < k; ++i) n = n * g;
    return {n, std::max(k, pole), g};
  }
  NaiveFraction operator+(const NaiveFraction& o) const {
    int k = std::max(pole, o.pole);
    return {lift(k).num + o.lift(k).num, k, g};
  }
  NaiveFraction operator*(const Rat& c) const { return {num * c, pole, g}; }
  NaiveFraction times(const Poly& p) const { return {num * p, pole, g}; }
  NaiveFraction derivative(std::size_t i) const {
    Poly n = num.derivative(i) * g - num * g.derivative(i) * Rat(pole);
    return {n, pole + 1, g};
  }
  NaiveFraction apply(const WeylOp& op) const {
    NaiveFraction acc{Poly(num.arity()), 0, g};
    for (const auto& [alpha, h] : op.terms()) {
      NaiveFraction d = *this;
      for (std::size_t i = 0; i < alpha.size(); ++i)
        for (int j = 0; j < alpha[i]; ++j) d = d.derivative(i);
      acc = acc + d.times(h);
    }
    return acc;
  }
  bool is_zero_mod_polys() const {
    Poly gk = Poly::constant(num.arity(), 1);
    for (int i = 0; i < pole; ++i) gk = gk * g;
    return exact_div(num, gk).has_value();
  }
};

}  // namespace bsv::testing
