#ifndef BSV_LEDGER_HPP
#define BSV_LEDGER_HPP

// Divisor-level multiplier data on a log resolution: each exceptional or
// strict-transform divisor E_i carries (k_i, a_i), its coefficients in the
// relative canonical divisor and in the pulled-back ideal.
//
// Everything here is the valuation-level filtration K - floor(lambda F)
// before pushforward, so the true jumping numbers form a subset.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "bsv/rational.hpp"

namespace bsv {

struct Divisor {
  long k = 0;  // coefficient in K_{X'/X}
  long a = 1;  // coefficient in F
  bool operator==(const Divisor&) const = default;
};

class Ledger {
 public:
  explicit Ledger(std::vector<Divisor> divisors) : divisors_(std::move(divisors)) {
    if (divisors_.empty()) throw Error("ledger: no divisors");
    for (const auto& d : divisors_) {
      if (d.k < 0) throw Error("ledger: k must be >= 0");
      if (d.a < 1) throw Error("ledger: a must be >= 1");
    }
  }
  const std::vector<Divisor>& divisors() const { return divisors_; }

 private:
  std::vector<Divisor> divisors_;
};

/// min (k_i + 1) / a_i.
inline Rat lct_ledger(const Ledger& L) {
  Rat best;
  bool first = true;
  for (const auto& d : L.divisors()) {
    Rat r = make_rat(d.k + 1, d.a);
    if (first || r < best) best = r;
    first = false;
  }
  return best;
}

/// lambda in (0, B] with lambda * a_i integral and floor(lambda a_i) > k_i
/// for some i; ascending and deduplicated.
inline std::vector<Rat> candidate_jumps(const Ledger& L, const Rat& bound) {
  if (bound <= 0) throw Error("candidate_jumps: bound must be positive");
  std::set<Rat> out;
  for (const auto& d : L.divisors()) {
    BigInt top = floor_of(bound * Rat(d.a));
    for (BigInt j = d.k + 1; j <= top; ++j) {
      Rat r(j, BigInt(d.a));
      r.canonicalize();
      out.insert(r);
    }
  }
  return {out.begin(), out.end()};
}

struct ShiftReport {
  bool closed_under_shift = true;
  bool skoda_identity = true;
  std::vector<Rat> missing_shifts;  // lambda with lambda + 1 <= B but not a candidate
  std::vector<std::string> messages() const {
    std::vector<std::string> m;
    for (const auto& r : missing_shifts) m.push_back(to_string(r) + " + 1 is not a candidate");
    if (!skoda_identity) m.push_back("floor((lambda + 1) a) != floor(lambda a) + a");
    return m;
  }
  bool pass() const { return closed_under_shift && skoda_identity; }
};

/// Closure of the candidate set under +1 inside (0, B], and the identity
/// floor((lambda + 1) a_i) = floor(lambda a_i) + a_i at every candidate and
/// at midpoints between consecutive candidates.
inline ShiftReport shift_check(const Ledger& L, const Rat& bound) {
  ShiftReport r;
  auto jumps = candidate_jumps(L, bound);
  std::set<Rat> present(jumps.begin(), jumps.end());
  for (const auto& j : jumps)
    if (j + 1 <= bound && !present.count(j + 1)) {
      r.closed_under_shift = false;
      r.missing_shifts.push_back(j);
    }
  std::vector<Rat> samples = jumps;
  for (std::size_t i = 0; i + 1 < jumps.size(); ++i) samples.push_back((jumps[i] + jumps[i + 1]) / 2);
  for (const auto& lam : samples)
    for (const auto& d : L.divisors())
      if (floor_of((lam + 1) * Rat(d.a)) != floor_of(lam * Rat(d.a)) + d.a) r.skoda_identity = false;
  return r;
}

}  // namespace bsv

#endif  // BSV_LEDGER_HPP
