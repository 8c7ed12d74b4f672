#ifndef BSV_LINEAR_SOLVE_HPP
#define BSV_LINEAR_SOLVE_HPP

// Exact sparse linear algebra over Q.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "bsv/rational.hpp"

namespace bsv {

template <class Key, class Cmp = std::less<Key>>
using SparseVec = std::map<Key, Rat, Cmp>;

namespace detail {

using Row = std::map<std::size_t, Rat>;

// row -= factor * pivot, touching only columns present in pivot.
inline void axpy(Row& row, const Rat& factor, const Row& pivot) {
  for (const auto& [col, v] : pivot) {
    auto [it, inserted] = row.try_emplace(col, -factor * v);
    if (!inserted) {
      it->second -= factor * v;
      if (it->second == 0) row.erase(it);
    }
  }
}

}  // namespace detail

/// Solves sum_j x_j * columns[j] == target by Gaussian elimination.
///
/// Equations are taken in key order; each new equation is reduced against the
/// existing pivot rows and pivots on its smallest remaining unknown. Free
/// unknowns are set to zero, so the answer is the first solution of the
/// row-echelon parameterization. Returns nullopt when the system is
/// inconsistent.
template <class Key, class Cmp>
std::optional<std::vector<Rat>> solve_combination(
    const std::vector<SparseVec<Key, Cmp>>& columns, const SparseVec<Key, Cmp>& target) {
  std::map<Key, std::pair<detail::Row, Rat>, Cmp> equations;
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [key, v] : columns[j]) equations[key].first.emplace(j, v);
  for (const auto& [key, v] : target) equations[key].second = v;

  struct Pivot {
    detail::Row row;  // leading entry 1 at the pivot column
    Rat rhs;
  };
  std::map<std::size_t, Pivot> pivots;
  for (auto& [key, eq] : equations) {
    detail::Row row = std::move(eq.first);
    Rat rhs = eq.second;
    auto it = row.begin();
    while (it != row.end()) {
      auto p = pivots.find(it->first);
      if (p == pivots.end()) break;
      std::size_t col = it->first;
      Rat factor = it->second;
      detail::axpy(row, factor, p->second.row);
      rhs -= factor * p->second.rhs;
      it = row.upper_bound(col);
    }
    if (it == row.end()) {
      if (rhs != 0) return std::nullopt;
      continue;
    }
    std::size_t col = it->first;
    Rat lead = it->second;
    for (auto& [c, v] : row) v /= lead;
    rhs /= lead;
    pivots.emplace(col, Pivot{std::move(row), std::move(rhs)});
  }

  std::vector<Rat> x(columns.size(), Rat(0));
  for (auto p = pivots.rbegin(); p != pivots.rend(); ++p) {
    Rat v = p->second.rhs;
    for (const auto& [c, a] : p->second.row)
      if (c != p->first) v -= a * x[c];
    x[p->first] = v;
  }
  return x;
}

/// Reduced row echelon basis of span(vectors). Pivots are the greatest key of
/// each row; rows are returned in descending pivot order.
template <class Key, class Cmp>
std::vector<SparseVec<Key, Cmp>> echelon_basis(const std::vector<SparseVec<Key, Cmp>>& vectors) {
  using Vec = SparseVec<Key, Cmp>;
  std::map<Key, Vec, Cmp> rows;
  auto sub = [](Vec& a, const Rat& f, const Vec& b) {
    for (const auto& [k, v] : b) {
      auto [it, ins] = a.try_emplace(k, -f * v);
      if (!ins) {
        it->second -= f * v;
        if (it->second == 0) a.erase(it);
      }
    }
  };
  for (const Vec& input : vectors) {
    Vec v = input;
    while (!v.empty()) {
      auto top = std::prev(v.end());
      auto p = rows.find(top->first);
      if (p == rows.end()) break;
      Rat f = top->second;
      sub(v, f, p->second);
    }
    if (v.empty()) continue;
    Rat lead = std::prev(v.end())->second;
    for (auto& [k, c] : v) c /= lead;
    Key pivot = std::prev(v.end())->first;
    // Keep the basis fully reduced: clear older pivots from the new row,
    // then the new pivot from the older rows.
    for (auto& [pk, row] : rows) {
      auto it = v.find(pk);
      if (it != v.end()) {
        Rat f = it->second;
        sub(v, f, row);
      }
    }
    for (auto& [pk, row] : rows) {
      auto it = row.find(pivot);
      if (it != row.end()) {
        Rat f = it->second;
        sub(row, f, v);
      }
    }
    rows.emplace(pivot, std::move(v));
  }
  std::vector<Vec> out;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) out.push_back(it->second);
  return out;
}

}  // namespace bsv

#endif  // BSV_LINEAR_SOLVE_HPP
