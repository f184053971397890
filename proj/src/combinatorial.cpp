#include <algorithm>
#include <bit>
#include <map>
#include <tuple>

#include "cbdp/bases.hpp"
#include "cbdp/errors.hpp"

namespace cbdp {

namespace {

using Bits = unsigned __int128;

int popcount(Bits b) {
  return std::popcount(static_cast<std::uint64_t>(b)) + std::popcount(static_cast<std::uint64_t>(b >> 64));
}

Bits bit(std::size_t i) { return Bits{1} << i; }

}  // namespace

std::vector<std::vector<std::size_t>> combinatorial_circuits(const GridShape& shape, std::uint64_t budget) {
  Grid g(shape);
  const std::size_t n = g.edge_count();
  if (n > 128) throw BudgetExceeded("combinatorial circuits support at most 128 edges");

  // Parity conditions: even degree at each vertex, even count in each parallel group.
  std::vector<Bits> rows(g.vertex_count(), 0);
  std::map<std::tuple<int, int, int>, Bits> groups;
  for (std::size_t e = 0; e < n; ++e) {
    const auto& edge = g.edge(e);
    rows[edge.source] |= bit(e);
    rows[edge.target] |= bit(e);
    auto c = g.parallel_class(edge);
    groups[{c.axis, c.level, edge.sign}] |= bit(e);
  }
  for (const auto& [key, mask] : groups) rows.push_back(mask);

  // Reduced row echelon form over GF(2).
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && !(rows[p] & bit(c))) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r] & bit(c))) rows[r] ^= rows[rank];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Bits> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Bits v = bit(f);
    for (std::size_t r = 0; r < rank; ++r) {
      if (rows[r] & bit(f)) v |= bit(pivot_col[r]);
    }
    basis.push_back(v);
  }
  const std::size_t d = basis.size();
  if (d >= 63 || (std::uint64_t{1} << d) > budget) throw BudgetExceeded("cycle space too large to enumerate");

  std::vector<Bits> all;
  all.reserve((std::size_t{1} << d) - 1);
  Bits cur = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << d); ++k) {
    cur ^= basis[static_cast<std::size_t>(std::countr_zero(k))];
    all.push_back(cur);
  }
  std::stable_sort(all.begin(), all.end(), [](Bits a, Bits b) { return popcount(a) < popcount(b); });
  std::vector<Bits> minimal;
  for (Bits v : all) {
    bool contains = std::any_of(minimal.begin(), minimal.end(), [&](Bits c) { return (c & v) == c; });
    if (!contains) minimal.push_back(v);
  }

  std::vector<std::vector<std::size_t>> out;
  for (Bits v : minimal) {
    std::vector<std::size_t> edges;
    for (std::size_t e = 0; e < n; ++e) {
      if (v & bit(e)) edges.push_back(e);
    }
    out.push_back(std::move(edges));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace cbdp
