#include <algorithm>
#include <chrono>

#include "cbdp/bases.hpp"
#include "cbdp/binomial_gb.hpp"
#include "cbdp/errors.hpp"

namespace cbdp {

namespace {

using Move = std::vector<std::int64_t>;

std::vector<Move> start_moves(const GridShape& shape, const SaturationOptions& options) {
  Grid grid(shape);
  const std::size_t n = grid.edge_count();
  std::vector<int> sub(shape.sizes());
  for (auto& s : sub) s = std::min(s, 2);
  std::vector<Move> out;
  if (GridShape(sub) == shape) {
    for (const auto& q : grid.commutation_quadrics()) {
      Move v(n, 0);
      for (auto e : q.plus) ++v[e];
      for (auto e : q.minus) --v[e];
      if (std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; })) out.push_back(std::move(v));
    }
    return out;
  }
  SaturationOptions inner;
  inner.max_pairs = options.max_pairs;
  const auto local = markov_basis_by_saturation(GridShape(sub), inner);
  Grid sg{GridShape(sub)};
  const int m = shape.dim();
  std::vector<int> offset(static_cast<std::size_t>(m), 0);
  while (true) {
    for (const auto& e : local) {
      Move v(n, 0);
      for (std::size_t j = 0; j < e.v.size(); ++j) {
        if (e.v[j] == 0) continue;
        const auto& edge = sg.edge(j);
        Vertex u = sg.vertex(edge.source);
        for (std::size_t k = 0; k < u.size(); ++k) u[k] += offset[k];
        v[grid.edge_index(grid.vertex_index(u), edge.axis, edge.sign)] += e.v[j];
      }
      out.push_back(std::move(v));
    }
    int k = 0;
    for (; k < m; ++k) {
      auto& o = offset[static_cast<std::size_t>(k)];
      if (o + sub[static_cast<std::size_t>(k)] < shape.size(k)) {
        ++o;
        break;
      }
      o = 0;
    }
    if (k == m) break;
  }
  return out;
}

IntegerVector to_mpz(const Move& v) { return IntegerVector(v.begin(), v.end()); }

// Adds a lattice basis of ker A when the moves span a proper sublattice.
void complete_lattice(std::vector<Move>& moves, const ExactMatrix& A) {
  const std::size_t n = A.cols();
  auto kernel = integer_kernel_basis(A);
  std::vector<IntegerVector> rows;
  for (const auto& v : moves) rows.push_back(to_mpz(v));
  if (hermite_basis(rows, n) == hermite_basis(kernel, n)) return;
  for (const auto& k : kernel) {
    Move v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!k[i].fits_slong_p()) throw InputError("kernel basis entry too large");
      v[i] = k[i].get_si();
    }
    moves.push_back(std::move(v));
  }
}

}  // namespace

std::vector<LatticeElement> markov_basis_by_saturation(const GridShape& shape, const SaturationOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto A = build_A(shape);
  const std::size_t n = A.cols();
  auto moves = start_moves(shape, options);
  complete_lattice(moves, A);

  std::vector<ExponentBinomial> current;
  for (const auto& v : moves) {
    ExponentBinomial b{Exponent(n, 0), Exponent(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] > 0) b.lead[i] = static_cast<std::int32_t>(v[i]);
      if (v[i] < 0) b.tail[i] = static_cast<std::int32_t>(-v[i]);
    }
    current.push_back(std::move(b));
  }

  // I : x_var^infinity is read off a grevlex basis in which x_var is the last variable.
  for (std::size_t var = 0; var < n; ++var) {
    auto swap = [&](Exponent e) {
      std::swap(e[var], e[n - 1]);
      return e;
    };
    BinomialGroebner gb(n, MonomialOrder::grevlex(), options.max_pairs);
    for (const auto& b : current) gb.add(swap(b.lead), swap(b.tail));
    gb.complete();
    current.clear();
    for (auto& b : gb.reduced_basis()) {
      const auto k = std::min(b.lead[n - 1], b.tail[n - 1]);
      b.lead[n - 1] -= k;
      b.tail[n - 1] -= k;
      current.push_back({swap(b.lead), swap(b.tail)});
    }
    if (options.progress) {
      options.progress(var, current.size(),
                       std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
  }

  std::vector<LatticeElement> generators;
  for (const auto& b : current) {
    Move v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::int64_t{b.lead[i]} - b.tail[i];
    generators.push_back(canonical(std::move(v)));
  }
  MarkovOptions markov;
  markov.max_pairs = options.max_pairs;
  return minimal_markov_basis(A, generators, markov);
}

}  // namespace cbdp
