#include <cmath>
#include <functional>
#include <random>

#include "cbdp/errors.hpp"
#include "cbdp/parametrization.hpp"
#include "cbdp/spectral.hpp"
#include "doctest.h"

using namespace cbdp;

namespace {

// Cyclic Jacobi eigenvalue sweep for a small dense symmetric matrix; returns the largest eigenvalue.
double jacobi_max_eigenvalue(std::vector<std::vector<double>> s) {
  const std::size_t n = s.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += s[p][q] * s[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(s[p][q]) < 1e-300) continue;
        double theta = (s[q][q] - s[p][p]) / (2 * s[p][q]);
        double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double skp = s[k][p], skq = s[k][q];
          s[k][p] = c * skp - sn * skq;
          s[k][q] = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double spk = s[p][k], sqk = s[q][k];
          s[p][k] = c * spk - sn * sqk;
          s[q][k] = sn * spk + c * sqk;
        }
      }
    }
  }
  double best = -1e300;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, s[i][i]);
  return best;
}

// All monotone lattice paths from the origin to u, as vertex sequences.
void monotone_paths(const Grid& g, std::size_t target, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  std::size_t u = cur.back();
  if (u == target) {
    out.push_back(cur);
    return;
  }
  for (int axis = 0; axis < g.dim(); ++axis) {
    if (g.vertex(u)[static_cast<std::size_t>(axis)] >= g.vertex(target)[static_cast<std::size_t>(axis)]) continue;
    cur.push_back(g.step(u, axis, +1));
    monotone_paths(g, target, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("build_kernel reproduces the 2x1 formula") {
  Parametrization p(GridShape({2, 1}));
  // W order: (1,0)=h1, (1,1)=h2, (2,0)=v1; a in lex order a00,a01,a10,a11,a20,a21.
  p.W = {0.1, 0.2, 0.3};
  p.a = {1, 2, 3, 4, 5, 6};
  auto k = build_kernel(p);
  CHECK(k.at({0, 0}, 0, +1) == doctest::Approx(1 * 0.1 / 3));
  CHECK(k.at({1, 1}, 0, -1) == doctest::Approx(4 * 0.1 / 2));
  CHECK(k.at({2, 0}, 0, -1) == doctest::Approx(5 * 0.2 / 3));
  CHECK(k.at({2, 1}, 1, -1) == doctest::Approx(6 * 0.3 / 5));
  CHECK(k.at({1, 0}, 1, +1) == doctest::Approx(3 * 0.3 / 4));

  auto q = extract_parametrization(k);
  CHECK(q.W[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(q.W[1] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(q.W[2] == doctest::Approx(0.3).epsilon(1e-12));
  for (int u = 0; u < 6; ++u) CHECK(q.a[static_cast<std::size_t>(u)] == doctest::Approx((u + 1) / 1.0).epsilon(1e-12));
}

TEST_CASE("uniform weights give a symmetric kernel") {
  Parametrization p(GridShape({2, 2}));
  p.W = {0.1, 0.2, 0.3, 0.4};
  auto k = build_kernel(p);
  for (std::size_t e = 0; e < k.grid().edge_count(); ++e) CHECK(k[e] == k[k.grid().reverse(e)]);
  auto b = reversibility_constants(k);
  for (double x : b) CHECK(x == doctest::Approx(1.0));
  Kernel constant(GridShape({3, 1}));
  for (std::size_t e = 0; e < constant.grid().edge_count(); ++e) constant[e] = 0.07;
  auto q = extract_parametrization(constant);
  for (double w : q.W) CHECK(w == doctest::Approx(0.07));
  for (double a : q.a) CHECK(a == doctest::Approx(1.0));
}

TEST_CASE("round trip on random parametrizations") {
  for (auto n : std::vector<std::vector<int>>{{2, 2}, {3, 3}, {2, 2, 2}, {4}, {1, 2, 1, 1}}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto p = random_parametrization(GridShape(n), seed);
      auto k = build_kernel(p);
      auto b = reversibility_constants(k);
      for (std::size_t u = 0; u < b.size(); ++u) CHECK(std::abs(b[u] * p.a[u] * p.a[u] - 1) <= 1e-12);
      auto q = extract_parametrization(k);
      REQUIRE(q.W.size() == p.W.size());
      REQUIRE(q.a.size() == p.a.size());
      for (std::size_t c = 0; c < p.W.size(); ++c) CHECK(std::abs(q.W[c] - p.W[c]) <= 1e-12 * p.W[c]);
      for (std::size_t u = 0; u < p.a.size(); ++u) CHECK(std::abs(q.a[u] - p.a[u]) <= 1e-12 * p.a[u]);
    }
  }
}

TEST_CASE("exact round trip and detailed balance") {
  for (auto n : std::vector<std::vector<int>>{{2, 1}, {3, 3}, {2, 2, 2}}) {
    auto p = random_exact_parametrization(GridShape(n), 5);
    auto k = build_kernel(p);
    CHECK(is_commuting(k));
    auto b = reversibility_constants(k);
    const Grid& g = k.grid();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& edge = g.edge(e);
      CHECK(b[edge.source] * k[e] == b[edge.target] * k[g.reverse(e)]);
    }
    auto q = extract_parametrization(k);
    CHECK(q.a == p.a);
    CHECK(q.W == p.W);
  }
}

TEST_CASE("path independence over all monotone paths") {
  auto p = random_parametrization(GridShape({2, 1, 1}), 9);
  auto k = build_kernel(p);
  auto b = reversibility_constants(k);
  const Grid& g = k.grid();
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    std::vector<std::vector<std::size_t>> paths;
    std::vector<std::size_t> cur{0};
    monotone_paths(g, u, cur, paths);
    for (const auto& path : paths) {
      double prod = 1;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        prod *= k[g.edge_between(path[i], path[i + 1])] / k[g.edge_between(path[i + 1], path[i])];
      }
      CHECK(std::abs(prod - b[u]) <= 1e-12 * b[u]);
    }
  }
}

TEST_CASE("gauge invariance and parameter count") {
  auto p = random_parametrization(GridShape({3, 2}), 4);
  auto scaled = p;
  for (double& x : scaled.a) x *= 3.7;
  auto k1 = build_kernel(p), k2 = build_kernel(scaled);
  for (std::size_t e = 0; e < k1.grid().edge_count(); ++e) CHECK(k1[e] == doctest::Approx(k2[e]).epsilon(1e-14));
  auto q = extract_parametrization(k1);
  CHECK(q.W.size() == 5);
  CHECK(q.a.size() == 12);
}

TEST_CASE("extraction errors") {
  auto p = random_parametrization(GridShape({2, 2}), 1);
  auto k = build_kernel(p);
  auto zero = k;
  zero[3] = 0;
  CHECK_THROWS_AS(extract_parametrization(zero), PositivityError);
  auto bent = k;
  bent.at({1, 1}, 0, +1) *= 1.01;
  CHECK_THROWS_AS(extract_parametrization(bent), PathInconsistency);
  // Reversible but with W varying inside a class: a pure 1-dimensional change stays path consistent.
  Kernel line(GridShape({1, 1}));
  for (std::size_t e = 0; e < line.grid().edge_count(); ++e) line[e] = 0.1;
  line.at({0, 0}, 0, +1) = 0.2;
  line.at({1, 0}, 0, -1) = 0.2;
  line.at({0, 1}, 0, +1) = 0.1;
  CHECK_THROWS_AS(extract_parametrization(line), ClassInconsistency);
}

TEST_CASE("Perron normalization") {
  // Two states: Q = [[0,w],[w,0]].
  Parametrization two(GridShape({1}));
  two.W = {0.37};
  auto n2 = normalize_stochastic(two, 0.0);
  auto k2 = build_kernel(n2);
  CHECK(k2[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k2[1] == doctest::Approx(1.0).epsilon(1e-14));

  // 2x1 with unit weights against a dense Jacobi solve of the 6x6 Q.
  Parametrization p(GridShape({2, 1}));
  Grid g(p.shape);
  std::vector<std::vector<double>> q(6, std::vector<double>(6, 0.0));
  for (const auto& e : g.edges()) q[e.source][e.target] = 1.0;
  double lambda = jacobi_max_eigenvalue(q);
  CHECK(lambda == doctest::Approx(std::sqrt(2.0) + 1.0).epsilon(1e-12));
  auto pair = perron_pair(p);
  CHECK(pair.lambda == doctest::Approx(lambda).epsilon(1e-13));
  auto n = normalize_stochastic(p, 0.0);
  auto k = build_kernel(n);
  for (std::size_t u = 0; u < g.vertex_count(); ++u) CHECK(std::abs(k.row_sum(u) - 1.0) <= 1e-12);

  for (auto shape : std::vector<std::vector<int>>{{3, 3}, {2, 2, 2}, {6, 1}, {1, 1, 1, 1}}) {
    auto r = random_parametrization(GridShape(shape), 21);
    auto rn = normalize_stochastic(r, 0.5);
    auto rk = build_kernel(rn);
    for (std::size_t u = 0; u < rk.grid().vertex_count(); ++u) CHECK(std::abs(rk.row_sum(u) - 0.5) <= 1e-12);
    // Kronecker sum: lambda_max(Q) is the sum of per-axis largest eigenvalues.
    double expected = 0;
    for (const auto& b : tridiagonal_blocks(r)) expected += eig_sym_tridiag(b).values.back();
    CHECK(perron_pair(r).lambda == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("Perron vector does not depend on the start vector") {
  auto r = random_parametrization(GridShape({3, 2}), 8);
  auto a = perron_pair(r);
  std::mt19937_64 rng(2);
  std::vector<double> start(a.vector.size());
  for (double& x : start) x = 0.1 + static_cast<double>(rng() % 1000) / 100.0;
  auto b = perron_pair(r, start);
  for (std::size_t u = 0; u < start.size(); ++u) {
    CHECK(std::abs(a.vector[u] / a.vector[0] - b.vector[u] / b.vector[0]) <= 1e-10);
  }
  CHECK_THROWS_AS(normalize_stochastic(r, 1.0), InputError);
}
