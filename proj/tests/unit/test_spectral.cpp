#include <algorithm>
#include <cmath>
#include <random>

#include "cbdp/errors.hpp"
#include "cbdp/spectral.hpp"
#include "doctest.h"

using namespace cbdp;

namespace {

// (cI + P)^t by repeated dense multiplication.
DenseMatrix power_oracle(const Kernel& k, double c, int t) {
  const Grid& g = k.grid();
  const std::size_t n = g.vertex_count();
  DenseMatrix step(n), result(n);
  for (std::size_t u = 0; u < n; ++u) {
    step(u, u) = c;
    result(u, u) = 1;
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) step(g.edge(e).source, g.edge(e).target) += k[e];
  for (int s = 0; s < t; ++s) {
    DenseMatrix next(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        double x = result(i, l);
        if (x == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next(i, j) += x * step(l, j);
      }
    result = next;
  }
  return result;
}

double max_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) d = std::max(d, std::abs(a.data[i] - b.data[i]));
  return d;
}

}  // namespace

TEST_CASE("tridiagonal blocks") {
  Parametrization p(GridShape({2, 1}));
  p.W = {0.1, 0.2, 0.3};
  auto blocks = tridiagonal_blocks(p);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].off == std::vector<double>{0.1, 0.2});
  CHECK(blocks[1].off == std::vector<double>{0.3});
  CHECK(tridiagonal_blocks(Parametrization(GridShape({5})))[0].size() == 6);

  // Conjugating the Kronecker placement of each block by diag(a) gives P_k.
  auto r = random_parametrization(GridShape({3, 2}), 3);
  auto k = build_kernel(r);
  const Grid& g = k.grid();
  auto rb = tridiagonal_blocks(r);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const auto& blk = rb[static_cast<std::size_t>(edge.axis)];
    int lo = std::min(g.vertex(edge.source)[static_cast<std::size_t>(edge.axis)], g.vertex(edge.target)[static_cast<std::size_t>(edge.axis)]);
    double q = blk.off[static_cast<std::size_t>(lo)];
    CHECK(std::abs(r.a[edge.source] * q / r.a[edge.target] - k[e]) <= 1e-14);
  }
}

TEST_CASE("tridiagonal eigensolver") {
  TridiagonalBlock two{0, {0.4}};
  auto e2 = eig_sym_tridiag(two);
  CHECK(e2.values[0] == doctest::Approx(-0.4));
  CHECK(e2.values[1] == doctest::Approx(0.4));
  CHECK(e2.vectors[0][0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(e2.vectors[0][1] == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(e2.vectors[1][1] == doctest::Approx(1 / std::sqrt(2.0)));

  auto e3 = eig_sym_tridiag(TridiagonalBlock{0, {1, 1}});
  CHECK(e3.values[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(e3.values[1]) < 1e-14);
  CHECK(e3.values[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.01, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    TridiagonalBlock b;
    int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) b.off.push_back(dist(rng));
    auto es = eig_sym_tridiag(b);
    const std::size_t size = b.size();
    for (std::size_t j = 0; j < size; ++j) {
      const auto& v = es.vectors[j];
      for (std::size_t i = 0; i < size; ++i) {
        double rv = (i > 0 ? b.off[i - 1] * v[i - 1] : 0) + (i + 1 < size ? b.off[i] * v[i + 1] : 0);
        CHECK(std::abs(rv - es.values[j] * v[i]) <= 1e-12);
      }
      for (std::size_t l = 0; l < size; ++l) {
        double dot = 0;
        for (std::size_t i = 0; i < size; ++i) dot += v[i] * es.vectors[l][i];
        CHECK(std::abs(dot - (j == l ? 1.0 : 0.0)) <= 1e-12);
      }
      // Spectrum symmetric about zero.
      CHECK(std::abs(es.values[j] + es.values[size - 1 - j]) <= 1e-12);
    }
  }
  // General diagonal entries are accepted too.
  auto gen = eig_sym_tridiag({2.0, -1.0, 0.5}, {0.3, 0.7});
  double trace = 0;
  for (double x : gen.values) trace += x;
  CHECK(trace == doctest::Approx(1.5));
}

TEST_CASE("t-step matrix") {
  auto p = random_parametrization(GridShape({2, 1}), 1);
  auto t0 = tstep_matrix(p, {0, 0.0});
  for (std::size_t i = 0; i < t0.n; ++i)
    for (std::size_t j = 0; j < t0.n; ++j) CHECK(std::abs(t0(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);

  auto k = build_kernel(p);
  auto t1 = tstep_matrix(p, {1, 0.0});
  CHECK(max_diff(t1, power_oracle(k, 0.0, 1)) <= 1e-12);

  auto r = normalize_stochastic(random_parametrization(GridShape({2, 2}), 2), 0.3);
  auto rk = build_kernel(r);
  auto t10 = tstep_matrix(r, {10, 0.3});
  CHECK(max_diff(t10, power_oracle(rk, 0.3, 10)) <= 1e-10);
  for (std::size_t u = 0; u < t10.n; ++u) {
    double sum = 0;
    for (std::size_t v = 0; v < t10.n; ++v) sum += t10(u, v);
    CHECK(std::abs(sum - 1.0) <= 10 * 1e-12);
    CHECK(tstep_entry(r, {10, 0.3}, u, (u * 7) % t10.n) == doctest::Approx(t10(u, (u * 7) % t10.n)).epsilon(1e-10));
  }

  for (auto shape : std::vector<std::vector<int>>{{3, 1, 1}, {5}, {1, 1, 1, 1}}) {
    auto s = normalize_stochastic(random_parametrization(GridShape(shape), 12), 0.1);
    CHECK(max_diff(tstep_matrix(s, {23, 0.1}), power_oracle(build_kernel(s), 0.1, 23)) <= 1e-10);
  }
}

TEST_CASE("binomial expansion of commuting parts") {
  auto p = random_parametrization(GridShape({2, 1}), 6);
  auto k = build_kernel(p);
  auto parts = split_directions(k);
  auto ph = power_oracle(parts[0].part, 0.0, 1);
  auto pv = power_oracle(parts[1].part, 0.0, 1);
  auto mul = [](const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.n);
    for (std::size_t i = 0; i < a.n; ++i)
      for (std::size_t l = 0; l < a.n; ++l)
        for (std::size_t j = 0; j < a.n; ++j) c(i, j) += a(i, l) * b(l, j);
    return c;
  };
  auto identity = power_oracle(k, 0.0, 0);
  for (int t = 0; t <= 10; ++t) {
    DenseMatrix sum(k.grid().vertex_count());
    double binom = 1;
    for (int s = 0; s <= t; ++s) {
      DenseMatrix term = identity;
      for (int i = 0; i < s; ++i) term = mul(term, ph);
      for (int i = 0; i < t - s; ++i) term = mul(term, pv);
      for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += binom * term.data[i];
      binom = binom * (t - s) / (s + 1);
    }
    CHECK(max_diff(sum, power_oracle(k, 0.0, t)) <= 1e-12);
  }
}

TEST_CASE("simulation") {
  Parametrization two(GridShape({1}));
  two.W = {1.0};
  auto res = simulate(two, 0, {3, 0.0}, 1000, 1);
  CHECK(res.counts[1] == 1000);
  auto r0 = simulate(two, 0, {0, 0.0}, 10, 1);
  CHECK(r0.counts[0] == 10);

  auto p = normalize_stochastic(random_parametrization(GridShape({2, 1}), 3), 0.0);
  CHECK_THROWS_AS(simulate(p, 0, {5, 0.2}, 10, 1), NotStochastic);
  const std::uint64_t n = 200000;
  auto a = simulate(p, 0, {5, 0.0}, n, 42, 1);
  auto b = simulate(p, 0, {5, 0.0}, n, 42, 3);
  CHECK(a.counts == b.counts);
  auto exact = tstep_matrix(p, {5, 0.0});
  for (std::size_t v = 0; v < exact.n; ++v) {
    double pv = std::clamp(exact(0, v), 0.0, 1.0);
    double se = std::sqrt(pv * (1 - pv) / static_cast<double>(n));
    CHECK(std::abs(a.frequencies[v] - pv) <= 4 * se + 1e-12);
  }
}
