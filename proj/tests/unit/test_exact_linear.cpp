#include <algorithm>
#include <numeric>

#include "cbdp/errors.hpp"
#include "cbdp/exact_linear.hpp"
#include "doctest.h"

using namespace cbdp;

namespace {

// Rank over Q by plain rational Gaussian elimination; independent of the Bareiss path.
std::size_t rational_rank(ExactMatrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || m(i, c) == 0) continue;
      mpq_class f = m(i, c) / m(rank, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<int>> sorted_shapes_up_to(std::int64_t max_vertices) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int max_part, std::int64_t verts) -> void {
    if (!cur.empty()) out.push_back(cur);
    for (int v = 1; v <= max_part; ++v) {
      if (verts * (v + 1) > max_vertices) break;
      cur.push_back(v);
      self(self, v, verts * (v + 1));
      cur.pop_back();
    }
  };
  rec(rec, 63, 1);
  return out;
}

}  // namespace

TEST_CASE("A for the 2x1 grid, entrywise") {
  const int expected[9][14] = {
      {1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0},  {0, 1, 0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0},
      {-1, 0, 1, 0, 1, 0, -1, 0, 0, 1, 0, 0, -1, 0}, {0, -1, 0, 1, 0, 1, 0, -1, 0, -1, 0, 0, 1, 0},
      {0, 0, -1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, -1},  {0, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 1},
      {1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0},    {0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1}};
  auto a = build_A(GridShape({2, 1}));
  REQUIRE(a.rows() == 9);
  REQUIRE(a.cols() == 14);
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 14; ++c) CHECK(a(r, c) == expected[r][c]);
  }
  CHECK(rank_exact(a) == 8);
  CHECK(a.row_labels()[0] == "a(0,0)");
  CHECK(a.row_labels()[6] == "W(1,0)");
}

TEST_CASE("S for the 2x1 grid, entrywise") {
  const int expected[8][14] = {
      {1, -1, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0},  {0, 0, 0, 0, -1, 1, 0, 0, -1, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0, 1, -1, 0},  {1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 0},
      {0, 0, 1, -1, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0},  {0, 0, 0, 0, 0, 0, -1, 1, 0, -1, 1, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 1, -1},  {0, 0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1}};
  auto s = build_S(GridShape({2, 1}));
  REQUIRE(s.rows() == 8);
  REQUIRE(s.cols() == 14);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 14; ++c) CHECK(s(r, c) == expected[r][c]);
  }
  CHECK(rank_exact(s) == 6);
  CHECK(s.row_labels()[0] == "R00*U10 - U00*R01");
  CHECK(s.row_labels()[7] == "D11*R10 - R11*D21");
}

TEST_CASE("formats and small ranks") {
  CHECK(build_S(GridShape({1, 1})).rows() == 4);
  CHECK(build_S(GridShape({1, 1})).cols() == 8);
  auto a22 = build_A(GridShape({2, 2}));
  CHECK(a22.rows() == 13);
  CHECK(a22.cols() == 24);
  CHECK(rank_exact(a22) == 12);
  CHECK(rational_rank(a22) == 12);
  CHECK(predicted_ranks(GridShape({2, 1})).rank_A == 8);
  CHECK(predicted_ranks(GridShape({2, 1})).rank_S == 6);
  CHECK(predicted_ranks(GridShape({1, 1, 1})).rank_A == 10);
  CHECK(predicted_ranks(GridShape({1, 1, 1})).rank_S == 14);
  CHECK(predicted_ranks(GridShape({5})).rank_A == 10);
  CHECK(predicted_ranks(GridShape({5})).rank_S == 0);
  auto o = check_orthogonality(GridShape({1, 1}));
  CHECK(o.holds());
  CHECK(o.rank_A == 5);
  CHECK(o.rank_S == 3);
}

TEST_CASE("column and row sums") {
  auto a = build_A(GridShape({3, 2}));
  auto s = build_S(GridShape({3, 2}));
  for (std::size_t c = 0; c < a.cols(); ++c) {
    mpq_class sum = 0;
    for (std::size_t r = 0; r < a.rows(); ++r) sum += a(r, c);
    CHECK(sum == 1);
  }
  for (std::size_t r = 0; r < s.rows(); ++r) {
    mpq_class sum = 0;
    for (std::size_t c = 0; c < s.cols(); ++c) sum += s(r, c);
    CHECK(sum == 0);
  }
}

TEST_CASE("Gram structure of A") {
  GridShape shape({3, 2});
  Grid g(shape);
  auto a = build_A(g);
  auto gram = a.multiply(a.transpose());
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (u == v) continue;
      CHECK(gram(u, v) == (g.edge_between(u, v) != Grid::npos ? -2 : 0));
    }
  }
  for (std::size_t k = 0; k < g.class_count(); ++k) {
    auto row = g.vertex_count() + k;
    CHECK(gram(row, row) == static_cast<long>(g.class_size(g.class_at(k).axis)));
  }
}

TEST_CASE("Bareiss rank agrees with rational elimination") {
  for (auto n : std::vector<std::vector<int>>{{2, 1}, {3, 2}, {1, 1, 1}, {2, 2, 1}, {4}}) {
    GridShape shape(n);
    CHECK(rank_exact(build_A(shape)) == rational_rank(build_A(shape)));
    CHECK(rank_exact(build_S(shape)) == rational_rank(build_S(shape)));
  }
  // Large entries force the arbitrary-precision path.
  ExactMatrix m(3, 3);
  mpz_class big("1000000000000000000000");
  m(0, 0) = big; m(0, 1) = 1; m(0, 2) = 2;
  m(1, 0) = big * 2; m(1, 1) = 2; m(1, 2) = 4;
  m(2, 0) = 3; m(2, 1) = big; m(2, 2) = 5;
  CHECK(rank_exact(m) == 2);
  CHECK(rational_rank(m) == 2);
}

TEST_CASE("predicted ranks on every sorted shape with at most 64 vertices") {
  auto shapes = sorted_shapes_up_to(64);
  CHECK(shapes.size() > 100);
  for (const auto& n : shapes) {
    GridShape shape(n);
    auto o = check_orthogonality(shape);
    auto p = predicted_ranks(shape);
    CHECK(static_cast<std::int64_t>(o.rank_A) == p.rank_A);
    CHECK(static_cast<std::int64_t>(o.rank_S) == p.rank_S);
    CHECK(o.holds());
    CHECK(cell_alternating_sum(shape) == p.rank_S);
  }
}

TEST_CASE("integer kernel basis") {
  auto a = build_A(GridShape({2, 1}));
  auto basis = integer_kernel_basis(a);
  CHECK(basis.size() == 6);
  for (const auto& z : basis) {
    CHECK(in_kernel(a, z));
    CHECK(content(z) == 1);
  }
  CHECK(integer_kernel_basis(build_A(GridShape({5}))).empty());

  // A lattice basis: a non-primitive sublattice would miss some Graver-type vector.
  // Check the pivoted form is the identity on its pivots.
  auto pb = pivoted_kernel_basis(build_A(GridShape({3, 2})));
  CHECK(pb.unit);
  for (std::size_t i = 0; i < pb.basis.size(); ++i) {
    for (std::size_t j = 0; j < pb.pivots.size(); ++j) CHECK(pb.basis[i][pb.pivots[j]] == (i == j ? 1 : 0));
  }
}

TEST_CASE("kernel basis spans the integer kernel") {
  // ker of [2 4 6] is spanned over Z by vectors with gcd structure; (1,1,-1) must be expressible.
  ExactMatrix m(1, 3);
  m(0, 0) = 2; m(0, 1) = 4; m(0, 2) = 6;
  auto basis = integer_kernel_basis(m);
  REQUIRE(basis.size() == 2);
  // The lattice determinant (gcd of 2x2 minors of the basis) must be 1.
  mpz_class g = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      mpz_class d = basis[0][i] * basis[1][j] - basis[0][j] * basis[1][i];
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  CHECK(g == 1);
}

TEST_CASE("Hermite form decides lattice equality") {
  auto iv = [](std::initializer_list<long> xs) {
    IntegerVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
  };
  auto h = hermite_basis({iv({2, 4, 6}), iv({0, 3, 3}), iv({2, 7, 9})}, 3);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == iv({2, 1, 3}));
  CHECK(h[1] == iv({0, 3, 3}));
  // Same lattice from a different generating set.
  CHECK(hermite_basis({iv({2, 1, 3}), iv({2, 4, 6}), iv({-4, -2, -6})}, 3) == h);
  // Index-2 sublattice differs.
  CHECK(hermite_basis({iv({4, 2, 6}), iv({0, 3, 3})}, 3) != h);
  CHECK(hermite_basis({}, 3).empty());
  CHECK_THROWS_AS(hermite_basis({iv({1, 2})}, 3), DimensionMismatch);
}
