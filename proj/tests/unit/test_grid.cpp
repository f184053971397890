#include <random>

#include "cbdp/errors.hpp"
#include "cbdp/grid.hpp"
#include "doctest.h"

using namespace cbdp;

TEST_CASE("vertex and edge counts") {
  Grid g21(GridShape({2, 1}));
  CHECK(g21.vertex_count() == 6);
  CHECK(g21.edge_count() == 14);
  Grid g111(GridShape({1, 1, 1}));
  CHECK(g111.vertex_count() == 8);
  CHECK(g111.edge_count() == 24);
  Grid g5(GridShape({5}));
  CHECK(g5.vertex_count() == 6);
  CHECK(g5.edge_count() == 10);
}

TEST_CASE("edge count formula on random shapes") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 1 + static_cast<int>(rng() % 4);
    std::vector<int> n;
    std::int64_t verts = 1;
    for (int i = 0; i < m; ++i) {
      n.push_back(1 + static_cast<int>(rng() % 6));
      verts *= n.back() + 1;
    }
    if (verts > 10000) continue;
    GridShape shape(n);
    Grid g(shape);
    CHECK(static_cast<std::int64_t>(g.vertex_count()) == verts);
    CHECK(static_cast<std::int64_t>(g.edge_count()) == shape.edge_count());
    // Parallel classes partition edges into sum(n) classes of size 2 * prod_{j != k}(n_j + 1).
    std::vector<std::size_t> sizes(g.class_count(), 0);
    for (std::size_t e = 0; e < g.edge_count(); ++e) ++sizes[g.class_index(g.edge_class(e))];
    for (std::size_t k = 0; k < sizes.size(); ++k) CHECK(sizes[k] == g.class_size(g.class_at(k).axis));
  }
}

TEST_CASE("canonical edge names on the 2x1 grid") {
  Grid g(GridShape({2, 1}));
  std::vector<std::string> expected{"R00", "R01", "R10", "R11", "L10", "L11", "L20",
                                    "L21", "U00", "U10", "U20", "D01", "D11", "D21"};
  for (std::size_t e = 0; e < expected.size(); ++e) CHECK(g.variable_name(e) == expected[e]);
  CHECK(g.find_variable("D11") == 12);
  CHECK(g.find_variable("Q00") == Grid::npos);
}

TEST_CASE("parallel classes") {
  Grid g(GridShape({2, 1}));
  auto e = g.edge_between(g.vertex_index({1, 0}), g.vertex_index({2, 0}));
  CHECK(g.edge_class(e) == EdgeClass{0, 1});
  auto d = g.edge_between(g.vertex_index({2, 1}), g.vertex_index({2, 0}));
  CHECK(g.edge_class(d) == EdgeClass{1, 0});
  for (std::size_t i = 0; i < g.edge_count(); ++i) CHECK(g.edge_class(i) == g.edge_class(g.reverse(i)));
}

TEST_CASE("names beyond three axes and for wide axes") {
  Grid g(GridShape({1, 1, 1, 1}));
  CHECK(g.variable_name(0) == "X1p@0,0,0,0");
  Grid wide(GridShape({10, 1}));
  CHECK(wide.variable_name(0) == "R(0,0)");
}

TEST_CASE("cell counts") {
  CHECK(count_cells(GridShape({2, 1}), 2) == 2);
  CHECK(count_cells(GridShape({1, 1, 1}), 3) == 1);
  CHECK(count_cells(GridShape({1, 1, 1}), 2) == 6);
  CHECK(count_cells(GridShape({1, 1, 1}), 0) == 8);
  CHECK(cell_alternating_sum(GridShape({2, 1})) == 6);
  CHECK(cell_alternating_sum(GridShape({1, 1, 1})) == 14);
  CHECK(cell_alternating_sum(GridShape({5})) == 0);
  CHECK_THROWS_AS(count_cells(GridShape({2}), 2), InputError);
}

TEST_CASE("shape parsing") {
  CHECK(GridShape::parse("2x1").sizes() == std::vector<int>{2, 1});
  CHECK(GridShape::parse("5").sizes() == std::vector<int>{5});
  CHECK_THROWS_AS(GridShape::parse("2x"), InputError);
  CHECK_THROWS_AS(GridShape::parse("0x1"), InputError);
}

TEST_CASE("quadric count per axis pair") {
  for (auto n : std::vector<std::vector<int>>{{2, 1}, {3, 2}, {1, 1, 1}, {2, 1, 2}}) {
    GridShape shape(n);
    Grid g(shape);
    std::int64_t expected = 0;
    for (int i = 0; i < shape.dim(); ++i) {
      for (int j = i + 1; j < shape.dim(); ++j) {
        std::int64_t t = 4 * shape.size(i) * shape.size(j);
        for (int k = 0; k < shape.dim(); ++k) {
          if (k != i && k != j) t *= shape.size(k) + 1;
        }
        expected += t;
      }
    }
    CHECK(static_cast<std::int64_t>(g.commutation_quadrics().size()) == expected);
  }
}
