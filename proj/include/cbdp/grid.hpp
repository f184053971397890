#pragma once

// Finite box grids {0..n_1} x ... x {0..n_m}: vertices, directed nearest-neighbor
// edges in canonical order, parallel edge classes, and the cubical cell counts.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cbdp {

/// Axis sizes (n_1, ..., n_m). Every n_i >= 1 and m >= 1.
class GridShape {
 public:
  GridShape() = default;
  explicit GridShape(std::vector<int> sizes);

  /// Parses "2x1" / "1x1x1" / "5".
  static GridShape parse(std::string_view text);

  int dim() const { return static_cast<int>(n_.size()); }
  int size(int axis) const { return n_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& sizes() const { return n_; }
  std::int64_t vertex_count() const;
  std::int64_t edge_count() const;
  std::string to_string() const;

  auto operator<=>(const GridShape&) const = default;

 private:
  std::vector<int> n_;
};

using Vertex = std::vector<int>;

/// One ordered pair (u, v) with v = u + sign * e_axis. Axes are 0-based.
struct DirectedEdge {
  std::size_t source;
  std::size_t target;
  int axis;
  int sign;
};

/// Parallel class (k, h): all edges in direction k between levels h and h+1.
struct EdgeClass {
  int axis;
  int level;
  auto operator<=>(const EdgeClass&) const = default;
};

/// Which of the four two-step relations on a square a quadric encodes.
enum class Corner { UpRight, UpLeft, DownLeft, DownRight };

/// One quadric P(a,b)P(b,c) - P(a,d)P(d,c) of the commutation system.
/// `plus` holds the edges (a,b),(b,c); `minus` holds (a,d),(d,c).
struct CommutationQuadric {
  int axis_i;
  int axis_j;
  std::size_t base;  // lower corner of the square
  Corner corner;
  std::array<std::size_t, 2> plus;
  std::array<std::size_t, 2> minus;
};

class Grid {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit Grid(GridShape shape);

  const GridShape& shape() const { return shape_; }
  int dim() const { return shape_.dim(); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t class_count() const { return class_offset_.back(); }

  const Vertex& vertex(std::size_t index) const { return vertices_[index]; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  /// Lexicographic rank of u (first coordinate most significant), or npos if outside.
  std::size_t vertex_index(const Vertex& u) const;
  /// Neighbor u + sign * e_axis, or npos.
  std::size_t step(std::size_t vertex, int axis, int sign) const;

  const DirectedEdge& edge(std::size_t index) const { return edges_[index]; }
  const std::vector<DirectedEdge>& edges() const { return edges_; }
  /// Edge leaving `source` along sign * e_axis, or npos.
  std::size_t edge_index(std::size_t source, int axis, int sign) const;
  /// Edge from u to v, or npos when u and v are not adjacent.
  std::size_t edge_between(std::size_t u, std::size_t v) const;
  std::size_t reverse(std::size_t edge) const;

  EdgeClass parallel_class(const DirectedEdge& e) const;
  EdgeClass edge_class(std::size_t edge) const { return parallel_class(edges_[edge]); }
  std::size_t class_index(EdgeClass c) const;
  EdgeClass class_at(std::size_t index) const;
  std::size_t class_size(int axis) const;

  /// R/L, U/D, F/B names subscripted by source coordinates; X{k}p@u beyond three axes.
  const std::string& variable_name(std::size_t edge) const { return names_[edge]; }
  std::size_t find_variable(std::string_view name) const;
  std::string vertex_label(std::size_t vertex) const;

  /// All quadrics of the commutation system: for each axis pair i < j and each
  /// square (lex order of its lower corner) the up-right, up-left, down-left
  /// and down-right relations.
  std::vector<CommutationQuadric> commutation_quadrics() const;

 private:
  GridShape shape_;
  std::vector<std::size_t> stride_;
  std::vector<Vertex> vertices_;
  std::vector<DirectedEdge> edges_;
  // edge_of_[2 * (vertex * m + axis) + (sign < 0)]
  std::vector<std::size_t> edge_of_;
  std::vector<std::size_t> class_offset_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

Grid build_grid(const GridShape& shape);

/// Number of l-dimensional cells of the cubical complex on the grid.
std::int64_t count_cells(const GridShape& shape, int l);

/// sum_{l=2}^{m} (-1)^l (l+1) #l-cells.
std::int64_t cell_alternating_sum(const GridShape& shape);

}  // namespace cbdp
