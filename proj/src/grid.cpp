#include "cbdp/grid.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

#include "cbdp/errors.hpp"

namespace cbdp {

GridShape::GridShape(std::vector<int> sizes) : n_(std::move(sizes)) {
  if (n_.empty()) throw InputError("grid shape needs at least one axis");
  for (int v : n_) {
    if (v < 1) throw InputError("grid axis sizes must be positive");
  }
}

GridShape GridShape::parse(std::string_view text) {
  std::vector<int> sizes;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find_first_of("xX,", start);
    if (stop == std::string_view::npos) stop = text.size();
    auto token = text.substr(start, stop - start);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw InputError("cannot parse grid shape '" + std::string(text) + "'");
    }
    sizes.push_back(value);
    start = stop + 1;
  }
  return GridShape(std::move(sizes));
}

std::int64_t GridShape::vertex_count() const {
  std::int64_t count = 1;
  for (int v : n_) count *= v + 1;
  return count;
}

std::int64_t GridShape::edge_count() const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n_.size(); ++i) {
    std::int64_t term = n_[i];
    for (std::size_t j = 0; j < n_.size(); ++j) {
      if (j != i) term *= n_[j] + 1;
    }
    total += term;
  }
  return 2 * total;
}

std::string GridShape::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < n_.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(n_[i]);
  }
  return out;
}

namespace {

constexpr std::array<std::array<char, 2>, 3> kAxisLetters{{{'R', 'L'}, {'U', 'D'}, {'F', 'B'}}};

std::string coordinate_suffix(const Vertex& u, bool compact) {
  std::string out;
  if (compact) {
    for (int c : u) out += static_cast<char>('0' + c);
    return out;
  }
  out += '(';
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(u[i]);
  }
  out += ')';
  return out;
}

}  // namespace

Grid::Grid(GridShape shape) : shape_(std::move(shape)) {
  const int m = shape_.dim();
  const auto& n = shape_.sizes();
  if (shape_.vertex_count() > 50'000'000) throw InputError("grid too large");

  stride_.assign(static_cast<std::size_t>(m), 1);
  for (int i = m - 2; i >= 0; --i) {
    stride_[static_cast<std::size_t>(i)] = stride_[static_cast<std::size_t>(i + 1)] * static_cast<std::size_t>(n[static_cast<std::size_t>(i + 1)] + 1);
  }

  const auto nv = static_cast<std::size_t>(shape_.vertex_count());
  vertices_.reserve(nv);
  Vertex u(static_cast<std::size_t>(m), 0);
  for (std::size_t idx = 0; idx < nv; ++idx) {
    vertices_.push_back(u);
    for (int i = m - 1; i >= 0; --i) {
      auto ui = static_cast<std::size_t>(i);
      if (++u[ui] <= n[ui]) break;
      u[ui] = 0;
    }
  }

  edge_of_.assign(nv * static_cast<std::size_t>(m) * 2, npos);
  edges_.reserve(static_cast<std::size_t>(shape_.edge_count()));
  for (int axis = 0; axis < m; ++axis) {
    for (int sign : {+1, -1}) {
      for (std::size_t v = 0; v < nv; ++v) {
        std::size_t w = step(v, axis, sign);
        if (w == npos) continue;
        edge_of_[2 * (v * static_cast<std::size_t>(m) + static_cast<std::size_t>(axis)) + (sign < 0)] = edges_.size();
        edges_.push_back(DirectedEdge{v, w, axis, sign});
      }
    }
  }

  class_offset_.assign(static_cast<std::size_t>(m) + 1, 0);
  for (int axis = 0; axis < m; ++axis) {
    class_offset_[static_cast<std::size_t>(axis) + 1] = class_offset_[static_cast<std::size_t>(axis)] + static_cast<std::size_t>(n[static_cast<std::size_t>(axis)]);
  }

  const bool compact = std::all_of(n.begin(), n.end(), [](int v) { return v <= 9; });
  names_.reserve(edges_.size());
  for (const auto& e : edges_) {
    std::string name;
    if (m <= 3) {
      name += kAxisLetters[static_cast<std::size_t>(e.axis)][e.sign < 0 ? 1 : 0];
      name += coordinate_suffix(vertices_[e.source], compact);
    } else {
      name = "X" + std::to_string(e.axis + 1) + (e.sign > 0 ? "p@" : "m@");
      const auto& s = vertices_[e.source];
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) name += ',';
        name += std::to_string(s[i]);
      }
    }
    by_name_.emplace(name, names_.size());
    names_.push_back(std::move(name));
  }
}

std::size_t Grid::vertex_index(const Vertex& u) const {
  if (u.size() != stride_.size()) return npos;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0 || u[i] > shape_.size(static_cast<int>(i))) return npos;
    idx += static_cast<std::size_t>(u[i]) * stride_[i];
  }
  return idx;
}

std::size_t Grid::step(std::size_t vertex, int axis, int sign) const {
  const auto a = static_cast<std::size_t>(axis);
  int c = vertices_[vertex][a] + sign;
  if (c < 0 || c > shape_.size(axis)) return npos;
  return sign > 0 ? vertex + stride_[a] : vertex - stride_[a];
}

std::size_t Grid::edge_index(std::size_t source, int axis, int sign) const {
  if (source >= vertices_.size() || axis < 0 || axis >= dim()) return npos;
  return edge_of_[2 * (source * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(axis)) + (sign < 0)];
}

std::size_t Grid::edge_between(std::size_t u, std::size_t v) const {
  for (int axis = 0; axis < dim(); ++axis) {
    for (int sign : {+1, -1}) {
      if (step(u, axis, sign) == v) return edge_index(u, axis, sign);
    }
  }
  return npos;
}

std::size_t Grid::reverse(std::size_t edge) const {
  const auto& e = edges_[edge];
  return edge_index(e.target, e.axis, -e.sign);
}

EdgeClass Grid::parallel_class(const DirectedEdge& e) const {
  const auto a = static_cast<std::size_t>(e.axis);
  return EdgeClass{e.axis, std::min(vertices_[e.source][a], vertices_[e.target][a])};
}

std::size_t Grid::class_index(EdgeClass c) const {
  return class_offset_[static_cast<std::size_t>(c.axis)] + static_cast<std::size_t>(c.level);
}

EdgeClass Grid::class_at(std::size_t index) const {
  int axis = 0;
  while (class_offset_[static_cast<std::size_t>(axis) + 1] <= index) ++axis;
  return EdgeClass{axis, static_cast<int>(index - class_offset_[static_cast<std::size_t>(axis)])};
}

std::size_t Grid::class_size(int axis) const {
  std::size_t size = 2;
  for (int j = 0; j < dim(); ++j) {
    if (j != axis) size *= static_cast<std::size_t>(shape_.size(j) + 1);
  }
  return size;
}

std::size_t Grid::find_variable(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? npos : it->second;
}

std::string Grid::vertex_label(std::size_t vertex) const {
  const auto& u = vertices_[vertex];
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(u[i]);
  }
  return out;
}

std::vector<CommutationQuadric> Grid::commutation_quadrics() const {
  std::vector<CommutationQuadric> out;
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) {
      for (std::size_t c = 0; c < vertices_.size(); ++c) {
        std::size_t ci = step(c, i, +1);
        std::size_t cj = step(c, j, +1);
        if (ci == npos || cj == npos) continue;
        std::size_t cij = step(ci, j, +1);
        const std::size_t r_c = edge_index(c, i, +1);
        const std::size_t r_cj = edge_index(cj, i, +1);
        const std::size_t l_ci = edge_index(ci, i, -1);
        const std::size_t l_cij = edge_index(cij, i, -1);
        const std::size_t u_c = edge_index(c, j, +1);
        const std::size_t u_ci = edge_index(ci, j, +1);
        const std::size_t d_cj = edge_index(cj, j, -1);
        const std::size_t d_cij = edge_index(cij, j, -1);
        out.push_back({i, j, c, Corner::UpRight, {r_c, u_ci}, {u_c, r_cj}});
        out.push_back({i, j, c, Corner::UpLeft, {u_ci, l_cij}, {l_ci, u_c}});
        out.push_back({i, j, c, Corner::DownLeft, {l_cij, d_cj}, {d_cij, l_ci}});
        out.push_back({i, j, c, Corner::DownRight, {d_cj, r_c}, {r_cj, d_cij}});
      }
    }
  }
  return out;
}

Grid build_grid(const GridShape& shape) { return Grid(shape); }

std::int64_t count_cells(const GridShape& shape, int l) {
  const int m = shape.dim();
  if (l < 0 || l > m) throw InputError("cell dimension out of range");
  std::int64_t total = 0;
  for (std::uint32_t subset = 0; subset < (1u << m); ++subset) {
    if (std::popcount(subset) != l) continue;
    std::int64_t term = 1;
    for (int k = 0; k < m; ++k) {
      term *= (subset >> k & 1u) ? shape.size(k) : shape.size(k) + 1;
    }
    total += term;
  }
  return total;
}

std::int64_t cell_alternating_sum(const GridShape& shape) {
  std::int64_t total = 0;
  for (int l = 2; l <= shape.dim(); ++l) {
    total += (l % 2 == 0 ? 1 : -1) * (l + 1) * count_cells(shape, l);
  }
  return total;
}

}  // namespace cbdp
