#pragma once

// Nearest-neighbor transition kernels on a grid, in float or exact rational
// arithmetic, with the directional split P = sum_k P_k and commutation tests.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cbdp/grid.hpp"

namespace cbdp {

/// An entry read from input that does not correspond to a grid edge.
struct StrayEntry {
  Vertex from;
  int axis;
  int sign;
  std::string value;
};

template <class T>
class BasicKernel {
 public:
  using Scalar = T;

  explicit BasicKernel(GridShape shape)
      : grid_(std::make_shared<const Grid>(std::move(shape))), p_(grid_->edge_count(), T(0)) {}
  explicit BasicKernel(std::shared_ptr<const Grid> grid) : grid_(std::move(grid)), p_(grid_->edge_count(), T(0)) {}

  const GridShape& shape() const { return grid_->shape(); }
  const Grid& grid() const { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }

  T& operator[](std::size_t edge) { return p_[edge]; }
  const T& operator[](std::size_t edge) const { return p_[edge]; }
  const std::vector<T>& values() const { return p_; }

  /// p(u, u + sign * e_axis); throws if that edge leaves the grid.
  T& at(const Vertex& from, int axis, int sign);
  const T& at(const Vertex& from, int axis, int sign) const;

  T row_sum(std::size_t vertex) const;
  T slack(std::size_t vertex) const { return T(1) - row_sum(vertex); }
  T max_entry() const;

  std::vector<StrayEntry> stray;

 private:
  std::size_t locate(const Vertex& from, int axis, int sign) const;

  std::shared_ptr<const Grid> grid_;
  std::vector<T> p_;
};

using Kernel = BasicKernel<double>;
using ExactKernel = BasicKernel<mpq_class>;

ExactKernel to_exact(const Kernel& k);
Kernel to_float(const ExactKernel& k);

struct Violation {
  enum class Kind { Negative, RowSum, OffSupport };
  Kind kind;
  std::string where;
  double amount;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<double> slack;
  bool valid() const { return violations.empty(); }
};

/// Flags negative entries, row sums above 1 + tol, and entries off the edge set.
template <class T>
ValidationReport validate(const BasicKernel<T>& k, double tol = 1e-12);

template <class T>
struct DirectionalPart {
  int axis;
  BasicKernel<T> part;
};

template <class T>
std::vector<DirectionalPart<T>> split_directions(const BasicKernel<T>& k);

template <class T>
struct Residual {
  std::size_t quadric;
  std::string label;
  T value;
};

template <class T>
struct ResidualReport {
  std::vector<Residual<T>> residuals;
  T max_abs{0};
};

/// Value of every quadric of the commutation system, in Grid::commutation_quadrics order.
template <class T>
ResidualReport<T> commutation_residuals(const BasicKernel<T>& k);

/// max |(P_i P_j - P_j P_i)(u, w)| over all axis pairs, by explicit sparse products.
template <class T>
T max_commutator_entry(const BasicKernel<T>& k);

template <class T>
struct CommutationCheck {
  bool commuting;
  T max_residual;
  T max_commutator;
  /// Whether the quadric test and the product test reach the same verdict.
  bool agree;
};

/// 1e-10 times the largest product of two entries.
double default_tolerance(const Kernel& k);

CommutationCheck<double> check_commuting(const Kernel& k, std::optional<double> tol = std::nullopt);
CommutationCheck<mpq_class> check_commuting(const ExactKernel& k);

bool is_commuting(const Kernel& k, std::optional<double> tol = std::nullopt);
bool is_commuting(const ExactKernel& k);

inline double to_double(double x) { return x; }
inline double to_double(const mpq_class& x) { return x.get_d(); }

}  // namespace cbdp
