#pragma once

// Exact constraint matrix S and parametrization matrix A, exact ranks by
// fraction-free elimination, and integer kernel lattices.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cbdp/grid.hpp"

namespace cbdp {

using IntegerVector = std::vector<mpz_class>;

/// Dense rational matrix with labeled rows and columns.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpq_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpq_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  std::vector<std::string>& row_labels() { return row_labels_; }
  std::vector<std::string>& col_labels() { return col_labels_; }

  bool is_integral() const;
  /// Rows scaled by the lcm of their denominators; the row space and kernel are unchanged.
  std::vector<std::vector<mpz_class>> integer_rows() const;
  /// Entry access as machine integers; throws if an entry is not a small integer.
  std::vector<std::vector<int>> to_int() const;

  ExactMatrix transpose() const;
  ExactMatrix multiply(const ExactMatrix& rhs) const;
  ExactMatrix select_columns(const std::vector<std::size_t>& columns) const;
  bool is_zero() const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

/// Parametrization matrix: rows a_u (vertices, lex) then W(k,h); one column per directed edge.
ExactMatrix build_A(const GridShape& shape);
ExactMatrix build_A(const Grid& grid);

/// Constraint matrix: one +1,+1,-1,-1 row per quadric of the commutation system.
ExactMatrix build_S(const GridShape& shape);
ExactMatrix build_S(const Grid& grid);

/// Rank over the rationals (Bareiss elimination; machine integers with overflow
/// detection, falling back to arbitrary precision).
std::size_t rank_exact(const ExactMatrix& m);
std::size_t rank_exact(const std::vector<std::vector<mpz_class>>& rows, std::size_t cols);

struct PredictedRanks {
  std::int64_t rank_A;
  std::int64_t rank_S;
};
PredictedRanks predicted_ranks(const GridShape& shape);

struct OrthogonalityReport {
  bool product_zero;
  std::size_t rank_A;
  std::size_t rank_S;
  std::size_t columns;
  bool holds() const { return product_zero && rank_A + rank_S == columns; }
};
OrthogonalityReport check_orthogonality(const GridShape& shape);

/// Lattice basis of ker_Z(M) via a unimodular row transform of M^T.
std::vector<IntegerVector> integer_kernel_basis(const ExactMatrix& m);

/// A kernel lattice basis rearranged so that on the `pivots` columns it is the
/// identity. Exists iff some maximal minor of the basis is +-1; `unit` reports it.
struct PivotedBasis {
  std::vector<IntegerVector> basis;
  std::vector<std::size_t> pivots;
  bool unit = true;
};
PivotedBasis pivoted_kernel_basis(const ExactMatrix& m);

/// Row-style Hermite normal form of the lattice spanned by `rows`: positive pivots,
/// entries above each pivot reduced into [0, pivot). Two lattices are equal iff their
/// forms are.
std::vector<IntegerVector> hermite_basis(std::vector<IntegerVector> rows, std::size_t cols);

mpz_class content(const IntegerVector& v);
bool in_kernel(const ExactMatrix& m, const IntegerVector& v);

}  // namespace cbdp
