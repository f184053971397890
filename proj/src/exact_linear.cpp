#include "cbdp/exact_linear.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>

#include "cbdp/errors.hpp"

namespace cbdp {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols), row_labels_(rows), col_labels_(cols) {}

ExactMatrix::ExactMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels)
    : rows_(row_labels.size()),
      cols_(col_labels.size()),
      data_(rows_ * cols_),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {}

bool ExactMatrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpq_class& q) { return q.get_den() == 1; });
}

std::vector<std::vector<mpz_class>> ExactMatrix::integer_rows() const {
  std::vector<std::vector<mpz_class>> out(rows_, std::vector<mpz_class>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols_; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*this)(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& q = (*this)(r, c);
      out[r][c] = q.get_num() * (l / q.get_den());
    }
  }
  return out;
}

std::vector<std::vector<int>> ExactMatrix::to_int() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& q = (*this)(r, c);
      if (q.get_den() != 1 || !q.get_num().fits_sint_p()) throw InputError("matrix entry is not a machine integer");
      out[r][c] = static_cast<int>(q.get_num().get_si());
    }
  }
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(col_labels_, row_labels_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

ExactMatrix ExactMatrix::multiply(const ExactMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product dimensions differ");
  ExactMatrix out(row_labels_, rhs.col_labels_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        const auto& b = rhs(k, c);
        if (b != 0) out(r, c) += a * b;
      }
    }
  }
  return out;
}

ExactMatrix ExactMatrix::select_columns(const std::vector<std::size_t>& columns) const {
  std::vector<std::string> labels;
  labels.reserve(columns.size());
  for (auto c : columns) labels.push_back(col_labels_.at(c));
  ExactMatrix out(row_labels_, std::move(labels));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) out(r, i) = (*this)(r, columns[i]);
  }
  return out;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpq_class& q) { return q == 0; });
}

ExactMatrix build_A(const GridShape& shape) { return build_A(Grid(shape)); }

ExactMatrix build_A(const Grid& grid) {
  std::vector<std::string> rows;
  for (std::size_t v = 0; v < grid.vertex_count(); ++v) rows.push_back("a(" + grid.vertex_label(v) + ")");
  for (std::size_t k = 0; k < grid.class_count(); ++k) {
    auto c = grid.class_at(k);
    rows.push_back("W(" + std::to_string(c.axis + 1) + "," + std::to_string(c.level) + ")");
  }
  std::vector<std::string> cols;
  for (std::size_t e = 0; e < grid.edge_count(); ++e) cols.push_back(grid.variable_name(e));

  ExactMatrix a(std::move(rows), std::move(cols));
  const std::size_t nv = grid.vertex_count();
  for (std::size_t e = 0; e < grid.edge_count(); ++e) {
    const auto& edge = grid.edge(e);
    a(edge.source, e) += 1;
    a(edge.target, e) -= 1;
    a(nv + grid.class_index(grid.parallel_class(edge)), e) += 1;
  }
  return a;
}

ExactMatrix build_S(const GridShape& shape) { return build_S(Grid(shape)); }

ExactMatrix build_S(const Grid& grid) {
  const auto quadrics = grid.commutation_quadrics();
  std::vector<std::string> rows;
  rows.reserve(quadrics.size());
  for (const auto& q : quadrics) {
    rows.push_back(grid.variable_name(q.plus[0]) + "*" + grid.variable_name(q.plus[1]) + " - " +
                   grid.variable_name(q.minus[0]) + "*" + grid.variable_name(q.minus[1]));
  }
  std::vector<std::string> cols;
  for (std::size_t e = 0; e < grid.edge_count(); ++e) cols.push_back(grid.variable_name(e));
  ExactMatrix s(std::move(rows), std::move(cols));
  for (std::size_t r = 0; r < quadrics.size(); ++r) {
    s(r, quadrics[r].plus[0]) += 1;
    s(r, quadrics[r].plus[1]) += 1;
    s(r, quadrics[r].minus[0]) -= 1;
    s(r, quadrics[r].minus[1]) -= 1;
  }
  return s;
}

namespace {

struct Overflow {};

inline std::int64_t checked_det2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  std::int64_t x, y, z;
  if (__builtin_mul_overflow(a, b, &x) || __builtin_mul_overflow(c, d, &y) || __builtin_sub_overflow(x, y, &z)) {
    throw Overflow{};
  }
  return z;
}

// Fraction-free Gaussian elimination; every intermediate entry is a minor of the input.
std::size_t bareiss_rank_i64(std::vector<std::int64_t> a, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  std::int64_t prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != rank) std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(p * cols), a.begin() + static_cast<std::ptrdiff_t>((p + 1) * cols), a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    const std::int64_t* pivot_row = &a[rank * cols];
    const std::int64_t pivot = pivot_row[c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      std::int64_t* row = &a[i * cols];
      const std::int64_t lead = row[c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (lead == 0 && row[j] == 0) continue;
        row[j] = checked_det2(pivot, row[j], lead, pivot_row[j]) / prev;
      }
      row[c] = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

std::size_t bareiss_rank_mpz(std::vector<std::vector<mpz_class>> a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::size_t rank = 0;
  mpz_class prev = 1;
  mpz_class t;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    const auto& pivot_row = a[rank];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      auto& row = a[i];
      for (std::size_t j = c + 1; j < cols; ++j) {
        t = pivot_row[c] * row[j] - row[c] * pivot_row[j];
        mpz_divexact(row[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = pivot_row[c];
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rank_exact(const std::vector<std::vector<mpz_class>>& rows, std::size_t cols) {
  if (rows.empty() || cols == 0) return 0;
  std::vector<std::int64_t> flat;
  flat.reserve(rows.size() * cols);
  bool small = true;
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionMismatch("ragged matrix");
    for (const auto& x : row) {
      if (!x.fits_slong_p()) {
        small = false;
        break;
      }
      flat.push_back(x.get_si());
    }
    if (!small) break;
  }
  if (small) {
    try {
      return bareiss_rank_i64(std::move(flat), rows.size(), cols);
    } catch (const Overflow&) {
    }
  }
  return bareiss_rank_mpz(rows, cols);
}

std::size_t rank_exact(const ExactMatrix& m) { return rank_exact(m.integer_rows(), m.cols()); }

PredictedRanks predicted_ranks(const GridShape& shape) {
  std::int64_t vertices = shape.vertex_count();
  std::int64_t sum_n = 0;
  for (int v : shape.sizes()) sum_n += v;
  const std::int64_t rank_a = vertices + sum_n - 1;
  const std::int64_t rank_s = shape.edge_count() - vertices - sum_n + 1;
  return {rank_a, rank_s};
}

OrthogonalityReport check_orthogonality(const GridShape& shape) {
  Grid grid(shape);
  auto a = build_A(grid);
  auto s = build_S(grid);
  OrthogonalityReport report{};
  report.product_zero = s.rows() == 0 || s.multiply(a.transpose()).is_zero();
  report.rank_A = rank_exact(a);
  report.rank_S = rank_exact(s);
  report.columns = a.cols();
  return report;
}

mpz_class content(const IntegerVector& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool in_kernel(const ExactMatrix& m, const IntegerVector& v) {
  if (v.size() != m.cols()) throw DimensionMismatch("vector length differs from column count");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpq_class sum = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (v[c] != 0) sum += m(r, c) * v[c];
    }
    if (sum != 0) return false;
  }
  return true;
}

namespace {

void axpy_row(std::vector<mpz_class>& target, const mpz_class& q, const std::vector<mpz_class>& source) {
  for (std::size_t j = 0; j < target.size(); ++j) {
    if (source[j] != 0) target[j] -= q * source[j];
  }
}

// Brings the gcd of column c over rows [from, end) into row `from` by Euclidean row operations.
void euclid_column(std::vector<std::vector<mpz_class>>& rows, std::size_t from, std::size_t c) {
  mpz_class q;
  while (true) {
    std::size_t best = rows.size();
    for (std::size_t k = from; k < rows.size(); ++k) {
      if (rows[k][c] == 0) continue;
      if (best == rows.size() || abs(rows[k][c]) < abs(rows[best][c])) best = k;
    }
    if (best == rows.size()) return;
    std::swap(rows[from], rows[best]);
    bool done = true;
    for (std::size_t k = from + 1; k < rows.size(); ++k) {
      if (rows[k][c] == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), rows[k][c].get_mpz_t(), rows[from][c].get_mpz_t());
      axpy_row(rows[k], q, rows[from]);
      if (rows[k][c] != 0) done = false;
    }
    if (done) return;
  }
}

}  // namespace

std::vector<IntegerVector> integer_kernel_basis(const ExactMatrix& m) {
  const auto mrows = m.integer_rows();
  const std::size_t r = m.rows();
  const std::size_t n = m.cols();
  // [M^T | I_n]
  std::vector<std::vector<mpz_class>> t(n, std::vector<mpz_class>(r + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r; ++j) t[i][j] = mrows[j][i];
    t[i][r + i] = 1;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < r && rank < n; ++c) {
    euclid_column(t, rank, c);
    if (t[rank][c] != 0) ++rank;
  }
  std::vector<IntegerVector> basis;
  for (std::size_t i = rank; i < n; ++i) {
    IntegerVector v(t[i].begin() + static_cast<std::ptrdiff_t>(r), t[i].end());
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<IntegerVector> hermite_basis(std::vector<IntegerVector> rows, std::size_t cols) {
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionMismatch("vector length differs from column count");
  }
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    euclid_column(rows, rank, c);
    if (rows[rank][c] == 0) continue;
    if (rows[rank][c] < 0) {
      for (auto& x : rows[rank]) x = -x;
    }
    // Reduce the entries above the pivot into [0, pivot).
    mpz_class q;
    for (std::size_t k = 0; k < rank; ++k) {
      mpz_fdiv_q(q.get_mpz_t(), rows[k][c].get_mpz_t(), rows[rank][c].get_mpz_t());
      if (q != 0) axpy_row(rows[k], q, rows[rank]);
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

PivotedBasis pivoted_kernel_basis(const ExactMatrix& m) {
  PivotedBasis out;
  auto rows = integer_kernel_basis(m);
  const std::size_t d = rows.size();
  const std::size_t n = m.cols();
  std::vector<bool> used(n, false);
  mpz_class q;
  for (std::size_t s = 0; s < d; ++s) {
    // Prefer a column with a unit entry in the remaining rows, then any column whose
    // remaining entries have gcd 1, then the column with the smallest gcd.
    std::size_t col = n;
    std::size_t unit_row = d;
    for (std::size_t c = 0; c < n && col == n; ++c) {
      if (used[c]) continue;
      for (std::size_t k = s; k < d; ++k) {
        if (abs(rows[k][c]) == 1) {
          col = c;
          unit_row = k;
          break;
        }
      }
    }
    if (col == n) {
      mpz_class best_g = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (used[c]) continue;
        mpz_class g = 0;
        for (std::size_t k = s; k < d; ++k) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), rows[k][c].get_mpz_t());
        if (g != 0 && (best_g == 0 || g < best_g)) {
          best_g = g;
          col = c;
        }
      }
      if (col == n) throw Error("kernel basis is rank deficient");
      euclid_column(rows, s, col);
      if (abs(rows[s][col]) != 1) out.unit = false;
    } else {
      std::swap(rows[s], rows[unit_row]);
    }
    if (rows[s][col] < 0) {
      for (auto& x : rows[s]) x = -x;
    }
    used[col] = true;
    out.pivots.push_back(col);
    for (std::size_t k = 0; k < d; ++k) {
      if (k == s || rows[k][col] == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), rows[k][col].get_mpz_t(), rows[s][col].get_mpz_t());
      axpy_row(rows[k], q, rows[s]);
    }
  }
  out.basis = std::move(rows);
  return out;
}

}  // namespace cbdp
