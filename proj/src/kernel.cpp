#include "cbdp/kernel.hpp"

#include <unordered_map>

#include "cbdp/errors.hpp"

namespace cbdp {

namespace {

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

std::string edge_where(const Grid& g, std::size_t e) {
  return g.variable_name(e) + " (" + g.vertex_label(g.edge(e).source) + " -> " + g.vertex_label(g.edge(e).target) + ")";
}

}  // namespace

template <class T>
std::size_t BasicKernel<T>::locate(const Vertex& from, int axis, int sign) const {
  auto v = grid_->vertex_index(from);
  std::size_t e = v == Grid::npos ? Grid::npos : grid_->edge_index(v, axis, sign);
  if (e == Grid::npos) throw InputError("no such edge in the grid");
  return e;
}

template <class T>
T& BasicKernel<T>::at(const Vertex& from, int axis, int sign) {
  return p_[locate(from, axis, sign)];
}

template <class T>
const T& BasicKernel<T>::at(const Vertex& from, int axis, int sign) const {
  return p_[locate(from, axis, sign)];
}

template <class T>
T BasicKernel<T>::row_sum(std::size_t vertex) const {
  T sum(0);
  for (int axis = 0; axis < grid_->dim(); ++axis) {
    for (int sign : {+1, -1}) {
      auto e = grid_->edge_index(vertex, axis, sign);
      if (e != Grid::npos) sum += p_[e];
    }
  }
  return sum;
}

template <class T>
T BasicKernel<T>::max_entry() const {
  T best(0);
  for (const auto& x : p_) best = std::max(best, abs_value(x));
  return best;
}

ExactKernel to_exact(const Kernel& k) {
  ExactKernel out(k.grid_ptr());
  for (std::size_t e = 0; e < k.grid().edge_count(); ++e) out[e] = mpq_class(k[e]);
  out.stray = k.stray;
  return out;
}

Kernel to_float(const ExactKernel& k) {
  Kernel out(k.grid_ptr());
  for (std::size_t e = 0; e < k.grid().edge_count(); ++e) out[e] = k[e].get_d();
  out.stray = k.stray;
  return out;
}

template <class T>
ValidationReport validate(const BasicKernel<T>& k, double tol) {
  ValidationReport report;
  const Grid& g = k.grid();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (k[e] < 0) report.violations.push_back({Violation::Kind::Negative, edge_where(g, e), to_double(k[e])});
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    T sum = k.row_sum(v);
    double slack = to_double(T(T(1) - sum));
    report.slack.push_back(slack);
    if (slack < -tol) report.violations.push_back({Violation::Kind::RowSum, "vertex " + g.vertex_label(v), -slack});
  }
  for (const auto& s : k.stray) {
    std::string where = "from (";
    for (std::size_t i = 0; i < s.from.size(); ++i) where += (i ? "," : "") + std::to_string(s.from[i]);
    where += ") dir " + std::to_string(s.axis + 1) + " sign " + (s.sign > 0 ? "+1" : "-1");
    double amount = 0;
    try {
      amount = std::stod(s.value);
    } catch (const std::exception&) {
    }
    report.violations.push_back({Violation::Kind::OffSupport, where, amount});
  }
  return report;
}

template <class T>
std::vector<DirectionalPart<T>> split_directions(const BasicKernel<T>& k) {
  std::vector<DirectionalPart<T>> parts;
  for (int axis = 0; axis < k.grid().dim(); ++axis) parts.push_back({axis, BasicKernel<T>(k.grid_ptr())});
  for (std::size_t e = 0; e < k.grid().edge_count(); ++e) parts[static_cast<std::size_t>(k.grid().edge(e).axis)].part[e] = k[e];
  return parts;
}

template <class T>
ResidualReport<T> commutation_residuals(const BasicKernel<T>& k) {
  ResidualReport<T> report;
  const Grid& g = k.grid();
  const auto quadrics = g.commutation_quadrics();
  report.residuals.reserve(quadrics.size());
  for (std::size_t i = 0; i < quadrics.size(); ++i) {
    const auto& q = quadrics[i];
    T value = k[q.plus[0]] * k[q.plus[1]] - k[q.minus[0]] * k[q.minus[1]];
    report.max_abs = std::max(report.max_abs, abs_value(value));
    report.residuals.push_back({i,
                                g.variable_name(q.plus[0]) + "*" + g.variable_name(q.plus[1]) + " - " +
                                    g.variable_name(q.minus[0]) + "*" + g.variable_name(q.minus[1]),
                                std::move(value)});
  }
  return report;
}

template <class T>
T max_commutator_entry(const BasicKernel<T>& k) {
  const Grid& g = k.grid();
  const std::size_t nv = g.vertex_count();
  // Sparse rows of each directional matrix.
  std::vector<std::vector<std::vector<std::pair<std::size_t, T>>>> rows(
      static_cast<std::size_t>(g.dim()), std::vector<std::vector<std::pair<std::size_t, T>>>(nv));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    rows[static_cast<std::size_t>(edge.axis)][edge.source].emplace_back(edge.target, k[e]);
  }
  auto product_row = [&](std::size_t a, std::size_t b, std::size_t u) {
    std::unordered_map<std::size_t, T> out;
    for (const auto& [w, x] : rows[a][u]) {
      for (const auto& [v, y] : rows[b][w]) out[v] += x * y;
    }
    return out;
  };
  T best(0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      for (std::size_t u = 0; u < nv; ++u) {
        auto ij = product_row(i, j, u);
        auto ji = product_row(j, i, u);
        for (auto& [v, x] : ji) ij[v] -= x;
        for (const auto& [v, x] : ij) best = std::max(best, abs_value(x));
      }
    }
  }
  return best;
}

double default_tolerance(const Kernel& k) {
  double m = k.max_entry();
  return 1e-10 * m * m;
}

CommutationCheck<double> check_commuting(const Kernel& k, std::optional<double> tol) {
  const double t = tol ? *tol : default_tolerance(k);
  if (t < 0) throw InputError("tolerance must be non-negative");
  double r = commutation_residuals(k).max_abs;
  double c = max_commutator_entry(k);
  return {r <= t, r, c, (r <= t) == (c <= t)};
}

CommutationCheck<mpq_class> check_commuting(const ExactKernel& k) {
  mpq_class r = commutation_residuals(k).max_abs;
  mpq_class c = max_commutator_entry(k);
  return {r == 0, r, c, (r == 0) == (c == 0)};
}

bool is_commuting(const Kernel& k, std::optional<double> tol) {
  auto check = check_commuting(k, tol);
  if (!check.agree) throw Error("quadric residuals and commutator products disagree");
  return check.commuting;
}

bool is_commuting(const ExactKernel& k) {
  auto check = check_commuting(k);
  if (!check.agree) throw Error("quadric residuals and commutator products disagree");
  return check.commuting;
}

template class BasicKernel<double>;
template class BasicKernel<mpq_class>;
template ValidationReport validate(const Kernel&, double);
template ValidationReport validate(const ExactKernel&, double);
template std::vector<DirectionalPart<double>> split_directions(const Kernel&);
template std::vector<DirectionalPart<mpq_class>> split_directions(const ExactKernel&);
template ResidualReport<double> commutation_residuals(const Kernel&);
template ResidualReport<mpq_class> commutation_residuals(const ExactKernel&);
template double max_commutator_entry(const Kernel&);
template mpq_class max_commutator_entry(const ExactKernel&);

}  // namespace cbdp
