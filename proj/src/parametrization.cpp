#include "cbdp/parametrization.hpp"

#include <cmath>
#include <random>

#include "cbdp/errors.hpp"

namespace cbdp {

namespace {

bool close(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y)); }
bool close(const mpq_class& x, const mpq_class& y, double) { return x == y; }

template <class T>
void require_positive(const BasicKernel<T>& k) {
  for (std::size_t e = 0; e < k.grid().edge_count(); ++e) {
    if (!(k[e] > 0)) throw PositivityError("edge " + k.grid().variable_name(e) + " has no positive probability");
  }
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return mpq_class(rn, rd);
}

}  // namespace

template <class T>
BasicParametrization<T>::BasicParametrization(GridShape s) : shape(std::move(s)) {
  Grid g(shape);
  a.assign(g.vertex_count(), T(1));
  W.assign(g.class_count(), T(1));
}

template <class T>
BasicKernel<T> build_kernel(const BasicParametrization<T>& params) {
  BasicKernel<T> k(params.shape);
  const Grid& g = k.grid();
  if (params.a.size() != g.vertex_count() || params.W.size() != g.class_count()) {
    throw DimensionMismatch("parametrization does not match its shape");
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    k[e] = params.a[edge.source] * params.W[g.class_index(g.parallel_class(edge))] / params.a[edge.target];
  }
  return k;
}

template <class T>
std::vector<T> reversibility_constants(const BasicKernel<T>& k, double tol) {
  require_positive(k);
  const Grid& g = k.grid();
  std::vector<T> b(g.vertex_count(), T(0));
  b[0] = 1;
  // Lex order visits every predecessor u - e_j before u.
  for (std::size_t u = 1; u < g.vertex_count(); ++u) {
    bool first = true;
    for (int axis = 0; axis < g.dim(); ++axis) {
      std::size_t w = g.step(u, axis, -1);
      if (w == Grid::npos) continue;
      T up = k[g.edge_index(w, axis, +1)];
      T down = k[g.edge_index(u, axis, -1)];
      T candidate = b[w] * up / down;
      if (first) {
        b[u] = candidate;
        first = false;
      } else if (!close(b[u], candidate, tol)) {
        throw PathInconsistency("monotone paths to vertex " + g.vertex_label(u) +
                                " give different reversibility constants");
      }
    }
  }
  return b;
}

template <class T>
void fix_gauge(BasicParametrization<T>& p) {
  T origin = p.a.at(0);
  for (auto& x : p.a) x /= origin;
}

namespace {

template <class T>
void fill_classes(const BasicKernel<T>& k, BasicParametrization<T>& p, double tol) {
  const Grid& g = k.grid();
  std::vector<std::vector<T>> per_class(g.class_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    per_class[g.class_index(g.parallel_class(edge))].push_back(k[e] * p.a[edge.target] / p.a[edge.source]);
  }
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    T sum(0);
    for (const auto& x : per_class[c]) sum += x;
    T mean = sum / T(static_cast<long>(per_class[c].size()));
    for (const auto& x : per_class[c]) {
      if (!close(x, mean, tol)) {
        auto cl = g.class_at(c);
        throw ClassInconsistency("edge weight varies within class (" + std::to_string(cl.axis + 1) + "," +
                                 std::to_string(cl.level) + ")");
      }
    }
    p.W[c] = mean;
  }
}

}  // namespace

Parametrization extract_parametrization(const Kernel& k, double tol) {
  auto b = reversibility_constants(k, tol);
  Parametrization p(k.shape());
  for (std::size_t u = 0; u < b.size(); ++u) p.a[u] = 1.0 / std::sqrt(b[u]);
  fill_classes(k, p, tol);
  return p;
}

ExactParametrization extract_parametrization(const ExactKernel& k) {
  auto b = reversibility_constants(k);
  ExactParametrization p(k.shape());
  for (std::size_t u = 0; u < b.size(); ++u) {
    auto r = rational_sqrt(b[u]);
    if (!r) throw InputError("vertex weights are irrational; use float mode");
    p.a[u] = 1 / *r;
  }
  fill_classes(k, p, 0.0);
  return p;
}

PerronPair perron_pair(const Parametrization& params, std::vector<double> start, double rel_tol,
                       std::size_t max_iterations) {
  Grid g(params.shape);
  const std::size_t nv = g.vertex_count();
  if (start.empty()) start.assign(nv, 1.0);
  if (start.size() != nv) throw DimensionMismatch("start vector length");
  for (double x : start) {
    if (!(x > 0)) throw InputError("power iteration needs a positive start vector");
  }
  // Symmetric Q as adjacency lists with class weights.
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(nv);
  double shift = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    adj[edge.source].emplace_back(edge.target, params.W[g.class_index(g.parallel_class(edge))]);
  }
  for (const auto& row : adj) {
    double s = 0;
    for (const auto& [v, w] : row) s += w;
    shift = std::max(shift, s);
  }

  std::vector<double> w = std::move(start), qw(nv);
  double norm = 0;
  for (double x : w) norm = std::max(norm, x);
  for (double& x : w) x /= norm;

  double best_width = std::numeric_limits<double>::infinity();
  std::size_t stalled = 0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (std::size_t u = 0; u < nv; ++u) {
      double s = 0;
      for (const auto& [v, x] : adj[u]) s += x * w[v];
      qw[u] = s;
      double ratio = s / w[u];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    double lambda = 0.5 * (lo + hi);
    double width = hi - lo;
    if (width <= rel_tol * lambda) return {lambda, w, it};
    if (width < best_width * 0.999) {
      best_width = width;
      stalled = 0;
    } else if (++stalled > 10000) {
      break;
    }
    double m = 0;
    for (std::size_t u = 0; u < nv; ++u) {
      w[u] = qw[u] + shift * w[u];
      m = std::max(m, w[u]);
    }
    for (double& x : w) x /= m;
  }
  throw ConvergenceError("Perron eigenpair not resolved to tolerance");
}

Parametrization normalize_stochastic(const Parametrization& params, double c) {
  if (!(c >= 0 && c < 1)) throw InputError("holding constant c must lie in [0, 1)");
  for (double x : params.W) {
    if (!(x > 0)) throw PositivityError("edge weights must be positive");
  }
  auto pair = perron_pair(params);
  Parametrization out = params;
  for (auto& x : out.W) x *= (1 - c) / pair.lambda;
  for (std::size_t u = 0; u < out.a.size(); ++u) out.a[u] = pair.vector[0] / pair.vector[u];
  return out;
}

Parametrization random_parametrization(const GridShape& shape, std::uint64_t seed, double w_lo, double w_hi,
                                       double a_lo, double a_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wd(w_lo, w_hi), ad(a_lo, a_hi);
  Parametrization p(shape);
  for (auto& x : p.W) x = wd(rng);
  for (auto& x : p.a) x = ad(rng);
  fix_gauge(p);
  return p;
}

ExactParametrization random_exact_parametrization(const GridShape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 9), den(1, 7);
  ExactParametrization p(shape);
  for (auto& x : p.W) {
    x = mpq_class(num(rng), den(rng) * 10);
    x.canonicalize();
  }
  for (auto& x : p.a) {
    x = mpq_class(num(rng), den(rng));
    x.canonicalize();
  }
  fix_gauge(p);
  return p;
}

Parametrization to_float(const ExactParametrization& p) {
  Parametrization out;
  out.shape = p.shape;
  for (const auto& x : p.a) out.a.push_back(x.get_d());
  for (const auto& x : p.W) out.W.push_back(x.get_d());
  return out;
}

ExactParametrization to_exact(const Parametrization& p) {
  ExactParametrization out;
  out.shape = p.shape;
  for (double x : p.a) out.a.emplace_back(x);
  for (double x : p.W) out.W.emplace_back(x);
  return out;
}

template struct BasicParametrization<double>;
template struct BasicParametrization<mpq_class>;
template Kernel build_kernel(const Parametrization&);
template ExactKernel build_kernel(const ExactParametrization&);
template std::vector<double> reversibility_constants(const Kernel&, double);
template std::vector<mpq_class> reversibility_constants(const ExactKernel&, double);
template void fix_gauge(Parametrization&);
template void fix_gauge(ExactParametrization&);

}  // namespace cbdp
