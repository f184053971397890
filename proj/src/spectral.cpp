#include "cbdp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "cbdp/errors.hpp"

namespace cbdp {

std::vector<TridiagonalBlock> tridiagonal_blocks(const Parametrization& params) {
  Grid g(params.shape);
  if (params.W.size() != g.class_count()) throw DimensionMismatch("parametrization does not match its shape");
  std::vector<TridiagonalBlock> blocks;
  for (int axis = 0; axis < g.dim(); ++axis) {
    TridiagonalBlock b;
    b.axis = axis;
    for (int h = 0; h < params.shape.size(axis); ++h) b.off.push_back(params.W[g.class_index({axis, h})]);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

Eigensystem eig_sym_tridiag(const TridiagonalBlock& block) {
  return eig_sym_tridiag(std::vector<double>(block.size(), 0.0), block.off);
}

Eigensystem eig_sym_tridiag(std::vector<double> d, std::vector<double> off) {
  const std::size_t n = d.size();
  if (n == 0 || off.size() + 1 != n) throw DimensionMismatch("tridiagonal block dimensions");
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  // v[row][col], columns become eigenvectors.
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  const double eps = 1e-14;
  double f = 0.0, tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m == n) m = n - 1;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 50) throw ConvergenceError("tridiagonal eigensolver did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = c, c3 = c;
        double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < n; ++k) {
            h = v[k][ii + 1];
            v[k][ii + 1] = s * v[k][ii] + c * h;
            v[k][ii] = c * v[k][ii] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  Eigensystem out;
  for (std::size_t j : order) {
    out.values.push_back(d[j]);
    std::vector<double> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k][j];
    std::size_t lead = 0;
    while (lead + 1 < n && std::abs(col[lead]) < 1e-8) ++lead;
    if (col[lead] < 0) {
      for (double& x : col) x = -x;
    }
    out.vectors.push_back(std::move(col));
  }
  return out;
}

double integer_power(double x, int t) {
  if (t < 0) throw InputError("negative step count");
  double result = 1.0;
  while (t > 0) {
    if (t & 1) result *= x;
    x *= x;
    t >>= 1;
  }
  return result;
}

namespace {

void check_query(const TStepQuery& q) {
  if (q.t < 0) throw InputError("t must be non-negative");
  if (!(q.c >= 0 && q.c < 1)) throw InputError("c must lie in [0, 1)");
}

std::vector<Eigensystem> axis_eigensystems(const Parametrization& params) {
  std::vector<Eigensystem> out;
  for (const auto& b : tridiagonal_blocks(params)) out.push_back(eig_sym_tridiag(b));
  return out;
}

}  // namespace

DenseMatrix tstep_matrix(const Parametrization& params, TStepQuery q) {
  check_query(q);
  Grid g(params.shape);
  const auto eig = axis_eigensystems(params);
  const int m = g.dim();
  std::vector<std::size_t> size(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) size[static_cast<std::size_t>(j)] = static_cast<std::size_t>(params.shape.size(j) + 1);

  // Tensor indexed by the eigen multi-index (k_1..k_m), lex.
  const std::size_t nv = g.vertex_count();
  std::vector<double> tensor(nv);
  for (std::size_t idx = 0; idx < nv; ++idx) {
    const auto& k = g.vertex(idx);
    double lambda = q.c;
    for (int j = 0; j < m; ++j) lambda += eig[static_cast<std::size_t>(j)].values[static_cast<std::size_t>(k[static_cast<std::size_t>(j)])];
    tensor[idx] = integer_power(lambda, q.t);
  }

  // Replace k_j by the pair (u_j, v_j), one axis at a time.
  std::size_t prefix = 1;
  for (int j = 0; j < m; ++j) {
    const std::size_t nj = size[static_cast<std::size_t>(j)];
    std::size_t suffix = 1;
    for (int i = j + 1; i < m; ++i) suffix *= size[static_cast<std::size_t>(i)];
    const auto& vecs = eig[static_cast<std::size_t>(j)].vectors;
    std::vector<double> next(prefix * nj * nj * suffix, 0.0);
    for (std::size_t p = 0; p < prefix; ++p) {
      for (std::size_t k = 0; k < nj; ++k) {
        const double* src = &tensor[(p * nj + k) * suffix];
        for (std::size_t uj = 0; uj < nj; ++uj) {
          for (std::size_t vj = 0; vj < nj; ++vj) {
            const double w = vecs[k][uj] * vecs[k][vj];
            double* dst = &next[((p * nj + uj) * nj + vj) * suffix];
            for (std::size_t s = 0; s < suffix; ++s) dst[s] += w * src[s];
          }
        }
      }
    }
    tensor = std::move(next);
    prefix *= nj * nj;
  }

  // tensor index is (u_1, v_1, ..., u_m, v_m); regroup to (u, v) and conjugate by diag(a).
  DenseMatrix out(nv);
  for (std::size_t idx = 0; idx < tensor.size(); ++idx) {
    std::size_t rest = idx;
    std::size_t u = 0, v = 0, stride = 1;
    for (int j = m - 1; j >= 0; --j) {
      const std::size_t nj = size[static_cast<std::size_t>(j)];
      std::size_t vj = rest % nj;
      rest /= nj;
      std::size_t uj = rest % nj;
      rest /= nj;
      u += uj * stride;
      v += vj * stride;
      stride *= nj;
    }
    out(u, v) = params.a[u] * tensor[idx] / params.a[v];
  }
  return out;
}

double tstep_entry(const Parametrization& params, TStepQuery q, std::size_t from, std::size_t to) {
  check_query(q);
  Grid g(params.shape);
  if (from >= g.vertex_count() || to >= g.vertex_count()) throw InputError("vertex outside the grid");
  const auto eig = axis_eigensystems(params);
  const auto& u = g.vertex(from);
  const auto& v = g.vertex(to);
  double sum = 0.0;
  for (std::size_t idx = 0; idx < g.vertex_count(); ++idx) {
    const auto& k = g.vertex(idx);
    double lambda = q.c, weight = 1.0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      const auto& es = eig[j];
      const auto kj = static_cast<std::size_t>(k[j]);
      lambda += es.values[kj];
      weight *= es.vectors[kj][static_cast<std::size_t>(u[j])] * es.vectors[kj][static_cast<std::size_t>(v[j])];
    }
    sum += integer_power(lambda, q.t) * weight;
  }
  return params.a[from] * sum / params.a[to];
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SimulationResult simulate(const Parametrization& params, std::size_t start, TStepQuery q, std::uint64_t samples,
                          std::uint64_t seed, unsigned threads) {
  check_query(q);
  if (samples < 1) throw InputError("samples must be at least 1");
  const Kernel k = build_kernel(params);
  const Grid& g = k.grid();
  const std::size_t nv = g.vertex_count();
  if (start >= nv) throw InputError("start vertex outside the grid");

  // Per-vertex cumulative table: hold with probability c, then the outgoing edges.
  std::vector<std::vector<std::pair<double, std::size_t>>> table(nv);
  for (std::size_t u = 0; u < nv; ++u) {
    double acc = q.c;
    table[u].emplace_back(acc, u);
    for (int axis = 0; axis < g.dim(); ++axis) {
      for (int sign : {+1, -1}) {
        auto e = g.edge_index(u, axis, sign);
        if (e == Grid::npos) continue;
        if (k[e] < 0) throw NotStochastic("negative transition probability");
        acc += k[e];
        table[u].emplace_back(acc, g.edge(e).target);
      }
    }
    if (std::abs(acc - 1.0) > 1e-9) {
      throw NotStochastic("row " + g.vertex_label(u) + " of cI + P sums to " + std::to_string(acc));
    }
  }

  constexpr std::uint64_t kShard = 1u << 16;
  const std::uint64_t shards = (samples + kShard - 1) / kShard;
  std::vector<std::vector<std::uint64_t>> shard_counts(shards, std::vector<std::uint64_t>(nv, 0));
  auto run_shard = [&](std::uint64_t s) {
    std::mt19937_64 rng(splitmix64(seed + splitmix64(s)));
    const std::uint64_t begin = s * kShard;
    const std::uint64_t end = std::min(samples, begin + kShard);
    auto& counts = shard_counts[s];
    for (std::uint64_t i = begin; i < end; ++i) {
      std::size_t u = start;
      for (int step = 0; step < q.t; ++step) {
        const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto& row = table[u];
        auto it = std::upper_bound(row.begin(), row.end(), x,
                                   [](double value, const std::pair<double, std::size_t>& entry) { return value < entry.first; });
        if (it != row.end()) u = it->second;
      }
      ++counts[u];
    }
  };

  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, shards));
  if (workers <= 1) {
    for (std::uint64_t s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t s = w; s < shards; s += workers) run_shard(s);
      });
    }
    for (auto& th : pool) th.join();
  }

  SimulationResult result;
  result.counts.assign(nv, 0);
  for (const auto& c : shard_counts) {
    for (std::size_t u = 0; u < nv; ++u) result.counts[u] += c[u];
  }
  for (auto c : result.counts) result.frequencies.push_back(static_cast<double>(c) / static_cast<double>(samples));
  return result;
}

}  // namespace cbdp
