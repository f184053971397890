#pragma once

// Joint diagonalization of grid chains with commuting axis parts: one symmetric
// tridiagonal block per axis, closed-form t-step probabilities of the lazy chain
// cI + P, and a seeded Monte Carlo sampler for cross-checks.

#include <cstdint>
#include <vector>

#include "cbdp/parametrization.hpp"

namespace cbdp {

/// Zero-diagonal symmetric tridiagonal matrix of size off.size() + 1.
struct TridiagonalBlock {
  int axis = 0;
  std::vector<double> off;
  std::size_t size() const { return off.size() + 1; }
};

std::vector<TridiagonalBlock> tridiagonal_blocks(const Parametrization& params);

/// Eigenvalues ascending; vectors[j] is the unit eigenvector for values[j], with
/// its first component made non-negative.
struct Eigensystem {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};

/// Implicit QL with Wilkinson shifts (tql2); ConvergenceError after 50 sweeps on one eigenvalue.
Eigensystem eig_sym_tridiag(const TridiagonalBlock& block);
Eigensystem eig_sym_tridiag(std::vector<double> diag, std::vector<double> off);

struct TStepQuery {
  int t = 1;
  double c = 0.0;
};

/// Dense row-major square matrix over vertices in lex order.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> data;
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t size) : n(size), data(size * size, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }
};

/// (cI + P)^t from the spectral formula, contracting one axis at a time.
DenseMatrix tstep_matrix(const Parametrization& params, TStepQuery q);
/// One entry of tstep_matrix by direct summation over eigen multi-indices.
double tstep_entry(const Parametrization& params, TStepQuery q, std::size_t from, std::size_t to);

/// x^t by repeated squaring.
double integer_power(double x, int t);

struct SimulationResult {
  std::vector<std::uint64_t> counts;
  std::vector<double> frequencies;
};

/// Empirical law of Z_t over `samples` trajectories of cI + P from `start`.
/// Trajectories are split into fixed shards of 2^16; shard s uses mt19937_64 seeded
/// with splitmix64(seed + splitmix64(s)), so output depends only on (seed, samples).
/// Throws NotStochastic if some row of cI + P misses 1 by more than 1e-9.
SimulationResult simulate(const Parametrization& params, std::size_t start, TStepQuery q, std::uint64_t samples,
                          std::uint64_t seed, unsigned threads = 0);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cbdp
