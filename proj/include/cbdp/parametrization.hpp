#pragma once

// Vertex weights a_u and edge-class weights W with P(u,v) = a_u W(class(u,v)) / a_v,
// recovered from a positive commuting kernel through its reversibility constants.

#include <cstdint>
#include <vector>

#include "cbdp/kernel.hpp"

namespace cbdp {

template <class T>
struct BasicParametrization {
  GridShape shape;
  std::vector<T> a;  // one per vertex, lex order
  std::vector<T> W;  // one per edge class, Grid::class_index order

  BasicParametrization() = default;
  explicit BasicParametrization(GridShape s);
};

using Parametrization = BasicParametrization<double>;
using ExactParametrization = BasicParametrization<mpq_class>;

template <class T>
BasicKernel<T> build_kernel(const BasicParametrization<T>& params);

/// b with b(origin) = 1 and b_u P(u,v) = b_v P(v,u). Every edge is checked against the
/// value propagated along the first-axis predecessor, which makes all monotone paths agree.
/// Float mode compares with relative tolerance `tol`; exact mode requires equality.
template <class T>
std::vector<T> reversibility_constants(const BasicKernel<T>& k, double tol = 1e-9);

/// Gauge a(origin) = 1. Throws PositivityError, PathInconsistency or ClassInconsistency.
Parametrization extract_parametrization(const Kernel& k, double tol = 1e-9);
/// Exact variant; requires every b_u to be the square of a rational.
ExactParametrization extract_parametrization(const ExactKernel& k);

/// Rescales W by (1 - c) / lambda_max(Q) and sets a_u = w_origin / w_u for the Perron
/// vector w of Q = sum_k Q_k, so that every row of the rebuilt kernel sums to 1 - c.
Parametrization normalize_stochastic(const Parametrization& params, double c);

struct PerronPair {
  double lambda;
  std::vector<double> vector;
  std::size_t iterations;
};

/// Power iteration on Q + sI (s = max row sum of Q; Q is bipartite so its spectrum is
/// symmetric). Stops when the Collatz-Wielandt bracket max/min (Qw)_u / w_u is within
/// `rel_tol` of lambda. `start` must be positive; empty means all ones.
PerronPair perron_pair(const Parametrization& params, std::vector<double> start = {}, double rel_tol = 1e-13,
                       std::size_t max_iterations = 2'000'000);

/// W uniform in [w_lo, w_hi], a uniform in [a_lo, a_hi] then gauge-fixed.
Parametrization random_parametrization(const GridShape& shape, std::uint64_t seed, double w_lo = 0.05,
                                       double w_hi = 1.0, double a_lo = 0.5, double a_hi = 2.0);
/// Small-denominator rationals.
ExactParametrization random_exact_parametrization(const GridShape& shape, std::uint64_t seed);

Parametrization to_float(const ExactParametrization& p);
ExactParametrization to_exact(const Parametrization& p);

/// Divides all a_u by a(origin).
template <class T>
void fix_gauge(BasicParametrization<T>& p);

}  // namespace cbdp
