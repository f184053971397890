#pragma once

// Graver bases by project-and-lift completion, circuits, combinatorial circuits
// of the grid matroid, minimal Markov bases and unimodularity certificates.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cbdp/lattice.hpp"

namespace cbdp {

struct GraverOptions {
  std::size_t max_elements = 1'000'000;
  /// Called after each lifted coordinate with (coordinates done, total, current size).
  std::function<void(std::size_t, std::size_t, std::size_t)> progress;
};

/// Graver basis of ker_Z(A), one canonical representative per +-pair, sorted canonically.
/// Throws BudgetExceeded when the working set exceeds max_elements.
std::vector<LatticeElement> graver_basis(const ExactMatrix& A, const GraverOptions& options = {});

/// All primitive conformally minimal kernel vectors with every |entry| <= bound, by
/// exhaustive enumeration of the box. Throws BudgetExceeded past `budget` box points.
std::vector<LatticeElement> brute_force_graver(const ExactMatrix& A, int bound, std::uint64_t budget = 200'000'000);

/// Elements whose support strictly contains no other element's support.
std::vector<LatticeElement> circuits_from_graver(const std::vector<LatticeElement>& graver);
std::vector<LatticeElement> circuits(const ExactMatrix& A, const GraverOptions& options = {});

/// Minimal edge sets that split into pairs of distinct parallel edges (same axis, sign
/// and level) and whose undirected multigraph has every vertex degree even. Each set is
/// a sorted list of edge indices; the list is sorted by (size, lex).
std::vector<std::vector<std::size_t>> combinatorial_circuits(const GridShape& shape, std::uint64_t budget = 1u << 26);

/// Primitive kernel vector of A restricted to `support`, zero elsewhere. Throws if the
/// restricted kernel is not one-dimensional or the vector does not have full support.
LatticeElement signed_circuit_vector(const ExactMatrix& A, const std::vector<std::size_t>& support);

struct MarkovOptions {
  /// Cap on the number of S-pairs handled by the connectivity engine.
  std::size_t max_pairs = 1'000'000;
};

/// Greedy minimal Markov basis: scans Graver elements by (degree, lex) and keeps an
/// element iff its two monomials are not yet connected by the moves kept so far.
/// Connectivity is decided by normal forms modulo a degree-truncated Groebner basis of
/// the kept binomials.
std::vector<LatticeElement> minimal_markov_basis(const ExactMatrix& A, const std::vector<LatticeElement>& graver,
                                                 const MarkovOptions& options = {});

struct SaturationOptions {
  /// S-pair cap for each of the per-variable Groebner computations.
  std::size_t max_pairs = 50'000'000;
  /// Called after each variable with (variable, basis size, seconds so far).
  std::function<void(std::size_t, std::size_t, double)> progress;
};

/// Minimal Markov basis of A^(shape) without a Graver basis. The start ideal is
/// generated by the Markov moves of every embedded box with sides min(2, n_k) (the
/// commutation quadrics when that box is the whole grid), completed by a lattice basis
/// of ker A if their lattice falls short. It is saturated by each variable in turn and
/// the result is pruned with the same greedy scan as minimal_markov_basis.
std::vector<LatticeElement> markov_basis_by_saturation(const GridShape& shape, const SaturationOptions& options = {});

struct UnimodularityReport {
  bool unimodular = true;
  std::optional<LatticeElement> certificate;
};

/// A is unimodular iff every Graver element is squarefree; otherwise returns the
/// first non-squarefree element in canonical order.
UnimodularityReport is_unimodular(const std::vector<LatticeElement>& graver);

struct KernelVectorReport {
  bool in_kernel = false;
  bool primitive = false;
  bool support_minimal = false;
};

/// Support-minimality is decided by rank(A restricted to supp) == |supp| - 1.
KernelVectorReport verify_kernel_vector(const ExactMatrix& A, const LatticeElement& v);

}  // namespace cbdp
