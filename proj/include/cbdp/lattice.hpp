#pragma once

// Primitive integer kernel vectors over the directed-edge index set and their
// binomial view P^{Z+} - P^{Z-}.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cbdp/exact_linear.hpp"
#include "cbdp/grid.hpp"

namespace cbdp {

struct LatticeElement {
  std::vector<std::int64_t> v;

  /// Sum of the positive entries.
  std::int64_t degree() const;
  /// All entries in {-1, 0, 1}.
  bool squarefree() const;
  std::vector<std::int64_t> positive() const;
  std::vector<std::int64_t> negative() const;
  std::size_t support_size() const;

  friend bool operator==(const LatticeElement&, const LatticeElement&) = default;
};

/// Divides by the content and flips the sign so the first nonzero entry is positive.
LatticeElement canonical(std::vector<std::int64_t> v);
LatticeElement canonical(const IntegerVector& v);
IntegerVector to_integer_vector(const LatticeElement& e);

/// Degree ascending, then entries in decreasing lexicographic order.
bool canonical_less(const LatticeElement& a, const LatticeElement& b);
void sort_canonical(std::vector<LatticeElement>& elements);

struct BasisReport {
  std::size_t total = 0;
  std::map<std::int64_t, std::size_t> by_degree;
  std::map<std::int64_t, std::size_t> squarefree_by_degree;
};

BasisReport profile(const std::vector<LatticeElement>& elements);
/// "2:42 3:224 4:1032".
std::string format_profile(const BasisReport& report);
/// Table with a count and a squarefree row over the degrees present.
std::string format_profile_table(const std::string& title, const BasisReport& report);

/// "R00*U10 - U00*R01" with ^k for repeated factors; positive part first.
std::string to_binomial(const LatticeElement& e, const Grid& grid);
/// Parses "R00*U10 - U00*R01" (also "R00 U10 - ..." and "^k" exponents).
LatticeElement parse_binomial(const std::string& text, const Grid& grid);

}  // namespace cbdp
