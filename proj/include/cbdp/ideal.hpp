#pragma once

// Polynomials with integer coefficients over the directed-edge variables, a general
// Buchberger engine with a fast path for pure difference binomials, ideal membership,
// intersections by elimination, and the component checks for small grids.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbdp/binomial_gb.hpp"
#include "cbdp/grid.hpp"
#include "cbdp/lattice.hpp"
#include "cbdp/monomial.hpp"

namespace cbdp {

struct Term {
  mpz_class coef;
  Exponent exp;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Terms strictly decreasing in the order used to build the polynomial, no zero
/// coefficients. Rational input is cleared of denominators, so a Polynomial stands for
/// its ideal-theoretic class up to a positive scalar.
struct Polynomial {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  /// Largest total degree of a term, -1 for the zero polynomial.
  std::int64_t degree() const;
  bool homogeneous() const;
  /// Two terms with opposite coefficients.
  bool pure_binomial() const;
  const Exponent& lead() const { return terms.front().exp; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Sorts, merges equal monomials and drops zero terms.
Polynomial normalize(std::vector<Term> terms, const MonomialOrder& order);
Polynomial make_monomial(Exponent e, const MonomialOrder& order);
/// x^a - x^b.
Polynomial make_binomial(const Exponent& a, const Exponent& b, const MonomialOrder& order);
Polynomial multiply(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);
Polynomial subtract(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);
/// Divides by the content and makes the leading coefficient positive.
Polynomial primitive(Polynomial p);

/// Variable names plus the monomial order; variable 0 is the largest.
struct Ring {
  std::vector<std::string> names;
  MonomialOrder order = MonomialOrder::grevlex();

  std::size_t nvars() const { return names.size(); }
  /// Index of a variable name, or Grid::npos.
  std::size_t find(std::string_view name) const;
  static Ring of_grid(const Grid& grid, MonomialOrder order = MonomialOrder::grevlex());
};

/// "+2 R00*U10^2 -1 L10*D01"; "0" for the zero polynomial.
std::string format_polynomial(const Polynomial& p, const Ring& ring);
/// Accepts the format above as well as "R00*U10 - U00*R01", "3/2*R00", and factors
/// separated by blanks. Denominators are cleared. Throws InputError on unknown names.
Polynomial parse_polynomial(std::string_view text, const Ring& ring);

struct BuchbergerOptions {
  std::size_t max_pairs = 1'000'000;
  /// Stop once every remaining S-pair has degree above this bound (< 0: no bound).
  /// Only allowed for homogeneous generators.
  std::int64_t max_degree = -1;
};

struct GroebnerBasis {
  MonomialOrder order;
  std::size_t nvars = 0;
  /// Reduced, content-free, positive leading coefficients, sorted by lead descending.
  std::vector<Polynomial> elements;
  /// Degree bound of a truncated computation, -1 when the basis is complete.
  std::int64_t truncated_at = -1;
  /// Set when every generator was a pure binomial; used for fast normal forms.
  std::shared_ptr<const BinomialGroebner> binomial_engine;

  bool complete() const { return truncated_at < 0; }
};

/// Reduced Groebner basis of the ideal generated by `gens`. Throws BudgetExceeded past
/// options.max_pairs S-pairs. When every generator has at most two terms the result is
/// checked to consist of binomials and monomials only.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, std::size_t nvars, const MonomialOrder& order,
                         const BuchbergerOptions& options = {});

/// A nonzero integer multiple of the normal form of f.
Polynomial normal_form(const GroebnerBasis& gb, const Polynomial& f);
/// Throws InputError when the basis is truncated below the degree of f.
bool contains(const GroebnerBasis& gb, const Polynomial& f);
/// Both bases complete, same order and identical reduced elements.
bool same_ideal(const GroebnerBasis& a, const GroebnerBasis& b);

/// I cap J via t*I + (1-t)*J and elimination of t. The result uses I's order.
GroebnerBasis ideal_intersection(const GroebnerBasis& I, const GroebnerBasis& J, const BuchbergerOptions& options = {});

/// Krull dimension of R/I from the lead monomials (at most 64 variables).
std::size_t krull_dimension(const GroebnerBasis& gb);

/// One binomial per quadric of the commutation system, duplicates removed, each
/// content-free with positive leading coefficient.
std::vector<Polynomial> commutation_generators(const Grid& grid, const MonomialOrder& order = MonomialOrder::grevlex());
std::vector<Polynomial> binomials_of(const std::vector<LatticeElement>& elements, const MonomialOrder& order);
/// The ideal generated by the named variables.
std::vector<Polynomial> coordinate_generators(const Ring& ring, const std::vector<std::string>& names);
/// Relabels variables by the mirror image of the grid along `axis`.
Polynomial reflect(const Polynomial& p, const Grid& grid, int axis, const MonomialOrder& order);

struct PrimeComponent {
  std::string label;
  std::vector<Polynomial> generators;
};

/// The toric component and the two coordinate components of the unit square.
std::vector<PrimeComponent> unit_square_components();
/// The eleven pure toric components of the 2x1 grid, grouped by symmetry class; labels
/// are "class k".
std::vector<PrimeComponent> strip_components();

struct DecompositionReport {
  bool holds = false;
  std::vector<std::size_t> codimensions;
};

/// Intersects the components and compares with the reduced basis of the commutation ideal.
DecompositionReport verify_decomposition(const GridShape& shape, const std::vector<PrimeComponent>& components,
                                         const BuchbergerOptions& options = {});
bool verify_unit_square_decomposition();
bool verify_strip_decomposition();

struct WitnessReport {
  /// nullopt when the computation ran out of budget.
  std::optional<bool> f_in_ideal;
  std::optional<bool> f_squared_in_ideal;
  std::size_t basis_size = 0;
  std::int64_t degree_reached = 0;
};

/// Membership of the non-radicality witness f and of f^2 in the commutation ideal of the
/// 2x3 grid, from a Groebner basis truncated at degree 2 deg f.
WitnessReport kahle_witness(const BuchbergerOptions& options = {});
std::string kahle_polynomial_text();

}  // namespace cbdp
