#pragma once

// Buchberger's algorithm specialized to pure difference binomials x^a - x^b: every
// S-polynomial and every reduction step stays a pure difference, so a binomial is
// carried as its two exponent vectors and monomials reduce independently.

#include <cstdint>
#include <optional>
#include <vector>

#include "cbdp/monomial.hpp"

namespace cbdp {

struct ExponentBinomial {
  Exponent lead;  // larger monomial in the order
  Exponent tail;
};

class BinomialGroebner {
 public:
  BinomialGroebner(std::size_t nvars, MonomialOrder order = MonomialOrder::grevlex(),
                   std::size_t max_pairs = 1'000'000);

  /// Adds x^a - x^b. Returns false (and adds nothing) when it already reduces to zero.
  bool add(const Exponent& a, const Exponent& b);

  /// Handles critical pairs of degree <= max_degree (all when max_degree < 0). For
  /// homogeneous input the result is a Groebner basis up to that degree.
  /// Throws BudgetExceeded once more than max_pairs pairs have been handled in total.
  void complete(std::int64_t max_degree = -1);
  bool pending() const { return !pairs_.empty(); }
  std::int64_t next_degree() const { return pairs_.empty() ? -1 : pairs_.min_degree(); }

  Exponent normal_form(Exponent m) const;
  bool equivalent(const Exponent& a, const Exponent& b) const { return normal_form(a) == normal_form(b); }

  /// Minimal leads with fully reduced tails, sorted by lead descending.
  std::vector<ExponentBinomial> reduced_basis() const;

  std::size_t size() const;
  std::size_t pairs_handled() const { return handled_; }
  const MonomialOrder& order() const { return order_; }
  std::size_t nvars() const { return n_; }

 private:
  void insert(Exponent a, Exponent b);
  /// Index of an active element whose lead divides m, or npos.
  std::size_t find_reducer(const Exponent& m, std::uint64_t mask, std::int64_t degree) const;

  std::size_t n_;
  MonomialOrder order_;
  std::size_t max_pairs_;
  std::size_t handled_ = 0;
  std::vector<ExponentBinomial> elements_;
  std::vector<std::uint64_t> lead_mask_;
  std::vector<std::int64_t> lead_degree_;
  std::vector<std::uint32_t> active_list_;
  CriticalPairs pairs_;
};

}  // namespace cbdp
