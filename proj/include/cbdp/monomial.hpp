#pragma once

// Exponent vectors, monomial orders, and the critical-pair queue (Gebauer-Moeller
// criteria) shared by the Groebner engines.

#include <cstdint>
#include <string>
#include <vector>

namespace cbdp {

using Exponent = std::vector<std::int32_t>;

struct MonomialOrder {
  enum class Kind { Grevlex, Lex, Elimination };
  Kind kind = Kind::Grevlex;
  /// For Elimination: the first `block` variables are compared first (grevlex on the
  /// block), ties broken by grevlex on the rest.
  std::size_t block = 0;

  static MonomialOrder grevlex() { return {Kind::Grevlex, 0}; }
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder elimination(std::size_t block) { return {Kind::Elimination, block}; }

  /// -1, 0 or 1 as a is smaller, equal or larger than b. Variable 0 is the largest.
  int compare(const Exponent& a, const Exponent& b) const;
  std::string name() const;
};

std::int64_t total_degree(const Exponent& e);
bool divides(const Exponent& a, const Exponent& b);
Exponent lcm(const Exponent& a, const Exponent& b);
bool coprime(const Exponent& a, const Exponent& b);
/// Bit i mod 64 set iff some variable congruent to i has positive exponent.
std::uint64_t support_mask(const Exponent& e);

/// Critical pairs with the Gebauer-Moeller update. Elements are identified by their
/// insertion index; only lead monomials are consulted.
class CriticalPairs {
 public:
  struct Pair {
    std::uint32_t i;
    std::uint32_t j;
    std::int64_t degree;
  };

  /// Registers lead `lead` as element `index` (= number of earlier calls) and updates
  /// the queue. Returns the indices of earlier elements retired by this lead.
  std::vector<std::uint32_t> add(const Exponent& lead);

  bool empty() const { return pending_ == 0; }
  std::size_t size() const { return pending_; }
  /// Lowest pair degree in the queue; only meaningful when !empty().
  std::int64_t min_degree() const;
  /// Removes and returns a pair of minimal degree (oldest first among equal degrees).
  Pair pop();

  const std::vector<bool>& active() const { return active_; }
  const Exponent& lead(std::uint32_t i) const { return leads_[i]; }
  std::size_t count() const { return leads_.size(); }

 private:
  std::vector<Exponent> leads_;
  std::vector<bool> active_;
  // Pairs bucketed by degree; `alive` marks pairs not yet pruned.
  struct Entry {
    Pair pair;
    bool alive;
  };
  std::vector<std::vector<Entry>> buckets_;
  std::vector<std::size_t> cursor_;
  std::size_t pending_ = 0;
};

}  // namespace cbdp
