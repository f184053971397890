#include <algorithm>

#include "cbdp/bases.hpp"
#include "cbdp/binomial_gb.hpp"
#include "cbdp/errors.hpp"

namespace cbdp {

namespace {

Exponent to_exponent(const std::vector<std::int64_t>& v) {
  Exponent e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[i] = static_cast<std::int32_t>(v[i]);
  return e;
}

}  // namespace

std::vector<LatticeElement> minimal_markov_basis(const ExactMatrix& A, const std::vector<LatticeElement>& graver,
                                                 const MarkovOptions& options) {
  std::vector<LatticeElement> sorted = graver;
  sort_canonical(sorted);
  BinomialGroebner gb(A.cols(), MonomialOrder::grevlex(), options.max_pairs);
  std::vector<LatticeElement> out;
  std::int64_t current = -1;
  for (const auto& g : sorted) {
    if (g.v.size() != A.cols()) throw DimensionMismatch("Graver element length differs from column count");
    const auto pos = g.positive(), neg = g.negative();
    std::int64_t dp = 0, dn = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      dp += pos[i];
      dn += neg[i];
    }
    if (dp != dn) throw InputError("toric ideal is not homogeneous in the standard grading");
    if (dp > current) {
      gb.complete(dp);
      current = dp;
    }
    if (gb.add(to_exponent(pos), to_exponent(neg))) out.push_back(g);
  }
  sort_canonical(out);
  return out;
}

}  // namespace cbdp
