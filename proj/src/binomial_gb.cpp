#include "cbdp/binomial_gb.hpp"

#include <algorithm>

#include "cbdp/errors.hpp"

namespace cbdp {

BinomialGroebner::BinomialGroebner(std::size_t nvars, MonomialOrder order, std::size_t max_pairs)
    : n_(nvars), order_(order), max_pairs_(max_pairs) {}

std::size_t BinomialGroebner::find_reducer(const Exponent& m, std::uint64_t mask, std::int64_t degree) const {
  for (auto idx : active_list_) {
    if (lead_degree_[idx] > degree || (lead_mask_[idx] & ~mask) != 0) continue;
    if (divides(elements_[idx].lead, m)) return idx;
  }
  return static_cast<std::size_t>(-1);
}

Exponent BinomialGroebner::normal_form(Exponent m) const {
  if (m.size() != n_) throw DimensionMismatch("exponent length differs from variable count");
  std::uint64_t mask = support_mask(m);
  std::int64_t degree = total_degree(m);
  while (true) {
    auto r = find_reducer(m, mask, degree);
    if (r == static_cast<std::size_t>(-1)) return m;
    const auto& e = elements_[r];
    degree = 0;
    mask = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      m[i] += e.tail[i] - e.lead[i];
      degree += m[i];
      if (m[i] > 0) mask |= std::uint64_t{1} << (i & 63);
    }
  }
}

void BinomialGroebner::insert(Exponent a, Exponent b) {
  if (order_.compare(a, b) < 0) std::swap(a, b);
  const auto idx = static_cast<std::uint32_t>(elements_.size());
  lead_mask_.push_back(support_mask(a));
  lead_degree_.push_back(total_degree(a));
  elements_.push_back({std::move(a), std::move(b)});
  auto retired = pairs_.add(elements_.back().lead);
  if (!retired.empty()) {
    std::erase_if(active_list_, [&](std::uint32_t i) { return std::find(retired.begin(), retired.end(), i) != retired.end(); });
  }
  active_list_.push_back(idx);
}

bool BinomialGroebner::add(const Exponent& a, const Exponent& b) {
  auto na = normal_form(a);
  auto nb = normal_form(b);
  if (na == nb) return false;
  insert(std::move(na), std::move(nb));
  return true;
}

void BinomialGroebner::complete(std::int64_t max_degree) {
  while (!pairs_.empty()) {
    if (max_degree >= 0 && pairs_.min_degree() > max_degree) return;
    auto p = pairs_.pop();
    if (++handled_ > max_pairs_) throw BudgetExceeded("S-pair cap reached");
    const auto& f = elements_[p.i];
    const auto& g = elements_[p.j];
    Exponent l = lcm(f.lead, g.lead);
    Exponent a(n_), b(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      a[i] = l[i] - f.lead[i] + f.tail[i];
      b[i] = l[i] - g.lead[i] + g.tail[i];
    }
    a = normal_form(std::move(a));
    b = normal_form(std::move(b));
    if (a != b) insert(std::move(a), std::move(b));
  }
}

std::size_t BinomialGroebner::size() const { return active_list_.size(); }

std::vector<ExponentBinomial> BinomialGroebner::reduced_basis() const {
  std::vector<ExponentBinomial> out;
  std::vector<std::uint32_t> keep;
  for (auto i : active_list_) {
    bool minimal = true;
    for (auto j : active_list_) {
      if (i == j) continue;
      const auto& li = elements_[i].lead;
      const auto& lj = elements_[j].lead;
      if (divides(lj, li) && (li != lj || j < i)) {
        minimal = false;
        break;
      }
    }
    if (minimal) keep.push_back(i);
  }
  for (auto i : keep) out.push_back({elements_[i].lead, normal_form(elements_[i].tail)});
  std::sort(out.begin(), out.end(),
            [&](const ExponentBinomial& x, const ExponentBinomial& y) { return order_.compare(x.lead, y.lead) > 0; });
  return out;
}

}  // namespace cbdp
