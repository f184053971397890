#include "cbdp/monomial.hpp"

#include <algorithm>

#include "cbdp/errors.hpp"

namespace cbdp {

namespace {

int grevlex_range(const Exponent& a, const Exponent& b, std::size_t from, std::size_t to) {
  std::int64_t da = 0, db = 0;
  for (std::size_t i = from; i < to; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = to; i-- > from;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Exponent& a, const Exponent& b) const {
  switch (kind) {
    case Kind::Grevlex:
      return grevlex_range(a, b, 0, a.size());
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
      return 0;
    case Kind::Elimination: {
      int c = grevlex_range(a, b, 0, block);
      return c != 0 ? c : grevlex_range(a, b, block, a.size());
    }
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind) {
    case Kind::Grevlex:
      return "grevlex";
    case Kind::Lex:
      return "lex";
    case Kind::Elimination:
      return "elimination(" + std::to_string(block) + ")";
  }
  return "";
}

std::int64_t total_degree(const Exponent& e) {
  std::int64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0 && b[i] > 0) return false;
  }
  return true;
}

std::uint64_t support_mask(const Exponent& e) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 0) m |= std::uint64_t{1} << (i & 63);
  }
  return m;
}

std::vector<std::uint32_t> CriticalPairs::add(const Exponent& h) {
  const auto idx = static_cast<std::uint32_t>(leads_.size());
  leads_.push_back(h);
  active_.push_back(true);
  const std::uint64_t hmask = support_mask(h);

  struct Candidate {
    std::uint32_t g;
    Exponent l;
    bool coprime;
    bool keep;
  };
  std::vector<Candidate> c;
  for (std::uint32_t g = 0; g < idx; ++g) {
    if (!active_[g]) continue;
    c.push_back({g, lcm(h, leads_[g]), coprime(h, leads_[g]), false});
  }
  // Chain criterion among the new pairs: a pair survives if its leads are coprime or no
  // other new pair (still undecided or kept) has an lcm dividing its lcm.
  std::vector<bool> decided(c.size(), false);
  for (std::size_t a = 0; a < c.size(); ++a) {
    bool keep = c[a].coprime;
    if (!keep) {
      keep = true;
      for (std::size_t b = 0; b < c.size() && keep; ++b) {
        if (b == a) continue;
        const bool in_c = !decided[b];
        const bool in_d = decided[b] && c[b].keep;
        if ((in_c || in_d) && divides(c[b].l, c[a].l)) keep = false;
      }
    }
    c[a].keep = keep;
    decided[a] = true;
  }

  // Prune old pairs whose lcm is a proper multiple of h in the chain sense.
  for (auto& bucket : buckets_) {
    for (auto& entry : bucket) {
      if (!entry.alive) continue;
      const Exponent& a = leads_[entry.pair.i];
      const Exponent& b = leads_[entry.pair.j];
      if ((hmask & ~(support_mask(a) | support_mask(b))) != 0) continue;
      Exponent l = lcm(a, b);
      if (!divides(h, l)) continue;
      if (lcm(a, h) != l && lcm(b, h) != l) {
        entry.alive = false;
        --pending_;
      }
    }
  }

  for (const auto& cand : c) {
    if (!cand.keep || cand.coprime) continue;
    auto d = total_degree(cand.l);
    if (static_cast<std::size_t>(d) >= buckets_.size()) {
      buckets_.resize(static_cast<std::size_t>(d) + 1);
      cursor_.resize(buckets_.size(), 0);
    }
    buckets_[static_cast<std::size_t>(d)].push_back({{cand.g, idx, d}, true});
    ++pending_;
  }

  std::vector<std::uint32_t> retired;
  for (std::uint32_t g = 0; g < idx; ++g) {
    if (active_[g] && divides(h, leads_[g])) {
      active_[g] = false;
      retired.push_back(g);
    }
  }
  return retired;
}

std::int64_t CriticalPairs::min_degree() const {
  for (std::size_t d = 0; d < buckets_.size(); ++d) {
    const auto& bucket = buckets_[d];
    for (std::size_t k = cursor_[d]; k < bucket.size(); ++k) {
      if (bucket[k].alive) return static_cast<std::int64_t>(d);
    }
  }
  throw Error("critical pair queue is empty");
}

CriticalPairs::Pair CriticalPairs::pop() {
  for (std::size_t d = 0; d < buckets_.size(); ++d) {
    auto& bucket = buckets_[d];
    while (cursor_[d] < bucket.size()) {
      auto& entry = bucket[cursor_[d]++];
      if (!entry.alive) continue;
      entry.alive = false;
      --pending_;
      return entry.pair;
    }
    bucket.clear();
    bucket.shrink_to_fit();
    cursor_[d] = 0;
  }
  throw Error("critical pair queue is empty");
}

}  // namespace cbdp
