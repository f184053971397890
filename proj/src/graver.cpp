#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <memory>

#include "cbdp/bases.hpp"
#include "cbdp/errors.hpp"

namespace cbdp {

namespace {

struct Mask {
  std::array<std::uint64_t, 2> w{0, 0};

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  bool any() const { return (w[0] | w[1]) != 0; }
  friend Mask operator&(const Mask& a, const Mask& b) { return {{a.w[0] & b.w[0], a.w[1] & b.w[1]}}; }
  friend Mask operator|(const Mask& a, const Mask& b) { return {{a.w[0] | b.w[0], a.w[1] | b.w[1]}}; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < 2; ++k) {
      std::uint64_t bits = w[k];
      while (bits) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }
};

/// Vectors stored in pairs: index 2k and 2k+1 are negatives of each other.
class VectorStore {
 public:
  explicit VectorStore(std::size_t n) : n_(n) {}

  std::size_t size() const { return pos_.size(); }
  std::size_t dim() const { return n_; }
  const std::int32_t* at(std::size_t i) const { return &data_[i * n_]; }
  std::int32_t value(std::size_t i, std::size_t c) const { return data_[i * n_ + c]; }
  const Mask& pos(std::size_t i) const { return pos_[i]; }
  const Mask& neg(std::size_t i) const { return neg_[i]; }

  void push_pair(const std::int32_t* v) {
    push(v, +1);
    push(v, -1);
  }

 private:
  void push(const std::int32_t* v, int sign) {
    Mask p, q;
    for (std::size_t c = 0; c < n_; ++c) {
      std::int32_t x = sign * v[c];
      data_.push_back(x);
      if (x > 0) p.set(c);
      if (x < 0) q.set(c);
    }
    pos_.push_back(p);
    neg_.push_back(q);
  }

  std::size_t n_;
  std::vector<std::int32_t> data_;
  std::vector<Mask> pos_, neg_;
};

/// Trie over signed supports restricted to the active coordinates. A search returns a
/// stored vector h with h conformally below s on the active coordinates.
class SupportTrie {
 public:
  SupportTrie(const VectorStore& store, Mask active) : store_(store), active_(active) { nodes_.emplace_back(); }

  void insert(std::size_t idx) {
    std::uint32_t node = 0;
    visit_keys(store_.pos(idx) & active_, store_.neg(idx) & active_, [&](std::uint32_t key) {
      auto& children = nodes_[node].children;
      auto it = std::lower_bound(children.begin(), children.end(), key,
                                 [](const std::pair<std::uint32_t, std::uint32_t>& c, std::uint32_t k) { return c.first < k; });
      if (it != children.end() && it->first == key) {
        node = it->second;
      } else {
        auto child = static_cast<std::uint32_t>(nodes_.size());
        children.insert(it, {key, child});
        nodes_.emplace_back();
        node = child;
      }
    });
    nodes_[node].elements.push_back(static_cast<std::uint32_t>(idx));
  }

  /// Some stored h != exclude with h below s (given with its restricted masks), or npos.
  std::size_t find_below(const std::int32_t* s, const Mask& spos, const Mask& sneg, std::size_t exclude) const {
    stack_.clear();
    stack_.push_back(0);
    while (!stack_.empty()) {
      std::uint32_t node = stack_.back();
      stack_.pop_back();
      const auto& nd = nodes_[node];
      for (std::uint32_t e : nd.elements) {
        if (e == exclude) continue;
        if (dominated(e, s)) return e;
      }
      for (const auto& [key, child] : nd.children) {
        const std::size_t c = key >> 1;
        if ((key & 1u) ? sneg.test(c) : spos.test(c)) stack_.push_back(child);
      }
    }
    return static_cast<std::size_t>(-1);
  }

 private:
  struct Node {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> children;
    std::vector<std::uint32_t> elements;
  };

  template <class F>
  static void visit_keys(const Mask& p, const Mask& q, F&& f) {
    // Ascending coordinate order; each coordinate appears with one sign at most.
    (p | q).for_each([&](std::size_t c) { f(static_cast<std::uint32_t>(2 * c + (q.test(c) ? 1 : 0))); });
  }

  bool dominated(std::size_t e, const std::int32_t* s) const {
    const std::int32_t* h = store_.at(e);
    bool ok = true;
    ((store_.pos(e) | store_.neg(e)) & active_).for_each([&](std::size_t c) {
      if (ok && std::abs(h[c]) > std::abs(s[c])) ok = false;
    });
    return ok;
  }

  const VectorStore& store_;
  Mask active_;
  std::vector<Node> nodes_;
  mutable std::vector<std::uint32_t> stack_;
};

void masks_of(const std::vector<std::int32_t>& s, const Mask& active, Mask& p, Mask& q) {
  p = Mask{};
  q = Mask{};
  active.for_each([&](std::size_t c) {
    if (s[c] > 0) p.set(c);
    else if (s[c] < 0) q.set(c);
  });
}

/// One completion round. `compat` are the coordinates on which pair members must be
/// sign-compatible; if `lift` is set, pair members must have opposite signs there.
/// Reduction is conformal on `active`. Returns the inclusion-minimal result.
VectorStore complete(const VectorStore& input, const Mask& active, const Mask& compat, std::optional<std::size_t> lift,
                     std::size_t max_elements) {
  const std::size_t n = input.dim();
  VectorStore g(n);
  for (std::size_t i = 0; i < input.size(); i += 2) g.push_pair(input.at(i));

  auto trie = std::make_unique<SupportTrie>(g, active);
  for (std::size_t i = 0; i < g.size(); ++i) trie->insert(i);

  std::vector<std::int32_t> s(n);
  Mask sp, sn;
  auto normal_form = [&]() -> bool {
    while (true) {
      masks_of(s, active, sp, sn);
      if (!(sp | sn).any()) return false;
      auto h = trie->find_below(s.data(), sp, sn, static_cast<std::size_t>(-1));
      if (h == static_cast<std::size_t>(-1)) return true;
      const std::int32_t* hv = g.at(h);
      for (std::size_t c = 0; c < n; ++c) s[c] -= hv[c];
    }
  };

  // Elements with a positive / negative entry on the lifted coordinate.
  std::vector<std::size_t> plus, minus;
  auto classify = [&](std::size_t i) {
    if (!lift) return;
    auto x = g.value(i, *lift);
    if (x > 0) plus.push_back(i);
    if (x < 0) minus.push_back(i);
  };
  for (std::size_t i = 0; i < g.size(); ++i) classify(i);

  for (std::size_t a = 0; a < g.size(); ++a) {
    const std::vector<std::size_t>* partners = nullptr;
    std::vector<std::size_t> all;
    if (lift) {
      auto x = g.value(a, *lift);
      if (x == 0) continue;
      partners = x > 0 ? &minus : &plus;
    }
    const std::size_t count = lift ? partners->size() : a;
    for (std::size_t t = 0; t < count; ++t) {
      const std::size_t b = lift ? (*partners)[t] : t;
      if (b >= a) {
        if (lift) break;  // partner lists are in increasing index order
        continue;
      }
      if ((g.pos(a) & g.neg(b) & compat).any() || (g.neg(a) & g.pos(b) & compat).any()) continue;
      // (a, b) and (a^1, b^1) give negated sums; handle the pair with the smaller key.
      const std::size_t a1 = std::max(a ^ 1u, b ^ 1u), b1 = std::min(a ^ 1u, b ^ 1u);
      if (a1 < a || (a1 == a && b1 < b)) continue;
      if ((a ^ 1u) == b) continue;
      const std::int32_t* va = g.at(a);
      const std::int32_t* vb = g.at(b);
      for (std::size_t c = 0; c < n; ++c) s[c] = va[c] + vb[c];
      if (!normal_form()) continue;
      for (auto x : s) {
        if (x > (1 << 28) || x < -(1 << 28)) throw Error("lattice entries overflow");
      }
      std::size_t first = g.size();
      g.push_pair(s.data());
      trie->insert(first);
      trie->insert(first + 1);
      classify(first);
      classify(first + 1);
      if (g.size() / 2 > max_elements) throw BudgetExceeded("Graver completion exceeded the element cap");
    }
  }

  // Drop elements that are not conformally minimal on the active coordinates.
  VectorStore out(n);
  std::vector<std::int32_t> v(n);
  for (std::size_t i = 0; i < g.size(); i += 2) {
    const std::int32_t* gi = g.at(i);
    v.assign(gi, gi + n);
    masks_of(v, active, sp, sn);
    if (trie->find_below(gi, sp, sn, i) == static_cast<std::size_t>(-1)) out.push_pair(gi);
  }
  return out;
}

std::vector<std::vector<mpz_class>> int_rows(const ExactMatrix& A) { return A.integer_rows(); }

}  // namespace

std::vector<LatticeElement> graver_basis(const ExactMatrix& A, const GraverOptions& options) {
  const std::size_t n = A.cols();
  if (n > 128) throw InputError("Graver computation supports at most 128 columns");
  auto pb = pivoted_kernel_basis(A);
  std::vector<LatticeElement> result;
  if (pb.basis.empty()) return result;

  VectorStore g(n);
  std::vector<std::int32_t> v(n);
  for (const auto& b : pb.basis) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!b[c].fits_sint_p() || abs(b[c]) > (1 << 28)) throw Error("kernel basis entries too large");
      v[c] = static_cast<std::int32_t>(b[c].get_si());
    }
    g.push_pair(v.data());
  }

  Mask all;
  for (std::size_t c = 0; c < n; ++c) all.set(c);

  if (!pb.unit) {
    // No coordinate projection is an isomorphism onto Z^d: plain completion.
    g = complete(g, all, Mask{}, std::nullopt, options.max_elements);
    if (options.progress) options.progress(n, n, g.size() / 2);
  } else {
    Mask s;
    std::vector<bool> in_s(n, false);
    for (auto p : pb.pivots) {
      s.set(p);
      in_s[p] = true;
    }
    std::size_t done = pb.pivots.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (in_s[j]) continue;
      Mask active = s;
      active.set(j);
      g = complete(g, active, s, j, options.max_elements);
      s = active;
      ++done;
      if (options.progress) options.progress(done, n, g.size() / 2);
    }
  }

  result.reserve(g.size() / 2);
  for (std::size_t i = 0; i < g.size(); i += 2) {
    const std::int32_t* x = g.at(i);
    result.push_back(canonical(std::vector<std::int64_t>(x, x + n)));
  }
  sort_canonical(result);
  return result;
}

std::vector<LatticeElement> brute_force_graver(const ExactMatrix& A, int bound, std::uint64_t budget) {
  if (bound < 1) throw InputError("entry bound must be positive");
  const std::size_t n = A.cols();
  const auto rows = int_rows(A);
  const std::size_t r = rows.size();
  std::vector<std::vector<std::int64_t>> cols(n, std::vector<std::int64_t>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!rows[i][c].fits_slong_p()) throw InputError("matrix entries too large for enumeration");
      cols[c][i] = rows[i][c].get_si();
    }
  }
  double points = 1;
  for (std::size_t c = 0; c < n; ++c) points *= 2.0 * bound + 1;
  if (points > static_cast<double>(budget)) throw BudgetExceeded("enumeration box exceeds the budget");

  // Odometer over the box with an incrementally maintained image A x.
  std::vector<std::int64_t> x(n, -bound), image(r, 0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < r; ++i) image[i] += -bound * cols[c][i];
  }
  std::vector<std::vector<std::int64_t>> kernel;
  while (true) {
    if (std::all_of(image.begin(), image.end(), [](std::int64_t y) { return y == 0; }) &&
        std::any_of(x.begin(), x.end(), [](std::int64_t y) { return y != 0; })) {
      kernel.push_back(x);
    }
    std::size_t c = n;
    while (c > 0) {
      --c;
      if (x[c] < bound) {
        ++x[c];
        for (std::size_t i = 0; i < r; ++i) image[i] += cols[c][i];
        break;
      }
      for (std::size_t i = 0; i < r; ++i) image[i] -= 2 * bound * cols[c][i];
      x[c] = -bound;
      if (c == 0) {
        c = n + 1;
        break;
      }
    }
    if (c == n + 1 || n == 0) break;
  }

  auto below = [](const std::vector<std::int64_t>& h, const std::vector<std::int64_t>& s) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i] == 0) continue;
      if ((h[i] > 0) != (s[i] > 0) || s[i] == 0 || std::llabs(h[i]) > std::llabs(s[i])) return false;
    }
    return true;
  };
  std::vector<LatticeElement> out;
  for (const auto& s : kernel) {
    bool minimal = true;
    for (const auto& h : kernel) {
      if (&h != &s && h != s && below(h, s)) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    auto e = canonical(s);
    if (e.v == s) out.push_back(std::move(e));
  }
  sort_canonical(out);
  return out;
}

std::vector<LatticeElement> circuits_from_graver(const std::vector<LatticeElement>& graver) {
  std::vector<std::pair<std::size_t, Mask>> supports;
  supports.reserve(graver.size());
  for (std::size_t i = 0; i < graver.size(); ++i) {
    Mask m;
    for (std::size_t c = 0; c < graver[i].v.size(); ++c) {
      if (graver[i].v[c] != 0) m.set(c);
    }
    supports.emplace_back(i, m);
  }
  auto popcount = [](const Mask& m) { return std::popcount(m.w[0]) + std::popcount(m.w[1]); };
  std::sort(supports.begin(), supports.end(),
            [&](const auto& a, const auto& b) { return popcount(a.second) < popcount(b.second); });
  std::vector<Mask> minimal;
  std::vector<LatticeElement> out;
  for (const auto& [idx, m] : supports) {
    if (graver[idx].v.size() > 128) throw InputError("circuit filter supports at most 128 columns");
    bool contains = false;
    for (const auto& c : minimal) {
      Mask both = c & m;
      if (both.w == c.w && c.w != m.w) {
        contains = true;
        break;
      }
    }
    if (contains) continue;
    minimal.push_back(m);
    out.push_back(graver[idx]);
  }
  sort_canonical(out);
  return out;
}

std::vector<LatticeElement> circuits(const ExactMatrix& A, const GraverOptions& options) {
  return circuits_from_graver(graver_basis(A, options));
}

UnimodularityReport is_unimodular(const std::vector<LatticeElement>& graver) {
  UnimodularityReport r;
  for (const auto& e : graver) {
    if (!e.squarefree()) {
      r.unimodular = false;
      r.certificate = e;
      break;
    }
  }
  return r;
}

LatticeElement signed_circuit_vector(const ExactMatrix& A, const std::vector<std::size_t>& support) {
  auto sub = A.select_columns(support);
  auto basis = integer_kernel_basis(sub);
  if (basis.size() != 1) throw Error("edge set is not a circuit of the column matroid");
  std::vector<std::int64_t> v(A.cols(), 0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (basis[0][i] == 0) throw Error("edge set is not a circuit of the column matroid");
    if (!basis[0][i].fits_slong_p()) throw Error("circuit entry exceeds 64 bits");
    v[support[i]] = basis[0][i].get_si();
  }
  return canonical(std::move(v));
}

KernelVectorReport verify_kernel_vector(const ExactMatrix& A, const LatticeElement& v) {
  if (v.v.size() != A.cols()) throw DimensionMismatch("vector length differs from column count");
  KernelVectorReport r;
  auto iv = to_integer_vector(v);
  r.in_kernel = in_kernel(A, iv);
  r.primitive = content(iv) == 1;
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < v.v.size(); ++c) {
    if (v.v[c] != 0) support.push_back(c);
  }
  r.support_minimal = r.in_kernel && !support.empty() && rank_exact(A.select_columns(support)) + 1 == support.size();
  return r;
}

}  // namespace cbdp
