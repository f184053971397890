#include "cbdp/ideal.hpp"

#include <array>
#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <set>

#include "cbdp/bases.hpp"
#include "cbdp/errors.hpp"
#include "cbdp/exact_linear.hpp"

namespace cbdp {

std::int64_t Polynomial::degree() const {
  std::int64_t d = -1;
  for (const auto& t : terms) d = std::max(d, total_degree(t.exp));
  return d;
}

bool Polynomial::homogeneous() const {
  for (const auto& t : terms) {
    if (total_degree(t.exp) != total_degree(terms.front().exp)) return false;
  }
  return true;
}

bool Polynomial::pure_binomial() const { return terms.size() == 2 && terms[0].coef == -terms[1].coef; }

Polynomial normalize(std::vector<Term> terms, const MonomialOrder& order) {
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return order.compare(a.exp, b.exp) > 0; });
  Polynomial out;
  for (auto& t : terms) {
    if (!out.terms.empty() && out.terms.back().exp == t.exp) {
      out.terms.back().coef += t.coef;
      if (out.terms.back().coef == 0) out.terms.pop_back();
    } else if (t.coef != 0) {
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

Polynomial make_monomial(Exponent e, const MonomialOrder&) { return Polynomial{{Term{1, std::move(e)}}}; }

Polynomial make_binomial(const Exponent& a, const Exponent& b, const MonomialOrder& order) {
  return normalize({Term{1, a}, Term{-1, b}}, order);
}

namespace {

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Exponent sub_exp(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// x*f[from..] + y*m*g[gfrom..], both inputs sorted; the result is sorted.
std::vector<Term> combine(const std::vector<Term>& f, std::size_t from, const mpz_class& x, const std::vector<Term>& g,
                          std::size_t gfrom, const mpz_class& y, const Exponent& m, const MonomialOrder& order) {
  std::vector<Term> out;
  out.reserve(f.size() - from + g.size() - gfrom);
  std::size_t i = from, j = gfrom;
  Exponent gj;
  bool have_gj = false;
  while (i < f.size() || j < g.size()) {
    if (j < g.size() && !have_gj) {
      gj = add_exp(g[j].exp, m);
      have_gj = true;
    }
    int c = i == f.size() ? -1 : (j == g.size() ? 1 : order.compare(f[i].exp, gj));
    if (c > 0) {
      out.push_back({x * f[i].coef, f[i].exp});
      ++i;
    } else if (c < 0) {
      out.push_back({y * g[j].coef, std::move(gj)});
      ++j;
      have_gj = false;
    } else {
      mpz_class s = x * f[i].coef + y * g[j].coef;
      if (s != 0) out.push_back({std::move(s), f[i].exp});
      ++i;
      ++j;
      have_gj = false;
    }
  }
  return out;
}

mpz_class content_of(const std::vector<Term>& a, const std::vector<Term>& b) {
  mpz_class g = 0;
  for (const auto* v : {&a, &b}) {
    for (const auto& t : *v) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
      if (g == 1) return g;
    }
  }
  return g;
}

}  // namespace

Polynomial multiply(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  std::vector<Term> terms;
  for (const auto& a : f.terms) {
    for (const auto& b : g.terms) terms.push_back({a.coef * b.coef, add_exp(a.exp, b.exp)});
  }
  return normalize(std::move(terms), order);
}

Polynomial subtract(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  std::vector<Term> terms = f.terms;
  for (const auto& t : g.terms) terms.push_back({-t.coef, t.exp});
  return normalize(std::move(terms), order);
}

Polynomial primitive(Polynomial p) {
  if (p.is_zero()) return p;
  mpz_class g = content_of(p.terms, {});
  if (p.terms.front().coef < 0) g = -g;
  if (g != 1) {
    for (auto& t : p.terms) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), g.get_mpz_t());
  }
  return p;
}

std::size_t Ring::find(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return Grid::npos;
}

Ring Ring::of_grid(const Grid& grid, MonomialOrder order) {
  Ring r;
  r.order = order;
  for (std::size_t e = 0; e < grid.edge_count(); ++e) r.names.push_back(grid.variable_name(e));
  return r;
}

std::string format_polynomial(const Polynomial& p, const Ring& ring) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms) {
    if (!out.empty()) out += ' ';
    out += t.coef > 0 ? "+" + t.coef.get_str() : t.coef.get_str();
    std::string mono;
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += ring.names[i];
      if (t.exp[i] > 1) mono += "^" + std::to_string(t.exp[i]);
    }
    if (!mono.empty()) out += ' ' + mono;
  }
  return out;
}

Polynomial parse_polynomial(std::string_view text, const Ring& ring) {
  // Split at + and - into signed terms.
  std::vector<std::pair<int, std::string>> raw;
  int sign = 1;
  std::string cur;
  bool seen = false;
  for (char ch : text) {
    if (ch == '+' || ch == '-') {
      const int s = ch == '-' ? -1 : 1;
      if (seen) {
        raw.push_back({sign, cur});
        sign = s;
      } else {
        sign *= s;
      }
      cur.clear();
      seen = false;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(ch))) seen = true;
    cur += ch;
  }
  if (seen) raw.push_back({sign, cur});
  if (raw.empty()) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty() || s == "0") return {};
    throw InputError("cannot parse polynomial: " + std::string(text));
  }

  std::vector<std::pair<mpq_class, Exponent>> parsed;
  for (auto& [sgn, body] : raw) {
    mpq_class coef = sgn;
    Exponent e(ring.nvars(), 0);
    std::string token;
    auto flush = [&]() {
      if (token.empty()) return;
      if (std::isdigit(static_cast<unsigned char>(token[0]))) {
        mpq_class q;
        if (q.set_str(token, 10) != 0) throw InputError("bad coefficient: " + token);
        q.canonicalize();
        coef *= q;
      } else {
        std::string name = token;
        int power = 1;
        auto caret = token.find('^');
        if (caret != std::string::npos) {
          name = token.substr(0, caret);
          try {
            power = std::stoi(token.substr(caret + 1));
          } catch (const std::exception&) {
            throw InputError("bad exponent in " + token);
          }
          if (power < 0) throw InputError("negative exponent in " + token);
        }
        auto idx = ring.find(name);
        if (idx == Grid::npos) throw InputError("unknown variable: " + name);
        e[idx] += power;
      }
      token.clear();
    };
    for (char ch : body) {
      if (ch == '*' || std::isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else {
        token += ch;
      }
    }
    flush();
    parsed.push_back({coef, e});
  }
  mpz_class den = 1;
  for (const auto& [q, e] : parsed) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Term> terms;
  for (const auto& [q, e] : parsed) {
    mpq_class scaled = q * den;
    terms.push_back({scaled.get_num(), e});
  }
  return normalize(std::move(terms), ring.order);
}

namespace {

class GeneralGroebner {
 public:
  GeneralGroebner(std::size_t nvars, MonomialOrder order, std::size_t max_pairs)
      : n_(nvars), order_(order), max_pairs_(max_pairs) {}

  void add(const Polynomial& p) {
    auto r = reduce(p, active_, false);
    if (!r.is_zero()) insert(std::move(r));
  }

  void complete(std::int64_t max_degree) {
    while (!pairs_.empty()) {
      if (max_degree >= 0 && pairs_.min_degree() > max_degree) return;
      auto p = pairs_.pop();
      if (++handled_ > max_pairs_) throw BudgetExceeded("S-pair cap reached");
      const auto& f = elements_[p.i];
      const auto& g = elements_[p.j];
      Exponent l = lcm(f.lead(), g.lead());
      mpz_class c;
      mpz_gcd(c.get_mpz_t(), f.terms[0].coef.get_mpz_t(), g.terms[0].coef.get_mpz_t());
      mpz_class x = g.terms[0].coef / c, y = -(f.terms[0].coef / c);
      // x*(l/lf)*f + y*(l/lg)*g with the leads cancelling.
      Polynomial fs;
      Exponent mf = sub_exp(l, f.lead());
      for (std::size_t k = 1; k < f.terms.size(); ++k) fs.terms.push_back({f.terms[k].coef, add_exp(f.terms[k].exp, mf)});
      Polynomial s{combine(fs.terms, 0, x, g.terms, 1, y, sub_exp(l, g.lead()), order_)};
      auto r = reduce(s, active_, false);
      if (!r.is_zero()) insert(std::move(r));
    }
  }

  bool pending() const { return !pairs_.empty(); }

  std::vector<Polynomial> reduced() const {
    std::vector<std::uint32_t> keep;
    for (auto i : active_) {
      bool minimal = true;
      for (auto j : active_) {
        if (i == j) continue;
        const auto& li = elements_[i].lead();
        const auto& lj = elements_[j].lead();
        if (divides(lj, li) && (li != lj || j < i)) {
          minimal = false;
          break;
        }
      }
      if (minimal) keep.push_back(i);
    }
    std::vector<Polynomial> out;
    for (auto i : keep) {
      std::vector<std::uint32_t> others;
      for (auto j : keep) {
        if (j != i) others.push_back(j);
      }
      out.push_back(primitive(reduce(elements_[i], others, true)));
    }
    std::sort(out.begin(), out.end(),
              [&](const Polynomial& a, const Polynomial& b) { return order_.compare(a.lead(), b.lead()) > 0; });
    return out;
  }

  Polynomial reduce(const Polynomial& f, const std::vector<std::uint32_t>& reducers, bool keep_lead) const {
    std::vector<Term> done;
    std::vector<Term> work = f.terms;
    std::size_t pos = 0;
    if (keep_lead && !work.empty()) {
      done.push_back(work[0]);
      pos = 1;
    }
    std::size_t steps = 0;
    while (pos < work.size()) {
      const auto& t = work[pos];
      std::size_t r = find_reducer(t.exp, reducers);
      if (r == npos) {
        done.push_back(t);
        ++pos;
        continue;
      }
      const auto& h = elements_[r];
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), h.terms[0].coef.get_mpz_t(), t.coef.get_mpz_t());
      mpz_class a = h.terms[0].coef / g;
      mpz_class b = -(t.coef / g);
      Exponent m = sub_exp(t.exp, h.lead());
      work = combine(work, pos + 1, a, h.terms, 1, b, m, order_);
      pos = 0;
      if (a != 1) {
        for (auto& d : done) d.coef *= a;
      }
      if (++steps % 8 == 0) {
        mpz_class c = content_of(done, work);
        if (c > 1) {
          for (auto& d : done) mpz_divexact(d.coef.get_mpz_t(), d.coef.get_mpz_t(), c.get_mpz_t());
          for (auto& w : work) mpz_divexact(w.coef.get_mpz_t(), w.coef.get_mpz_t(), c.get_mpz_t());
        }
      }
    }
    return primitive(Polynomial{std::move(done)});
  }

  const std::vector<std::uint32_t>& active() const { return active_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t find_reducer(const Exponent& m, const std::vector<std::uint32_t>& reducers) const {
    const std::uint64_t mask = support_mask(m);
    for (auto idx : reducers) {
      if ((mask_[idx] & ~mask) != 0) continue;
      if (divides(elements_[idx].lead(), m)) return idx;
    }
    return npos;
  }

  void insert(Polynomial p) {
    p = primitive(std::move(p));
    const auto idx = static_cast<std::uint32_t>(elements_.size());
    mask_.push_back(support_mask(p.lead()));
    elements_.push_back(std::move(p));
    auto retired = pairs_.add(elements_.back().lead());
    if (!retired.empty()) {
      std::erase_if(active_,
                    [&](std::uint32_t i) { return std::find(retired.begin(), retired.end(), i) != retired.end(); });
    }
    active_.push_back(idx);
  }

  std::size_t n_;
  MonomialOrder order_;
  std::size_t max_pairs_;
  std::size_t handled_ = 0;
  std::vector<Polynomial> elements_;
  std::vector<std::uint64_t> mask_;
  std::vector<std::uint32_t> active_;
  CriticalPairs pairs_;
};

}  // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, std::size_t nvars, const MonomialOrder& order,
                         const BuchbergerOptions& options) {
  std::vector<Polynomial> input;
  bool all_pure = true, all_short = true, all_homogeneous = true;
  for (const auto& g : gens) {
    for (const auto& t : g.terms) {
      if (t.exp.size() != nvars) throw DimensionMismatch("polynomial has the wrong number of variables");
    }
    auto p = normalize(g.terms, order);
    if (p.is_zero()) continue;
    all_pure = all_pure && p.pure_binomial();
    all_short = all_short && p.terms.size() <= 2;
    all_homogeneous = all_homogeneous && p.homogeneous();
    input.push_back(std::move(p));
  }
  if (options.max_degree >= 0 && !all_homogeneous) {
    throw InputError("a degree bound needs homogeneous generators");
  }

  GroebnerBasis gb;
  gb.order = order;
  gb.nvars = nvars;
  if (all_pure && !input.empty()) {
    auto engine = std::make_shared<BinomialGroebner>(nvars, order, options.max_pairs);
    for (const auto& p : input) engine->add(p.terms[0].exp, p.terms[1].exp);
    engine->complete(options.max_degree);
    if (engine->pending()) gb.truncated_at = options.max_degree;
    for (const auto& b : engine->reduced_basis()) gb.elements.push_back(make_binomial(b.lead, b.tail, order));
    gb.binomial_engine = std::move(engine);
    return gb;
  }

  GeneralGroebner engine(nvars, order, options.max_pairs);
  for (const auto& p : input) engine.add(p);
  engine.complete(options.max_degree);
  if (engine.pending()) gb.truncated_at = options.max_degree;
  gb.elements = engine.reduced();
  if (all_short) {
    for (const auto& e : gb.elements) {
      if (e.terms.size() > 2) throw Error("Groebner basis of binomials produced a longer polynomial");
    }
  }
  return gb;
}

Polynomial normal_form(const GroebnerBasis& gb, const Polynomial& f) {
  for (const auto& t : f.terms) {
    if (t.exp.size() != gb.nvars) throw DimensionMismatch("polynomial has the wrong number of variables");
  }
  if (gb.binomial_engine) {
    std::vector<Term> terms;
    for (const auto& t : f.terms) terms.push_back({t.coef, gb.binomial_engine->normal_form(t.exp)});
    return normalize(std::move(terms), gb.order);
  }
  GeneralGroebner engine(gb.nvars, gb.order, 0);
  for (const auto& e : gb.elements) engine.add(e);
  return engine.reduce(normalize(f.terms, gb.order), engine.active(), false);
}

bool contains(const GroebnerBasis& gb, const Polynomial& f) {
  if (!gb.complete() && f.degree() > gb.truncated_at) {
    throw InputError("Groebner basis truncated at degree " + std::to_string(gb.truncated_at) +
                     " cannot decide membership in degree " + std::to_string(f.degree()));
  }
  return normal_form(gb, f).is_zero();
}

bool same_ideal(const GroebnerBasis& a, const GroebnerBasis& b) {
  if (!a.complete() || !b.complete()) throw InputError("comparison needs complete Groebner bases");
  return a.nvars == b.nvars && a.order.kind == b.order.kind && a.order.block == b.order.block &&
         a.elements == b.elements;
}

GroebnerBasis ideal_intersection(const GroebnerBasis& I, const GroebnerBasis& J, const BuchbergerOptions& options) {
  if (I.nvars != J.nvars) throw DimensionMismatch("ideals live in different rings");
  if (!I.complete() || !J.complete()) throw InputError("intersection needs complete Groebner bases");
  const std::size_t n = I.nvars;
  auto lift = [&](const Polynomial& p, int t_power) {
    std::vector<Term> terms;
    for (const auto& t : p.terms) {
      Exponent e(n + 1);
      e[0] = t_power;
      std::copy(t.exp.begin(), t.exp.end(), e.begin() + 1);
      terms.push_back({t.coef, std::move(e)});
    }
    return terms;
  };
  const auto elim = MonomialOrder::elimination(1);
  std::vector<Polynomial> gens;
  for (const auto& f : I.elements) gens.push_back(normalize(lift(f, 1), elim));
  for (const auto& g : J.elements) {
    auto terms = lift(g, 0);
    for (auto& t : lift(g, 1)) terms.push_back({-t.coef, std::move(t.exp)});
    gens.push_back(normalize(std::move(terms), elim));
  }
  BuchbergerOptions unbounded = options;
  unbounded.max_degree = -1;
  auto big = buchberger(gens, n + 1, elim, unbounded);
  std::vector<Polynomial> kept;
  for (const auto& p : big.elements) {
    if (std::any_of(p.terms.begin(), p.terms.end(), [](const Term& t) { return t.exp[0] != 0; })) continue;
    std::vector<Term> terms;
    for (const auto& t : p.terms) terms.push_back({t.coef, Exponent(t.exp.begin() + 1, t.exp.end())});
    kept.push_back(normalize(std::move(terms), I.order));
  }
  return buchberger(kept, n, I.order, unbounded);
}

std::size_t krull_dimension(const GroebnerBasis& gb) {
  if (gb.nvars > 64) throw InputError("dimension computation supports at most 64 variables");
  std::vector<std::uint64_t> leads;
  for (const auto& e : gb.elements) leads.push_back(support_mask(e.lead()));
  // Largest variable set containing no lead support.
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t chosen, std::size_t size) -> void {
    if (size + (gb.nvars - i) <= best) return;
    if (i == gb.nvars) {
      best = size;
      return;
    }
    const std::uint64_t with = chosen | (std::uint64_t{1} << i);
    bool ok = std::none_of(leads.begin(), leads.end(), [&](std::uint64_t l) { return (l & ~with) == 0; });
    if (ok) self(self, i + 1, with, size + 1);
    self(self, i + 1, chosen, size);
  };
  rec(rec, 0, 0, 0);
  return best;
}

std::vector<Polynomial> commutation_generators(const Grid& grid, const MonomialOrder& order) {
  std::vector<Polynomial> out;
  std::set<std::vector<std::pair<std::string, Exponent>>> seen;
  for (const auto& q : grid.commutation_quadrics()) {
    Exponent a(grid.edge_count(), 0), b(grid.edge_count(), 0);
    for (auto e : q.plus) ++a[e];
    for (auto e : q.minus) ++b[e];
    auto p = primitive(make_binomial(a, b, order));
    if (p.is_zero()) continue;
    std::vector<std::pair<std::string, Exponent>> key;
    for (const auto& t : p.terms) key.push_back({t.coef.get_str(), t.exp});
    if (seen.insert(key).second) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Polynomial> binomials_of(const std::vector<LatticeElement>& elements, const MonomialOrder& order) {
  std::vector<Polynomial> out;
  for (const auto& e : elements) {
    Exponent a, b;
    for (auto x : e.positive()) a.push_back(static_cast<std::int32_t>(x));
    for (auto x : e.negative()) b.push_back(static_cast<std::int32_t>(x));
    out.push_back(primitive(make_binomial(a, b, order)));
  }
  return out;
}

std::vector<Polynomial> coordinate_generators(const Ring& ring, const std::vector<std::string>& names) {
  std::vector<Polynomial> out;
  for (const auto& name : names) {
    auto idx = ring.find(name);
    if (idx == Grid::npos) throw InputError("unknown variable: " + name);
    Exponent e(ring.nvars(), 0);
    e[idx] = 1;
    out.push_back(make_monomial(std::move(e), ring.order));
  }
  return out;
}

Polynomial reflect(const Polynomial& p, const Grid& grid, int axis, const MonomialOrder& order) {
  std::vector<std::size_t> image(grid.edge_count());
  const int n = grid.shape().size(axis);
  for (std::size_t e = 0; e < grid.edge_count(); ++e) {
    Vertex u = grid.vertex(grid.edge(e).source);
    Vertex v = grid.vertex(grid.edge(e).target);
    u[static_cast<std::size_t>(axis)] = n - u[static_cast<std::size_t>(axis)];
    v[static_cast<std::size_t>(axis)] = n - v[static_cast<std::size_t>(axis)];
    image[e] = grid.edge_between(grid.vertex_index(u), grid.vertex_index(v));
  }
  std::vector<Term> terms;
  for (const auto& t : p.terms) {
    Exponent e(t.exp.size(), 0);
    for (std::size_t i = 0; i < t.exp.size(); ++i) e[image[i]] = t.exp[i];
    terms.push_back({t.coef, std::move(e)});
  }
  return primitive(normalize(std::move(terms), order));
}

namespace {

// The six 2x2 minors of a 2x4 matrix of variables, given row by row.
std::vector<Polynomial> minors(const Ring& ring, const std::array<const char*, 4>& top,
                               const std::array<const char*, 4>& bottom) {
  std::vector<Polynomial> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::string text = std::string(top[i]) + "*" + bottom[j] + " - " + top[j] + "*" + bottom[i];
      out.push_back(primitive(parse_polynomial(text, ring)));
    }
  }
  return out;
}

std::vector<Polynomial> concat(std::vector<Polynomial> a, const std::vector<Polynomial>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// All images of a component under the reflections of the grid, without repeats.
std::vector<std::vector<Polynomial>> orbit(const Grid& grid, const std::vector<Polynomial>& gens,
                                           const MonomialOrder& order) {
  std::vector<std::vector<Polynomial>> out;
  std::vector<std::vector<Polynomial>> seen;
  for (std::uint32_t mask = 0; mask < (1u << grid.dim()); ++mask) {
    std::vector<Polynomial> image;
    for (const auto& g : gens) {
      Polynomial p = g;
      for (int axis = 0; axis < grid.dim(); ++axis) {
        if (mask & (1u << axis)) p = reflect(p, grid, axis, order);
      }
      image.push_back(p);
    }
    auto gb = buchberger(image, grid.edge_count(), order).elements;
    if (std::find(seen.begin(), seen.end(), gb) != seen.end()) continue;
    seen.push_back(gb);
    out.push_back(std::move(image));
  }
  return out;
}

}  // namespace

std::vector<PrimeComponent> unit_square_components() {
  Grid grid(GridShape({1, 1}));
  Ring ring = Ring::of_grid(grid);
  auto A = build_A(grid);
  std::vector<PrimeComponent> out;
  out.push_back({"toric", binomials_of(minimal_markov_basis(A, graver_basis(A)), ring.order)});
  out.push_back({"vertical edges", coordinate_generators(ring, {"U00", "U10", "D01", "D11"})});
  out.push_back({"horizontal edges", coordinate_generators(ring, {"R00", "R01", "L10", "L11"})});
  return out;
}

std::vector<PrimeComponent> strip_components() {
  Grid grid(GridShape({2, 1}));
  Ring ring = Ring::of_grid(grid);
  auto left = minors(ring, {"R00", "U00", "L11", "D11"}, {"R01", "U10", "L10", "D01"});
  auto right = minors(ring, {"R10", "U10", "L21", "D21"}, {"R11", "U20", "L20", "D11"});
  std::vector<std::pair<std::string, std::vector<Polynomial>>> representatives = {
      {"class 1", concat(left, right)},
      {"class 2", concat(coordinate_generators(ring, {"L21", "L20", "R11", "R10"}), left)},
      {"class 3", coordinate_generators(ring, {"U00", "U10", "U20", "D01", "D11", "D21"})},
      {"class 4", coordinate_generators(ring, {"R00", "R01", "R10", "R11", "L10", "L11", "L20", "L21"})},
      {"class 5", coordinate_generators(ring, {"R00", "R01", "L10", "L11", "U10", "U20", "D11", "D21"})},
      {"class 6", coordinate_generators(ring, {"R10", "L21", "U00", "U10", "D01", "D11", "D21"})},
  };
  std::vector<PrimeComponent> out;
  for (const auto& [label, gens] : representatives) {
    for (auto& image : orbit(grid, gens, ring.order)) out.push_back({label, std::move(image)});
  }
  return out;
}

DecompositionReport verify_decomposition(const GridShape& shape, const std::vector<PrimeComponent>& components,
                                         const BuchbergerOptions& options) {
  Grid grid(shape);
  const auto order = MonomialOrder::grevlex();
  const std::size_t n = grid.edge_count();
  DecompositionReport report;
  if (components.empty()) return report;
  std::optional<GroebnerBasis> acc;
  for (const auto& c : components) {
    auto gb = buchberger(c.generators, n, order, options);
    report.codimensions.push_back(n - krull_dimension(gb));
    acc = acc ? ideal_intersection(*acc, gb, options) : gb;
  }
  auto target = buchberger(commutation_generators(grid, order), n, order, options);
  report.holds = same_ideal(*acc, target);
  return report;
}

bool verify_unit_square_decomposition() { return verify_decomposition(GridShape({1, 1}), unit_square_components()).holds; }

bool verify_strip_decomposition() { return verify_decomposition(GridShape({2, 1}), strip_components()).holds; }

std::string kahle_polynomial_text() { return "D01*R03*R10*L12*U21*L22*D23 - U01*R03*L10*R13*D21*L23*D23"; }

WitnessReport kahle_witness(const BuchbergerOptions& options) {
  Grid grid(GridShape({2, 3}));
  Ring ring = Ring::of_grid(grid);
  const auto f = parse_polynomial(kahle_polynomial_text(), ring);
  const auto f2 = multiply(f, f, ring.order);
  const auto gens = commutation_generators(grid, ring.order);

  WitnessReport report;
  BinomialGroebner engine(grid.edge_count(), ring.order, options.max_pairs);
  for (const auto& g : gens) engine.add(g.terms[0].exp, g.terms[1].exp);
  auto member = [&](const Polynomial& p) {
    std::vector<Term> terms;
    for (const auto& t : p.terms) terms.push_back({t.coef, engine.normal_form(t.exp)});
    return normalize(std::move(terms), ring.order).is_zero();
  };
  const std::int64_t cap = options.max_degree >= 0 ? options.max_degree : f2.degree();
  try {
    engine.complete(std::min(f.degree(), cap));
    report.degree_reached = std::min(f.degree(), cap);
    if (cap >= f.degree()) report.f_in_ideal = member(f);
    engine.complete(std::min(f2.degree(), cap));
    report.degree_reached = std::min(f2.degree(), cap);
    if (cap >= f2.degree()) report.f_squared_in_ideal = member(f2);
  } catch (const BudgetExceeded&) {
  }
  report.basis_size = engine.size();
  return report;
}

}  // namespace cbdp
