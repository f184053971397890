#include "cbdp/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cbdp/errors.hpp"

namespace cbdp {

std::int64_t LatticeElement::degree() const {
  std::int64_t d = 0;
  for (auto x : v) {
    if (x > 0) d += x;
  }
  return d;
}

bool LatticeElement::squarefree() const {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x >= -1 && x <= 1; });
}

std::vector<std::int64_t> LatticeElement::positive() const {
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max<std::int64_t>(v[i], 0);
  return out;
}

std::vector<std::int64_t> LatticeElement::negative() const {
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max<std::int64_t>(-v[i], 0);
  return out;
}

std::size_t LatticeElement::support_size() const {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; }));
}

LatticeElement canonical(std::vector<std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
  auto first = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
  if (first != v.end() && *first < 0) {
    for (auto& x : v) x = -x;
  }
  return LatticeElement{std::move(v)};
}

LatticeElement canonical(const IntegerVector& v) {
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw Error("lattice vector entry exceeds 64 bits");
    out.push_back(x.get_si());
  }
  return canonical(std::move(out));
}

IntegerVector to_integer_vector(const LatticeElement& e) {
  IntegerVector out;
  out.reserve(e.v.size());
  for (auto x : e.v) out.emplace_back(static_cast<long>(x));
  return out;
}

bool canonical_less(const LatticeElement& a, const LatticeElement& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(b.v.begin(), b.v.end(), a.v.begin(), a.v.end());
}

void sort_canonical(std::vector<LatticeElement>& elements) {
  std::sort(elements.begin(), elements.end(), canonical_less);
}

BasisReport profile(const std::vector<LatticeElement>& elements) {
  BasisReport r;
  r.total = elements.size();
  for (const auto& e : elements) {
    auto d = e.degree();
    ++r.by_degree[d];
    if (e.squarefree()) ++r.squarefree_by_degree[d];
    else r.squarefree_by_degree.try_emplace(d, 0);
  }
  return r;
}

std::string format_profile(const BasisReport& report) {
  std::string out;
  for (const auto& [d, c] : report.by_degree) {
    if (!out.empty()) out += ' ';
    out += std::to_string(d) + ":" + std::to_string(c);
  }
  return out;
}

std::string format_profile_table(const std::string& title, const BasisReport& report) {
  std::ostringstream os;
  os << title << " (total " << report.total << ")\n";
  os << "  degree    ";
  for (const auto& [d, c] : report.by_degree) os << '\t' << d;
  os << "\n  count     ";
  for (const auto& [d, c] : report.by_degree) {
    auto it = report.squarefree_by_degree.find(d);
    os << '\t' << c << " (" << (it == report.squarefree_by_degree.end() ? 0 : it->second) << ")";
  }
  os << '\n';
  return os.str();
}

namespace {

std::string monomial_text(const std::vector<std::int64_t>& exps, const Grid& grid) {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += grid.variable_name(i);
    if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
  }
  return out.empty() ? "1" : out;
}

std::vector<std::int64_t> parse_monomial(const std::string& text, const Grid& grid) {
  std::vector<std::int64_t> exps(grid.edge_count(), 0);
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::int64_t power = 1;
    auto caret = token.find('^');
    std::string name = token.substr(0, caret);
    if (caret != std::string::npos) {
      try {
        power = std::stoll(token.substr(caret + 1));
      } catch (const std::exception&) {
        throw InputError("bad exponent in '" + token + "'");
      }
    }
    if (name == "1") {
      token.clear();
      return;
    }
    auto idx = grid.find_variable(name);
    if (idx == Grid::npos) throw InputError("unknown variable '" + name + "'");
    exps[idx] += power;
    token.clear();
  };
  for (char ch : text) {
    if (ch == '*' || ch == ' ' || ch == '\t') flush();
    else token += ch;
  }
  flush();
  return exps;
}

}  // namespace

std::string to_binomial(const LatticeElement& e, const Grid& grid) {
  return monomial_text(e.positive(), grid) + " - " + monomial_text(e.negative(), grid);
}

LatticeElement parse_binomial(const std::string& text, const Grid& grid) {
  // Split on the binary minus: a '-' preceded by whitespace.
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] == '-' && (text[i - 1] == ' ' || text[i - 1] == '\t')) {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) throw InputError("binomial needs the form 'monomial - monomial'");
  auto plus = parse_monomial(text.substr(0, split), grid);
  auto minus = parse_monomial(text.substr(split + 1), grid);
  std::vector<std::int64_t> v(plus.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = plus[i] - minus[i];
  return LatticeElement{std::move(v)};
}

}  // namespace cbdp
