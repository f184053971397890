#include "cbdp/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "cbdp/errors.hpp"
#include "json.hpp"

namespace cbdp {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

GridShape shape_of(const json& doc) {
  if (!doc.contains("shape") || !doc["shape"].is_array()) throw InputError("missing \"shape\" array");
  try {
    return GridShape(doc["shape"].get<std::vector<int>>());
  } catch (const json::exception&) {
    throw InputError("\"shape\" must be an array of integers");
  }
}

json shape_json(const GridShape& s) { return json(s.sizes()); }

mpq_class exact_value(const json& v) {
  if (v.is_string()) {
    mpq_class q;
    if (q.set_str(v.get<std::string>(), 10) != 0) throw InputError("bad rational: " + v.get<std::string>());
    if (q.get_den() == 0) throw InputError("zero denominator: " + v.get<std::string>());
    q.canonicalize();
    return q;
  }
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  if (v.is_number()) return mpq_class(v.get<double>());
  throw InputError("expected a number or a \"num/den\" string");
}

template <class T>
T value_of(const json& v);

template <>
double value_of<double>(const json& v) {
  if (v.is_number()) return v.get<double>();
  return exact_value(v).get_d();
}

template <>
mpq_class value_of<mpq_class>(const json& v) {
  return exact_value(v);
}

json to_json(double x) { return x; }
json to_json(const mpq_class& x) { return x.get_str(); }

std::string value_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::vector<int> int_list(const json& v, const char* what) {
  try {
    return v.get<std::vector<int>>();
  } catch (const json::exception&) {
    throw InputError(std::string(what) + " must be an array of integers");
  }
}

std::vector<int> key_coords(const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    int x = 0;
    auto res = std::from_chars(part.data(), part.data() + part.size(), x);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size()) throw InputError("bad key: " + key);
    out.push_back(x);
  }
  return out;
}

std::string coords_key(const std::vector<int>& u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(u[i]);
  }
  return out;
}

template <class T>
BasicKernel<T> kernel_from(std::string_view text) {
  auto doc = parse_json(text);
  BasicKernel<T> k(shape_of(doc));
  const Grid& g = k.grid();
  std::set<std::size_t> seen;
  if (!doc.contains("entries")) return k;
  if (!doc["entries"].is_array()) throw InputError("\"entries\" must be an array");
  for (const auto& e : doc["entries"]) {
    if (!e.contains("from") || !e.contains("dir") || !e.contains("sign") || !e.contains("p")) {
      throw InputError("kernel entries need from, dir, sign and p");
    }
    Vertex from = int_list(e["from"], "from");
    const int dir = e["dir"].get<int>();
    const int sign = e["sign"].get<int>();
    if (sign != 1 && sign != -1) throw InputError("sign must be +1 or -1");
    const std::size_t u = from.size() == static_cast<std::size_t>(g.dim()) ? g.vertex_index(from) : Grid::npos;
    const std::size_t edge = (u == Grid::npos || dir < 1 || dir > g.dim()) ? Grid::npos : g.edge_index(u, dir - 1, sign);
    if (edge == Grid::npos) {
      k.stray.push_back({from, dir - 1, sign, value_text(e["p"])});
      continue;
    }
    if (!seen.insert(edge).second) throw InputError("duplicate entry for " + g.variable_name(edge));
    k[edge] = value_of<T>(e["p"]);
  }
  return k;
}

template <class T>
std::string kernel_to(const BasicKernel<T>& k) {
  const Grid& g = k.grid();
  json entries = json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (k[e] == 0) continue;
    const auto& edge = g.edge(e);
    entries.push_back({{"from", g.vertex(edge.source)}, {"dir", edge.axis + 1}, {"sign", edge.sign}, {"p", to_json(k[e])}});
  }
  json doc = {{"shape", shape_json(k.shape())}, {"entries", entries}};
  return doc.dump(1) + "\n";
}

template <class T>
BasicParametrization<T> params_from(std::string_view text) {
  auto doc = parse_json(text);
  BasicParametrization<T> p(shape_of(doc));
  Grid g(p.shape);
  if (doc.contains("a")) {
    for (const auto& [key, v] : doc["a"].items()) {
      auto coords = key_coords(key);
      auto u = coords.size() == static_cast<std::size_t>(g.dim()) ? g.vertex_index(coords) : Grid::npos;
      if (u == Grid::npos) {
        throw InputError("vertex outside the grid: " + key);
      }
      p.a[u] = value_of<T>(v);
    }
  }
  if (doc.contains("W")) {
    for (const auto& [key, v] : doc["W"].items()) {
      auto kh = key_coords(key);
      if (kh.size() != 2 || kh[0] < 1 || kh[0] > g.dim() || kh[1] < 0 || kh[1] >= g.shape().size(kh[0] - 1)) {
        throw InputError("edge class outside the grid: " + key);
      }
      p.W[g.class_index({kh[0] - 1, kh[1]})] = value_of<T>(v);
    }
  }
  return p;
}

template <class T>
std::string params_to(const BasicParametrization<T>& p) {
  Grid g(p.shape);
  json a = json::object(), W = json::object();
  for (std::size_t u = 0; u < g.vertex_count(); ++u) a[coords_key(g.vertex(u))] = to_json(p.a[u]);
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    auto cls = g.class_at(c);
    W[std::to_string(cls.axis + 1) + "," + std::to_string(cls.level)] = to_json(p.W[c]);
  }
  json doc = {{"shape", shape_json(p.shape)}, {"a", a}, {"W", W}};
  return doc.dump(1) + "\n";
}

}  // namespace

template <class F>
auto guarded(F f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON content: ") + e.what());
  }
}

Kernel parse_kernel(std::string_view json_text) {
  return guarded([&] { return kernel_from<double>(json_text); });
}
ExactKernel parse_exact_kernel(std::string_view json_text) {
  return guarded([&] { return kernel_from<mpq_class>(json_text); });
}
std::string format_kernel(const Kernel& k) { return kernel_to(k); }
std::string format_kernel(const ExactKernel& k) { return kernel_to(k); }

Parametrization parse_parametrization(std::string_view json_text) {
  return guarded([&] { return params_from<double>(json_text); });
}
ExactParametrization parse_exact_parametrization(std::string_view json_text) {
  return guarded([&] { return params_from<mpq_class>(json_text); });
}
std::string format_parametrization(const Parametrization& p) { return params_to(p); }
std::string format_parametrization(const ExactParametrization& p) { return params_to(p); }

std::string format_matrix(const ExactMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += m(r, c).get_str();
    }
    out += '\n';
  }
  return out;
}

ExactMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw InputError("matrix file must start with \"rows cols\"");
  ExactMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::string tok;
      if (!(in >> tok)) throw InputError("matrix file ends early");
      if (m(r, c).set_str(tok, 10) != 0) throw InputError("bad matrix entry: " + tok);
      m(r, c).canonicalize();
    }
  }
  std::string extra;
  if (in >> extra) throw InputError("trailing data after matrix: " + extra);
  return m;
}

std::string format_lattice(const std::vector<LatticeElement>& elements, std::size_t cols) {
  std::string out = std::to_string(elements.size()) + " " + std::to_string(cols) + "\n";
  for (const auto& e : elements) {
    if (e.v.size() != cols) throw DimensionMismatch("lattice element has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) out += ' ';
      out += std::to_string(e.v[c]);
    }
    out += '\n';
  }
  return out;
}

std::vector<LatticeElement> parse_lattice(std::string_view text) {
  auto m = parse_matrix(text);
  std::vector<LatticeElement> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    LatticeElement e;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).get_den() != 1 || !m(r, c).get_num().fits_slong_p()) throw InputError("lattice entries must be small integers");
      e.v.push_back(m(r, c).get_num().get_si());
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_csv(const DenseMatrix& m, const Grid& grid) {
  if (m.n != grid.vertex_count()) throw DimensionMismatch("matrix size differs from vertex count");
  auto quoted = [](const std::string& s) { return "\"" + s + "\""; };
  std::string out = "from\\to";
  for (std::size_t v = 0; v < m.n; ++v) out += "," + quoted(grid.vertex_label(v));
  out += '\n';
  for (std::size_t u = 0; u < m.n; ++u) {
    out += quoted(grid.vertex_label(u));
    for (std::size_t v = 0; v < m.n; ++v) out += "," + format_double(m(u, v));
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace cbdp
