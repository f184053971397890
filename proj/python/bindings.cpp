#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cbdp/bases.hpp"
#include "cbdp/errors.hpp"
#include "cbdp/ideal.hpp"
#include "cbdp/io.hpp"
#include "cbdp/verify.hpp"

namespace py = pybind11;
using namespace cbdp;

namespace {

std::vector<std::vector<long>> to_rows(const ExactMatrix& m) {
  std::vector<std::vector<long>> rows(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c).get_num().get_si();
  }
  return rows;
}

ExactMatrix which_matrix(const std::string& shape, const std::string& which) {
  if (which == "A") return build_A(GridShape::parse(shape));
  if (which == "S") return build_S(GridShape::parse(shape));
  throw InputError("which must be A or S");
}

std::vector<LatticeElement> elements(const std::string& shape, const std::string& kind) {
  const auto s = GridShape::parse(shape);
  const auto A = build_A(s);
  if (kind == "graver") return graver_basis(A);
  if (kind == "circuits") return circuits(A);
  if (kind == "markov") return minimal_markov_basis(A, graver_basis(A));
  if (kind == "markov-saturation") return markov_basis_by_saturation(s);
  throw InputError("kind must be graver, circuits, markov or markov-saturation");
}

py::dict profile_dict(const std::vector<LatticeElement>& els) {
  const auto p = profile(els);
  py::dict d;
  d["total"] = p.total;
  d["by_degree"] = p.by_degree;
  d["squarefree_by_degree"] = p.squarefree_by_degree;
  return d;
}

py::array_t<double> to_array(const DenseMatrix& m) {
  py::array_t<double> out({m.n, m.n});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) view(i, j) = m(i, j);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_cbdp, m) {
  m.doc() = "Nearest-neighbour chains on grids whose axis moves commute";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<PositivityError>(m, "PositivityError", PyExc_ValueError);
  py::register_exception<PathInconsistency>(m, "PathInconsistency", PyExc_ValueError);
  py::register_exception<ClassInconsistency>(m, "ClassInconsistency", PyExc_ValueError);
  py::register_exception<NotStochastic>(m, "NotStochastic", PyExc_ValueError);

  m.def("edge_names", [](const std::string& shape) {
    Grid g(GridShape::parse(shape));
    std::vector<std::string> names;
    for (std::size_t e = 0; e < g.edge_count(); ++e) names.push_back(g.variable_name(e));
    return names;
  }, py::arg("shape"));

  m.def("matrix", [](const std::string& shape, const std::string& which) { return to_rows(which_matrix(shape, which)); },
        py::arg("shape"), py::arg("which") = "A", "A or S as a list of integer rows");
  m.def("rank", [](const std::string& shape, const std::string& which) { return rank_exact(which_matrix(shape, which)); },
        py::arg("shape"), py::arg("which") = "A");
  m.def("predicted_ranks", [](const std::string& shape) {
    auto p = predicted_ranks(GridShape::parse(shape));
    return std::make_pair(p.rank_A, p.rank_S);
  }, py::arg("shape"));

  m.def("basis", [](const std::string& shape, const std::string& kind) {
    Grid g(GridShape::parse(shape));
    std::vector<std::string> out;
    for (const auto& e : elements(shape, kind)) out.push_back(to_binomial(e, g));
    return out;
  }, py::arg("shape"), py::arg("kind") = "graver", "Basis elements as binomial strings");
  m.def("profile", [](const std::string& shape, const std::string& kind) { return profile_dict(elements(shape, kind)); },
        py::arg("shape"), py::arg("kind") = "graver");
  m.def("is_unimodular", [](const std::string& shape) {
    return is_unimodular(graver_basis(build_A(GridShape::parse(shape)))).unimodular;
  }, py::arg("shape"));

  m.def("check_kernel", [](const std::string& json_text, bool exact) {
    py::dict d;
    if (exact) {
      auto k = parse_exact_kernel(json_text);
      d["valid"] = validate(k).valid();
      d["commuting"] = check_commuting(k).commuting;
    } else {
      auto k = parse_kernel(json_text);
      d["valid"] = validate(k).valid();
      d["commuting"] = check_commuting(k).commuting;
    }
    return d;
  }, py::arg("kernel_json"), py::arg("exact") = false);
  m.def("parametrize", [](const std::string& json_text, bool exact) {
    if (exact) return format_parametrization(extract_parametrization(parse_exact_kernel(json_text)));
    return format_parametrization(extract_parametrization(parse_kernel(json_text)));
  }, py::arg("kernel_json"), py::arg("exact") = false, "Parametrization JSON of a commuting kernel");
  m.def("kernel_of", [](const std::string& params_json) { return format_kernel(build_kernel(parse_parametrization(params_json))); },
        py::arg("params_json"));
  m.def("random_parametrization", [](const std::string& shape, std::uint64_t seed) {
    return format_parametrization(random_parametrization(GridShape::parse(shape), seed));
  }, py::arg("shape"), py::arg("seed") = 12345);
  m.def("normalize", [](const std::string& params_json, double c) {
    return format_parametrization(normalize_stochastic(parse_parametrization(params_json), c));
  }, py::arg("params_json"), py::arg("c") = 0.0);
  m.def("tstep", [](const std::string& params_json, int t, double c) {
    return to_array(tstep_matrix(parse_parametrization(params_json), {t, c}));
  }, py::arg("params_json"), py::arg("t"), py::arg("c") = 0.0);
  m.def("simulate", [](const std::string& params_json, std::size_t start, int t, double c, std::uint64_t samples,
                       std::uint64_t seed) {
    return simulate(parse_parametrization(params_json), start, {t, c}, samples, seed).frequencies;
  }, py::arg("params_json"), py::arg("start"), py::arg("t"), py::arg("c"), py::arg("samples"), py::arg("seed") = 12345);

  m.def("ideal_generators", [](const std::string& shape) {
    Grid g(GridShape::parse(shape));
    Ring r = Ring::of_grid(g);
    std::vector<std::string> out;
    for (const auto& p : commutation_generators(g, r.order)) out.push_back(format_polynomial(p, r));
    return out;
  }, py::arg("shape"));
  m.def("ideal_member", [](const std::string& shape, const std::string& poly, std::optional<std::vector<std::string>> gens) {
    Grid g(GridShape::parse(shape));
    Ring r = Ring::of_grid(g);
    std::vector<Polynomial> ps;
    if (gens) {
      for (const auto& t : *gens) ps.push_back(parse_polynomial(t, r));
    } else {
      ps = commutation_generators(g, r.order);
    }
    return contains(buchberger(ps, r.nvars(), r.order), parse_polynomial(poly, r));
  }, py::arg("shape"), py::arg("poly"), py::arg("gens") = py::none());
  m.def("verify_unit_square_decomposition", &verify_unit_square_decomposition);

  m.def("verify_paper", [](const std::string& level) {
    auto report = verify_paper(parse_level(level));
    py::list checks;
    for (const auto& c : report.checks) {
      py::dict d;
      d["id"] = c.id;
      d["citation"] = c.citation;
      d["expected"] = c.expected;
      d["computed"] = c.computed;
      d["outcome"] = outcome_name(c.outcome);
      d["seconds"] = c.seconds;
      checks.append(d);
    }
    py::dict out;
    out["passed"] = report.passed();
    out["checks"] = checks;
    return out;
  }, py::arg("level") = "quick");
}
