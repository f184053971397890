#include "cbdp/cli.hpp"

#include <charconv>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cbdp/bases.hpp"
#include "cbdp/errors.hpp"
#include "cbdp/ideal.hpp"
#include "cbdp/io.hpp"
#include "cbdp/verify.hpp"
#include "json.hpp"

namespace cbdp {

namespace {

using nlohmann::json;

struct Globals {
  std::string shape = "2x1";
  bool exact = false;
  std::optional<double> tol;
  std::uint64_t seed = 12345;
  bool json = false;
  std::optional<std::uint64_t> budget;
  unsigned threads = 0;
};

std::size_t vertex_of(const Grid& g, const std::string& label) {
  Vertex v;
  std::stringstream ss(label);
  std::string part;
  while (std::getline(ss, part, ',')) {
    int x = 0;
    auto res = std::from_chars(part.data(), part.data() + part.size(), x);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size()) throw InputError("bad vertex: " + label);
    v.push_back(x);
  }
  const auto u = v.size() == static_cast<std::size_t>(g.dim()) ? g.vertex_index(v) : Grid::npos;
  if (u == Grid::npos) throw InputError("vertex outside the grid: " + label);
  return u;
}

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

ExactMatrix which_matrix(const std::string& which, const GridShape& shape) {
  if (which == "A") return build_A(shape);
  if (which == "S") return build_S(shape);
  throw InputError("--which must be A or S");
}

struct ElementOutput {
  bool profile = false;
  bool binomials = false;
  std::string out;
};

void add_element_flags(CLI::App* sub, ElementOutput& o) {
  sub->add_flag("--profile", o.profile, "Print the degree table instead of the elements");
  sub->add_flag("--binomials", o.binomials, "Print binomials instead of the integer matrix");
  sub->add_option("--out", o.out, "Write the elements to a file");
}

void emit_elements(std::ostream& out, const std::string& title, const std::vector<LatticeElement>& elements,
                   const Grid& grid, const ElementOutput& o, const Globals& g) {
  const auto report = profile(elements);
  if (g.json) {
    json doc = {{"shape", grid.shape().sizes()}, {"total", report.total}};
    json by_degree = json::object(), squarefree = json::object();
    for (const auto& [d, c] : report.by_degree) by_degree[std::to_string(d)] = c;
    for (const auto& [d, c] : report.squarefree_by_degree) squarefree[std::to_string(d)] = c;
    doc["by_degree"] = by_degree;
    doc["squarefree_by_degree"] = squarefree;
    if (!o.profile) {
      json list = json::array();
      for (const auto& e : elements) list.push_back(to_binomial(e, grid));
      doc["binomials"] = list;
    }
    emit(out, doc.dump(1) + "\n", o.out);
    return;
  }
  if (o.profile) {
    std::string squarefree;
    for (const auto& [d, c] : report.by_degree) {
      auto it = report.squarefree_by_degree.find(d);
      squarefree += (squarefree.empty() ? "" : " ") + std::to_string(d) + ":" +
                    std::to_string(it == report.squarefree_by_degree.end() ? 0 : it->second);
    }
    emit(out,
         format_profile_table(title + " " + grid.shape().to_string(), report) + "profile " + format_profile(report) +
             "\nsquarefree " + squarefree + "\n",
         o.out);
    return;
  }
  if (o.binomials) {
    std::string text;
    for (const auto& e : elements) text += to_binomial(e, grid) + "\n";
    emit(out, text, o.out);
    return;
  }
  emit(out, format_lattice(elements, grid.edge_count()), o.out);
}

std::vector<Polynomial> read_polynomials(const std::string& path, const Ring& ring) {
  std::vector<Polynomial> out;
  std::istringstream in(read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_polynomial(line, ring));
  }
  return out;
}

MonomialOrder order_of(const std::string& name) {
  if (name == "grevlex") return MonomialOrder::grevlex();
  if (name == "lex") return MonomialOrder::lex();
  throw InputError("--order must be grevlex or lex");
}

std::string format_basis(const GroebnerBasis& gb, const Ring& ring) {
  std::string text;
  for (const auto& p : gb.elements) text += format_polynomial(p, ring) + "\n";
  return text;
}

int decomposition(std::ostream& out, const GridShape& shape, const std::vector<PrimeComponent>& comps,
                  const BuchbergerOptions& opts, const Globals& g) {
  auto report = verify_decomposition(shape, comps, opts);
  if (g.json) {
    json labels = json::array();
    for (const auto& c : comps) labels.push_back(c.label);
    out << json{{"shape", shape.sizes()}, {"holds", report.holds}, {"components", labels}, {"codimensions", report.codimensions}}
               .dump(1)
        << "\n";
  } else {
    out << "components " << comps.size() << "\n";
    for (std::size_t i = 0; i < comps.size(); ++i) {
      out << "  " << comps[i].label << "  codim " << (i < report.codimensions.size() ? report.codimensions[i] : 0) << "\n";
    }
    out << "intersection equals the commutation ideal: " << (report.holds ? "true" : "false") << "\n";
  }
  return report.holds ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nearest-neighbour chains on grids whose axis moves commute", "cbdp"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  double tol = 0;
  std::uint64_t budget = 0;
  app.add_option("--shape", g.shape, "Grid shape such as 2x1 or 1x1x1");
  app.add_flag("--exact", g.exact, "Exact rational arithmetic where supported");
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance for floating-point checks");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_flag("--json", g.json, "Machine-readable output");
  auto* budget_opt = app.add_option("--budget", budget, "Cap on S-pairs or basis elements");
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)");

  auto* grid_cmd = app.add_subcommand("grid", "Vertices and directed edges in canonical order");

  std::string kernel_path;
  auto* check_cmd = app.add_subcommand("check", "Validate a kernel and test commutativity");
  check_cmd->add_option("--kernel", kernel_path, "Kernel JSON file")->required();

  std::string out_path;
  auto* param_cmd = app.add_subcommand("parametrize", "Recover (a, W) from a commuting kernel");
  param_cmd->add_option("--kernel", kernel_path, "Kernel JSON file")->required();
  param_cmd->add_option("--out", out_path, "Output file");

  std::string params_path;
  double c = 0;
  auto* norm_cmd = app.add_subcommand("normalize", "Rescale so that the rows of cI + P sum to 1");
  norm_cmd->add_option("--params", params_path, "Parametrization JSON file")->required();
  norm_cmd->add_option("--c", c, "Holding probability")->default_val(0.0);
  norm_cmd->add_option("--out", out_path, "Output file");

  int t = 1;
  std::string from, to;
  auto* tstep_cmd = app.add_subcommand("tstep", "t-step transition probabilities of cI + P");
  tstep_cmd->add_option("--params", params_path, "Parametrization JSON file")->required();
  tstep_cmd->add_option("--t", t, "Number of steps")->default_val(1);
  tstep_cmd->add_option("--c", c, "Holding probability")->default_val(0.0);
  tstep_cmd->add_option("--from", from, "Source vertex, e.g. 0,1");
  tstep_cmd->add_option("--to", to, "Target vertex");
  tstep_cmd->add_option("--out", out_path, "Output CSV file");

  std::uint64_t samples = 100000;
  std::string start = "";
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo law of Z_t");
  sim_cmd->add_option("--params", params_path, "Parametrization JSON file")->required();
  sim_cmd->add_option("--t", t, "Number of steps")->default_val(1);
  sim_cmd->add_option("--c", c, "Holding probability")->default_val(0.0);
  sim_cmd->add_option("--start", start, "Start vertex (default origin)");
  sim_cmd->add_option("--samples", samples, "Number of trajectories");

  std::string which = "A";
  auto* matrix_cmd = app.add_subcommand("matrix", "Print the parametrization (A) or constraint (S) matrix");
  matrix_cmd->add_option("--which", which, "A or S");
  matrix_cmd->add_option("--out", out_path, "Output file");
  auto* rank_cmd = app.add_subcommand("rank", "Exact rank of A or S");
  rank_cmd->add_option("--which", which, "A or S");
  bool predicted = false;
  rank_cmd->add_flag("--predicted", predicted, "Also print the closed-form prediction");
  auto* kb_cmd = app.add_subcommand("kernel-basis", "Lattice basis of the integer kernel of A or S");
  kb_cmd->add_option("--which", which, "A or S");
  kb_cmd->add_option("--out", out_path, "Output file");

  ElementOutput graver_o, circuits_o, comb_o, markov_o;
  auto* graver_cmd = app.add_subcommand("graver", "Graver basis of A");
  add_element_flags(graver_cmd, graver_o);
  auto* circuits_cmd = app.add_subcommand("circuits", "Circuits of A");
  add_element_flags(circuits_cmd, circuits_o);
  auto* comb_cmd = app.add_subcommand("circuits-comb", "Signed circuit vectors of the closed walks");
  add_element_flags(comb_cmd, comb_o);
  std::string method = "graver";
  auto* markov_cmd = app.add_subcommand("markov", "Minimal Markov basis of A");
  add_element_flags(markov_cmd, markov_o);
  markov_cmd->add_option("--method", method, "graver or saturation")->check(CLI::IsMember({"graver", "saturation"}));
  auto* unimod_cmd = app.add_subcommand("unimodular", "Whether every Graver element is squarefree");

  auto* ideal_cmd = app.add_subcommand("ideal", "Binomial ideals of the commutation system");
  ideal_cmd->require_subcommand(1);
  std::string gens_path, order_name = "grevlex";
  std::int64_t max_degree = -1;
  auto* gens_cmd = ideal_cmd->add_subcommand("gens", "Commutation quadrics");
  auto* gb_cmd = ideal_cmd->add_subcommand("gb", "Reduced Groebner basis");
  gb_cmd->add_option("--gens", gens_path, "Generator file, one polynomial per line (default: commutation quadrics)");
  gb_cmd->add_option("--order", order_name, "grevlex or lex");
  gb_cmd->add_option("--max-degree", max_degree, "Truncate at this degree (homogeneous input only)");
  std::string poly;
  auto* member_cmd = ideal_cmd->add_subcommand("member", "Ideal membership");
  member_cmd->add_option("--poly", poly, "Polynomial text")->required();
  member_cmd->add_option("--gens", gens_path, "Generator file (default: commutation quadrics)");
  member_cmd->add_option("--max-degree", max_degree, "Truncate the basis at this degree");
  std::string left, right;
  auto* inter_cmd = ideal_cmd->add_subcommand("intersect", "Intersection of two ideals");
  inter_cmd->add_option("--left", left, "Generator file")->required();
  inter_cmd->add_option("--right", right, "Generator file")->required();
  auto* v52_cmd = ideal_cmd->add_subcommand("verify-5-2", "Decomposition of the unit-square ideal into three primes");
  auto* v54_cmd = ideal_cmd->add_subcommand("verify-5-4", "Decomposition of the 2x1 ideal into eleven primes");
  auto* kahle_cmd = ideal_cmd->add_subcommand("kahle", "Non-radicality witness on the 2x3 grid");

  std::string level = "quick";
  auto* verify_cmd = app.add_subcommand("verify-paper", "Recompute the published numbers");
  verify_cmd->add_option("--level", level, "quick, full or stretch")->check(CLI::IsMember({"quick", "full", "stretch"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (tol_opt->count()) g.tol = tol;
  if (budget_opt->count()) g.budget = budget;

  try {
    const GridShape shape = GridShape::parse(g.shape);
    BuchbergerOptions bopts;
    if (g.budget) bopts.max_pairs = *g.budget;

    if (*grid_cmd) {
      Grid grid(shape);
      if (g.json) {
        json vertices = json::array(), edges = json::array();
        for (std::size_t u = 0; u < grid.vertex_count(); ++u) vertices.push_back(grid.vertex_label(u));
        for (std::size_t e = 0; e < grid.edge_count(); ++e) {
          edges.push_back({{"name", grid.variable_name(e)},
                           {"from", grid.vertex_label(grid.edge(e).source)},
                           {"to", grid.vertex_label(grid.edge(e).target)}});
        }
        out << json{{"shape", shape.sizes()}, {"vertices", vertices}, {"edges", edges}}.dump(1) << "\n";
      } else {
        out << "shape " << shape.to_string() << "\nvertices " << grid.vertex_count() << "\nedges " << grid.edge_count()
            << "\nedge classes " << grid.class_count() << "\n";
        for (std::size_t e = 0; e < grid.edge_count(); ++e) {
          out << grid.variable_name(e) << "  (" << grid.vertex_label(grid.edge(e).source) << ") -> ("
              << grid.vertex_label(grid.edge(e).target) << ")\n";
        }
      }
      return 0;
    }

    if (*check_cmd) {
      const auto text = read_text_file(kernel_path);
      bool valid = false, commuting = false, agree = true;
      std::string residual, commutator;
      std::vector<std::string> problems;
      auto collect = [&](const auto& report) {
        valid = report.valid();
        for (const auto& v : report.violations) {
          const char* kind = v.kind == Violation::Kind::Negative ? "negative"
                             : v.kind == Violation::Kind::RowSum ? "row sum above 1"
                                                                 : "off the grid";
          problems.push_back(std::string(kind) + " at " + v.where + " (" + format_double(v.amount) + ")");
        }
      };
      if (g.exact) {
        auto k = parse_exact_kernel(text);
        collect(validate(k));
        auto r = check_commuting(k);
        commuting = r.commuting;
        agree = r.agree;
        residual = r.max_residual.get_str();
        commutator = r.max_commutator.get_str();
      } else {
        auto k = parse_kernel(text);
        collect(validate(k, g.tol.value_or(1e-12)));
        auto r = check_commuting(k, g.tol);
        commuting = r.commuting;
        agree = r.agree;
        residual = format_double(r.max_residual);
        commutator = format_double(r.max_commutator);
      }
      if (g.json) {
        out << json{{"valid", valid},
                    {"commuting", commuting},
                    {"max_residual", residual},
                    {"max_commutator", commutator},
                    {"tests_agree", agree},
                    {"violations", problems}}
                   .dump(1)
            << "\n";
      } else {
        for (const auto& p : problems) out << "violation: " << p << "\n";
        out << "valid: " << (valid ? "true" : "false") << "\ncommuting: " << (commuting ? "true" : "false")
            << "\nmax quadric residual: " << residual << "\nmax commutator entry: " << commutator << "\n";
      }
      return valid && commuting ? 0 : 1;
    }

    if (*param_cmd) {
      const auto text = read_text_file(kernel_path);
      try {
        if (g.exact) {
          emit(out, format_parametrization(extract_parametrization(parse_exact_kernel(text))), out_path);
        } else {
          emit(out, format_parametrization(extract_parametrization(parse_kernel(text), g.tol.value_or(1e-9))), out_path);
        }
      } catch (const PositivityError& e) {
        err << "not parametrizable (positivity): " << e.what() << "\n";
        return 1;
      } catch (const PathInconsistency& e) {
        err << "not parametrizable (path inconsistency): " << e.what() << "\n";
        return 1;
      } catch (const ClassInconsistency& e) {
        err << "not parametrizable (edge class inconsistency): " << e.what() << "\n";
        return 1;
      }
      return 0;
    }

    if (*norm_cmd) {
      auto p = parse_parametrization(read_text_file(params_path));
      emit(out, format_parametrization(normalize_stochastic(p, c)), out_path);
      return 0;
    }

    if (*tstep_cmd) {
      auto p = parse_parametrization(read_text_file(params_path));
      Grid grid(p.shape);
      if (from.empty() != to.empty()) throw InputError("--from and --to go together");
      if (!from.empty()) {
        const double v = tstep_entry(p, {t, c}, vertex_of(grid, from), vertex_of(grid, to));
        if (g.json) {
          out << json{{"from", from}, {"to", to}, {"t", t}, {"c", c}, {"p", v}}.dump() << "\n";
        } else {
          out << format_double(v) << "\n";
        }
        return 0;
      }
      emit(out, format_csv(tstep_matrix(p, {t, c}), grid), out_path);
      return 0;
    }

    if (*sim_cmd) {
      auto p = parse_parametrization(read_text_file(params_path));
      Grid grid(p.shape);
      const std::size_t s = start.empty() ? 0 : vertex_of(grid, start);
      auto r = simulate(p, s, {t, c}, samples, g.seed, g.threads);
      if (g.json) {
        json rows = json::array();
        for (std::size_t v = 0; v < r.counts.size(); ++v) {
          rows.push_back({{"vertex", grid.vertex_label(v)}, {"count", r.counts[v]}, {"frequency", r.frequencies[v]}});
        }
        out << json{{"samples", samples}, {"seed", g.seed}, {"t", t}, {"c", c}, {"law", rows}}.dump(1) << "\n";
      } else {
        out << "vertex,count,frequency\n";
        for (std::size_t v = 0; v < r.counts.size(); ++v) {
          out << "\"" << grid.vertex_label(v) << "\"," << r.counts[v] << "," << format_double(r.frequencies[v]) << "\n";
        }
      }
      return 0;
    }

    if (*matrix_cmd) {
      emit(out, format_matrix(which_matrix(which, shape)), out_path);
      return 0;
    }

    if (*rank_cmd) {
      const auto m = which_matrix(which, shape);
      const auto r = rank_exact(m);
      const auto pr = predicted_ranks(shape);
      const auto p = which == "A" ? pr.rank_A : pr.rank_S;
      if (g.json) {
        out << json{{"which", which}, {"rows", m.rows()}, {"cols", m.cols()}, {"rank", r}, {"predicted", p}}.dump() << "\n";
      } else {
        out << r << "\n";
        if (predicted) out << "predicted " << p << "\n";
      }
      return 0;
    }

    if (*kb_cmd) {
      const auto m = which_matrix(which, shape);
      const auto basis = integer_kernel_basis(m);
      ExactMatrix k(basis.size(), m.cols());
      for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) k(i, j) = basis[i][j];
      }
      emit(out, format_matrix(k), out_path);
      return 0;
    }

    GraverOptions gopts;
    if (g.budget) gopts.max_elements = *g.budget;
    Grid grid(shape);

    if (*graver_cmd) {
      emit_elements(out, "Graver basis", graver_basis(build_A(shape), gopts), grid, graver_o, g);
      return 0;
    }
    if (*circuits_cmd) {
      emit_elements(out, "Circuits", circuits(build_A(shape), gopts), grid, circuits_o, g);
      return 0;
    }
    if (*comb_cmd) {
      const auto A = build_A(shape);
      std::vector<LatticeElement> walks;
      for (const auto& support : combinatorial_circuits(shape)) walks.push_back(signed_circuit_vector(A, support));
      sort_canonical(walks);
      walks.erase(std::unique(walks.begin(), walks.end()), walks.end());
      emit_elements(out, "Closed-walk circuits", walks, grid, comb_o, g);
      return 0;
    }
    if (*markov_cmd) {
      std::vector<LatticeElement> basis;
      if (method == "saturation") {
        SaturationOptions sopts;
        if (g.budget) sopts.max_pairs = *g.budget;
        basis = markov_basis_by_saturation(shape, sopts);
      } else {
        MarkovOptions mopts;
        if (g.budget) mopts.max_pairs = *g.budget;
        const auto A = build_A(shape);
        basis = minimal_markov_basis(A, graver_basis(A, gopts), mopts);
      }
      emit_elements(out, "Markov basis", basis, grid, markov_o, g);
      return 0;
    }
    if (*unimod_cmd) {
      const auto r = is_unimodular(graver_basis(build_A(shape), gopts));
      const std::string cert = r.certificate ? to_binomial(*r.certificate, grid) : "";
      if (g.json) {
        json doc = {{"shape", shape.sizes()}, {"unimodular", r.unimodular}};
        if (r.certificate) doc["certificate"] = cert;
        out << doc.dump(1) << "\n";
      } else {
        out << "unimodular: " << (r.unimodular ? "true" : "false") << "\n";
        if (r.certificate) out << "certificate: " << cert << "\n";
      }
      return 0;
    }

    if (*ideal_cmd) {
      const MonomialOrder order = order_of(order_name);
      const Ring ring = Ring::of_grid(grid, order);
      auto generators = [&] {
        return gens_path.empty() ? commutation_generators(grid, order) : read_polynomials(gens_path, ring);
      };
      if (*gens_cmd) {
        for (const auto& p : commutation_generators(grid, order)) out << format_polynomial(p, ring) << "\n";
        return 0;
      }
      if (*gb_cmd) {
        bopts.max_degree = max_degree;
        const auto gb = buchberger(generators(), ring.nvars(), order, bopts);
        if (g.json) {
          json els = json::array();
          for (const auto& p : gb.elements) els.push_back(format_polynomial(p, ring));
          out << json{{"order", order_name}, {"truncated_at", gb.truncated_at}, {"elements", els}}.dump(1) << "\n";
        } else {
          out << format_basis(gb, ring);
        }
        return 0;
      }
      if (*member_cmd) {
        bopts.max_degree = max_degree;
        const auto gb = buchberger(generators(), ring.nvars(), order, bopts);
        const bool in = contains(gb, parse_polynomial(poly, ring));
        if (g.json) {
          out << json{{"member", in}}.dump() << "\n";
        } else {
          out << (in ? "true" : "false") << "\n";
        }
        return 0;
      }
      if (*inter_cmd) {
        const auto I = buchberger(read_polynomials(left, ring), ring.nvars(), order, bopts);
        const auto J = buchberger(read_polynomials(right, ring), ring.nvars(), order, bopts);
        out << format_basis(ideal_intersection(I, J, bopts), ring);
        return 0;
      }
      if (*v52_cmd) return decomposition(out, GridShape({1, 1}), unit_square_components(), bopts, g);
      if (*v54_cmd) return decomposition(out, GridShape({2, 1}), strip_components(), bopts, g);
      if (*kahle_cmd) {
        const auto w = kahle_witness(bopts);
        auto text = [](const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : "inconclusive"; };
        if (g.json) {
          out << json{{"f", kahle_polynomial_text()},
                      {"f_in_ideal", text(w.f_in_ideal)},
                      {"f_squared_in_ideal", text(w.f_squared_in_ideal)},
                      {"basis_size", w.basis_size},
                      {"degree_reached", w.degree_reached}}
                     .dump(1)
              << "\n";
        } else {
          out << "f = " << kahle_polynomial_text() << "\nf in I: " << text(w.f_in_ideal)
              << "\nf^2 in I: " << text(w.f_squared_in_ideal) << "\nbasis size " << w.basis_size << " up to degree "
              << w.degree_reached << "\n";
        }
        return w.f_in_ideal == false && w.f_squared_in_ideal == true ? 0 : 1;
      }
    }

    if (*verify_cmd) {
      HarnessHooks hooks;
      hooks.threads = g.threads;
      hooks.seed = g.seed;
      if (g.budget) hooks.budget = *g.budget;
      const auto report = verify_paper(parse_level(level), hooks);
      out << (g.json ? format_report_json(report) : format_report(report));
      return report.passed() ? 0 : 1;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace cbdp
