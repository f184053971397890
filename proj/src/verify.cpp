#include "cbdp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "cbdp/bases.hpp"
#include "cbdp/errors.hpp"
#include "cbdp/ideal.hpp"
#include "cbdp/io.hpp"
#include "cbdp/kernel.hpp"
#include "cbdp/parametrization.hpp"
#include "cbdp/spectral.hpp"
#include "json.hpp"

namespace cbdp {

Level parse_level(const std::string& text) {
  if (text == "quick") return Level::Quick;
  if (text == "full") return Level::Full;
  if (text == "stretch") return Level::Stretch;
  throw InputError("level must be quick, full or stretch: " + text);
}

std::string level_name(Level level) {
  switch (level) {
    case Level::Quick: return "quick";
    case Level::Full: return "full";
    case Level::Stretch: return "stretch";
  }
  return "?";
}

std::string outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "FAIL";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t VerificationReport::count(Outcome o) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [o](const auto& c) { return c.outcome == o; }));
}

const std::vector<LatticeElement>& CheckContext::graver(const GridShape& shape) {
  std::shared_ptr<Slot> slot;
  {
    std::lock_guard lock(mutex_);
    auto& s = graver_[shape.sizes()];
    if (!s) s = std::make_shared<Slot>();
    slot = s;
  }
  std::call_once(slot->once, [&] {
    try {
      slot->value = graver_basis(A(shape));
    } catch (...) {
      slot->error = std::current_exception();
    }
  });
  if (slot->error) std::rethrow_exception(slot->error);
  return slot->value;
}

namespace {

GridShape shp(const char* text) { return GridShape::parse(text); }

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

// "shape:value" for each shape.
template <class F>
std::string per_shape(std::initializer_list<const char*> shapes, F f) {
  std::vector<std::string> parts;
  for (const char* s : shapes) parts.push_back(std::string(s) + ":" + f(shp(s)));
  return join(parts);
}

std::string squarefree_profile(const BasisReport& r) {
  std::vector<std::string> parts;
  for (const auto& [d, c] : r.by_degree) {
    auto it = r.squarefree_by_degree.find(d);
    parts.push_back(std::to_string(d) + ":" + std::to_string(it == r.squarefree_by_degree.end() ? 0 : it->second));
  }
  return join(parts);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string size_of(const ExactMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

bool product_is_zero(const ExactMatrix& S, const ExactMatrix& A) {
  if (S.cols() != A.cols()) return false;
  for (std::size_t i = 0; i < S.rows(); ++i) {
    for (std::size_t j = 0; j < A.rows(); ++j) {
      mpq_class acc = 0;
      for (std::size_t c = 0; c < S.cols(); ++c) acc += S(i, c) * A(j, c);
      if (acc != 0) return false;
    }
  }
  return true;
}

// (cI + P)^t by dense repeated multiplication.
DenseMatrix dense_power(const Kernel& k, double c, int t) {
  const Grid& g = k.grid();
  const std::size_t n = g.vertex_count();
  DenseMatrix step(n), result(n);
  for (std::size_t u = 0; u < n; ++u) {
    step(u, u) = c;
    result(u, u) = 1;
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) step(g.edge(e).source, g.edge(e).target) += k[e];
  for (int s = 0; s < t; ++s) {
    DenseMatrix next(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        const double x = result(i, l);
        if (x == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next(i, j) += x * step(l, j);
      }
    }
    result = std::move(next);
  }
  return result;
}

std::string markov_profile(CheckContext& ctx, const GridShape& s) {
  return format_profile(profile(minimal_markov_basis(ctx.A(s), ctx.graver(s))));
}

std::vector<CheckSpec> build_table() {
  std::vector<CheckSpec> t;
  auto add = [&](std::string id, Level level, std::string citation, std::string expected,
                 std::function<std::string(CheckContext&)> compute) {
    t.push_back({std::move(id), level, std::move(citation), std::move(expected), std::move(compute)});
  };
  const auto Q = Level::Quick, F = Level::Full, X = Level::Stretch;

  // Constraint and parametrization matrices.
  add("matrix.A.2x1.rank", Q, "Example 3.9", "rank 8",
      [](CheckContext& c) { return "rank " + std::to_string(rank_exact(c.A(shp("2x1")))); });
  add("matrix.A.2x1.size", Q, "Example 3.9", "9x14", [](CheckContext& c) { return size_of(c.A(shp("2x1"))); });
  add("matrix.S.2x1.rank", Q, "Example 3.6", "rank 6",
      [](CheckContext&) { return "rank " + std::to_string(rank_exact(build_S(shp("2x1")))); });
  add("matrix.S.2x1.size", Q, "Example 3.6", "8x14", [](CheckContext&) { return size_of(build_S(shp("2x1"))); });
  add("matrix.orthogonal", Q, "Corollary 3.10, S A^T = 0 and rank A + rank S = #columns",
      "1x1:true 2x1:true 2x2:true", [](CheckContext& c) {
        return per_shape({"1x1", "2x1", "2x2"}, [&](const GridShape& s) {
          auto A = c.A(s);
          auto S = build_S(s);
          return yes_no(product_is_zero(S, A) && rank_exact(A) + rank_exact(S) == A.cols());
        });
      });
  add("matrix.A.rank", Q, "Lemma 3.11, rank A = #rows - 1", "1x1:5 2x1:8 2x2:12", [](CheckContext& c) {
    return per_shape({"1x1", "2x1", "2x2"}, [&](const GridShape& s) { return std::to_string(rank_exact(c.A(s))); });
  });
  add("matrix.S.rank", Q, "Proposition 3.12, rank S = #columns - rank A", "1x1:3 2x1:6 2x2:12", [](CheckContext&) {
    return per_shape({"1x1", "2x1", "2x2"}, [](const GridShape& s) { return std::to_string(rank_exact(build_S(s))); });
  });
  add("matrix.S.cells", Q, "Remark 3.13, alternating cell count", "1x1:3 2x1:6 2x2:12", [](CheckContext&) {
    return per_shape({"1x1", "2x1", "2x2"}, [](const GridShape& s) { return std::to_string(cell_alternating_sum(s)); });
  });

  // Parametrization.
  add("param.count", Q, "Remark 3.3, n_1 + ... + n_m edge and prod(n_k + 1) vertex parameters", "2x1:3+6 2x2:4+9",
      [](CheckContext&) {
        return per_shape({"2x1", "2x2"}, [](const GridShape& s) {
          Grid g(s);
          return std::to_string(g.class_count()) + "+" + std::to_string(g.vertex_count());
        });
      });
  add("param.roundtrip", Q, "Theorem 3.1", "recovered", [](CheckContext& c) -> std::string {
    double worst = 0;
    int seed = 0;
    for (const char* s : {"1x1", "2x1", "2x2", "3x2", "1x1x1"}) {
      for (int i = 0; i < 4; ++i) {
        auto p = random_parametrization(shp(s), c.hooks().seed + static_cast<std::uint64_t>(seed++));
        auto k = build_kernel(p);
        if (!is_commuting(k)) return std::string("non-commuting kernel on ") + s;
        auto back = extract_parametrization(k);
        for (std::size_t j = 0; j < p.a.size(); ++j) worst = std::max(worst, std::abs(back.a[j] - p.a[j]) / p.a[j]);
        for (std::size_t j = 0; j < p.W.size(); ++j) worst = std::max(worst, std::abs(back.W[j] - p.W[j]) / p.W[j]);
      }
    }
    return worst <= 1e-12 ? "recovered" : "relative error " + format_double(worst);
  });

  // Spectral formula.
  add("spectral.normalize", Q, "Section 2, rows of cI + P sum to 1", "row sums within 1e-12", [](CheckContext& c) {
    double worst = 0;
    for (const char* s : {"2x1", "2x2", "3x2", "1x1x1"}) {
      auto p = normalize_stochastic(random_parametrization(shp(s), c.hooks().seed), 0.25);
      auto k = build_kernel(p);
      const Grid& g = k.grid();
      std::vector<double> rows(g.vertex_count(), 0.25);
      for (std::size_t e = 0; e < g.edge_count(); ++e) rows[g.edge(e).source] += k[e];
      for (double r : rows) worst = std::max(worst, std::abs(r - 1));
    }
    return worst <= 1e-12 ? "row sums within 1e-12" : "row sum error " + format_double(worst);
  });
  add("spectral.tstep", Q, "Section 2, t-step transition probabilities", "max error within 1e-10",
      [](CheckContext& c) {
        double worst = 0;
        std::uint64_t seed = c.hooks().seed;
        for (const char* s : {"1x1", "2x1", "3x2", "2x2", "1x1x1"}) {
          for (int t : {1, 7, 30}) {
            auto p = normalize_stochastic(random_parametrization(shp(s), seed++), 0.3);
            auto spectral = tstep_matrix(p, {t, 0.3});
            auto dense = dense_power(build_kernel(p), 0.3, t);
            for (std::size_t i = 0; i < dense.data.size(); ++i) worst = std::max(worst, std::abs(dense.data[i] - spectral.data[i]));
          }
        }
        return worst <= 1e-10 ? "max error within 1e-10" : "max error " + format_double(worst);
      });

  // Graver, circuit and Markov bases.
  add("bases.2x1.graver", Q, "Example 4.1, Graver basis", "29",
      [](CheckContext& c) { return std::to_string(c.graver(shp("2x1")).size()); });
  add("bases.2x1.markov", Q, "Example 4.1, Markov basis", "12", [](CheckContext& c) {
    return std::to_string(minimal_markov_basis(c.A(shp("2x1")), c.graver(shp("2x1"))).size());
  });
  add("bases.2x1.walks", Q, "Example 4.12", "29",
      [](CheckContext&) { return std::to_string(combinatorial_circuits(shp("2x1")).size()); });
  add("bases.2x2.unimodular", Q, "Theorem 4.5, 2x2 grid", "true",
      [](CheckContext& c) { return yes_no(is_unimodular(c.graver(shp("2x2"))).unimodular); });

  add("bases.1x1x1.graver", F, "1x1x1 table, Graver", "2:42 3:224 4:1032 5:1728 6:672",
      [](CheckContext& c) { return format_profile(profile(c.graver(shp("1x1x1")))); });
  add("bases.1x1x1.graver-squarefree", F, "1x1x1 table, Graver, squarefree", "2:42 3:224 4:1032 5:1152 6:96",
      [](CheckContext& c) { return squarefree_profile(profile(c.graver(shp("1x1x1")))); });
  add("bases.1x1x1.circuits", F, "1x1x1 table, circuits", "2:42 3:224 4:1032 5:1728 6:576",
      [](CheckContext& c) { return format_profile(profile(circuits_from_graver(c.graver(shp("1x1x1"))))); });
  add("bases.1x1x1.circuits-squarefree", F, "1x1x1 table, circuits, squarefree", "2:42 3:224 4:1032 5:1152 6:0",
      [](CheckContext& c) { return squarefree_profile(profile(circuits_from_graver(c.graver(shp("1x1x1"))))); });
  add("bases.1x1x1.markov", F, "Example 5.8, 1x1x1 table, Markov", "2:33 3:8 4:12",
      [](CheckContext& c) { return markov_profile(c, shp("1x1x1")); });
  add("bases.3x2.graver", F, "3x2 table, Graver", "2:45 3:128 4:464 5:1600 6:3904 7:4928 8:1088",
      [](CheckContext& c) { return format_profile(profile(c.graver(shp("3x2")))); });
  add("bases.3x2.graver-squarefree", F, "3x2 table, Graver, squarefree", "2:45 3:128 4:464 5:1600 6:3904 7:4032 8:192",
      [](CheckContext& c) { return squarefree_profile(profile(c.graver(shp("3x2")))); });
  add("bases.3x2.circuits", F, "3x2 table, circuits", "2:45 3:128 4:464 5:1600 6:3904 7:4928 8:896",
      [](CheckContext& c) { return format_profile(profile(circuits_from_graver(c.graver(shp("3x2"))))); });
  add("bases.3x2.circuits-squarefree", F, "3x2 table, circuits, squarefree", "2:45 3:128 4:464 5:1600 6:3904 7:4032 8:0",
      [](CheckContext& c) { return squarefree_profile(profile(circuits_from_graver(c.graver(shp("3x2"))))); });
  add("bases.3x2.markov", F, "3x2 table, Markov", "2:36 4:4 5:4 6:4",
      [](CheckContext& c) { return markov_profile(c, shp("3x2")); });
  add("bases.unimodular", F, "Theorem 4.5", "1x1:true 2x1:true 3x1:true 4x1:true 2x2:true 3x2:false 1x1x1:false",
      [](CheckContext& c) {
        return per_shape({"1x1", "2x1", "3x1", "4x1", "2x2", "3x2", "1x1x1"},
                         [&](const GridShape& s) { return yes_no(is_unimodular(c.graver(s)).unimodular); });
      });
  add("bases.certificate", F, "Theorem 4.5, proof, entry of absolute value 2", "3x2:2 1x1x1:2", [](CheckContext& c) {
    return per_shape({"3x2", "1x1x1"}, [&](const GridShape& s) -> std::string {
      auto r = is_unimodular(c.graver(s));
      if (!r.certificate) return "none";
      std::int64_t m = 0;
      for (auto x : r.certificate->v) m = std::max<std::int64_t>(m, std::abs(x));
      return std::to_string(m);
    });
  });
  add("bases.witness-circuits", F, "Theorem 4.5, proof, witness circuits", "3x2:circuit 1x1x1:circuit",
      [](CheckContext& c) {
        const std::pair<const char*, const char*> cases[] = {
            {"3x2", "L10*L30*U01^2*U20*D02*D31 - L12*L32*U10*U11*U31*D01*D22"},
            {"1x1x1", "R000^2*D010*F100*B001 - R001*R011*D110*F010*B111"}};
        std::vector<std::string> parts;
        for (const auto& [s, text] : cases) {
          Grid g(shp(s));
          auto r = verify_kernel_vector(c.A(shp(s)), parse_binomial(text, g));
          parts.push_back(std::string(s) + ":" + (r.in_kernel && r.primitive && r.support_minimal ? "circuit" : "not a circuit"));
        }
        return join(parts);
      });
  add("bases.strip-walks", F, "Lemma 4.11, signed walks are the circuits of the n x 1 strip", "1x1:true 2x1:true 3x1:true 4x1:true",
      [](CheckContext& c) {
        return per_shape({"1x1", "2x1", "3x1", "4x1"}, [&](const GridShape& s) {
          auto A = c.A(s);
          std::vector<LatticeElement> walks;
          for (const auto& support : combinatorial_circuits(s)) walks.push_back(signed_circuit_vector(A, support));
          sort_canonical(walks);
          walks.erase(std::unique(walks.begin(), walks.end()), walks.end());
          auto expected = circuits_from_graver(c.graver(s));
          sort_canonical(expected);
          return yes_no(walks == expected);
        });
      });

  // Binomial ideals.
  add("ideal.2x2.quadrics", Q, "Section 5, 4mn quadrics", "16",
      [](CheckContext&) { return std::to_string(commutation_generators(Grid(shp("2x2"))).size()); });
  add("ideal.1x1x1.quadrics", F, "Example 5.8, 24 quadrics", "24",
      [](CheckContext&) { return std::to_string(commutation_generators(Grid(shp("1x1x1"))).size()); });
  add("ideal.unit-square", F, "Example 5.2", "true", [](CheckContext&) { return yes_no(verify_unit_square_decomposition()); });
  add("ideal.2x2.markov", F, "Example 5.5, 24 quadrics and 2 quartics", "2:24 4:2",
      [](CheckContext& c) { return markov_profile(c, shp("2x2")); });
  add("ideal.2x2.quartics", F, "Example 5.5, quartics (5.3), D11 read as D21 in the second",
      "toric:true,true quadrics:false,false", [](CheckContext& c) {
        Grid grid(shp("2x2"));
        Ring r = Ring::of_grid(grid);
        auto toric = buchberger(binomials_of(minimal_markov_basis(c.A(grid.shape()), c.graver(grid.shape())), r.order),
                                grid.edge_count(), r.order);
        BuchbergerOptions opts;
        opts.max_degree = 4;
        auto quadrics = buchberger(commutation_generators(grid, r.order), grid.edge_count(), r.order, opts);
        std::string in_toric, in_quadrics;
        for (const char* text : {"R00*L22*U20*D02 - R02*L20*U00*D22", "R10*L12*U21*D01 - R12*L10*U01*D21"}) {
          auto q = parse_polynomial(text, r);
          in_toric += (in_toric.empty() ? "" : ",") + yes_no(contains(toric, q));
          in_quadrics += (in_quadrics.empty() ? "" : ",") + yes_no(contains(quadrics, q));
        }
        return "toric:" + in_toric + " quadrics:" + in_quadrics;
      });
  add("ideal.3x3.degree-eight", F, "Section 5, binomial (5.6)", "in kernel, primitive, degree 8", [](CheckContext& c) {
    Grid grid(shp("3x3"));
    auto v = parse_binomial("U00*U32*L20*L30*L13*L23*R21*R02 - U30*U02*L11*L21*L22*L32*R00*R23", grid);
    auto r = verify_kernel_vector(c.A(grid.shape()), v);
    if (!r.in_kernel) return std::string("not in kernel");
    return std::string(r.primitive ? "in kernel, primitive" : "in kernel, not primitive") + ", degree " +
           std::to_string(v.degree());
  });

  add("ideal.strip", X, "Example 5.4, 11 components", "true", [](CheckContext&) { return yes_no(verify_strip_decomposition()); });
  add("ideal.2x3.non-radical", X, "Note added in proof", "f:false f^2:true", [](CheckContext& c) {
    BuchbergerOptions opts;
    opts.max_pairs = static_cast<std::size_t>(c.hooks().budget);
    auto w = kahle_witness(opts);
    if (!w.f_in_ideal || !w.f_squared_in_ideal) throw BudgetExceeded("witness computation ran out of budget");
    return "f:" + yes_no(*w.f_in_ideal) + " f^2:" + yes_no(*w.f_squared_in_ideal);
  });
  add("bases.3x3.markov", X, "Section 5, 314 minimal generators", "2:54 4:8 5:16 6:36 8:200", [](CheckContext& c) {
    SaturationOptions opts;
    opts.max_pairs = std::max<std::size_t>(static_cast<std::size_t>(c.hooks().budget), 50'000'000);
    return format_profile(profile(markov_basis_by_saturation(shp("3x3"), opts)));
  });

  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return t;
}

}  // namespace

const std::vector<CheckSpec>& check_table() {
  static const std::vector<CheckSpec> table = build_table();
  return table;
}

VerificationReport verify_paper(Level level, const HarnessHooks& hooks) {
  std::vector<const CheckSpec*> selected;
  for (const auto& spec : check_table()) {
    if (spec.level <= level) selected.push_back(&spec);
  }
  VerificationReport report;
  report.level = level;
  report.checks.resize(selected.size());
  CheckContext ctx(hooks);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      const auto& spec = *selected[i];
      auto& r = report.checks[i];
      r.id = spec.id;
      r.citation = spec.citation;
      r.expected = spec.expected;
      const auto t0 = std::chrono::steady_clock::now();
      bool budget = false;
      try {
        r.computed = spec.compute(ctx);
      } catch (const BudgetExceeded& e) {
        r.computed = std::string("budget exceeded: ") + e.what();
        budget = true;
      } catch (const std::exception& e) {
        r.computed = std::string("error: ") + e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (r.computed == r.expected && !budget) {
        r.outcome = Outcome::Pass;
      } else {
        r.outcome = (budget || spec.level == Level::Stretch) ? Outcome::Inconclusive : Outcome::Fail;
      }
    }
  };
  unsigned threads = hooks.threads ? hooks.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, selected.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return report;
}

std::string format_report(const VerificationReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", c.seconds);
    os << outcome_name(c.outcome) << "  " << c.id << "  [" << c.citation << ", " << c.expected << "]";
    if (c.outcome != Outcome::Pass) os << "  computed: " << c.computed;
    os << "  (" << secs << ")\n";
  }
  os << report.count(Outcome::Pass) << " passed, " << report.count(Outcome::Fail) << " failed, "
     << report.count(Outcome::Inconclusive) << " inconclusive (level " << level_name(report.level) << ")\n";
  return os.str();
}

std::string format_report_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"citation", c.citation},
                      {"expected", c.expected},
                      {"computed", c.computed},
                      {"outcome", outcome_name(c.outcome)},
                      {"seconds", c.seconds}});
  }
  nlohmann::json doc = {{"level", level_name(report.level)},
                        {"passed", report.passed()},
                        {"counts",
                         {{"pass", report.count(Outcome::Pass)},
                          {"fail", report.count(Outcome::Fail)},
                          {"inconclusive", report.count(Outcome::Inconclusive)}}},
                        {"checks", checks}};
  return doc.dump(1) + "\n";
}

}  // namespace cbdp
