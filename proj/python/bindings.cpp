#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "msvc/error.hpp"
#include "msvc/gaussian.hpp"
#include "msvc/graph.hpp"
#include "msvc/hardness.hpp"
#include "msvc/reduction.hpp"
#include "msvc/regular.hpp"
#include "msvc/solvers.hpp"
#include "msvc/unweighting.hpp"

namespace py = pybind11;
using namespace msvc;

namespace {

WeightedGraph make_graph(Vertex n, const std::vector<std::tuple<Vertex, Vertex, double>>& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
  return WeightedGraph(n, std::move(es));
}

HardnessConfig make_config(const std::optional<std::vector<std::pair<double, double>>>& pairs) {
  if (!pairs) return figure1_config();
  std::vector<HardnessPair> out;
  for (const auto& [a, r] : *pairs) out.push_back({a, r});
  return HardnessConfig(std::move(out));
}

py::dict solve_dict(const SolveResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["ordering"] = std::vector<Vertex>(r.ordering.steps().begin(), r.ordering.steps().end());
  d["method"] = r.method;
  return d;
}

KvcMode kvc_mode(const std::string& mode, std::uint32_t restarts, std::uint64_t seed) {
  if (mode == "exact") return KvcMode::exact_mode();
  if (mode == "local") return KvcMode::local_search(restarts, seed);
  throw DomainError("kvc mode must be 'exact' or 'local'");
}

}  // namespace

PYBIND11_MODULE(_msvc, m) {
  m.doc() = "Minimum Sum Vertex Cover: solvers, hardness ratios and reductions";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidOrdering>(m, "InvalidOrdering", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<SamplingFailure>(m, "SamplingFailure", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<WeightedGraph>(m, "WeightedGraph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
      .def_property_readonly("vertex_count", &WeightedGraph::vertex_count)
      .def_property_readonly("edge_count", &WeightedGraph::edge_count)
      .def_property_readonly("total_weight", &WeightedGraph::total_weight)
      .def_property_readonly("edges",
                             [](const WeightedGraph& g) {
                               std::vector<std::tuple<Vertex, Vertex, double>> out;
                               for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
                               return out;
                             })
      .def("incident_weights", &WeightedGraph::incident_weights)
      .def("__eq__", [](const WeightedGraph& a, const WeightedGraph& b) { return a == b; })
      .def("__repr__", [](const WeightedGraph& g) {
        return "WeightedGraph(n=" + std::to_string(g.vertex_count()) + ", m=" + std::to_string(g.edge_count()) + ")";
      });

  m.def("read_graph", [](const std::string& text) { return read_graph(text); });
  m.def("write_graph", &write_graph);
  m.def("load_graph", &load_graph);
  m.def("save_graph", &save_graph);
  m.def("svc_value", [](const WeightedGraph& g, std::vector<Vertex> order) { return svc_value(g, Ordering(std::move(order))); });

  m.def("msvc_exact_dp", [](const WeightedGraph& g) { return solve_dict(msvc_exact_dp(g)); });
  m.def("msvc_bruteforce", [](const WeightedGraph& g) { return solve_dict(msvc_bruteforce(g)); });
  m.def("msvc_greedy", [](const WeightedGraph& g) { return solve_dict(msvc_greedy(g)); });
  m.def("msvc_random", [](const WeightedGraph& g, std::uint64_t seed) { return solve_dict(msvc_random(g, seed)); },
        py::arg("g"), py::arg("seed") = 0);
  m.def("flt_two_phase",
        [](const WeightedGraph& g, const std::string& mode, std::uint32_t restarts, std::uint64_t seed) {
          return solve_dict(flt_two_phase(g, kvc_mode(mode, restarts, seed)));
        },
        py::arg("g"), py::arg("mode") = "exact", py::arg("restarts") = 16, py::arg("seed") = 0);
  m.def("max_kvc",
        [](const WeightedGraph& g, std::size_t k, const std::string& mode, std::uint32_t restarts, std::uint64_t seed) {
          const auto r = max_kvc(g, k, kvc_mode(mode, restarts, seed));
          return py::make_tuple(r.subset, r.covered);
        },
        py::arg("g"), py::arg("k"), py::arg("mode") = "exact", py::arg("restarts") = 16, py::arg("seed") = 0);

  m.def("phi_cdf", &phi_cdf);
  m.def("phi_inv", &phi_inv);
  m.def("gamma_rho", [](double rho, double x, double y) { return gamma_rho(Correlation(rho), x, y); });
  m.def("gamma_rho_diag_deriv", [](double rho, double r) { return gamma_rho_diag_deriv(Correlation(rho), r); });
  m.def("integral_gamma", [](double rho, std::size_t nodes) { return integral_gamma(Correlation(rho), nodes); },
        py::arg("rho"), py::arg("nodes") = kIntegralNodes);

  m.def("single_ratio", [](double rho) { return single_ratio(Correlation(rho)); });
  m.def("completeness_limit", [](double rho, double gamma) { return completeness_limit(Correlation(rho), gamma); },
        py::arg("rho"), py::arg("gamma") = 0.0);
  m.def("figure1_config", [] {
    std::vector<std::pair<double, double>> out;
    for (const auto& p : figure1_config().pairs()) out.emplace_back(p.alpha, p.rho);
    return out;
  });
  m.def("composite_ratio",
        [](std::optional<std::vector<std::pair<double, double>>> pairs, std::uint64_t steps, double gamma, double eps) {
          const auto cfg = make_config(pairs);
          RatioReport rep;
          {
            py::gil_scoped_release release;
            rep = composite_ratio(cfg, steps, {gamma, eps, kDefaultDepth, kDefaultGridExponent});
          }
          py::dict d;
          d["ratio"] = rep.ratio;
          d["completeness_value"] = rep.completeness_value;
          d["soundness_value"] = rep.soundness_value;
          d["steps"] = rep.steps;
          return d;
        },
        py::arg("pairs") = py::none(), py::arg("steps") = 100000, py::arg("gamma") = 0.0, py::arg("eps") = 0.0);

  m.def("perfect_circulant_ug",
        [](int L, std::int32_t side, int degree, std::uint64_t seed) {
          auto pi = perfect_circulant_ug(L, side, degree, seed);
          return py::make_tuple(write_ug(pi.instance), pi.labeling);
        },
        py::arg("L"), py::arg("side"), py::arg("degree"), py::arg("seed") = 0,
        "Returns the instance in its text format and the planted labeling.");
  m.def("build_long_code_graph", [](const std::string& ug, double rho) {
    return build_long_code_graph(read_ug(ug), Correlation(rho)).graph;
  });
  m.def("verify_reduction", [](const WeightedGraph& g, const std::string& ug, double rho) {
    const auto r = verify_reduction(g, read_ug(ug), Correlation(rho));
    py::dict d;
    d["passes"] = r.passes;
    d["max_incident_deviation"] = r.max_incident_deviation;
    d["total_deviation"] = r.total_deviation;
    d["expected_total"] = r.expected_total;
    d["kept_total"] = r.kept_total;
    d["loop_weight"] = r.loop_weight;
    return d;
  });
  m.def("completeness_ordering", [](const std::string& ug, const UGLabeling& z) {
    const auto o = completeness_ordering(read_ug(ug), z);
    return std::vector<Vertex>(o.steps().begin(), o.steps().end());
  });

  m.def("sample_gadget",
        [](int side, double w, double eps, std::uint64_t seed) {
          const auto g = sample_gadget({side, w, eps, seed});
          py::dict d;
          d["degree"] = g.degree;
          d["edges"] = g.edges;
          d["attempt"] = g.attempt;
          d["max_deviation"] = g.max_deviation;
          d["bound_3eps"] = g.bound_3eps;
          d["bound_2eps"] = g.bound_2eps;
          return d;
        },
        py::arg("m"), py::arg("w"), py::arg("eps"), py::arg("seed") = 0);
  m.def("unweight",
        [](const WeightedGraph& g, int side, double eps, std::uint64_t seed, unsigned threads) {
          UnweightResult r;
          {
            py::gil_scoped_release release;
            r = unweight(g, side, eps, seed, {}, threads);
          }
          return py::make_tuple(r.graph, r.degree_spread);
        },
        py::arg("g"), py::arg("m"), py::arg("eps"), py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("minimize_flt_ratio",
        [](double alpha, double step) {
          const auto a = minimize_flt_ratio(alpha, step);
          return py::make_tuple(a.optimal_eps, a.optimal_ratio);
        },
        py::arg("alpha") = kAlphaLLZ, py::arg("step") = 1e-5);
  m.def("counterexample_graph", [](std::int64_t p, std::int64_t q, std::int64_t scale) {
    return counterexample_graph(resolve_counterexample({p, q, scale}));
  }, py::arg("p") = 1, py::arg("q") = 10, py::arg("scale") = 1);

  m.attr("ALPHA_LLZ") = kAlphaLLZ;
  m.attr("__version__") = MSVC_TOOL_VERSION;
}
