#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <memory>
#include <tuple>
#include <optional>

#include "graphprod/config.hpp"
#include "graphprod/error.hpp"
#include "graphprod/lemma_checks.hpp"
#include "graphprod/rd_verifier.hpp"

namespace py = pybind11;
using namespace graphprod;

namespace {

// Elements cross the boundary as `v<i>:<elt>` strings; the graph stays on the C++ side.
class Workbench {
 public:
  explicit Workbench(WorkbenchConfig config)
      : config_(std::move(config)), graph_(build_graph(config_)), window_(*graph_, config_.window) {}

  const WorkbenchConfig& config() const { return config_; }

  py::dict normal_form(const std::string& expr) const {
    const auto g = parse_element(*graph_, expr);
    py::dict out;
    out["normal_form"] = g.to_string();
    out["lambda"] = g.syllable_length();
    out["ell"] = g.ell();
    return out;
  }

  std::string multiply(const std::string& a, const std::string& b) const {
    return graphprod::multiply(parse_element(*graph_, a), parse_element(*graph_, b)).to_string();
  }

  std::string invert(const std::string& a) const {
    return graphprod::invert(parse_element(*graph_, a)).to_string();
  }

  std::vector<std::string> sphere(std::size_t k) const { return render(window_.sphere(k)); }

  std::vector<std::string> left_divisors(const std::string& expr, std::size_t k) const {
    return render(graphprod::left_divisors(parse_element(*graph_, expr), k));
  }

  std::vector<std::pair<std::string, std::string>> factorisations(const std::string& expr,
                                                                  std::size_t k, std::size_t l) const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [g1, g2] : graphprod::factorisations(parse_element(*graph_, expr), k, l)) {
      out.emplace_back(g1.to_string(), g2.to_string());
    }
    return out;
  }

  py::dict p2_decompose(const std::string& h1, const std::string& h2) const {
    const auto d = graphprod::p2_decompose(parse_element(*graph_, h1), parse_element(*graph_, h2));
    py::dict out;
    out["g1"] = d.g1.to_string();
    out["s1"] = d.s1.to_string();
    out["w"] = d.w.to_string();
    out["s2"] = d.s2.to_string();
    out["g2"] = d.g2.to_string();
    out["J"] = d.J.vertices();
    out["q"] = d.q;
    return out;
  }

  std::size_t ff_empirical(std::size_t k, std::size_t l, const std::vector<Vertex>& J) const {
    return graphprod::ff_empirical(window_, k, l, VertexSet::from(J));
  }

  py::dict verify_lemma1(std::size_t k_max, std::size_t l_max) const {
    const auto r = graphprod::verify_lemma1(window_, k_max, l_max);
    py::dict out;
    out["ok"] = r.ok();
    out["factor_rows"] = r.factor_rows.size();
    out["mf_rows"] = r.mf_rows.size();
    out["injectivity_checks"] = r.injectivity_checks;
    out["failures"] = r.failures;
    return out;
  }

  py::dict verify_lemma2(std::size_t k_max, std::size_t l_max, bool all_witnesses) const {
    const auto r = graphprod::verify_lemma2(window_, k_max, l_max, all_witnesses);
    py::dict out;
    out["ok"] = r.ok();
    out["pairs"] = r.pairs;
    out["witnesses"] = r.witnesses;
    out["failures"] = r.failures;
    return out;
  }

  py::dict vanishing(std::size_t k_max, std::size_t l_max, std::size_t trials) const {
    const auto r = vanishing_check(window_, k_max, l_max, trials, config_.seed);
    py::dict out;
    out["checks"] = r.checks;
    out["violations"] = r.violations;
    out["boundary_witnesses"] = r.boundary_witnesses;
    out["boundary_missing"] = r.boundary_missing;
    return out;
  }

  double trilinear_ratio(std::size_t k, std::size_t l, std::size_t m, double r) const {
    auto power = scan_options(config_, 1).constants.power;
    return graphprod::trilinear_ratio(window_, LevelKind::Lambda, k, l, m, r, power).value;
  }

  std::vector<py::dict> clique_constants() const {
    std::vector<py::dict> out;
    const auto summary = rd_constants_max(window_, scan_options(config_, 1).constants);
    for (const auto& c : summary.per_clique) {
      py::dict row;
      row["clique"] = c.clique ? c.clique->vertices() : std::vector<Vertex>{};
      row["c"] = c.c;
      row["r"] = c.r;
      row["stable"] = c.stable;
      out.push_back(std::move(row));
    }
    return out;
  }

  std::string rd_scan_csv(std::size_t threads) const {
    return scan_csv(rd_scan(window_, scan_options(config_, threads)));
  }

 private:
  template <typename Range>
  static std::vector<std::string> render(const Range& elements) {
    std::vector<std::string> out;
    for (const auto& g : elements) {
      out.push_back(g.to_string());
    }
    return out;
  }

  WorkbenchConfig config_;
  std::unique_ptr<PresentationGraph> graph_;
  Window window_;
};

double tensor_norm(std::array<std::size_t, 3> dims,
                   const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, double>>& entries,
                   std::size_t restarts, std::uint64_t seed) {
  SparseTensor3 t;
  t.dims = dims;
  for (const auto& [i, j, k, v] : entries) {
    t.entries.push_back({i, j, k, v});
  }
  PowerIterationOptions options;
  options.restarts = restarts;
  options.seed = seed;
  return estimate_tensor_norm(t, options).value;
}

}  // namespace

PYBIND11_MODULE(_graphprod, m) {
  m.doc() = "Graph products of groups: normal forms, enumeration and rapid-decay checks";

  // Later registrations are tried first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<Workbench>(m, "Workbench")
      .def_static("from_file", [](const std::string& path) { return Workbench(load_config(path)); })
      .def_static("from_json", [](const std::string& text) { return Workbench(parse_config(text)); })
      .def_property_readonly("config_json", [](const Workbench& w) { return dump_config(w.config()); })
      .def_property_readonly("seed", [](const Workbench& w) { return w.config().seed; })
      .def("normal_form", &Workbench::normal_form, py::arg("expr"))
      .def("multiply", &Workbench::multiply)
      .def("invert", &Workbench::invert)
      .def("sphere", &Workbench::sphere, py::arg("k"))
      .def("left_divisors", &Workbench::left_divisors, py::arg("expr"), py::arg("k"))
      .def("factorisations", &Workbench::factorisations, py::arg("expr"), py::arg("k"), py::arg("l"))
      .def("p2_decompose", &Workbench::p2_decompose)
      .def("ff_empirical", &Workbench::ff_empirical, py::arg("k"), py::arg("l"),
           py::arg("clique") = std::vector<Vertex>{})
      .def("verify_lemma1", &Workbench::verify_lemma1, py::arg("k_max"), py::arg("l_max"))
      .def("verify_lemma2", &Workbench::verify_lemma2, py::arg("k_max"), py::arg("l_max"),
           py::arg("all_witnesses") = false)
      .def("vanishing", &Workbench::vanishing, py::arg("k_max"), py::arg("l_max"), py::arg("trials"))
      .def("trilinear_ratio", &Workbench::trilinear_ratio, py::arg("k"), py::arg("l"), py::arg("m"),
           py::arg("r") = 0.0)
      .def("clique_constants", &Workbench::clique_constants)
      .def("rd_scan_csv", &Workbench::rd_scan_csv, py::arg("threads") = 1,
           py::call_guard<py::gil_scoped_release>());

  m.def("tensor_norm", &tensor_norm, py::arg("dims"), py::arg("entries"), py::arg("restarts") = 16,
        py::arg("seed") = 0, "Power-iteration estimate of the spectral norm of a sparse 3-tensor");
}
