#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pushpull/report.hpp"

namespace py = pybind11;
using namespace pushpull;

namespace {

double parse_exponent(const py::object& p) {
  if (py::isinstance<py::str>(p)) {
    if (p.cast<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw ConfigError("exponent string must be \"inf\"");
  }
  return p.cast<double>();
}

DirectionSelect parse_direction(const std::string& direction) {
  if (direction == "push") return DirectionSelect::kPush;
  if (direction == "pull") return DirectionSelect::kPull;
  if (direction == "both") return DirectionSelect::kBoth;
  throw ConfigError("direction must be push, pull or both");
}

}  // namespace

PYBIND11_MODULE(_pushpull, m) {
  m.doc() = "Singular-value machinery and L^p transport bound certification";

  py::register_exception<Error>(m, "PushpullError");

  m.def("binomial", &binomial, py::arg("n"), py::arg("k"));
  m.def(
      "lex_multi_indices",
      [](int n, int k) {
        std::vector<std::vector<int>> out;
        for (const auto& tuple : lex_multi_indices(n, k).tuples()) out.push_back(tuple);
        return out;
      },
      py::arg("n"), py::arg("k"));
  m.def("compound", &compound, py::arg("matrix"), py::arg("k"));
  m.def("singular_values", &singular_values, py::arg("matrix"));
  m.def("conjugate_exponent", &conjugate_exponent, py::arg("p"));

  py::class_<AlternatingTensor>(m, "AlternatingTensor")
      .def(py::init<int, int, Vector>(), py::arg("n"), py::arg("k"), py::arg("coeffs"))
      .def_readonly("n", &AlternatingTensor::n)
      .def_readonly("k", &AlternatingTensor::k)
      .def_readonly("coeffs", &AlternatingTensor::coeffs)
      .def("euclidean_norm", &AlternatingTensor::euclidean_norm);
  m.def("wedge", &wedge, py::arg("a"), py::arg("b"));
  m.def("hodge_star", &hodge_star, py::arg("a"));
  m.def(
      "comass_norm", [](const AlternatingTensor& a) { return comass_norm(a); },
      py::arg("a"));
  m.def(
      "apply_to_vectors",
      [](const AlternatingTensor& a, const Matrix& vectors) {
        return apply_to_vectors(a, vectors);
      },
      py::arg("a"), py::arg("vectors"));

  m.def(
      "load_scenario_names",
      [](const std::string& path) { return load_scenario(path).name; },
      py::arg("path"));
  m.def("builtin_scenario_names", []() {
    std::vector<std::string> names;
    for (const auto& config : builtin_catalog()) names.push_back(config.name);
    return names;
  });
  m.def(
      "write_builtin_scenario",
      [](const std::string& name, const std::string& path) {
        for (const auto& config : builtin_catalog()) {
          if (config.name == name) {
            save_scenario(config, path);
            return;
          }
        }
        throw ConfigError("unknown builtin scenario: " + name);
      },
      py::arg("name"), py::arg("path"));

  m.def(
      "run_scenario",
      [](const std::string& path, const std::string& direction, int order, int samples,
         std::uint64_t seed, const std::string& out) {
        const ScenarioConfig config = load_scenario(path);
        RunOptions options;
        if (order > 0) options.quadrature_order = order;
        if (samples > 0) options.sup_samples = samples;
        options.seed = seed;
        const RunReport report = run(config, parse_direction(direction), options, out);
        return py::module_::import("json").attr("loads")(to_json(report).dump());
      },
      py::arg("path"), py::arg("direction") = "both", py::arg("order") = 0,
      py::arg("samples") = 0, py::arg("seed") = 0, py::arg("out") = "");

  m.def(
      "certify_tuple",
      [](const std::string& path, const std::string& direction, int k,
         const py::object& p, int order, int samples) {
        const ScenarioConfig config = load_scenario(path);
        CertifyOptions options;
        options.quadrature_order = order > 0 ? order : config.quadrature_order;
        options.sup_samples = samples > 0 ? samples : config.sup_samples;
        options.eps_sup = config.eps_sup;
        const bool pull = direction == "pull";
        TransportContext context(config.name, build_map(config), options);
        const FormField form = build_form(config, k, pull);
        const BoundCertificate cert = context.certify(
            form, pull ? Direction::kPullback : Direction::kPushforward,
            parse_exponent(p));
        py::dict out;
        out["scenario"] = cert.scenario;
        out["direction"] = to_string(cert.direction);
        out["k"] = cert.k;
        out["norm_source"] = cert.norm_source;
        out["norm_pushed"] = cert.norm_pushed;
        out["factor_lower"] = cert.factors.lower;
        out["factor_upper"] = cert.factors.upper;
        out["r_low"] = cert.r_low;
        out["r_up"] = cert.r_up;
        out["eps"] = cert.eps;
        out["pass"] = cert.pass;
        return out;
      },
      py::arg("path"), py::arg("direction"), py::arg("k"), py::arg("p"),
      py::arg("order") = 0, py::arg("samples") = 0);

  m.def(
      "emit_pointwise_csv",
      [](const std::string& path, const std::vector<std::string>& fields, int resolution,
         const std::string& out) {
        emit_pointwise_csv(load_scenario(path), fields, resolution, out);
      },
      py::arg("path"), py::arg("fields"), py::arg("resolution"), py::arg("out"));
}
