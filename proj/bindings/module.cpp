#include "qgkm/session.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qgkm;

namespace {

std::string run_config(const std::string& config_json) {
    return run(SessionConfig::from_json_text(config_json)).json;
}

std::string run_inline(const std::string& text) {
    return run(SessionConfig::from_inline(text)).json;
}

int hom_dim_str(const std::string& a, const std::string& b) {
    return hom_dim(parse_nilpotent_rep(a), parse_nilpotent_rep(b));
}

int stratum_dim_str(const std::string& a, const std::string& b) {
    return stratum_dim(parse_nilpotent_rep(a), parse_nilpotent_rep(b));
}

std::vector<int> dimension_vector_str(const std::string& rep) {
    return dimension_vector(parse_nilpotent_rep(rep));
}

long long fixed_point_count(const std::string& rep, const std::vector<int>& e) {
    NilpotentRep m = parse_nilpotent_rep(rep);
    GradedRep r = graded_rep(coefficient_quiver(m));
    return (long long)closed_subsets(r, e).size();
}

std::string moment_graph_json(const std::string& rep, const std::vector<int>& e) {
    NilpotentRep m = parse_nilpotent_rep(rep);
    Pipeline pl(m, e);
    return export_graph(pl.graph, GraphFormat::json);
}

} // namespace

PYBIND11_MODULE(_qgkm, m) {
    m.doc() = "exact torus-equivariant geometry of nilpotent cycle-quiver Grassmannians";
    m.def("run_config", &run_config, py::arg("config_json"),
          "run the pipeline on a JSON session config, returns the JSON report");
    m.def("run_inline", &run_inline, py::arg("text"),
          "run the pipeline on an inline config like 'n=2; U(1,4)+U(2,2)+U(2,2); e=2,2'");
    m.def("hom_dim", &hom_dim_str, py::arg("source"), py::arg("target"));
    m.def("stratum_dim", &stratum_dim_str, py::arg("subtype"), py::arg("ambient"));
    m.def("dimension_vector", &dimension_vector_str, py::arg("rep"));
    m.def("fixed_point_count", &fixed_point_count, py::arg("rep"), py::arg("e"));
    m.def("moment_graph_json", &moment_graph_json, py::arg("rep"), py::arg("e"));
}
