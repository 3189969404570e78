#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clq/c1chars.hpp"
#include "clq/fpoly.hpp"
#include "clq/grass.hpp"
#include "clq/levels.hpp"
#include "clq/verify.hpp"

namespace py = pybind11;
using namespace clq;

namespace {

DynkinData dynkin(const std::string& type, const std::vector<int>& i0) {
    DynkinData d = make_dynkin(type);
    return i0.empty() ? d : with_i0(d, i0);
}

// structured results cross the boundary as JSON text
std::string atlas_json(const std::string& type, const std::vector<int>& i0, int ell, std::size_t max_seeds) {
    DynkinData d = dynkin(type, i0);
    Limits lim;
    lim.max_seeds = max_seeds;
    if (ell == 1) {
        nlohmann::json j = c1_atlas(d).to_json();
        nlohmann::json labels = nlohmann::json::array();
        for (auto& r : c1_atlas(d).labels) labels.push_back(root_str(r));
        j["labels"] = labels;
        return j.dump();
    }
    return enumerate_atlas(build_gamma_ell_seed(d, ell).seed, lim).to_json().dump();
}

std::string fpoly(const std::string& type, const std::vector<int>& root, const std::string& route) {
    DynkinData d = make_dynkin(type);
    if (route == "principal") return f_poly_principal(root, d).str();
    if (route == "combinatorial") return f_poly_combinatorial(root, d).str();
    if (route == "geometric") return geometric_fpoly(root, d).str();
    throw Error(Err::InvalidArgument, "unknown route " + route);
}

std::string truncated(const std::string& type, const std::vector<int>& root, const std::vector<int>& i0,
                      const std::string& route) {
    DynkinData d = dynkin(type, i0);
    return truncated_root_char(root, d, parse_route(route)).to_json(d).dump();
}

std::string fm(const std::string& type, const std::string& mono) {
    DynkinData d = make_dynkin(type);
    return frenkel_mukhin(parse_ymonomial(mono), d).to_json(d).dump();
}

std::string dimension(const std::string& type, const std::string& mono, const std::vector<int>& i0) {
    return c1_dimension(parse_ymonomial(mono), dynkin(type, i0)).get_str();
}

std::string verify(const std::string& type, int samples, std::uint64_t seed) {
    return verify_all(make_dynkin(type), samples, seed).to_json().dump();
}

std::string mutate(const std::string& type, const std::vector<int>& seq) {
    Seed s = build_c1_seed(make_dynkin(type));
    for (int k : seq) s = mutate_seed(s, k - 1);
    return s.to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_clq, m) {
    py::register_exception<Error>(m, "ClqError", PyExc_ValueError);
    m.def("atlas_json", &atlas_json, py::arg("type"), py::arg("i0") = std::vector<int>{}, py::arg("ell") = 1,
          py::arg("max_seeds") = 100000);
    m.def("fpoly", &fpoly, py::arg("type"), py::arg("root"), py::arg("route") = "combinatorial");
    m.def("truncated_json", &truncated, py::arg("type"), py::arg("root"), py::arg("i0") = std::vector<int>{},
          py::arg("route") = "fpoly");
    m.def("fm_json", &fm, py::arg("type"), py::arg("mono"));
    m.def("dimension", &dimension, py::arg("type"), py::arg("mono"), py::arg("i0") = std::vector<int>{});
    m.def("verify_json", &verify, py::arg("type"), py::arg("samples") = 1000, py::arg("seed") = 1);
    m.def("mutate_json", &mutate, py::arg("type"), py::arg("seq"));
    m.def("positive_roots", [](const std::string& type) { return positive_roots(make_dynkin(type)); });
}
