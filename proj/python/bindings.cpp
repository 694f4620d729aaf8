#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sdec/delaunay.hpp"
#include "sdec/errors.hpp"
#include "sdec/fixtures.hpp"
#include "sdec/hodge.hpp"
#include "sdec/mesh_io.hpp"
#include "sdec/poisson.hpp"
#include "sdec/report.hpp"
#include "sdec/signed_dual.hpp"

namespace py = pybind11;
using namespace sdec;

namespace {

HodgeMode mode_from(bool use_unsigned) { return use_unsigned ? HodgeMode::unsigned_volumes : HodgeMode::signed_volumes; }

Eigen::MatrixXd point_rows(const MeshData& m)
{
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(m.points.size()), m.ambient_dim);
    for (std::size_t i = 0; i < m.points.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = m.points[i].transpose();
    return rows;
}

MeshData mesh_from(const Eigen::MatrixXd& points, const std::vector<std::vector<Index>>& cells)
{
    MeshData m;
    m.ambient_dim = static_cast<int>(points.cols());
    for (Eigen::Index i = 0; i < points.rows(); ++i) m.points.emplace_back(points.row(i).transpose());
    m.cells = cells;
    return m;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Signed circumcentric duals and the diagonal Hodge star";

    py::register_exception<Error>(m, "Error");

    py::class_<MeshData>(m, "Mesh")
        .def(py::init(&mesh_from), py::arg("points"), py::arg("cells"))
        .def_property_readonly("points", &point_rows)
        .def_readonly("cells", &MeshData::cells)
        .def_readonly("ambient_dim", &MeshData::ambient_dim)
        .def("write", [](const MeshData& mesh, const std::filesystem::path& p) { write_mesh(mesh, p); });

    m.def("read_mesh", py::overload_cast<const std::filesystem::path&>(&read_mesh), py::arg("path"));
    m.def("fixture", &fixtures::generate, py::arg("name"), py::arg("params") = std::map<std::string, double>{});
    m.def("fixture_names", &fixtures::names);

    m.def(
        "report_json",
        [](const MeshData& mesh) {
            const auto cx = mesh.to_complex();
            return report_json(cx, classify_complex(cx)).dump();
        },
        py::arg("mesh"));

    m.def(
        "dual_volumes",
        [](const MeshData& mesh, int p) {
            const auto v = dual_volumes(mesh.to_complex(), p);
            return py::make_tuple(v.signed_volumes, v.unsigned_volumes);
        },
        py::arg("mesh"), py::arg("p"), "(signed, unsigned) dual volumes of the p-simplices");

    m.def(
        "hodge_star",
        [](const MeshData& mesh, int p, bool use_unsigned) {
            return hodge_star(mesh.to_complex(), p, mode_from(use_unsigned)).entries;
        },
        py::arg("mesh"), py::arg("p"), py::arg("unsigned") = false);

    m.def(
        "simplices",
        [](const MeshData& mesh, int p) {
            const auto cx = mesh.to_complex();
            std::vector<std::vector<Index>> out;
            for (std::size_t i = 0; i < cx.count(p); ++i) out.push_back(cx.simplex(p, i).vertices);
            return out;
        },
        py::arg("mesh"), py::arg("p"), "Vertex tuples of the p-simplices in the order used by the other functions");

    m.def(
        "figure1",
        [](int cells, double jitter, std::uint64_t seed, int flips) {
            Figure1Config cfg;
            cfg.cells = cells;
            cfg.jitter = jitter;
            cfg.seed = seed;
            cfg.flips = flips;
            py::list out;
            for (const ExperimentResult& r : figure1_columns(cfg)) {
                py::dict d;
                d["label"] = r.label();
                d["summary"] = experiment_json(r).dump();
                d["points"] = point_rows(r.mesh);
                d["cells"] = r.mesh.cells;
                d["u"] = r.solution.u;
                d["sigma"] = r.solution.sigma;
                out.append(d);
            }
            return out;
        },
        py::arg("cells") = 16, py::arg("jitter") = 0.25, py::arg("seed") = 1, py::arg("flips") = 8);
}
