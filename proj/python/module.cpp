#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "homcone/dual.hpp"
#include "homcone/montecarlo.hpp"
#include "homcone/power.hpp"
#include "homcone/structure.hpp"
#include "homcone/triangular.hpp"
#include "homcone/validation.hpp"
#include "homcone/wishart.hpp"

namespace py = pybind11;
using namespace homcone;

namespace {

Side parse_side(const std::string& side) {
    if (side == "Q" || side == "q") return Side::Q;
    if (side == "P" || side == "p") return Side::P;
    throw std::invalid_argument("side must be 'Q' or 'P'");
}

py::dict report_to_dict(const FixtureReport& rep) {
    py::dict d;
    d["name"] = rep.name;
    d["pass"] = rep.pass();
    py::list lines;
    for (const auto& line : rep.lines) {
        py::dict entry;
        entry["label"] = line.label;
        entry["computed"] = line.computed;
        entry["expected"] = line.expected;
        entry["tolerance"] = line.tolerance;
        lines.append(entry);
    }
    d["lines"] = lines;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Wishart exponential families on homogeneous cones in matrix realization";

    // translators run newest-first, so the base class goes first
    py::register_exception<ConeError>(m, "ConeError");
    py::register_exception<NotHomogeneous>(m, "NotHomogeneousError");

    py::class_<BlockStructure>(m, "Structure")
        .def_property_readonly("rank", &BlockStructure::rank)
        .def_property_readonly("sizes", &BlockStructure::sizes)
        .def_property_readonly("size", &BlockStructure::size)
        .def_property_readonly("dim_z", &BlockStructure::dim_z)
        .def("block_basis", &BlockStructure::block_basis, py::arg("l"), py::arg("k"))
        .def("z_basis", &BlockStructure::z_basis)
        .def("project", &BlockStructure::project, py::arg("x"),
             "orthogonal projection of Sym(N) onto the block space")
        .def("coords", &BlockStructure::coords, py::arg("x"))
        .def("from_coords", &BlockStructure::from_coords, py::arg("c"))
        .def("in_space", &BlockStructure::in_space, py::arg("x"), py::arg("tol") = 1e-9)
        .def("to_json", [](const BlockStructure& s) { return structure_to_json(s); })
        .def("__eq__", [](const BlockStructure& a, const BlockStructure& b) { return a == b; })
        .def("__repr__", [](const BlockStructure& s) {
            return "<Structure r=" + std::to_string(s.rank()) +
                   " N=" + std::to_string(s.size()) +
                   " dim_z=" + std::to_string(s.dim_z()) + ">";
        });

    m.def("preset", &preset, py::arg("name"),
          "named structures: 'sym(n)', 'vinberg', 'dual_vinberg'");
    m.def("structure_from_json", &structure_from_json, py::arg("text"));
    m.def("load_structure", &load_structure, py::arg("path"));
    m.def(
        "structure_from_graph",
        [](int vertices, const std::vector<std::pair<int, int>>& edges) {
            auto res = structure_from_graph(Graph{vertices, edges});
            return py::make_tuple(res.structure, res.ordering);
        },
        py::arg("vertices"), py::arg("edges"),
        "returns (structure, ordering); raises NotHomogeneousError with a witness");

    m.def("validate", [](const BlockStructure& s) {
        auto rep = validate_structure(s);
        py::dict d;
        d["pass"] = rep.pass();
        d["v1_residual"] = rep.v1_residual;
        d["v2_residual"] = rep.v2_residual;
        d["v3_residual"] = rep.v3_residual;
        d["orthonormality_residual"] = rep.orthonormality_residual;
        d["tolerance"] = rep.tolerance;
        return d;
    });

    m.def("in_cone", &in_cone, py::arg("structure"), py::arg("x"));
    m.def("in_dual_cone", &in_dual_cone, py::arg("structure"), py::arg("xi"));

    // triangular group (factors passed as plain matrices, validated on entry)
    m.def(
        "character",
        [](const BlockStructure& s, const Vector& shape, const Matrix& t) {
            return character(shape, TriangularFactor::from_matrix(s, t));
        },
        py::arg("structure"), py::arg("shape"), py::arg("t"));
    m.def(
        "action",
        [](const BlockStructure& s, const Matrix& t, const Matrix& x) {
            return action(TriangularFactor::from_matrix(s, t), x);
        },
        py::arg("structure"), py::arg("t"), py::arg("x"), "rho(T) x = T x T^T");
    m.def(
        "dual_action",
        [](const BlockStructure& s, const Matrix& t, const Matrix& xi) {
            return dual_action(TriangularFactor::from_matrix(s, t), xi);
        },
        py::arg("structure"), py::arg("t"), py::arg("xi"), "rho*(T) = pi o rho(T^T)");
    m.def(
        "cholesky",
        [](const BlockStructure& s, const Matrix& x) { return cholesky(s, x).matrix(); },
        py::arg("structure"), py::arg("x"), "the unique T in H_V with T T^T = x");
    m.def("hat_completion", &hat_completion, py::arg("structure"), py::arg("xi"));
    m.def(
        "dual_decompose",
        [](const BlockStructure& s, const Matrix& xi) {
            return dual_decompose(s, xi).matrix();
        },
        py::arg("structure"), py::arg("xi"), "the unique T with rho*(T) I = xi");

    // quadratic maps and power functions
    m.def("quadratic_map", &quadratic_map, py::arg("structure"), py::arg("i"), py::arg("w"));
    m.def("phi", &phi, py::arg("structure"), py::arg("i"), py::arg("xi"));
    m.def("phi_reduced", &phi_reduced, py::arg("structure"), py::arg("i"), py::arg("xi"));
    m.def("phi_adjoint", &phi_adjoint, py::arg("structure"), py::arg("i"), py::arg("X"));
    m.def("phi_reduced_adjoint", &phi_reduced_adjoint, py::arg("structure"), py::arg("i"),
          py::arg("X"));
    m.def("phi_big", &phi_big, py::arg("structure"), py::arg("xi"));
    m.def("power_cone", &power_cone, py::arg("structure"), py::arg("shape"), py::arg("x"),
          "generalized power function on P_V");
    m.def("power_dual", &power_dual, py::arg("structure"), py::arg("shape"), py::arg("xi"),
          "generalized power function on Q_V");
    m.def("grad_log_power_cone", &grad_log_power_cone, py::arg("structure"),
          py::arg("shape"), py::arg("x"));
    m.def("grad_log_power_dual", &grad_log_power_dual, py::arg("structure"),
          py::arg("shape"), py::arg("xi"));

    // Wishart families
    m.def(
        "gindikin",
        [](const BlockStructure& s, const std::string& side, const Vector& shape) {
            auto g = gindikin(s, parse_side(side), shape);
            py::dict d;
            d["in_set"] = g.in_set();
            d["epsilon"] = g.in_set() ? py::cast(*g.epsilon) : py::none().cast<py::object>();
            d["nondegenerate"] = g.nondegenerate;
            return d;
        },
        py::arg("structure"), py::arg("side"), py::arg("shape"));
    m.def("laplace_Q", &laplace_Q, py::arg("structure"), py::arg("shape"), py::arg("theta"));
    m.def("laplace_P", &laplace_P, py::arg("structure"), py::arg("shape"), py::arg("xi"));
    m.def("mean_Q", &mean_Q, py::arg("structure"), py::arg("shape"), py::arg("theta"));
    m.def("inverse_mean_Q", &inverse_mean_Q, py::arg("structure"), py::arg("shape"),
          py::arg("m"));
    m.def("lauritzen", &lauritzen, py::arg("structure"), py::arg("m"),
          "hat(m)^{-1}, the inverse of y -> pi(y^{-1})");
    m.def(
        "variance_Q",
        [](const BlockStructure& s, const Vector& shape, const Matrix& m) {
            return variance_Q(s, shape, m).coords();
        },
        py::arg("structure"), py::arg("shape"), py::arg("m"),
        "variance operator at mean m, as a dim_z x dim_z matrix in z coordinates");
    m.def(
        "variance_P",
        [](const BlockStructure& s, const Vector& shape, const Matrix& x) {
            return variance_P(s, shape, x).coords();
        },
        py::arg("structure"), py::arg("shape"), py::arg("x"));

    // dual realization
    py::class_<DualRealization>(m, "DualRealization")
        .def_property_readonly("source",
                               [](const DualRealization& r) { return r.source; })
        .def_property_readonly("target",
                               [](const DualRealization& r) { return r.target; })
        .def_property_readonly("permutation",
                               [](const DualRealization& r) { return r.permutation; })
        .def_property_readonly("l_matrix",
                               [](const DualRealization& r) { return r.l_matrix; })
        .def_property_readonly("l_inv_matrix",
                               [](const DualRealization& r) { return r.l_inv_matrix; })
        .def("to_source", &DualRealization::to_source, py::arg("x"))
        .def("to_target", &DualRealization::to_target, py::arg("xi"))
        .def("adjoint_to_target", &DualRealization::adjoint_to_target, py::arg("x"))
        .def("to_json", [](const DualRealization& r) { return dual_to_json(r); });
    m.def("dualize", &dualize, py::arg("structure"));
    m.def("check_strange", &check_strange, py::arg("realization"), py::arg("shape"),
          py::arg("x"));
    m.def(
        "variance_P_via_dual",
        [](const DualRealization& real, const Vector& shape, const Matrix& x) {
            return variance_P_via_dual(real, shape, x).coords();
        },
        py::arg("realization"), py::arg("shape"), py::arg("x"));

    // sampling
    m.def(
        "sample",
        [](const BlockStructure& s, const Matrix& theta, int degree, int count,
           std::uint64_t seed) { return sample(s, theta, degree, count, seed).coords; },
        py::arg("structure"), py::arg("theta"), py::arg("k"), py::arg("n"),
        py::arg("seed") = 0,
        "i.i.d. draws of the degree-k family at theta, one z-coordinate row per sample");
    m.def(
        "empirical_moments",
        [](const BlockStructure& s, const Matrix& coords) {
            SampleBatch batch{Matrix(), 0, 0, coords};
            Moments mom = empirical_moments(s, batch);
            py::dict d;
            d["mean"] = mom.mean;
            d["mean_se"] = mom.mean_se;
            d["cov"] = mom.cov;
            d["cov_se"] = mom.cov_se;
            return d;
        },
        py::arg("structure"), py::arg("coords"));

    // finite-difference oracles and fixtures
    m.def(
        "fd_gradient",
        [](const BlockStructure& s, const std::function<double(const Matrix&)>& f,
           const Matrix& point, double h) { return fd_gradient(s, f, point, h); },
        py::arg("structure"), py::arg("f"), py::arg("point"), py::arg("h"));
    m.def(
        "fd_jacobian",
        [](const BlockStructure& s, const std::function<Matrix(const Matrix&)>& g,
           const Matrix& point, double h) { return fd_jacobian(s, g, point, h).coords(); },
        py::arg("structure"), py::arg("g"), py::arg("point"), py::arg("h"));
    m.def("run_fixtures", [] {
        py::list out;
        for (const auto& rep : run_all_fixtures()) out.append(report_to_dict(rep));
        return out;
    });
}
