#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nslab/besov.hpp"
#include "nslab/config.hpp"
#include "nslab/ou.hpp"
#include "nslab/renorm.hpp"
#include "nslab/schauder.hpp"
#include "nslab/solver.hpp"
#include "nslab/spectral_ops.hpp"
#include "nslab/trees.hpp"

namespace py = pybind11;
using namespace nslab;

namespace {

// Coefficient layout: complex array (components, 2N+1, 2N+1, 2N+1) with the
// axis index a mapping to frequency a - N.
py::array_t<std::complex<double>> field_to_array(const SpectralField& u) {
    const int side = 2 * u.N() + 1;
    py::array_t<std::complex<double>> out({u.components(), side, side, side});
    auto r = out.mutable_unchecked<4>();
    for (int c = 0; c < u.components(); ++c)
        u.box().for_each([&](const Wavevector& k) {
            r(c, k.k1 + u.N(), k.k2 + u.N(), k.k3 + u.N()) = u.at(c, k);
        });
    return out;
}

SpectralField field_from_array(py::array_t<std::complex<double>, py::array::c_style> arr) {
    auto r = arr.unchecked<4>();
    const int comps = int(r.shape(0));
    const int side = int(r.shape(1));
    if ((comps != 1 && comps != 3) || r.shape(2) != side || r.shape(3) != side || side % 2 == 0)
        throw std::invalid_argument("expected (1|3, 2N+1, 2N+1, 2N+1) complex array");
    const int N = (side - 1) / 2;
    SpectralField u(comps == 1 ? FieldRole::scalar : FieldRole::vector3, N);
    for (int c = 0; c < comps; ++c)
        u.box().for_each([&](const Wavevector& k) {
            u.at(c, k) = r(c, k.k1 + N, k.k2 + N, k.k3 + N);
        });
    return u;
}

py::array_t<double> grid_to_array(const GridField& g) {
    py::array_t<double> out({g.components(), g.M, g.M, g.M});
    std::copy(g.values.begin(), g.values.end(), out.mutable_data());
    return out;
}

GridField grid_from_array(py::array_t<double, py::array::c_style> arr) {
    auto r = arr.unchecked<4>();
    const int comps = int(r.shape(0));
    const int M = int(r.shape(1));
    GridField g(comps == 1 ? FieldRole::scalar : FieldRole::vector3, M);
    std::copy(arr.data(), arr.data() + arr.size(), g.values.begin());
    return g;
}

py::list tensor_to_list(const Tensor33& t) {
    py::list out;
    for (int i = 0; i < 3; ++i) {
        py::list row;
        for (int j = 0; j < 3; ++j) row.append(t[i][j]);
        out.append(row);
    }
    return out;
}
py::list tensor_to_list(const Tensor333& t) {
    py::list out;
    for (int i = 0; i < 3; ++i) out.append(tensor_to_list(t[i]));
    return out;
}
py::list tensor_to_list(const Tensor3333& t) {
    py::list out;
    for (int i = 0; i < 3; ++i) out.append(tensor_to_list(t[i]));
    return out;
}

MultiplierSet ms_from_args(const std::string& preset, double a, double b, double L0) {
    return MultiplierSet::make(preset_from_string(preset), a, b, L0);
}

}  // namespace

PYBIND11_MODULE(_nslab, m) {
    m.doc() = "Pseudo-spectral laboratory for renormalized approximations of the stochastic "
              "Navier-Stokes equation on the 3-torus";

    m.def("product_grid_size", &product_grid_size);

    m.def("to_physical", [](py::array_t<std::complex<double>, py::array::c_style> u, int M) {
        return grid_to_array(to_physical(field_from_array(u), M));
    }, py::arg("coeffs"), py::arg("M"));
    m.def("to_spectral", [](py::array_t<double, py::array::c_style> g, int N, bool keep_mean) {
        GridField gf = grid_from_array(g);
        const FieldRole role = gf.role;
        return field_to_array(keep_mean ? to_spectral_keep_mean(gf, N, role)
                                        : to_spectral(gf, N, role));
    }, py::arg("grid"), py::arg("N"), py::arg("keep_mean") = false);

    m.def("leray_project", [](py::array_t<std::complex<double>, py::array::c_style> u) {
        return field_to_array(leray_project(field_from_array(u)));
    });
    m.def("divergence", [](py::array_t<std::complex<double>, py::array::c_style> u) {
        return field_to_array(divergence(field_from_array(u)));
    });
    m.def("dealiased_product", [](py::array_t<std::complex<double>, py::array::c_style> u,
                                  py::array_t<std::complex<double>, py::array::c_style> v) {
        return field_to_array(dealiased_product(field_from_array(u), field_from_array(v)));
    });

    m.def("apply_semigroup", [](py::array_t<std::complex<double>, py::array::c_style> u, double t,
                                double eps, const std::string& preset, double a, double b, double L0) {
        return field_to_array(apply_semigroup(field_from_array(u), t, eps, ms_from_args(preset, a, b, L0)));
    }, py::arg("coeffs"), py::arg("t"), py::arg("eps"), py::arg("preset") = "finite_difference",
       py::arg("a") = 1.0, py::arg("b") = 0.0, py::arg("L0") = 2.0);
    m.def("apply_Deps", [](py::array_t<std::complex<double>, py::array::c_style> u, int axis,
                           double eps, const std::string& preset, double a, double b, double L0) {
        return field_to_array(apply_Deps(field_from_array(u), axis, eps, ms_from_args(preset, a, b, L0)));
    }, py::arg("coeffs"), py::arg("axis"), py::arg("eps"), py::arg("preset") = "finite_difference",
       py::arg("a") = 1.0, py::arg("b") = 0.0, py::arg("L0") = 2.0);
    m.def("apply_Heps", [](py::array_t<std::complex<double>, py::array::c_style> u, double eps,
                           const std::string& preset, double a, double b, double L0) {
        return field_to_array(apply_Heps(field_from_array(u), eps, ms_from_args(preset, a, b, L0)));
    }, py::arg("coeffs"), py::arg("eps"), py::arg("preset") = "finite_difference",
       py::arg("a") = 1.0, py::arg("b") = 0.0, py::arg("L0") = 2.0);

    m.def("hoelder_norm", [](py::array_t<std::complex<double>, py::array::c_style> u, double alpha) {
        SpectralField f = field_from_array(u);
        return hoelder_norm(f, alpha, DyadicPartition::for_truncation(f.N()));
    });
    m.def("besov_norm", [](py::array_t<std::complex<double>, py::array::c_style> u, double alpha,
                           double p, double q) {
        SpectralField f = field_from_array(u);
        return besov_norm(f, {alpha, p, q}, DyadicPartition::for_truncation(f.N()));
    });
    m.def("bony", [](py::array_t<std::complex<double>, py::array::c_style> f,
                     py::array_t<std::complex<double>, py::array::c_style> g) {
        SpectralField ff = field_from_array(f);
        BonyDecomposition bd = bony(ff, field_from_array(g), DyadicPartition::for_truncation(ff.N()));
        return py::make_tuple(field_to_array(bd.lo_hi), field_to_array(bd.resonant),
                              field_to_array(bd.hi_lo));
    });

    m.def("covariance_oracle", [](std::array<int, 3> k, double t, double s, int i, int j,
                                  const std::string& kind, double eps, const std::string& preset,
                                  double a, double b, double L0) {
        CovarianceKind ck = kind == "approx_approx" ? CovarianceKind::approx_approx
                            : kind == "exact_exact" ? CovarianceKind::exact_exact
                                                    : CovarianceKind::cross;
        return covariance_oracle({k[0], k[1], k[2]}, t, s, i, j, ck, eps, ms_from_args(preset, a, b, L0));
    }, py::arg("k"), py::arg("t"), py::arg("s"), py::arg("i"), py::arg("j"), py::arg("kind"),
       py::arg("eps"), py::arg("preset") = "finite_difference", py::arg("a") = 1.0,
       py::arg("b") = 0.0, py::arg("L0") = 2.0);

    py::class_<OUState>(m, "OUState")
        .def(py::init([](int N, double eps, const std::string& preset, std::uint64_t seed, double a,
                         double b, double L0) {
                 return new OUState(N, eps, ms_from_args(preset, a, b, L0), seed);
             }),
             py::arg("N"), py::arg("eps"), py::arg("preset"), py::arg("seed"), py::arg("a") = 1.0,
             py::arg("b") = 0.0, py::arg("L0") = 2.0)
        .def("init_stationary", &OUState::init_stationary)
        .def("advance", &OUState::advance)
        .def_property_readonly("t", &OUState::time)
        .def_property_readonly("x", [](const OUState& s) { return field_to_array(s.x()); })
        .def_property_readonly("x_bar", [](const OUState& s) { return field_to_array(s.x_bar()); });

    m.def("renorm_table", [](double eps, double t, const std::string& preset, double a, double b,
                             double L0, bool with_lambda, bool with_second_order) {
        MultiplierSet ms = ms_from_args(preset, a, b, L0);
        const int kmax = std::max(2, int(std::ceil(ms.h_radius() / eps)));
        DyadicPartition dp = DyadicPartition::for_truncation(kmax);
        RenormTable tbl = compute_renorm_table(eps, t, ms, dp, with_lambda, 1e-8, with_second_order);
        py::dict d;
        d["eps"] = tbl.eps;
        d["t"] = tbl.t;
        d["C0"] = tensor_to_list(tbl.C0);
        d["C0_bar"] = tensor_to_list(tbl.C0_bar);
        d["C"] = tensor_to_list(tbl.C);
        d["C_tilde"] = tensor_to_list(tbl.C_tilde);
        d["C3"] = tensor_to_list(tbl.C3);
        d["C3_tilde"] = tensor_to_list(tbl.C3_tilde);
        d["c3_identity_defect"] = c3_identity_defect(tbl.C3, tbl.C);
        d["c3_tilde_identity_defect"] = c3_tilde_identity_defect(tbl.C3_tilde, tbl.C_tilde);
        if (tbl.has_lambda) {
            d["Lambda"] = tensor_to_list(tbl.Lambda);
            d["Lambda1"] = tensor_to_list(tbl.Lambda1);
        }
        if (tbl.has_second) {
            d["C2"] = tensor_to_list(tbl.second.C2);
            d["C2_bar"] = tensor_to_list(tbl.second.C2_bar);
            d["C11"] = tensor_to_list(tbl.second.C11);
            d["C11_bar"] = tensor_to_list(tbl.second.C11_bar);
            d["phi2_residual"] = tensor_to_list(tbl.second.phi2_residual);
            d["phi11_residual"] = tensor_to_list(tbl.second.phi11_residual);
            d["C12"] = "unavailable";
        }
        return d;
    }, py::arg("eps"), py::arg("t"), py::arg("preset") = "finite_difference", py::arg("a") = 1.0,
       py::arg("b") = 0.0, py::arg("L0") = 2.0, py::arg("with_lambda") = false,
       py::arg("with_second_order") = false);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("N", &SimConfig::N)
        .def_readwrite("eps", &SimConfig::eps)
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("T", &SimConfig::T)
        .def_readwrite("z", &SimConfig::z)
        .def_readwrite("delta", &SimConfig::delta)
        .def_readwrite("a", &SimConfig::a)
        .def_readwrite("b", &SimConfig::b)
        .def_readwrite("L0", &SimConfig::L0)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("L", &SimConfig::L)
        .def_readwrite("counterterms", &SimConfig::counterterms)
        .def_property("preset",
                      [](const SimConfig& c) { return to_string(c.preset); },
                      [](SimConfig& c, const std::string& p) { c.preset = preset_from_string(p); });

    auto traj_dict = [](const Trajectory& tr) {
        py::dict d;
        d["times"] = tr.times;
        d["norms"] = tr.norms;
        d["stop"] = tr.stop == StopReason::horizon ? "horizon" : "blowup";
        d["tau"] = tr.tau;
        return d;
    };
    m.def("run", [traj_dict](const SimConfig& cfg) { return traj_dict(run(cfg)); });
    m.def("run_reference", [traj_dict](const SimConfig& cfg) { return traj_dict(run_reference(cfg)); });
    m.def("run_coupled", [traj_dict](const SimConfig& cfg) {
        CoupledResult r = run_coupled(cfg);
        py::dict d;
        d["approx"] = traj_dict(r.approx);
        d["reference"] = traj_dict(r.reference);
        d["diff_norms"] = r.diff_norms;
        d["sup_diff"] = r.sup_diff;
        d["terminal_diff"] = r.terminal_diff;
        return d;
    });
}
