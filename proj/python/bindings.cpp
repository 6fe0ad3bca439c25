#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stokeshs/boundary_data.hpp"
#include "stokeshs/field.hpp"
#include "stokeshs/fundsol.hpp"
#include "stokeshs/helmholtz.hpp"
#include "stokeshs/kernels.hpp"
#include "stokeshs/norms.hpp"

namespace py = pybind11;
using namespace stokeshs;

namespace {

SpacePoint make_space(const std::vector<double>& x) {
    SpacePoint p;
    if (x.size() == 2) {
        p.xp[0] = x[0];
        p.xn = x[1];
    } else if (x.size() == 3) {
        p.xp[0] = x[0];
        p.xp[1] = x[1];
        p.xn = x[2];
    } else {
        throw std::invalid_argument("point must have 2 or 3 coordinates");
    }
    return p;
}

SpaceTimePoint make_spacetime(const std::vector<double>& x, double t) {
    SpaceTimePoint p;
    p.x = make_space(x);
    p.t = t;
    return p;
}

quad::Config make_cfg(double abs_tol, double rel_tol) {
    quad::Config c;
    c.abs_tol = abs_tol;
    c.rel_tol = rel_tol;
    return c;
}

std::vector<double> trim_vec(const Vec& v, int n) {
    return std::vector<double>(v.begin(), v.begin() + n);
}

}  // namespace

PYBIND11_MODULE(_stokeshs, m) {
    m.doc() = "half-space Stokes boundary-layer kernels, layer potentials and "
              "near-boundary gradient scans";

    // fundamental solutions
    m.def(
        "newton",
        [](const std::vector<double>& x, int n) {
            return fundsol::newton(make_space(x), Dim(n));
        },
        py::arg("x"), py::arg("n") = 2);
    m.def(
        "newton_grad",
        [](const std::vector<double>& x, int n) {
            return trim_vec(fundsol::newton_grad(make_space(x), Dim(n)), n);
        },
        py::arg("x"), py::arg("n") = 2);
    m.def(
        "heat",
        [](const std::vector<double>& x, double t, int n) {
            return fundsol::heat(make_spacetime(x, t), Dim(n));
        },
        py::arg("x"), py::arg("t"), py::arg("n") = 2);
    m.def(
        "heat_deriv",
        [](const std::vector<double>& x, double t, std::vector<int> orders, int t_order,
           int n) {
            std::array<int, 3> o{0, 0, 0};
            for (std::size_t i = 0; i < orders.size() && i < 3; ++i) o[i] = orders[i];
            return fundsol::heat_deriv(make_spacetime(x, t), Dim(n), o, t_order);
        },
        py::arg("x"), py::arg("t"), py::arg("orders"), py::arg("t_order") = 0,
        py::arg("n") = 2);

    // boundary datum
    m.def(
        "g1",
        [](const std::vector<double>& yp, int n) {
            datum::DatumSpec spec(1.0, 0.05, Dim(n));
            return datum::g1(yp.data(), spec);
        },
        py::arg("yp"), py::arg("n") = 2);
    m.def(
        "g2",
        [](double s, double eps) {
            datum::DatumSpec spec(1.0, eps, Dim(2));
            return datum::g2(s, spec);
        },
        py::arg("s"), py::arg("eps") = 0.25);
    m.def(
        "g",
        [](const std::vector<double>& yp, double s, double alpha, double eps, int n) {
            datum::DatumSpec spec(alpha, eps, Dim(n));
            return trim_vec(datum::g(yp.data(), s, spec), n);
        },
        py::arg("yp"), py::arg("s"), py::arg("alpha") = 1.0, py::arg("eps") = 0.25,
        py::arg("n") = 2);
    m.def("measure_A", [](int n) { return datum::measure_A(Dim(n)); }, py::arg("n") = 2);

    // kernels
    m.def(
        "scalar_A",
        [](const std::vector<double>& x, double t, int n, double abs_tol, double rel_tol) {
            auto s = kernels::scalar_A(make_spacetime(x, t), Dim(n),
                                       make_cfg(abs_tol, rel_tol));
            return py::make_tuple(s.value, s.err_est);
        },
        py::arg("x"), py::arg("t"), py::arg("n") = 2, py::arg("abs_tol") = 1e-8,
        py::arg("rel_tol") = 1e-6);
    m.def(
        "tensor_L",
        [](int i, int j, const std::vector<double>& x, double t, int n, double abs_tol,
           double rel_tol) {
            auto s = kernels::tensor_L(i, j, make_spacetime(x, t), Dim(n),
                                       make_cfg(abs_tol, rel_tol));
            return py::make_tuple(s.value, s.err_est);
        },
        py::arg("i"), py::arg("j"), py::arg("x"), py::arg("t"), py::arg("n") = 2,
        py::arg("abs_tol") = 1e-8, py::arg("rel_tol") = 1e-6);
    m.def(
        "tensor_B",
        [](int i, const std::vector<double>& x, double t, int n, double abs_tol,
           double rel_tol) {
            auto s = kernels::tensor_B(i, make_spacetime(x, t), Dim(n),
                                       make_cfg(abs_tol, rel_tol));
            return py::make_tuple(s.value, s.err_est);
        },
        py::arg("i"), py::arg("x"), py::arg("t"), py::arg("n") = 2,
        py::arg("abs_tol") = 1e-8, py::arg("rel_tol") = 1e-6);
    m.def(
        "poisson_K",
        [](const std::vector<double>& offset, double t, int n, double abs_tol,
           double rel_tol) {
            auto s = kernels::poisson_K(make_spacetime(offset, t), Dim(n),
                                        make_cfg(abs_tol, rel_tol));
            py::dict out;
            std::vector<std::vector<double>> smooth(n, std::vector<double>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) smooth[i][j] = s.smooth[i][j];
            out["smooth"] = smooth;
            out["smooth_err"] = s.smooth_err;
            out["delta_coefficient"] = trim_vec(s.delta_coefficient, n);
            return out;
        },
        py::arg("offset"), py::arg("t"), py::arg("n") = 2, py::arg("abs_tol") = 1e-8,
        py::arg("rel_tol") = 1e-6);
    m.def(
        "probe_J",
        [](const std::vector<double>& Xp, double tau, int n, double abs_tol,
           double rel_tol) {
            auto s = kernels::probe_J_lower_bound(Xp.data(), tau, Dim(n),
                                                  make_cfg(abs_tol, rel_tol));
            py::dict out;
            out["j1"] = s.j1;
            out["j2"] = s.j2;
            out["j3"] = s.j3;
            out["total"] = s.total;
            out["log_abs_j2"] = s.log_abs_j2;
            out["log_abs_j3"] = s.log_abs_j3;
            return out;
        },
        py::arg("Xp"), py::arg("tau"), py::arg("n") = 2, py::arg("abs_tol") = 1e-9,
        py::arg("rel_tol") = 1e-7);
    m.def("dawson", &kernels::dawson, py::arg("x"));

    // field
    m.def(
        "eval_w",
        [](const std::vector<double>& x, double t, double alpha, double eps, int n,
           bool gradient, bool parts, double abs_tol, double rel_tol) {
            datum::DatumSpec spec(alpha, eps, Dim(n));
            field::EvalOptions opt;
            opt.gradient = gradient && n == 2;
            opt.parts = parts && n == 2;
            auto s = field::eval_w(make_spacetime(x, t), spec, make_cfg(abs_tol, rel_tol),
                                   opt);
            py::dict out;
            out["w"] = trim_vec(s.w, n);
            out["err_est"] = s.err_est;
            if (opt.gradient) {
                std::vector<std::vector<double>> g(n, std::vector<double>(n));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) g[i][j] = s.grad_w[i][j];
                out["grad_w"] = g;
            }
            if (s.parts) {
                out["parts"] = py::dict(
                    py::arg("w1_11") = s.parts->w1_11, py::arg("w1_12") = s.parts->w1_12,
                    py::arg("w1_2") = s.parts->w1_2, py::arg("wn_1") = s.parts->wn_1,
                    py::arg("wn_2") = s.parts->wn_2, py::arg("wn_3") = s.parts->wn_3);
            }
            return out;
        },
        py::arg("x"), py::arg("t"), py::arg("alpha") = 1.0, py::arg("eps") = 0.25,
        py::arg("n") = 2, py::arg("gradient") = false, py::arg("parts") = false,
        py::arg("abs_tol") = 1e-6, py::arg("rel_tol") = 1e-4);
    m.def(
        "dxn_w1",
        [](double x1, double xn, double t_rel, double alpha, double eps, double abs_tol,
           double rel_tol) {
            datum::DatumSpec spec(alpha, eps, Dim(2));
            auto tf = field::g2_temporal(spec);
            field::ScanField sf{&spec, &field::indicator_profile(), &tf};
            double err = 0.0;
            const double v =
                field::dxn_w1_rel(x1, xn, t_rel, sf, make_cfg(abs_tol, rel_tol), &err);
            return py::make_tuple(v, err);
        },
        py::arg("x1"), py::arg("xn"), py::arg("t_rel"), py::arg("alpha") = 1.0,
        py::arg("eps") = 0.05, py::arg("abs_tol") = 1e-6, py::arg("rel_tol") = 1e-4);

    // norms / scans
    m.def(
        "local_grad_energy",
        [](int component, double delta, double r, double alpha, double eps,
           double field_rel_tol) {
            datum::DatumSpec spec(alpha, eps, Dim(2));
            auto tf = field::g2_temporal(spec);
            field::ScanField sf{&spec, &field::indicator_profile(), &tf};
            quad::Config fcfg = make_cfg(1e-6, field_rel_tol);
            quad::Config outer = make_cfg(1e-7, 1e-3);
            auto f = (component == 1) ? norms::scan_integrand_component1(sf, fcfg)
                                      : norms::scan_integrand_componentN(sf, fcfg);
            double err = 0.0;
            const double v = norms::local_grad_energy(f, delta, r, outer, &err);
            return py::make_tuple(v, err);
        },
        py::arg("component"), py::arg("delta"), py::arg("r") = 0.25,
        py::arg("alpha") = 1.0, py::arg("eps") = 0.05, py::arg("field_rel_tol") = 1e-4);
    m.def(
        "asymptotic_ratio",
        [](double eps, double a) {
            quad::Config cfg;
            cfg.abs_tol = 1e-13;
            cfg.rel_tol = 1e-10;
            auto rows = norms::asymptotic_0409_check(eps, std::vector<double>{a}, cfg);
            return rows[0].ratio;
        },
        py::arg("eps"), py::arg("a"));
    m.def("gaussian_lp_norm", &norms::gaussian_lp_norm, py::arg("t"), py::arg("p"),
          py::arg("n") = 2);

    // helmholtz projection of a python-defined field
    m.def(
        "project",
        [](const std::function<std::vector<double>(std::vector<double>)>& f,
           const std::vector<double>& x, int n, double abs_tol, double rel_tol,
           double trunc_radius) {
            helmholtz::VectorField vf;
            vf.trunc_radius = trunc_radius;
            vf.eval = [f, n](const SpacePoint& p) {
                std::vector<double> xv(n);
                for (int i = 0; i < n - 1; ++i) xv[i] = p.xp[i];
                xv[n - 1] = p.xn;
                auto out = f(xv);
                Vec v{0.0, 0.0, 0.0};
                for (int i = 0; i < n && i < static_cast<int>(out.size()); ++i)
                    v[i] = out[i];
                return v;
            };
            auto res =
                helmholtz::project(vf, make_space(x), Dim(n), make_cfg(abs_tol, rel_tol));
            py::dict out;
            out["pf"] = trim_vec(res.pf, n);
            out["q1"] = res.q1;
            out["q2"] = res.q2;
            out["err_est"] = res.err_est;
            return out;
        },
        py::arg("f"), py::arg("x"), py::arg("n") = 2, py::arg("abs_tol") = 1e-8,
        py::arg("rel_tol") = 1e-6, py::arg("trunc_radius") = 6.0);
}
