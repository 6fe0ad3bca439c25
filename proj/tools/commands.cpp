#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "stokeshs/csv.hpp"
#include "stokeshs/detail/interp2d.hpp"
#include "stokeshs/field.hpp"
#include "stokeshs/fundsol.hpp"
#include "stokeshs/helmholtz.hpp"
#include "stokeshs/kernels.hpp"
#include "stokeshs/norms.hpp"

namespace stokeshs::cli {

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& rc, const std::string& name) {
    fs::create_directories(rc.output_dir);
    return (fs::path(rc.output_dir) / name).string();
}

std::string point_str(double x1, double x2, double xn, double t, int n) {
    std::string s = "(" + csvio::format_number(x1);
    if (n == 3) s += " " + csvio::format_number(x2);
    s += " " + csvio::format_number(xn) + " " + csvio::format_number(t) + ")";
    return s;
}

void progress(const std::string& msg) { std::cerr << msg << std::endl; }

}  // namespace

// ---------------------------------------------------------------------------
// check-identities
// ---------------------------------------------------------------------------

int cmd_check_identities(const RunConfig& rc) {
    const Dim dim(rc.dim);
    const int n = dim.n;
    csvio::Writer w(out_path(rc, "identities.csv"), rc.describe());
    w.header({"identity_name", "point", "lhs", "rhs", "abs_err", "err_budget", "pass"});

    bool all_pass = true;
    bool all_conv = true;
    const double abs_cap = 1e-5;

    auto emit = [&](const std::string& name, const std::string& pt, double lhs,
                    double rhs, double err_budget, bool conv) {
        const double abs_err = std::abs(lhs - rhs);
        const bool pass = conv && abs_err <= std::max(err_budget, 1e-12) &&
                          abs_err <= abs_cap;
        all_pass = all_pass && pass;
        all_conv = all_conv && conv;
        w.row({name, pt, lhs, rhs, abs_err, err_budget,
               std::string(pass ? "true" : "false")});
    };

    const int g = (n == 2) ? 4 : 2;
    std::vector<double> x1s, xns, ts;
    for (int i = 0; i < g; ++i) {
        x1s.push_back(-0.85 + 1.7 * (i + 0.5) / g);
        xns.push_back(0.05 * std::pow(20.0, static_cast<double>(i) / std::max(g - 1, 1)));
        ts.push_back(0.01 * std::pow(20.0, static_cast<double>(i) / std::max(g - 1, 1)));
    }

    int done = 0;
    for (double x1 : x1s) {
        for (double xn : xns) {
            for (double t : ts) {
                SpaceTimePoint p;
                p.x.xp[0] = x1;
                if (n == 3) p.x.xp[1] = 0.5 * x1;
                p.x.xn = xn;
                p.t = t;
                const std::string pt = point_str(x1, 0.5 * x1, xn, t, n);
                // trace identity
                double lhs = 0.0, err = 0.0;
                bool conv = true;
                for (int i = 0; i < n; ++i) {
                    auto s = kernels::tensor_L(i, i, p, dim, rc.quad);
                    lhs += s.value;
                    err += s.err_est;
                    conv = conv && s.converged;
                }
                std::array<int, 3> dn{0, 0, 0};
                dn[n - 1] = 1;
                const double rhs = -2.0 * fundsol::heat_deriv(p, dim, dn, 0);
                emit("trace_sum_Lii", pt, lhs, rhs, 3.0 * err, conv);
                // commutation identity, i = 1
                auto l1n = kernels::tensor_L(0, n - 1, p, dim, rc.quad);
                auto ln1 = kernels::tensor_L(n - 1, 0, p, dim, rc.quad);
                auto b1n = kernels::tensor_B(0, p, dim, rc.quad);
                emit("commutation_L1n", pt, l1n.value, ln1.value + b1n.value,
                     3.0 * (l1n.err_est + ln1.err_est + b1n.err_est),
                     l1n.converged && ln1.converged && b1n.converged);
                ++done;
                progress("check-identities: grid point " + std::to_string(done) + "/" +
                         std::to_string(g * g * g));
            }
        }
    }

    // fundsol rows: heat mass and semigroup at representative arguments
    {
        quad::Config c = rc.quad;
        auto f1 = [&](double z) {
            SpaceTimePoint q;
            q.x.xp[0] = z;
            q.x.xn = 0.0;
            q.t = 0.3;
            Dim d2(2);
            // 1-D slice: integrate the 2-D kernel over both coordinates
            auto inner = [&](double zn) {
                SpaceTimePoint qq = q;
                qq.x.xn = zn;
                return fundsol::heat(qq, d2);
            };
            return quad::integrate(inner, -12.0, 12.0, c).value;
        };
        quad::Result mass = quad::integrate(f1, -12.0, 12.0, c);
        emit("heat_mass_n2", "(t=0.3)", mass.value, 1.0, 3.0 * (mass.err_est + 1e-9),
             mass.converged);
    }

    if (!all_conv) return kExitNoConvergence;
    return all_pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// field-eval
// ---------------------------------------------------------------------------

int cmd_field_eval(const RunConfig& rc, double x1, double x2, double xn, double t,
                   bool split, const std::string& csv_path) {
    datum::DatumSpec spec(rc.alpha, rc.eps, Dim(rc.dim));
    SpaceTimePoint p;
    p.x.xp[0] = x1;
    if (rc.dim == 3) p.x.xp[1] = x2;
    p.x.xn = xn;
    p.t = t;
    field::EvalOptions opt;
    opt.gradient = (rc.dim == 2);
    opt.parts = split && rc.dim == 2;
    field::FieldSample s = field::eval_w(p, spec, rc.field_quad, opt);

    auto kv = [](const std::string& k, double v) {
        std::cout << k << "=" << csvio::format_number(v) << " ";
    };
    for (int i = 0; i < rc.dim; ++i) kv("w" + std::to_string(i + 1), s.w[i]);
    if (opt.gradient) {
        for (int i = 0; i < rc.dim; ++i)
            for (int j = 0; j < rc.dim; ++j)
                kv("dw" + std::to_string(i + 1) + std::to_string(j + 1), s.grad_w[i][j]);
    }
    kv("err_est", s.err_est);
    std::cout << "converged=" << (s.converged ? "true" : "false") << " ";
    if (s.parts) {
        kv("w1_11", s.parts->w1_11);
        kv("w1_12", s.parts->w1_12);
        kv("w1_2", s.parts->w1_2);
        kv("wn_1", s.parts->wn_1);
        kv("wn_2", s.parts->wn_2);
        kv("wn_3", s.parts->wn_3);
        kv("split_residual",
           s.parts->w1_11 + s.parts->w1_12 + s.parts->w1_2 - s.w[0]);
    }
    std::cout << "\n";

    if (!csv_path.empty()) {
        csvio::Writer w(out_path(rc, csv_path), rc.describe());
        w.header({"x1", "x2", "xn", "t", "w1", "w2", "w3", "err_est", "converged"});
        w.row({x1, x2, xn, t, s.w[0], s.w[1], s.w[2], s.err_est,
               std::string(s.converged ? "true" : "false")});
    }
    return s.converged ? kExitOk : kExitNoConvergence;
}

// ---------------------------------------------------------------------------
// scan-blowup
// ---------------------------------------------------------------------------

namespace {

void write_scan_outputs(const RunConfig& rc, const norms::EnergyScan& scan) {
    csvio::Writer w(out_path(rc, "blowup.csv"), rc.describe());
    w.header({"delta", "energy", "model_abscissa", "fit_pred", "residual"});
    for (std::size_t i = 0; i < scan.deltas.size(); ++i) {
        const double pred = scan.fit.slope * scan.model_abscissa[i] + scan.fit.offset;
        w.row({scan.deltas[i], scan.energies[i], scan.model_abscissa[i], pred,
               scan.energies[i] - pred});
    }
    std::ofstream plot(out_path(rc, "blowup.plot"));
    plot << "# gnuplot script: energy vs |ln delta|^{1/2-2eps} with fitted line\n";
    plot << "set xlabel 'model abscissa |ln delta|^{" << 0.5 - 2.0 * scan.eps
         << "}'\nset ylabel 'local gradient energy'\n";
    plot << "f(x) = " << scan.fit.slope << " * x + " << scan.fit.offset << "\n";
    plot << "plot '-' with points title 'scan', f(x) with lines title 'fit'\n";
    for (std::size_t i = 0; i < scan.deltas.size(); ++i)
        plot << scan.model_abscissa[i] << " " << scan.energies[i] << "\n";
    plot << "e\n";
}

}  // namespace

int cmd_scan_blowup(const RunConfig& rc, bool self_test) {
    if (rc.dim != 2) {
        std::cerr << "scan-blowup: built for n = 2 scans\n";
        return kExitConfigError;
    }
    const double r = rc.scan.r;
    const double eps = rc.eps;
    quad::Config outer = rc.field_quad;
    outer.rel_tol = std::max(outer.rel_tol, 1e-3);
    outer.abs_tol = std::max(outer.abs_tol, 1e-7);

    norms::EnergyScan scan;
    if (self_test) {
        progress("scan-blowup: self-test on the closed-form model integrand");
        const double area = 0.5 * M_PI * r * r;
        auto model = [eps, area](double, double, double sigma, double* err) {
            if (err) *err = 0.0;
            return std::pow(sigma, -1.0) *
                   std::pow(std::abs(std::log(sigma)), -0.5 - 2.0 * eps) / area;
        };
        scan = norms::blowup_scan(model, r, eps, rc.scan.deltas, outer);
        write_scan_outputs(rc, scan);
        // exact affine law: slope 1/(1/2-2eps) in the model abscissa
        const double slope_exact = 1.0 / (0.5 - 2.0 * eps);
        const bool ok = scan.monotone &&
                        std::abs(scan.fit.slope - slope_exact) < 0.02 * slope_exact &&
                        scan.fit.max_residual < 0.05 * scan.energy_range;
        return ok ? kExitOk : kExitCheckFailed;
    }

    datum::DatumSpec spec(rc.alpha, eps, Dim(2));
    const field::TemporalFactor tf = field::g2_temporal(spec);
    field::ScanField sf{&spec, &field::indicator_profile(), &tf};
    norms::PointIntegrand f;
    const bool tangential = rc.scan.component == 1 && !rc.scan.full_gradient;
    if (tangential) {
        f = norms::scan_integrand_component1(sf, rc.field_quad);
    } else {
        f = norms::scan_integrand_componentN(sf, rc.field_quad);
    }
    progress("scan-blowup: scanning " + std::to_string(rc.scan.deltas.size()) +
             " deltas, component " + std::to_string(rc.scan.component));
    scan = norms::blowup_scan(f, r, eps, rc.scan.deltas, outer);
    write_scan_outputs(rc, scan);

    if (tangential) {
        const bool ok = scan.monotone && scan.fit.slope > 0.0 &&
                        scan.fit.max_residual < 0.10 * scan.energy_range;
        return ok ? kExitOk : kExitCheckFailed;
    }
    // normal component: Cauchy signature, increments decreasing
    bool cauchy = true;
    for (std::size_t i = 1; i < scan.increments.size(); ++i)
        if (!(scan.increments[i] < scan.increments[i - 1])) cauchy = false;
    const bool slope_null =
        std::abs(scan.fit.slope) < 3.0 * scan.fit.slope_stderr + 1e-12;
    if (!slope_null)
        std::cerr << "scan-blowup: note: fitted slope " << scan.fit.slope
                  << " not within 3 sigma of 0 (stderr " << scan.fit.slope_stderr
                  << ")\n";
    return cauchy ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

int cmd_norms(const RunConfig& rc) {
    if (rc.dim != 2) {
        std::cerr << "norms: built for n = 2\n";
        return kExitConfigError;
    }
    csvio::Writer w(out_path(rc, "norms.csv"), rc.describe());
    w.header({"kind", "q", "p", "T", "R", "value", "cauchy_gap", "tail_estimate"});
    bool conv = true;

    // Gaussian oracle row: ||Gamma(.,t)||_{L^p(R^2)} in L^q over (T1,T2)
    {
        const double q = 4.0, p = 4.0, T1 = 0.05, T2 = 0.25;
        norms::LqLpInput in;
        in.t_lo = T1;
        in.t_hi = T2;
        in.halfspace = false;
        Dim d2(2);
        in.magnitude = [d2](double x1, double xn, double t) {
            SpaceTimePoint pt;
            pt.x.xp[0] = x1;
            pt.x.xn = xn;
            pt.t = t;
            return fundsol::heat(pt, d2);
        };
        quad::Config sc = rc.quad;
        norms::NormReport rep = norms::lqlp_norm(in, q, p, 10.0, sc, sc);
        // closed form of the time integral of the p-norm^q
        const double kappa = 0.5 * 2.0 * (1.0 - 1.0 / p);
        const double pref = std::pow(p, -0.5 * 2.0 / p * 1.0);
        auto cf = [&](double t) {
            return std::pow(std::pow(4.0 * M_PI * t, -kappa) * pref, q);
        };
        quad::Result exact = quad::integrate(cf, T1, T2, rc.quad);
        const double closed = std::pow(exact.value, 1.0 / q);
        w.row({std::string("gaussian_oracle"), q, p, T2, 10.0, rep.value,
               std::abs(rep.value - closed) / closed, rep.tail_estimate});
        conv = conv && rep.converged;
        if (std::abs(rep.value - closed) / closed > 1e-6) {
            std::cerr << "norms: gaussian oracle mismatch " << rep.value << " vs "
                      << closed << "\n";
        }
    }

    // w rows across the refinement ladder
    {
        datum::DatumSpec spec(rc.alpha, rc.eps, Dim(2));
        const field::TemporalFactor tf = field::g2_temporal(spec);
        field::ScanField sf{&spec, &field::indicator_profile(), &tf};
        norms::LqLpInput in;
        in.t_lo = datum::kT0;
        in.t_hi = 0.25;
        in.halfspace = true;
        in.singular_at_tlo = true;
        in.sing_eps = rc.eps;
        quad::Config fcfg = rc.field_quad;
        in.magnitude = [sf, fcfg](double x1, double xn, double t) {
            double out[2];
            field::w_values_rel(x1, xn, t - datum::kT0, sf, fcfg, out);
            return std::hypot(out[0], out[1]);
        };
        quad::Config sc;
        sc.abs_tol = 1e-7;
        sc.rel_tol = 2e-3;
        double prev = 0.0;
        int level = 0;
        for (double R : {8.0, 16.0}) {
            progress("norms: w mixed norm at R = " + std::to_string(R));
            quad::Config scl = sc;
            if (level == 1) scl.rel_tol *= 0.5;
            norms::NormReport rep = norms::lqlp_norm(in, 4.0, 4.0, R, scl, scl);
            rep.refinement_level = level;
            rep.cauchy_gap = (level == 0) ? 0.0 : std::abs(rep.value - prev) / rep.value;
            w.row({std::string("w_field"), 4.0, 4.0, 0.25, R, rep.value, rep.cauchy_gap,
                   rep.tail_estimate});
            conv = conv && rep.converged;
            prev = rep.value;
            ++level;
        }
    }

    // asymptotic ratio table
    {
        csvio::Writer wa(out_path(rc, "asym.csv"), rc.describe());
        wa.header({"a", "integral", "denominator", "ratio"});
        std::vector<double> as{1e-2, 1e-4, 1e-6, 1e-8};
        auto rows = norms::asymptotic_0409_check(0.25, as, rc.quad);
        for (const auto& row : rows) wa.row({row.a, row.integral, row.denom, row.ratio});
        const double final_ratio = rows[2].ratio;  // a = 1e-6 row
        if (std::abs(final_ratio - 4.0 / 3.0) > 0.02 * 4.0 / 3.0) {
            std::cerr << "norms: asymptotic ratio " << final_ratio
                      << " deviates from 4/3\n";
            return kExitCheckFailed;
        }
    }
    return conv ? kExitOk : kExitNoConvergence;
}

// ---------------------------------------------------------------------------
// mollify-study
// ---------------------------------------------------------------------------

namespace {

/// discrete L^4(sigma) L^4(y) gap between the mollified and singular datum
double datum_gap(const datum::MollifiedDatum& md, const datum::DatumSpec& spec,
                 const quad::Config& cfg) {
    auto over_sigma = [&](double sigma) {
        auto f = [&](double y) {
            const double gk = md.spatial(y) * md.temporal(datum::kT0 + sigma);
            const double gg = (y > -2.0 && y < -1.0)
                                  ? std::pow(sigma, -0.25) *
                                        std::pow(std::abs(std::log(sigma)),
                                                 -0.25 - spec.eps)
                                  : 0.0;
            const double d = spec.alpha * (gk - gg);
            return d * d * d * d;
        };
        return quad::integrate(f, -2.0 - 0.1, -1.0 + 0.1, cfg).value;
    };
    quad::Result r = quad::integrate_singular(
        over_sigma, 0.0, 3.0 / 16.0, quad::EndpointSing::power_log(1.0, 1.0 + 4.0 * spec.eps),
        quad::EndpointSing::none(), cfg);
    return std::pow(std::max(r.value, 0.0), 0.25);
}

}  // namespace

int cmd_mollify_study(const RunConfig& rc, const std::vector<long>& k_list) {
    if (rc.dim != 2) {
        std::cerr << "mollify-study: built for n = 2\n";
        return kExitConfigError;
    }
    datum::DatumSpec spec(rc.alpha, rc.eps, Dim(2));
    csvio::Writer w(out_path(rc, "mollify.csv"), rc.describe());
    w.header({"k", "width", "datum_gap_L4Lp", "blowup_slope_at_k"});

    quad::Config outer = rc.field_quad;
    outer.rel_tol = std::max(outer.rel_tol, 2e-3);
    outer.abs_tol = std::max(outer.abs_tol, 1e-7);
    quad::Config gapcfg;
    gapcfg.abs_tol = 1e-9;
    gapcfg.rel_tol = 1e-6;

    std::vector<double> gaps, slopes;
    for (long k : k_list) {
        progress("mollify-study: k = " + std::to_string(k));
        datum::MollifiedDatum md(static_cast<int>(k), spec);
        const double gap = (k == 0) ? 0.0 : datum_gap(md, spec, gapcfg);
        field::MollifiedProfile prof(&md);
        field::TemporalFactor tf;
        tf.singular_at_t0 = (k == 0);
        tf.eps = spec.eps;
        tf.support_hi = 3.0 / 16.0;
        tf.value_sigma = [&md](double sigma) {
            return md.temporal(datum::kT0 + sigma);
        };
        field::TemporalFactor tf_exact = field::g2_temporal(spec);
        const field::TangentialProfile* pr =
            (k == 0) ? static_cast<const field::TangentialProfile*>(
                           &field::indicator_profile())
                     : &prof;
        field::ScanField sf{&spec, pr, (k == 0) ? &tf_exact : &tf};
        auto f = norms::scan_integrand_component1(sf, rc.field_quad);
        norms::EnergyScan scan =
            norms::blowup_scan(f, rc.scan.r, rc.eps, rc.scan.deltas, outer);
        w.row({static_cast<long>(k), md.width(), gap, scan.fit.slope});
        gaps.push_back(gap);
        slopes.push_back(scan.fit.slope);
    }

    bool gaps_down = true, slopes_up = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
        if (k_list[i - 1] == 0) continue;  // baseline row participates via slope only
        if (!(gaps[i] < gaps[i - 1])) gaps_down = false;
    }
    for (std::size_t i = 1; i < slopes.size(); ++i)
        if (!(slopes[i] >= slopes[i - 1] - 1e-12)) slopes_up = false;
    return (gaps_down && slopes_up) ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// helmholtz-probe
// ---------------------------------------------------------------------------

int cmd_helmholtz_probe(const RunConfig& rc) {
    const Dim dim(2);
    csvio::Writer w(out_path(rc, "helmholtz.csv"), rc.describe());
    w.header({"check_name", "point", "value", "reference", "abs_err", "tol", "pass"});
    bool all = true;
    quad::Config cfg = rc.quad;
    cfg.abs_tol = std::max(cfg.abs_tol, 1e-9);

    auto emit = [&](const std::string& name, const std::string& pt, double val,
                    double ref, double tol) {
        const double err = std::abs(val - ref);
        const bool pass = err <= tol;
        all = all && pass;
        w.row({name, pt, val, ref, err, tol, std::string(pass ? "true" : "false")});
    };

    // annihilation of gradients: f = grad h, h = xn exp(-|x|^2)
    helmholtz::VectorField grad_h;
    grad_h.eval = [](const SpacePoint& p) {
        const double e = std::exp(-(p.xp[0] * p.xp[0] + p.xn * p.xn));
        return Vec{-2.0 * p.xp[0] * p.xn * e, (1.0 - 2.0 * p.xn * p.xn) * e, 0.0};
    };
    const SpacePoint pts[3] = {space_point2(0.3, 0.5), space_point2(-0.4, 0.8),
                               space_point2(0.1, 1.2)};
    for (const auto& x : pts) {
        auto res = helmholtz::project(grad_h, x, dim, cfg);
        const Vec f = grad_h.eval(x);
        const double nf = std::hypot(f[0], f[1]);
        const double np = std::hypot(res.pf[0], res.pf[1]);
        emit("annihilation", point_str(x.xp[0], 0, x.xn, 0, 2), np, 0.0,
             1e-3 * std::max(nf, 1.0));
    }

    // fixed point: divergence-free field with vanishing normal trace
    helmholtz::VectorField df;
    df.eval = [](const SpacePoint& p) {
        const double x = p.xp[0], y = p.xn;
        const double e = std::exp(-(x * x + y * y));
        // psi = y^2 e^{-|x|^2}; f = (D_y psi, -D_x psi)
        return Vec{(2.0 * y - 2.0 * y * y * y) * e, 2.0 * x * y * y * e, 0.0};
    };
    for (const auto& x : pts) {
        auto res = helmholtz::project(df, x, dim, cfg);
        const Vec f = df.eval(x);
        const double nf = std::hypot(f[0], f[1]);
        const double diff = std::hypot(res.pf[0] - f[0], res.pf[1] - f[1]);
        emit("fixed_point", point_str(x.xp[0], 0, x.xn, 0, 2), diff, 0.0,
             1e-3 * std::max(nf, 0.5));
    }
    progress("helmholtz-probe: pointwise checks done");

    return all ? kExitOk : kExitCheckFailed;
}

}  // namespace stokeshs::cli
