#include "stokeshs/norms.hpp"

#include <cmath>

namespace stokeshs::norms {

using quad::Config;
using quad::Result;

double gaussian_lp_norm(double t, double p, int n) {
    return std::pow(4.0 * M_PI * t, -0.5 * n * (1.0 - 1.0 / p)) *
           std::pow(p, -0.5 * n / p);
}

// ---------------------------------------------------------------------------
// mixed norm
// ---------------------------------------------------------------------------

namespace {

/// spatial L^p integral over the truncated (half-)disc of radius R
double spatial_lp(const LqLpInput& in, double t, double p, double R,
                  const Config& cfg, double* err) {
    auto over_xn = [&](double xn) {
        const double w = std::sqrt(std::max(R * R - xn * xn, 0.0));
        if (w <= 0.0) return 0.0;
        auto f = [&](double x1) {
            return std::pow(std::abs(in.magnitude(x1, xn, t)), p);
        };
        std::vector<double> splits{-0.5 * w, -2.0, -1.5, -1.0, 0.0, 0.5 * w};
        std::erase_if(splits, [&](double s) { return s <= -w || s >= w; });
        return quad::integrate(f, -w, w, splits, cfg).value;
    };
    const double lo = in.halfspace ? 0.0 : -R;
    std::vector<double> xs = quad::graded_splits(0.0, R, 8, 0.5, true);
    if (!in.halfspace) {
        auto neg = quad::graded_splits(-R, 0.0, 8, 0.5, false);
        xs.insert(xs.end(), neg.begin(), neg.end());
    }
    Result r = quad::integrate(over_xn, lo, R, xs, cfg);
    if (err) *err = r.err_est;
    return r.value;
}

}  // namespace

NormReport lqlp_norm(const LqLpInput& in, double q, double p, double R,
                     const Config& space_cfg, const Config& time_cfg) {
    NormReport rep;
    rep.q = q;
    rep.p = p;
    rep.truncation_radius = R;

    double sperr_max = 0.0;
    auto F = [&](double t) {  // ||w(t)||_p^q
        double e = 0.0;
        const double sp = spatial_lp(in, t, p, R, space_cfg, &e);
        sperr_max = std::max(sperr_max, e);
        return std::pow(sp, q / p);
    };

    Result rt;
    if (!in.singular_at_tlo) {
        rt = quad::integrate(F, in.t_lo, in.t_hi,
                             quad::graded_splits(in.t_lo, in.t_hi, 6, 0.5, true),
                             time_cfg);
    } else {
        // resolved part in u = -ln(t - t_lo)
        const double u_lo = -std::log(in.t_hi - in.t_lo);
        const double u_hi = -std::log(in.sigma_min);
        auto G = [&](double u) {
            const double sigma = std::exp(-u);
            return F(in.t_lo + sigma) * sigma;
        };
        rt = quad::integrate(G, u_lo, u_hi, time_cfg);
        // model tail: F ~ C sigma^{-q/4} |ln sigma|^{-q(1/4+eps)}; for q = 4
        // the antiderivative is C |ln sigma|^{-4 eps}/(4 eps)
        const double sig_probe = in.sigma_min * 2.0;
        const double Fp = F(in.t_lo + sig_probe);
        const double lnp = std::abs(std::log(sig_probe));
        const double C = Fp * std::pow(sig_probe, q / 4.0) *
                         std::pow(lnp, q * (0.25 + in.sing_eps));
        double tail = 0.0;
        if (std::abs(q - 4.0) < 1e-12) {
            const double e4 = 4.0 * in.sing_eps;
            tail = C * std::pow(std::abs(std::log(in.sigma_min)), -e4) / e4;
        } else if (q < 4.0) {
            // integrable power: sigma^{1-q/4} / (1 - q/4) upper bound
            tail = C * std::pow(in.sigma_min, 1.0 - q / 4.0) *
                   std::pow(std::abs(std::log(in.sigma_min)), -q * (0.25 + in.sing_eps)) /
                   (1.0 - q / 4.0);
        }
        rep.tail_estimate = tail;  // contribution in the q-th-power integrand
        rt.value += tail;
    }
    rep.value = std::pow(std::max(rt.value, 0.0), 1.0 / q);
    rep.err_est = rt.err_est + sperr_max;
    rep.converged = rt.converged;
    return rep;
}

// ---------------------------------------------------------------------------
// scans
// ---------------------------------------------------------------------------

PointIntegrand scan_integrand_component1(const field::ScanField& f,
                                         const Config& field_cfg) {
    return [f, field_cfg](double x1, double xn, double sigma, double* err) {
        double e = 0.0;
        const double v = field::dxn_w1_rel(x1, xn, sigma, f, field_cfg, &e);
        if (err) *err = 2.0 * std::abs(v) * e;
        return v * v;
    };
}

PointIntegrand scan_integrand_componentN(const field::ScanField& f,
                                         const Config& field_cfg) {
    return [f, field_cfg](double x1, double xn, double sigma, double* err) {
        double g[2], e = 0.0;
        field::grad_wn_rel(x1, xn, sigma, f, field_cfg, g, &e);
        const double v = g[0] * g[0] + g[1] * g[1];
        if (err) *err = 2.0 * std::sqrt(v) * e;
        return v;
    };
}

PointIntegrand scan_integrand_model(double eps) {
    return [eps](double /*x1*/, double xn, double sigma, double* err) {
        if (err) *err = 0.0;
        if (xn * xn < sigma) return 0.0;
        return std::pow(sigma, -1.5) *
               std::pow(std::abs(std::log(sigma)), -0.5 - 2.0 * eps) *
               std::exp(-2.0 * xn * xn / sigma);
    };
}

double energy_slab(const PointIntegrand& f, double sig_lo, double sig_hi, double r,
                   const Config& outer, double* err_est) {
    double ierr_max = 0.0;
    Config inner = outer;
    inner.abs_tol = outer.abs_tol * 0.5;

    auto over_sigma = [&](double sigma) {
        auto over_xn = [&](double xn) {
            const double w = std::sqrt(std::max(r * r - xn * xn, 0.0));
            if (w <= 0.0) return 0.0;
            auto g = [&](double x1) {
                double e = 0.0;
                const double v = f(x1, xn, sigma, &e);
                ierr_max = std::max(ierr_max, e);
                return v;
            };
            return quad::integrate(g, -w, w, std::vector<double>{0.0}, inner).value;
        };
        // the integrand concentrates at xn ~ sqrt(sigma)
        const double s = std::sqrt(sigma);
        std::vector<double> splits;
        for (double c : {0.5, 1.0, 2.0, 4.0, 8.0})
            if (c * s < r) splits.push_back(c * s);
        return quad::integrate(over_xn, 0.0, r, splits, inner).value;
    };

    Result rt = quad::integrate(
        over_sigma, sig_lo, sig_hi,
        quad::graded_splits(sig_lo, sig_hi, 10, 0.5, true), outer);
    if (err_est) *err_est = rt.err_est + ierr_max;
    return rt.value;
}

double local_grad_energy(const PointIntegrand& f, double delta, double r,
                         const Config& outer, double* err_est) {
    return energy_slab(f, delta, r * r, r, outer, err_est);
}

FitResult fit_affine(std::span<const double> x, std::span<const double> y) {
    FitResult out;
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) return out;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    out.slope = sxy / sxx;
    out.offset = my - out.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double rres = y[i] - (out.slope * x[i] + out.offset);
        ss += rres * rres;
        out.max_residual = std::max(out.max_residual, std::abs(rres));
    }
    if (n > 2) out.slope_stderr = std::sqrt(ss / (n - 2) / sxx);
    return out;
}

EnergyScan blowup_scan(const PointIntegrand& f, double r, double eps,
                       std::span<const double> deltas, const Config& outer) {
    EnergyScan scan;
    scan.r = r;
    scan.eps = eps;
    scan.deltas.assign(deltas.begin(), deltas.end());
    const std::size_t n = scan.deltas.size();
    if (n == 0) return scan;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(scan.deltas[i] > scan.deltas[i + 1]))
            throw std::domain_error("blowup_scan: deltas must be decreasing");
    if (!(scan.deltas.front() < r * r))
        throw std::domain_error("blowup_scan: deltas must lie in (0, r^2)");

    // slab decomposition: E(delta_k) = E(delta_0) + sum of slab increments
    double err = 0.0, e = 0.0;
    double acc = energy_slab(f, scan.deltas[0], r * r, r, outer, &e);
    err += e;
    scan.energies.push_back(acc);
    for (std::size_t i = 1; i < n; ++i) {
        const double inc = energy_slab(f, scan.deltas[i], scan.deltas[i - 1], r, outer, &e);
        err += e;
        acc += inc;
        scan.energies.push_back(acc);
        scan.increments.push_back(inc);
    }
    scan.err_est = err;
    scan.monotone = true;
    for (double inc : scan.increments)
        if (!(inc > 0.0)) scan.monotone = false;

    for (double d : scan.deltas)
        scan.model_abscissa.push_back(
            std::pow(std::abs(std::log(d)), 0.5 - 2.0 * eps));
    scan.fit = fit_affine(scan.model_abscissa, scan.energies);
    double lo = scan.energies[0], hi = scan.energies[0];
    for (double v : scan.energies) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    scan.energy_range = hi - lo;
    return scan;
}

std::vector<AsymRow> asymptotic_0409_check(double eps, std::span<const double> a_list,
                                           const Config& cfg) {
    std::vector<AsymRow> rows;
    for (double a : a_list) {
        AsymRow row;
        row.a = a;
        auto f = [&](double s) {
            return std::pow(s, -0.25) * std::pow(std::abs(std::log(s)), -0.25 - eps);
        };
        Result r = quad::integrate_singular(
            f, 0.0, a, quad::EndpointSing::power_log(0.25, 0.25 + eps),
            quad::EndpointSing::none(), cfg);
        row.integral = r.value;
        row.denom = std::pow(a, 0.75) * std::pow(std::abs(std::log(a)), -0.25 - eps);
        row.ratio = row.integral / row.denom;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace stokeshs::norms
