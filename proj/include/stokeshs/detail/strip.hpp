#pragma once

#include <cmath>
#include <vector>

#include "stokeshs/quadrature.hpp"

namespace stokeshs::kernels::detail {

/// Half-width W such that exp(-W^2/(4 tau)) is negligible against the
/// requested tolerance (with headroom for the kernels' t^{-k} prefactors).
inline double gaussian_window(double tau, double abs_tol) {
    const double logs = -std::log(std::max(abs_tol * 1e-3, 1e-300));
    return 2.0 * std::sqrt(tau * (logs + 8.0));
}

/// Integral over the strip {0 < u_n < xn} x R of
///     fa(u1) * fb(xn - u_n) * u_sel / (2 pi |u|^2),
/// the n = 2 building block of the L tensor. `fa` carries the tangential
/// Gaussian(-derivative) profile, `fb` the normal one; u_sel is u1 for
/// isel == 0 and u_n for isel == 1. The integrand is absolutely integrable;
/// the kernel direction jump at u = 0 sits on the boundary of the domain.
/// `fa_lo/fa_hi` bound the support of fa (window truncation), `fa_splits`
/// are its interior features.
template <class FA, class FB>
quad::Result strip2(FA&& fa, FB&& fb, int isel, double xn, double tau,
                    double fa_lo, double fa_hi, std::vector<double> fa_splits,
                    const quad::Config& cfg) {
    quad::Result out;
    out.converged = true;
    if (!(xn > 0.0)) return out;

    // inner tolerance budget: outer integration multiplies by |fb| and xn
    double fb_scale = 0.0;
    for (int q = 0; q <= 8; ++q)
        fb_scale = std::max(fb_scale, std::abs(fb(xn * q / 8.0)));
    quad::Config inner_cfg = cfg;
    inner_cfg.abs_tol = 0.25 * cfg.abs_tol / std::max(xn * fb_scale, 1e-30);
    inner_cfg.rel_tol = std::min(cfg.rel_tol, 1e-7);
    inner_cfg.max_subdivisions = std::max(cfg.max_subdivisions, 200);

    std::int64_t evals = 0;
    double inner_err_max = 0.0;
    auto outer_f = [&](double un) {
        const double b = fb(xn - un);
        if (b == 0.0) return 0.0;
        std::vector<double> splits = fa_splits;
        if (fa_lo < 0.0 && fa_hi > 0.0) {
            for (double c : {-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0}) {
                const double p = c * un;
                if (p > fa_lo && p < fa_hi) splits.push_back(p);
            }
        }
        auto inner_f = [&](double u1) {
            const double r2 = u1 * u1 + un * un;
            const double k = (isel == 0 ? u1 : un) / (2.0 * M_PI * r2);
            return fa(u1) * k;
        };
        quad::Result r = quad::integrate(inner_f, fa_lo, fa_hi, splits, inner_cfg);
        evals += r.n_evals;
        inner_err_max = std::max(inner_err_max, r.err_est * std::abs(b));
        return r.value * b;
    };

    std::vector<double> osplits;
    for (double f : {0.5, 0.25, 0.125, 1.0 / 16, 1.0 / 64, 1.0 / 256})
        osplits.push_back(xn * f);
    const double s = std::sqrt(tau);
    for (double c : {0.5, 1.0, 2.0, 4.0})
        if (c * s < xn) osplits.push_back(xn - c * s);
    quad::Result r = quad::integrate(outer_f, 0.0, xn, osplits, cfg);
    r.n_evals += evals;
    r.err_est += inner_err_max * xn;
    out = r;
    return out;
}

}  // namespace stokeshs::kernels::detail
