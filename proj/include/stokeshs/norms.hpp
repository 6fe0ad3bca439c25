#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stokeshs/field.hpp"
#include "stokeshs/quadrature.hpp"

namespace stokeshs::norms {

/// Global mixed-norm report. `value` is the L^q(t)L^p(x) norm over the
/// truncated domain; `tail_estimate` is the modelled contribution of the
/// unresolved sliver t - t0 < sigma_min (q = 4 datum model), already included
/// in `value`.
struct NormReport {
    double q = 4.0, p = 4.0;
    double value = 0.0;
    double truncation_radius = 0.0;
    int refinement_level = 0;
    double cauchy_gap = 0.0;  ///< filled by the refinement ladder driver
    double tail_estimate = 0.0;
    double err_est = 0.0;
    bool converged = false;
};

/// Input of the mixed-norm computation: a pointwise |w| evaluator plus the
/// time-endpoint structure of the integrand.
struct LqLpInput {
    std::function<double(double x1, double xn, double t)> magnitude;
    double t_lo = 0.0, t_hi = 0.25;
    bool halfspace = true;       ///< integrate x_n > 0 only (else full plane)
    bool singular_at_tlo = false;  ///< ||w(t)||^q ~ (t-t_lo)^{-q/4}|ln|^{-q(1/4+eps)}
    double sing_eps = 0.05;
    double sigma_min = 1e-9;     ///< resolved time inset when singular
};

NormReport lqlp_norm(const LqLpInput& in, double q, double p, double R,
                     const quad::Config& space_cfg, const quad::Config& time_cfg);

/// Closed form of || Gamma(.,t) ||_{L^p(R^n)} = (4 pi t)^{-(n/2)(1-1/p)} p^{-n/(2p)}.
double gaussian_lp_norm(double t, double p, int n);

/// ---------------------------------------------------------------------------
/// local gradient energies and the blow-up scan
/// ---------------------------------------------------------------------------

/// integrand of a scan at (x1, xn, sigma_t = t - t0); writes its quadrature
/// error estimate through `err` when non-null
using PointIntegrand =
    std::function<double(double x1, double xn, double sigma_t, double* err)>;

/// |D_{x_n} w_1|^2 (tangential component scan integrand)
PointIntegrand scan_integrand_component1(const field::ScanField& f,
                                         const quad::Config& field_cfg);
/// |D_x w_n|^2 (full gradient of the normal component)
PointIntegrand scan_integrand_componentN(const field::ScanField& f,
                                         const quad::Config& field_cfg);
/// closed-form divergence model: sigma^{-3/2} |ln sigma|^{-1/2-2eps}
/// exp(-2 xn^2/sigma) restricted to xn >= sqrt(sigma) (pipeline oracle)
PointIntegrand scan_integrand_model(double eps);

/// integral of the integrand over B_r+ x (t0+sig_lo, t0+sig_hi)
double energy_slab(const PointIntegrand& f, double sig_lo, double sig_hi, double r,
                   const quad::Config& outer, double* err_est = nullptr);

/// E(delta) over B_r+ x (t0+delta, t0+r^2)
double local_grad_energy(const PointIntegrand& f, double delta, double r,
                         const quad::Config& outer, double* err_est = nullptr);

struct FitResult {
    double slope = 0.0;
    double offset = 0.0;
    double slope_stderr = 0.0;
    double max_residual = 0.0;
};

/// ordinary least squares y = slope*x + offset
FitResult fit_affine(std::span<const double> x, std::span<const double> y);

struct EnergyScan {
    double r = 0.25;
    double eps = 0.05;
    std::vector<double> deltas;      ///< decreasing
    std::vector<double> energies;    ///< E(delta_k)
    std::vector<double> increments;  ///< E(delta_{k+1}) - E(delta_k)
    std::vector<double> model_abscissa;  ///< |ln delta|^{1/2-2eps}
    FitResult fit;                   ///< energies vs model_abscissa
    double energy_range = 0.0;
    double err_est = 0.0;
    bool monotone = false;
};

EnergyScan blowup_scan(const PointIntegrand& f, double r, double eps,
                       std::span<const double> deltas, const quad::Config& outer);

/// ratio table of Eq-style asymptotics:
///   ratio(a) = int_0^a s^{-1/4}|ln s|^{-1/4-eps} ds / (a^{3/4}|ln a|^{-1/4-eps})
struct AsymRow {
    double a = 0.0;
    double integral = 0.0;
    double denom = 0.0;
    double ratio = 0.0;
};
std::vector<AsymRow> asymptotic_0409_check(double eps, std::span<const double> a_list,
                                           const quad::Config& cfg);

}  // namespace stokeshs::norms
