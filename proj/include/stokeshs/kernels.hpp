#pragma once

#include "stokeshs/fundsol.hpp"
#include "stokeshs/quadrature.hpp"
#include "stokeshs/types.hpp"

namespace stokeshs::kernels {

/// Kernel evaluation bundle: value with attached quadrature error estimate.
struct Sample {
    double value = 0.0;
    double err_est = 0.0;
    std::int64_t n_evals = 0;
    bool converged = false;
};

/// A(x,t) = int_{R^{n-1}} Gamma(z',0,t) N(x'-z',x_n) dz'.
/// Note the slice Gamma(.,0,t) carries the n-dimensional normalization, so
/// sqrt(4 pi t) A(x,t) -> N(x',x_n) as t -> 0+.
Sample scalar_A(const SpaceTimePoint& p, const Dim& dim, const quad::Config& cfg);

/// Stokes strip tensor, Solonnikov normalization:
///   L_ij(x,t) = -4 D_{x_j} int_0^{x_n} int_{R^{n-1}} D_{z_n}Gamma(z,t) D_{x_i}N(x-z) dz.
/// Satisfies sum_i L_ii = -2 D_{x_n}Gamma and L_in = L_ni + B_in (i < n).
/// Computed in convolution form: after z -> x-u the outer derivative lands on
/// the (smooth) Gamma factor and the strip integrand is absolutely integrable,
///   L_ij(x,t) = -4 int_{0<u_n<x_n} (D_j D_n Gamma)(x-u,t) D_iN(u) du.
/// Indices are zero-based; i, j in [0, n).
Sample tensor_L(int i, int j, const SpaceTimePoint& p, const Dim& dim,
                const quad::Config& cfg);

/// Underived strip potential M_i (the inner integral of L before the outer
/// derivative, same -4 normalization); test oracle for the analytic derivative.
Sample strip_potential(int i, const SpaceTimePoint& p, const Dim& dim,
                       const quad::Config& cfg);

/// B_in(x,t) = -4 int_{R^{n-1}} D_{x_n}Gamma(x'-z',x_n,t) D_{z_i}N(z',0) dz',
/// principal value in z' (the kernel z_i/(omega_n |z'|^n) is odd-singular).
/// i in [0, n-1).
Sample tensor_B(int i, const SpaceTimePoint& p, const Dim& dim,
                const quad::Config& cfg);

/// Poisson kernel split: K_ij = -2 delta_ij D_{x_n}Gamma - L_ij
///                              + 2 delta_jn delta(t) D_{x_i}N.
/// The delta(t) part is carried symbolically as its coefficient vector.
struct KernelSplit {
    Mat smooth{};             ///< -2 delta_ij D_{x_n}Gamma - L_ij
    double smooth_err = 0.0;
    Vec delta_coefficient{};  ///< 2 D_{x_i}N(x'-y',x_n), attached to the j=n column
    bool converged = false;
};
KernelSplit poisson_K(const SpaceTimePoint& offset, const Dim& dim,
                      const quad::Config& cfg);

/// The inner tangential integral of the w_1^{12} machinery,
///   I(X',tau) = PV int_{R^{n-1}} exp(-|X'-z'|^2/tau) z_1/|z'|^n dz',
/// split over the proof's regions D1 (near X'), D2 (near 0, mean-value
/// subtraction), D3 (far field). J2/J3 are returned with stable log-magnitudes
/// since they are exponentially small in 1/tau.
struct JSplit {
    double j1 = 0.0, j2 = 0.0, j3 = 0.0, total = 0.0;
    double log_abs_j2 = 0.0, log_abs_j3 = 0.0;  ///< ln|J2|, ln|J3|
    double err_est = 0.0;
    bool converged = false;
};
JSplit probe_J_lower_bound(const double* Xp, double tau, const Dim& dim,
                           const quad::Config& cfg);

/// Gaussian-factor form of I(X',tau) for n = 2 via the Dawson function:
///   PV int exp(-(X1-z)^2/tau)/z dz = 2 sqrt(pi) F(X1/sqrt(tau)).
double pv_gaussian_over_z(double X1, double tau);

/// Dawson function F(x) = exp(-x^2) int_0^x exp(u^2) du.
double dawson(double x);

}  // namespace stokeshs::kernels
