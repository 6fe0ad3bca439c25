#pragma once

#include <functional>

#include "stokeshs/quadrature.hpp"
#include "stokeshs/types.hpp"

namespace stokeshs::helmholtz {

/// Vector field on the closed half-space; Gaussian-enveloped or compactly
/// supported so that truncation at `trunc_radius` is negligible.
struct VectorField {
    std::function<Vec(const SpacePoint&)> eval;
    double trunc_radius = 6.0;
};

/// Matrix field F (rows F_i) with analytic divergence rows f_i = div F_i,
/// used by the Lemma A.1 checks.
struct MatrixField {
    std::function<Mat(const SpacePoint&)> eval;
    std::function<Vec(const SpacePoint&)> div_rows;
    double trunc_radius = 6.0;
};

/// Q1 f(x) = -int_{R^n_+} grad_y(N(x-y) - N(x-y*)) . f(y) dy, y* = (y',-y_n).
/// Solves  Delta Q1 f = div f,  Q1 f|_{x_n=0} = 0.
double q1(const VectorField& f, const SpacePoint& x, const Dim& dim,
          const quad::Config& cfg, double* err_est = nullptr);

/// grad Q1 f by analytic differentiation under the potential: principal-value
/// Hessian kernels plus the local (1/n) f(x) term plus the smooth image part.
Vec grad_q1(const VectorField& f, const SpacePoint& x, const Dim& dim,
            const quad::Config& cfg, double* err_est = nullptr);

/// Boundary trace D_{y_n} Q1 f(y', 0) by the explicit image-kernel formula
/// (never one-sided differencing).
double dq1_dn_trace(const VectorField& f, const double* xp, const Dim& dim,
                    const quad::Config& cfg, double* err_est = nullptr);

/// Q2 f(x) = int_{R^{n-1}} N(x'-y', x_n) (f_n(y',0) - D_{y_n}Q1 f(y',0)) dy';
/// harmonic with Neumann datum f_n - D_{y_n}Q1 f on the boundary.
double q2(const VectorField& f, const SpacePoint& x, const Dim& dim,
          const quad::Config& cfg, double* err_est = nullptr);

Vec grad_q2(const VectorField& f, const SpacePoint& x, const Dim& dim,
            const quad::Config& cfg, double* err_est = nullptr);

struct ProjectionResult {
    Vec pf{};
    double q1 = 0.0;
    double q2 = 0.0;
    double err_est = 0.0;
};

/// Helmholtz-Leray projection P f = f - grad Q1 f - grad Q2 f.
ProjectionResult project(const VectorField& f, const SpacePoint& x, const Dim& dim,
                         const quad::Config& cfg);

/// Lemma A.1 identity checks at a point (n = 2):
///   (1)  Q1 f = sum_{k<n} D_{x_k} Q1 F_k + D_{x_n} A
///   (2)  int N(x'-y',x_n) D_{y_n}Q1 f(y',0) dy'
///          = sum_{k<n} D_{x_k} int N D_{y_n}Q1 F_k(y',0) dy'
///            + int N f_n(y',0) dy'
///            + sum_{k<n} D_{x_k} int N D_{y_k}A(y',0) dy'
/// with A = -int grad_y(N(x-y) + N(x-y*)) . F_n dy + 2 B1_n and
/// B1_k = -int N(x'-y',x_n) F_{kn}(y',0) dy'.
struct LemmaA1Result {
    double lhs1 = 0.0, rhs1 = 0.0;   ///< identity (1) sides
    double lhs2 = 0.0, rhs2 = 0.0;   ///< identity (2) sides
    double err_est = 0.0;
};
LemmaA1Result lemma_a1_decompose(const MatrixField& F, const SpacePoint& x,
                                 const Dim& dim, const quad::Config& cfg);

/// A-potential of Lemma A.1 (exposed for the boundary-term isolation test).
double lemma_a1_B1(const MatrixField& F, int k, const SpacePoint& x, const Dim& dim,
                   const quad::Config& cfg);

}  // namespace stokeshs::helmholtz
