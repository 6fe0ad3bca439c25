#pragma once

#include "stokeshs/types.hpp"

namespace stokeshs::fundsol {

/// Newtonian potential N(x): fundamental solution of the Laplace equation.
/// n = 2: ln|x| / (2 pi);  n = 3: -1/(4 pi |x|).  Requires |x| > 0.
double newton(const SpacePoint& p, const Dim& dim);

/// grad N(x), component i: x_i / (omega_n |x|^n). Requires |x| > 0.
Vec newton_grad(const SpacePoint& p, const Dim& dim);

/// Hessian entry D_i D_j N(x) = (delta_ij - n x_i x_j / |x|^2) / (omega_n |x|^n).
double newton_hess(const SpacePoint& p, int i, int j, const Dim& dim);

/// Heat kernel Gamma(x,t) = (4 pi t)^{-n/2} exp(-|x|^2/(4t)) for t > 0, else 0.
double heat(const SpaceTimePoint& p, const Dim& dim);

/// 1-D heat kernel factor phi(a,t) = (4 pi t)^{-1/2} exp(-a^2/(4t)) and its
/// a-derivatives up to order 3 (Gamma factorizes as a product of these).
double heat1d(double a, double t, int order = 0);

/// Derivative D^{ax}_{x'} D^{an}_{x_n} D^{at}_t Gamma(x,t).
/// Spatial orders up to 3 total, time order up to 1; t > 0 required whenever
/// any order is nonzero (Gamma itself is defined as 0 for t <= 0).
/// `orders` lists the per-coordinate spatial orders (size n).
double heat_deriv(const SpaceTimePoint& p, const Dim& dim,
                  std::array<int, 3> orders, int t_order = 0);

}  // namespace stokeshs::fundsol
