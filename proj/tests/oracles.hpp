#pragma once

// Brute-force and Monte-Carlo oracles shared by the kernel and field tests.
// These stay independent of the adaptive-quadrature implementation path they
// validate: plain seeded sampling and fixed-grid sums only.

#include <cmath>
#include <random>

#include "stokeshs/types.hpp"

namespace stokeshs::testing {

struct McEstimate {
    double mean = 0.0;
    double stderr3 = 0.0;  ///< 3 sigma of the mean
};

/// Monte-Carlo estimate of int_{R^k} f with Gaussian importance sampling
/// centered at `c` with scale `s` (per coordinate), N samples.
template <class F>
McEstimate mc_gaussian(F&& f, int k, const double* c, double s, long n,
                       unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    double acc = 0.0, acc2 = 0.0;
    const double norm = std::pow(s * std::sqrt(2.0 * M_PI), k);
    for (long i = 0; i < n; ++i) {
        double x[3] = {0, 0, 0};
        double w = norm;
        for (int d = 0; d < k; ++d) {
            const double z = g(rng);
            x[d] = c[d] + s * z;
            w *= std::exp(0.5 * z * z);
        }
        const double v = f(x) * w;
        acc += v;
        acc2 += v * v;
    }
    McEstimate out;
    out.mean = acc / n;
    const double var = std::max(acc2 / n - out.mean * out.mean, 0.0);
    out.stderr3 = 3.0 * std::sqrt(var / n);
    return out;
}

/// Monte-Carlo PV estimate of int f(z) dz where f has an odd singular factor
/// at 0: antithetic (symmetric-pair) Gaussian sampling makes the estimator
/// finite-variance.
template <class F>
McEstimate mc_pv_pairs(F&& f, int k, double s, long n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    double acc = 0.0, acc2 = 0.0;
    const double norm = std::pow(s * std::sqrt(2.0 * M_PI), k);
    for (long i = 0; i < n; ++i) {
        double z[3] = {0, 0, 0};
        double w = norm;
        for (int d = 0; d < k; ++d) {
            const double u = g(rng);
            z[d] = s * u;
            w *= std::exp(0.5 * u * u);
        }
        double zm[3] = {-z[0], -z[1], -z[2]};
        const double v = 0.5 * (f(z) + f(zm)) * w;
        acc += v;
        acc2 += v * v;
    }
    McEstimate out;
    out.mean = acc / n;
    const double var = std::max(acc2 / n - out.mean * out.mean, 0.0);
    out.stderr3 = 3.0 * std::sqrt(var / n);
    return out;
}

}  // namespace stokeshs::testing
