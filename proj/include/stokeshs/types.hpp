#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace stokeshs {

/// Spatial dimension of the half-space problem; only n = 2 and n = 3 are built.
struct Dim {
    int n = 2;

    explicit Dim(int n_) : n(n_) {
        if (n != 2 && n != 3) throw std::domain_error("Dim: n must be 2 or 3");
    }
    /// measure of the unit sphere in R^n
    double sphere_measure() const { return n == 2 ? 2.0 * M_PI : 4.0 * M_PI; }
};

/// Small fixed-capacity vector for points/values in R^n, n <= 3.
using Vec = std::array<double, 3>;
using Mat = std::array<std::array<double, 3>, 3>;

inline Vec make_vec(double a, double b = 0.0, double c = 0.0) { return {a, b, c}; }

/// x = (x', x_n) in the closed half-space; x' has n-1 meaningful entries.
struct SpacePoint {
    std::array<double, 2> xp{0.0, 0.0};
    double xn = 0.0;

    double norm2(const Dim& dim) const {
        double s = xn * xn;
        for (int i = 0; i < dim.n - 1; ++i) s += xp[i] * xp[i];
        return s;
    }
    double norm(const Dim& dim) const { return std::sqrt(norm2(dim)); }
};

struct SpaceTimePoint {
    SpacePoint x;
    double t = 0.0;
};

inline SpacePoint space_point2(double x1, double xn) { return {{x1, 0.0}, xn}; }
inline SpacePoint space_point3(double x1, double x2, double xn) { return {{x1, x2}, xn}; }

}  // namespace stokeshs
