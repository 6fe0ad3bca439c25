#include "stokeshs/fundsol.hpp"

#include <cmath>
#include <stdexcept>

namespace stokeshs::fundsol {

double newton(const SpacePoint& p, const Dim& dim) {
    const double r = p.norm(dim);
    if (r <= 0.0) throw std::domain_error("newton: evaluation at the origin");
    if (dim.n == 2) return std::log(r) / (2.0 * M_PI);
    return -1.0 / (dim.sphere_measure() * r);  // n = 3: -(1/(n-2) omega_n) r^{2-n}
}

Vec newton_grad(const SpacePoint& p, const Dim& dim) {
    const double r2 = p.norm2(dim);
    if (r2 <= 0.0) throw std::domain_error("newton_grad: evaluation at the origin");
    const double rn = std::pow(r2, 0.5 * dim.n);
    const double c = 1.0 / (dim.sphere_measure() * rn);
    Vec g{0.0, 0.0, 0.0};
    for (int i = 0; i < dim.n - 1; ++i) g[i] = c * p.xp[i];
    g[dim.n - 1] = c * p.xn;
    return g;
}

double newton_hess(const SpacePoint& p, int i, int j, const Dim& dim) {
    const double r2 = p.norm2(dim);
    if (r2 <= 0.0) throw std::domain_error("newton_hess: evaluation at the origin");
    auto coord = [&](int k) { return k == dim.n - 1 ? p.xn : p.xp[k]; };
    const double rn = std::pow(r2, 0.5 * dim.n);
    const double kron = (i == j) ? 1.0 : 0.0;
    return (kron - dim.n * coord(i) * coord(j) / r2) / (dim.sphere_measure() * rn);
}

double heat(const SpaceTimePoint& p, const Dim& dim) {
    if (p.t <= 0.0) return 0.0;
    const double r2 = p.x.norm2(dim);
    return std::pow(4.0 * M_PI * p.t, -0.5 * dim.n) * std::exp(-r2 / (4.0 * p.t));
}

double heat1d(double a, double t, int order) {
    if (t <= 0.0) {
        if (order == 0) return 0.0;
        throw std::domain_error("heat1d: derivative requested at t <= 0");
    }
    const double phi = std::exp(-a * a / (4.0 * t)) / std::sqrt(4.0 * M_PI * t);
    switch (order) {
        case 0: return phi;
        case 1: return -(a / (2.0 * t)) * phi;
        case 2: return (a * a / (4.0 * t * t) - 1.0 / (2.0 * t)) * phi;
        case 3: return (3.0 * a / (4.0 * t * t) - a * a * a / (8.0 * t * t * t)) * phi;
        default: throw std::domain_error("heat1d: spatial order must be <= 3");
    }
}

double heat_deriv(const SpaceTimePoint& p, const Dim& dim, std::array<int, 3> orders,
                  int t_order) {
    int total = t_order;
    for (int i = 0; i < dim.n; ++i) {
        if (orders[i] < 0) throw std::domain_error("heat_deriv: negative order");
        total += orders[i];
    }
    if (total == 0) return heat(p, dim);
    if (p.t <= 0.0) throw std::domain_error("heat_deriv: derivative requested at t <= 0");
    if (t_order > 1) throw std::domain_error("heat_deriv: time order must be <= 1");
    int sp = orders[0] + orders[1] + orders[2];
    if (sp > 3) throw std::domain_error("heat_deriv: spatial order must be <= 3");

    auto coord = [&](int k) { return k == dim.n - 1 ? p.x.xn : p.x.xp[k]; };
    auto spatial = [&](std::array<int, 3> o) {
        double v = 1.0;
        for (int i = 0; i < dim.n; ++i) v *= heat1d(coord(i), p.t, o[i]);
        return v;
    };
    if (t_order == 0) return spatial(orders);
    // D_t Gamma = Laplacian Gamma: raise each spatial order by two and sum
    double v = 0.0;
    for (int i = 0; i < dim.n; ++i) {
        std::array<int, 3> o = orders;
        o[i] += 2;
        int stot = o[0] + o[1] + o[2];
        if (stot > 3) {
            // need phi^{(4)} and beyond only when mixing D_t with order-2
            // spatial requests, which the artifact never does
            throw std::domain_error("heat_deriv: unsupported mixed order");
        }
        v += spatial(o);
    }
    return v;
}

}  // namespace stokeshs::fundsol
