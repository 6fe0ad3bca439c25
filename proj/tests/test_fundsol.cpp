#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stokeshs/fundsol.hpp"
#include "stokeshs/quadrature.hpp"

using namespace stokeshs;
using fundsol::heat;
using fundsol::heat_deriv;
using fundsol::newton;
using fundsol::newton_grad;

TEST_CASE("newton closed forms") {
    Dim d2(2), d3(3);
    CHECK(newton(space_point2(1.0, 0.0), d2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(newton(space_point3(1.0, 0.0, 0.0), d3) ==
          doctest::Approx(-1.0 / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(newton(space_point2(std::exp(1.0), 0.0), d2) ==
          doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(newton(space_point2(0.0, 0.0), d2), std::domain_error);
}

TEST_CASE("newton gradient closed forms and oddness") {
    Dim d2(2), d3(3);
    auto g = newton_grad(space_point2(1.0, 0.0), d2);
    CHECK(g[0] == doctest::Approx(1.0 / (2.0 * M_PI)));
    CHECK(g[1] == doctest::Approx(0.0));
    auto gm = newton_grad(space_point2(-1.0, 0.0), d2);
    CHECK(gm[0] == doctest::Approx(-1.0 / (2.0 * M_PI)));
    auto g3 = newton_grad(space_point3(0.0, 0.0, 2.0), d3);
    CHECK(g3[0] == doctest::Approx(0.0));
    CHECK(g3[2] == doctest::Approx(1.0 / (16.0 * M_PI)));
}

TEST_CASE("newton_grad matches central differences of newton") {
    Dim d2(2);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const double h = 1e-5;
    for (int k = 0; k < 5; ++k) {
        SpacePoint p = space_point2(u(rng) + 2.0, std::abs(u(rng)) + 0.5);
        auto g = newton_grad(p, d2);
        SpacePoint pp = p, pm = p;
        pp.xp[0] += h;
        pm.xp[0] -= h;
        const double fd = (newton(pp, d2) - newton(pm, d2)) / (2.0 * h);
        CHECK(g[0] == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("discrete Laplacian of newton vanishes away from the origin") {
    Dim d2(2), d3(3);
    const double h = 1e-3;
    auto lap2 = [&](double x, double y) {
        return (newton(space_point2(x + h, y), d2) + newton(space_point2(x - h, y), d2) +
                newton(space_point2(x, y + h), d2) + newton(space_point2(x, y - h), d2) -
                4.0 * newton(space_point2(x, y), d2)) /
               (h * h);
    };
    CHECK(std::abs(lap2(0.5, 0.3)) < 1e-6);
    CHECK(std::abs(lap2(-1.2, 0.8)) < 1e-6);
    auto lap3 = [&](double x, double y, double z) {
        double s = -6.0 * newton(space_point3(x, y, z), d3);
        s += newton(space_point3(x + h, y, z), d3) + newton(space_point3(x - h, y, z), d3);
        s += newton(space_point3(x, y + h, z), d3) + newton(space_point3(x, y - h, z), d3);
        s += newton(space_point3(x, y, z + h), d3) + newton(space_point3(x, y, z - h), d3);
        return s / (h * h);
    };
    CHECK(std::abs(lap3(0.5, -0.4, 0.6)) < 1e-6);
}

TEST_CASE("heat kernel values and causal zero") {
    Dim d2(2);
    SpaceTimePoint p;
    p.t = 1.0 / (4.0 * M_PI);
    CHECK(heat(p, d2) == doctest::Approx(1.0).epsilon(1e-14));
    p.t = -1.0;
    p.x.xp[0] = 0.7;
    CHECK(heat(p, d2) == 0.0);
    p.t = 0.0;
    CHECK(heat(p, d2) == 0.0);
}

TEST_CASE("heat kernel unit mass under quadrature") {
    Dim d2(2);
    quad::Config cfg;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-11;
    auto inner = [&](double x1) {
        return quad::integrate(
                   [&](double x2) {
                       SpaceTimePoint p;
                       p.x.xp[0] = x1;
                       p.x.xn = x2;
                       p.t = 0.3;
                       return heat(p, d2);
                   },
                   -12.0, 12.0, cfg)
            .value;
    };
    auto mass = quad::integrate(inner, -12.0, 12.0, cfg);
    CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("semigroup property via convolution quadrature") {
    Dim d2(2);
    quad::Config cfg;
    cfg.abs_tol = 1e-10;
    cfg.rel_tol = 1e-8;
    const double t = 0.08, s = 0.15;
    auto gamma = [&](double a, double b, double tt) {
        SpaceTimePoint p;
        p.x.xp[0] = a;
        p.x.xn = b;
        p.t = tt;
        return heat(p, d2);
    };
    const double X1 = 0.4, X2 = -0.3;
    auto inner = [&](double z1) {
        return quad::integrate(
                   [&](double z2) {
                       return gamma(z1, z2, t) * gamma(X1 - z1, X2 - z2, s);
                   },
                   -10.0, 10.0, cfg)
            .value;
    };
    auto conv = quad::integrate(inner, -10.0, 10.0, cfg);
    CHECK(conv.value == doctest::Approx(gamma(X1, X2, t + s)).epsilon(1e-6));
}

TEST_CASE("heat derivatives: closed forms against finite differences") {
    Dim d2(2);
    SpaceTimePoint p;
    p.x.xp[0] = 0.3;
    p.x.xn = 0.5;
    p.t = 0.2;
    const double h = 1e-5;
    auto val = [&](double a, double b, double tt) {
        SpaceTimePoint q;
        q.x.xp[0] = a;
        q.x.xn = b;
        q.t = tt;
        return heat(q, d2);
    };
    const double d1 = heat_deriv(p, d2, {1, 0, 0}, 0);
    const double fd1 = (val(0.3 + h, 0.5, 0.2) - val(0.3 - h, 0.5, 0.2)) / (2 * h);
    CHECK(d1 == doctest::Approx(fd1).epsilon(1e-8));
    const double dn2 = heat_deriv(p, d2, {0, 2, 0}, 0);
    const double fdn2 =
        (val(0.3, 0.5 + h, 0.2) - 2 * val(0.3, 0.5, 0.2) + val(0.3, 0.5 - h, 0.2)) /
        (h * h);
    CHECK(dn2 == doctest::Approx(fdn2).epsilon(1e-5));
    const double dt = heat_deriv(p, d2, {0, 0, 0}, 1);
    const double fdt = (val(0.3, 0.5, 0.2 + h) - val(0.3, 0.5, 0.2 - h)) / (2 * h);
    CHECK(dt == doctest::Approx(fdt).epsilon(1e-7));
}

TEST_CASE("normal derivative vanishes on the boundary plane") {
    Dim d2(2), d3(3);
    SpaceTimePoint p;
    p.x.xp[0] = 1.3;
    p.x.xn = 0.0;
    p.t = 0.07;
    CHECK(heat_deriv(p, d2, {0, 1, 0}, 0) == 0.0);
    SpaceTimePoint q;
    q.x.xp[0] = 0.2;
    q.x.xp[1] = -0.5;
    q.x.xn = 0.0;
    q.t = 0.11;
    CHECK(heat_deriv(q, d3, {0, 0, 1}, 0) == 0.0);
}

TEST_CASE("time derivative integrates to zero (mass conservation)") {
    Dim d2(2);
    quad::Config cfg;
    cfg.abs_tol = 1e-11;
    auto inner = [&](double x1) {
        return quad::integrate(
                   [&](double x2) {
                       SpaceTimePoint p;
                       p.x.xp[0] = x1;
                       p.x.xn = x2;
                       p.t = 0.25;
                       return heat_deriv(p, d2, {0, 0, 0}, 1);
                   },
                   -14.0, 14.0, cfg)
            .value;
    };
    auto r = quad::integrate(inner, -14.0, 14.0, cfg);
    CHECK(std::abs(r.value) < 1e-8);
}

TEST_CASE("second normal derivative factor form at random points") {
    // phi''(xn, tau) * phi(x1, tau) equals the (-2 + 4 xn^2/(4 tau))-weighted
    // Gaussian form produced by differentiating the B-layer kernel twice
    Dim d2(2);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), ut(0.05, 0.4);
    for (int k = 0; k < 5; ++k) {
        SpaceTimePoint p;
        p.x.xp[0] = ux(rng);
        p.x.xn = std::abs(ux(rng)) + 0.1;
        p.t = ut(rng);
        const double direct = heat_deriv(p, d2, {0, 2, 0}, 0);
        const double tau = p.t;
        const double factor =
            (p.x.xn * p.x.xn / (4.0 * tau * tau) - 1.0 / (2.0 * tau));
        const double expect = factor * heat(p, d2);
        CHECK(direct == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("errors for derivative requests at t <= 0") {
    Dim d2(2);
    SpaceTimePoint p;
    p.x.xp[0] = 0.5;
    p.t = 0.0;
    CHECK_THROWS_AS(heat_deriv(p, d2, {1, 0, 0}, 0), std::domain_error);
    p.t = -2.0;
    CHECK_THROWS_AS(heat_deriv(p, d2, {0, 1, 0}, 0), std::domain_error);
}

TEST_CASE("dimension guard") {
    CHECK_THROWS_AS(Dim(4), std::domain_error);
    CHECK_THROWS_AS(Dim(1), std::domain_error);
    CHECK(Dim(2).sphere_measure() == doctest::Approx(2.0 * M_PI));
    CHECK(Dim(3).sphere_measure() == doctest::Approx(4.0 * M_PI));
}
