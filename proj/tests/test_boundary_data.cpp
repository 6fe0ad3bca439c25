#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stokeshs/boundary_data.hpp"

using namespace stokeshs;
using datum::DatumSpec;
using datum::g1;
using datum::g2;

TEST_CASE("support set membership") {
    DatumSpec s2(1.0, 0.25, Dim(2));
    double y[2] = {-1.5, 0.0};
    CHECK(g1(y, s2) == 1.0);
    y[0] = 0.5;
    CHECK(g1(y, s2) == 0.0);
    y[0] = -2.0;  // open set: boundary excluded
    CHECK(g1(y, s2) == 0.0);

    DatumSpec s3(1.0, 0.25, Dim(3));
    double z[2] = {-1.5, -1.5};  // |y'| = 1.5 sqrt(2) > 2
    CHECK(g1(z, s3) == 0.0);
    double z2[2] = {-1.2, -1.2};  // |y'| approx 1.697
    CHECK(g1(z2, s3) == 1.0);
}

TEST_CASE("measure of A") {
    CHECK(datum::measure_A(Dim(2)) == doctest::Approx(1.0));
    // n = 3: area of the box (-2,-1)^2 cut by |y| < 2; analytic value via
    // integral of (min(2, sqrt(4-y1^2)) - 1) over rows where positive
    const double a3 = datum::measure_A(Dim(3));
    // analytic: int_{-sqrt(3)}^{-1} (sqrt(4-t^2) - 1) dt
    //         = [t/2 sqrt(4-t^2) + 2 asin(t/2) - t]_{-sqrt(3)}^{-1}
    auto F = [](double t) {
        return 0.5 * t * std::sqrt(4.0 - t * t) + 2.0 * std::asin(0.5 * t) - t;
    };
    const double exact = F(-1.0) - F(-std::sqrt(3.0));
    CHECK(a3 == doctest::Approx(exact).epsilon(1e-10));
    CHECK(a3 > 0.0);
    CHECK(a3 < 1.0);
}

TEST_CASE("g2 pointwise values") {
    DatumSpec spec(1.0, 0.25, Dim(2));
    // s = 1/8: (1/16)^{-1/4} |ln(1/16)|^{-1/2} = 2 * 2.77259^{-1/2}
    CHECK(g2(0.125, spec) == doctest::Approx(1.2011867).epsilon(1e-6));
    CHECK(g2(0.5, spec) == 0.0);
    CHECK(g2(0.0625, spec) == 0.0);  // left endpoint excluded
    CHECK(g2(0.25, spec) == 0.0);
}

TEST_CASE("g vector structure, linearity in alpha") {
    DatumSpec spec(1.0, 0.25, Dim(2));
    double y[1] = {-1.5};
    Vec v = datum::g(y, 0.125, spec);
    CHECK(v[0] == 0.0);
    CHECK(v[1] == doctest::Approx(1.2011867).epsilon(1e-6));
    DatumSpec spec2(2.0, 0.25, Dim(2));
    Vec v2 = datum::g(y, 0.125, spec2);
    CHECK(v2[1] == doctest::Approx(2.0 * v[1]).epsilon(1e-14));
}

TEST_CASE("int g2^4 matches the closed-form antiderivative and is Cauchy in grading") {
    DatumSpec spec(1.0, 0.05, Dim(2));
    const double exact = datum::g2_l4_fourth_power(spec);
    // graded midpoint sums packed toward t0, increasing refinement
    auto approx = [&](int n, double pack) {
        double acc = 0.0;
        const double len = datum::kTEnd - datum::kT0;
        for (int i = 0; i < n; ++i) {
            const double u0 = std::pow(static_cast<double>(i) / n, pack);
            const double u1 = std::pow(static_cast<double>(i + 1) / n, pack);
            const double s = datum::kT0 + 0.5 * (u0 + u1) * len;
            acc += std::pow(g2(s, spec), 4) * (u1 - u0) * len;
        }
        return acc;
    };
    // the log-damped s^{-1} integrand converges only through the log factor;
    // successive graded refinements must be Cauchy toward the closed form
    const double a1 = approx(40'000, 6.0);
    const double a2 = approx(400'000, 8.0);
    const double a3 = approx(4'000'000, 10.0);
    CHECK(std::abs(a3 - exact) < std::abs(a1 - exact));
    CHECK(std::abs(a3 - a2) < std::abs(a2 - a1));
    CHECK(a3 == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("spatial L^r norm closed form: alpha g2(s) |A|^{1/r}") {
    DatumSpec spec(1.3, 0.1, Dim(2));
    const double s = 0.1;
    const double r = 3.0;
    // indicator factor: ||g(.,s)||_{L^r} = alpha g2(s) |A|^{1/r} with |A| = 1
    const double expect = spec.alpha * g2(s, spec) * std::pow(1.0, 1.0 / r);
    quad::Config cfg;
    auto f = [&](double y1) {
        double y[1] = {y1};
        return std::pow(std::abs(datum::g(y, s, spec)[1]), r);
    };
    auto rr = quad::integrate(f, -3.0, 0.0,
                              std::vector<double>{-2.0, -1.0}, cfg);
    CHECK(std::pow(rr.value, 1.0 / r) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("mollifier bump: unit mass, support") {
    quad::Config cfg;
    cfg.abs_tol = 1e-12;
    auto mass = quad::integrate([](double x) { return datum::bump(x); }, -1.0, 1.0, cfg);
    CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(datum::bump(1.0) == 0.0);
    CHECK(datum::bump(-1.2) == 0.0);
    CHECK(datum::bump_cumulative(-1.0) == 0.0);
    CHECK(datum::bump_cumulative(1.0) == 1.0);
    CHECK(datum::bump_cumulative(0.0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("mollified datum: support containment and smoothness") {
    DatumSpec spec(1.0, 0.25, Dim(2));
    for (int k : {4, 6, 8}) {
        datum::MollifiedDatum md(k, spec);
        // support in s inside (t0, 1/4)
        CHECK(md.temporal(datum::kT0) == 0.0);
        CHECK(md.temporal(datum::kT0 - 1e-3) == 0.0);
        CHECK(md.temporal(datum::kTEnd) == 0.0);
        CHECK(md.temporal(datum::kTEnd + 1e-3) == 0.0);
        // support in y inside (-2,-1)
        CHECK(md.spatial(-2.0) == 0.0);
        CHECK(md.spatial(-1.0) == 0.0);
        CHECK(md.spatial(-0.9) == 0.0);
        CHECK(md.spatial(-1.5) > 0.0);
        // smoothness: finite differences of the spatial factor stay bounded
        const double h = 1e-5;
        const double d1 =
            (md.spatial(-1.5 + h) - md.spatial(-1.5 - h)) / (2.0 * h);
        CHECK(std::abs(d1) < 1e3);
    }
}

TEST_CASE("mollified datum converges to g") {
    DatumSpec spec(1.0, 0.25, Dim(2));
    // pointwise at a Lebesgue point, interior of A and of the time window
    datum::MollifiedDatum md10(10, spec);
    double y[1] = {-1.5};
    const double s = 0.125;
    const Vec gk = md10.value(y, s);
    const Vec gg = datum::g(y, s, spec);
    CHECK(gk[1] == doctest::Approx(gg[1]).epsilon(0.01));

    // discrete L^4 L^4 surrogate gap decreasing over k
    auto gap = [&](int k) {
        datum::MollifiedDatum md(k, spec);
        double acc = 0.0;
        const int ns = 400, ny = 120;
        for (int i = 0; i < ns; ++i) {
            // grade the s-grid toward t0
            const double u0 = std::pow(static_cast<double>(i) / ns, 4.0);
            const double u1 = std::pow(static_cast<double>(i + 1) / ns, 4.0);
            const double sm = datum::kT0 + 0.5 * (u0 + u1) * (3.0 / 16.0);
            const double ds = (u1 - u0) * 3.0 / 16.0;
            double row = 0.0;
            for (int j = 0; j < ny; ++j) {
                const double yy = -2.1 + 1.2 * (j + 0.5) / ny;
                double yv[1] = {yy};
                const double d = md.value(yv, sm)[1] - datum::g(yv, sm, spec)[1];
                row += std::pow(std::abs(d), 4) * (1.2 / ny);
            }
            acc += row * ds;
        }
        return std::pow(acc, 0.25);
    };
    const double g4 = gap(4), g6 = gap(6), g8 = gap(8), g10 = gap(10);
    CHECK(g6 < g4);
    CHECK(g8 < g6);
    CHECK(g10 < g8);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(DatumSpec(0.0, 0.1, Dim(2)), std::domain_error);
    CHECK_THROWS_AS(DatumSpec(1.0, 0.3, Dim(2)), std::domain_error);
    CHECK_THROWS_AS(DatumSpec(1.0, 0.0, Dim(2)), std::domain_error);
}
