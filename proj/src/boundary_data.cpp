#include "stokeshs/boundary_data.hpp"

#include <cmath>
#include <mutex>
#include <vector>

namespace stokeshs::datum {

bool in_support_A(const double* yp, const Dim& dim) {
    if (dim.n == 2) return yp[0] > -2.0 && yp[0] < -1.0;
    const double r = std::hypot(yp[0], yp[1]);
    return r > 1.0 && r < 2.0 && yp[0] > -2.0 && yp[0] < -1.0 && yp[1] > -2.0 &&
           yp[1] < -1.0;
}

double measure_A(const Dim& dim) {
    if (dim.n == 2) return 1.0;
    static double cached = [] {
        // area of {y in (-2,-1)^2 : |y| < 2}; the |y| > 1 constraint is
        // inactive inside the box (min |y| = sqrt(2))
        quad::Config cfg;
        cfg.abs_tol = 1e-12;
        cfg.rel_tol = 1e-12;
        auto row = [](double y1) {
            // y2 in (-2,-1) with y1^2 + y2^2 < 4  =>  y2 in (max(-2,-sqrt(s)), -1)
            const double s = 4.0 - y1 * y1;
            if (s <= 1.0) return 0.0;
            const double lo = std::max(-2.0, -std::sqrt(s));
            return lo < -1.0 ? (-1.0 - lo) : 0.0;
        };
        return quad::integrate(row, -2.0, -1.0, cfg).value;
    }();
    return cached;
}

double g1(const double* yp, const DatumSpec& spec) {
    return in_support_A(yp, spec.dim) ? 1.0 : 0.0;
}

double g2(double s, const DatumSpec& spec) {
    const double sig = s - kT0;
    if (sig <= 0.0 || s >= kTEnd) return 0.0;
    return std::pow(sig, -0.25) * std::pow(std::abs(std::log(sig)), -0.25 - spec.eps);
}

Vec g(const double* yp, double s, const DatumSpec& spec) {
    Vec out{0.0, 0.0, 0.0};
    out[spec.dim.n - 1] = spec.alpha * g1(yp, spec) * g2(s, spec);
    return out;
}

double g2_l4_fourth_power(const DatumSpec& spec) {
    // int_0^{3/16} s^{-1}|ln s|^{-1-4eps} ds = |ln(3/16)|^{-4eps}/(4eps)
    return std::pow(std::abs(std::log(kTEnd - kT0)), -4.0 * spec.eps) / (4.0 * spec.eps);
}

// ---------------------------------------------------------------------------

namespace {

double bump_norm_constant() {
    static double c = [] {
        quad::Config cfg;
        cfg.abs_tol = 1e-14;
        cfg.rel_tol = 1e-13;
        cfg.max_subdivisions = 2000;
        auto f = [](double x) {
            const double d = 1.0 - x * x;
            return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
        };
        return 1.0 / quad::integrate(f, -1.0, 1.0, cfg).value;
    }();
    return c;
}

struct CumulativeTable {
    std::vector<double> x, val;
    CumulativeTable() {
        const int m = 2048;
        x.resize(m + 1);
        val.resize(m + 1);
        quad::Config cfg;
        cfg.abs_tol = 1e-13;
        cfg.rel_tol = 1e-12;
        double acc = 0.0;
        x[0] = -1.0;
        val[0] = 0.0;
        for (int i = 1; i <= m; ++i) {
            const double a = -1.0 + 2.0 * (i - 1) / m;
            const double b = -1.0 + 2.0 * i / m;
            acc += quad::integrate([](double u) { return bump(u); }, a, b, cfg).value;
            x[i] = b;
            val[i] = acc;
        }
        // normalise the tiny residual of the tabulation so P(1) == 1 exactly
        for (auto& v : val) v /= acc;
    }
    double eval(double q) const {
        if (q <= -1.0) return 0.0;
        if (q >= 1.0) return 1.0;
        const double u = (q + 1.0) * 0.5 * (x.size() - 1);
        const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), x.size() - 2);
        const double w = u - static_cast<double>(i);
        return val[i] * (1.0 - w) + val[i + 1] * w;
    }
};

const CumulativeTable& cumulative_table() {
    static const CumulativeTable t;
    return t;
}

/// smooth ramp: 0 for q <= 0, 1 for q >= 1
double smoothstep(double q) {
    if (q <= 0.0) return 0.0;
    if (q >= 1.0) return 1.0;
    // C^infty transition exp-based ramp
    const double a = std::exp(-1.0 / q);
    const double b = std::exp(-1.0 / (1.0 - q));
    return a / (a + b);
}

}  // namespace

double bump(double x) {
    const double d = 1.0 - x * x;
    return d > 0.0 ? bump_norm_constant() * std::exp(-1.0 / d) : 0.0;
}

double bump_cumulative(double x) { return cumulative_table().eval(x); }

MollifiedDatum::MollifiedDatum(int k, const DatumSpec& spec)
    : k_(k), width_(k <= 0 ? 0.0 : std::pow(2.0, -k)), spec_(spec) {
    if (spec.dim.n != 2)
        throw std::domain_error("MollifiedDatum: built for n = 2 scans only");
    if (k < 0) throw std::domain_error("MollifiedDatum: k must be >= 0");
}

double MollifiedDatum::spatial(double y1) const {
    if (k_ == 0) {
        const double y[1] = {y1};
        return g1(y, spec_);
    }
    const double w = width_;
    // (chi_{(-2,-1)} * rho_k)(y1) = P((y1+2)/w) - P((y1+1)/w)
    const double conv =
        bump_cumulative((y1 + 2.0) / w) - bump_cumulative((y1 + 1.0) / w);
    // cutoff supported inside (-2,-1), == 1 on the 2w-inset
    const double cut = smoothstep((y1 + 2.0 - 0.5 * w) / w) *
                       smoothstep((-1.0 - 0.5 * w - y1) / w);
    return conv * cut;
}

double MollifiedDatum::temporal(double s) const {
    if (k_ == 0) return g2(s, spec_);
    const double w = width_;
    if (s <= kT0 || s >= kTEnd) return 0.0;
    // (g2 * rho_k)(s): the kernel support trims the integration window
    const double lo = std::max(kT0, s - w);
    const double hi = std::min(kTEnd, s + w);
    if (lo >= hi) return 0.0;
    quad::Config cfg;
    cfg.abs_tol = 1e-10;
    cfg.rel_tol = 1e-8;
    cfg.max_subdivisions = 600;
    auto f = [&](double sig) { return g2(sig, spec_) * bump((s - sig) / w) / w; };
    quad::Result r;
    if (lo <= kT0 + 1e-300) {
        r = quad::integrate_singular(f, kT0, hi,
                                     quad::EndpointSing::power_log(0.25, 0.25 + spec_.eps),
                                     quad::EndpointSing::none(), cfg);
    } else {
        r = quad::integrate(f, lo, hi, cfg);
    }
    // cutoff keeping the support inside (t0, 1/4)
    const double cut = smoothstep((s - kT0 - 0.5 * w) / w) *
                       smoothstep((kTEnd - 0.5 * w - s) / w);
    return r.value * cut;
}

Vec MollifiedDatum::value(const double* yp, double s) const {
    Vec out{0.0, 0.0, 0.0};
    out[spec_.dim.n - 1] = spec_.alpha * spatial(yp[0]) * temporal(s);
    return out;
}

}  // namespace stokeshs::datum
