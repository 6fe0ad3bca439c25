#pragma once

#include <algorithm>
#include <functional>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace stokeshs::quad {

/// Tolerances, truncation and singularity-handling switches shared by all
/// integration routines. A converged result satisfies
/// err_est <= max(abs_tol, rel_tol*|value|).
struct Config {
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    int max_subdivisions = 400;  ///< panel budget per 1-D integration call
    double trunc_radius = 12.0;  ///< R for integrals over R^{n-1} / half-space
    enum class Trunc { fixed, auto_gaussian_tail };
    Trunc trunc_policy = Trunc::fixed;
    bool pv_pairing = true;      ///< symmetric-pair evaluation of odd singular kernels
    double endpoint_split = 1e-13;  ///< relative inset used when a substitution
                                    ///< cannot start exactly at a singular endpoint

    Config with_tol(double at, double rt) const {
        Config c = *this;
        c.abs_tol = at;
        c.rel_tol = rt;
        return c;
    }
};

struct Result {
    double value = 0.0;
    double err_est = 0.0;   ///< absolute error estimate
    std::int64_t n_evals = 0;
    bool converged = false;

    Result& operator+=(const Result& o) {
        value += o.value;
        err_est += o.err_est;
        n_evals += o.n_evals;
        converged = converged && o.converged;
        return *this;
    }
};

inline Result combine(std::initializer_list<Result> rs) {
    Result out;
    out.converged = true;
    for (const auto& r : rs) out += r;
    return out;
}

/// Endpoint behaviour descriptor: integrand ~ (s-a)^{-beta} |ln(s-a)|^{-gamma}
/// near the flagged endpoint, beta < 1 (or beta == 1 with gamma > 1, which is
/// handled by the exponential substitution).
struct EndpointSing {
    enum class Kind { none, power, power_log, log_integrable };
    Kind kind = Kind::none;
    double beta = 0.0;
    double gamma = 0.0;

    static EndpointSing none() { return {}; }
    static EndpointSing power(double beta) { return {Kind::power, beta, 0.0}; }
    static EndpointSing power_log(double beta, double gamma) {
        return {Kind::power_log, beta, gamma};
    }
    /// integrand ~ |ln(s-a)|^p, integrable log
    static EndpointSing log_integrable() { return {Kind::log_integrable, 0.0, 0.0}; }
};

namespace detail {

// Gauss-Kronrod 7-15 nodes on [-1,1] (positive half; symmetric).
inline constexpr double kGkNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelEstimate {
    double k15 = 0.0;
    double err = 0.0;
};

template <class F>
PanelEstimate gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double k15 = kKronrodW[7] * fc;
    double g7 = kGaussW[3] * fc;
    double resabs = std::abs(fc) * kKronrodW[7];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kGkNodes[i];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        k15 += kKronrodW[i] * (f1 + f2);
        resabs += kKronrodW[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) g7 += kGaussW[i / 2] * (f1 + f2);
    }
    k15 *= h;
    g7 *= h;
    resabs *= std::abs(h);
    // QUADPACK-style error estimate with a roundoff floor
    double err = std::abs(k15 - g7);
    if (resabs > 0.0 && err > 0.0) {
        const double scale = std::pow(200.0 * err / resabs, 1.5);
        err = (scale < 1.0) ? resabs * scale : resabs;
    }
    err = std::max(err, 50.0 * 2.220446049250313e-16 * resabs);
    return {k15, err};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of a smooth (or integrably singular,
/// after the substitutions below) f over [a,b]. `splits` are interior points
/// where panels must break (feature hints: kernel scales, support edges).
template <class F>
Result integrate(F&& f, double a, double b, std::span<const double> splits,
                 const Config& cfg) {
    Result out;
    if (!(a < b)) {
        out.converged = true;
        return out;
    }
    struct Panel {
        double a, b, val, err;
    };
    std::vector<Panel> panels;
    std::vector<double> edges;
    edges.push_back(a);
    for (double s : splits)
        if (s > a && s < b) edges.push_back(s);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    double total = 0.0, toterr = 0.0;
    std::int64_t evals = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto e = detail::gk15(f, edges[i], edges[i + 1]);
        evals += 15;
        panels.push_back({edges[i], edges[i + 1], e.k15, e.err});
        total += e.k15;
        toterr += e.err;
    }

    auto tol = [&](double v) { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v)); };
    int budget = cfg.max_subdivisions;
    while (toterr > tol(total) && static_cast<int>(panels.size()) < budget) {
        // split the worst panel
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;
        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(p.a < mid && mid < p.b)) break;  // interval exhausted in fp
        auto l = detail::gk15(f, p.a, mid);
        auto r = detail::gk15(f, mid, p.b);
        evals += 30;
        total += l.k15 + r.k15 - p.val;
        toterr += l.err + r.err - p.err;
        panels[worst] = {p.a, mid, l.k15, l.err};
        panels.push_back({mid, p.b, r.k15, r.err});
    }
    // recompute sums to avoid drift
    total = 0.0;
    toterr = 0.0;
    for (const auto& p : panels) {
        total += p.val;
        toterr += p.err;
    }
    out.value = total;
    out.err_est = toterr;
    out.n_evals = evals;
    out.converged = toterr <= tol(total);
    return out;
}

template <class F>
Result integrate(F&& f, double a, double b, const Config& cfg) {
    return integrate(std::forward<F>(f), a, b, std::span<const double>{}, cfg);
}

/// Integration over (a,b) with an algebraic-log singularity at one or both
/// endpoints. Power parts are removed by the substitution u = (s-a)^{1-beta};
/// the remaining |ln|^{-gamma} factor is bounded and slowly varying, which
/// Gauss-Kronrod absorbs. beta == 1 (with gamma > 1) uses s = a + e^{-u} and
/// an analytic tail bound below machine-relevant scales.
/// (Type-erased: these calls sit at outer integration levels, never in the
/// innermost kernel loops.)
Result integrate_singular(const std::function<double(double)>& f, double a, double b,
                          EndpointSing at_a, EndpointSing at_b,
                          std::span<const double> splits, const Config& cfg);

inline Result integrate_singular(const std::function<double(double)>& f, double a,
                                 double b, EndpointSing at_a, EndpointSing at_b,
                                 const Config& cfg) {
    return integrate_singular(f, a, b, at_a, at_b, std::span<const double>{}, cfg);
}

/// Principal value of \int f(s) ds where f has an odd non-integrable
/// singularity at `center`: symmetric-pair evaluation g(r) = f(c+r) + f(c-r)
/// over (0, radius), graded toward r = 0, plus nothing outside (the caller
/// integrates the regular remainder with `integrate`).
template <class F>
Result integrate_pv(F&& f, double center, double radius, const Config& cfg) {
    auto g = [&f, center](double r) { return f(center + r) + f(center - r); };
    // the paired integrand is regular but its two terms are individually
    // huge near 0; start at a graded inset and refine toward it
    const double r0 = radius * cfg.endpoint_split;
    std::vector<double> splits;
    for (double frac : {1e-8, 1e-6, 1e-4, 1e-2, 0.1})
        splits.push_back(radius * frac);
    Result r = integrate(g, r0, radius, splits, cfg);
    r.n_evals *= 2;
    return r;
}

/// Geometrically graded edge set on (a,b), clustering toward `toward_a ? a : b`
/// with the given ratio; returns interior split points suitable for `splits`.
std::vector<double> graded_splits(double a, double b, int levels, double ratio,
                                  bool toward_a);

/// Fixed-order Gauss-Legendre rule (nodes/weights on [-1,1]); order in {16,24,32}.
struct GaussRule {
    std::span<const double> x;
    std::span<const double> w;
};
GaussRule gauss_rule(int order);

/// Hint describing a Gaussian envelope exp(-(s-center)^2 / (4 tau)) of an
/// integrand on the line; drives auto_gaussian_tail truncation.
struct GaussianHint {
    bool present = false;
    double center = 0.0;
    double tau = 1.0;  ///< envelope scale: exp(-(s-c)^2/(4 tau))
};

/// Integral over the line R (the n=2 case of integrals over R^{n-1}).
/// Truncates to [-R, R] (or the hint-derived interval) and integrates
/// adaptively with the provided interior splits.
template <class F>
Result integrate_line(F&& f, std::span<const double> splits, const Config& cfg,
                      GaussianHint hint = {}) {
    double lo = -cfg.trunc_radius, hi = cfg.trunc_radius;
    if (cfg.trunc_policy == Config::Trunc::auto_gaussian_tail && hint.present) {
        // half-width W with exp(-W^2/(4 tau)) < abs_tol/10
        const double W =
            2.0 * std::sqrt(std::max(1.0, -std::log(cfg.abs_tol / 10.0)) * hint.tau);
        lo = hint.center - W;
        hi = hint.center + W;
    }
    return integrate(f, lo, hi, splits, cfg);
}

}  // namespace stokeshs::quad
