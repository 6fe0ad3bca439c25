#include "stokeshs/quadrature.hpp"

#include <array>
#include <stdexcept>

namespace stokeshs::quad {

Result integrate_singular(const std::function<double(double)>& f, double a, double b,
                          EndpointSing at_a, EndpointSing at_b,
                          std::span<const double> splits, const Config& cfg) {
    using Kind = EndpointSing::Kind;
    Result out;
    out.converged = true;
    if (!(a < b)) return out;

    // both endpoints flagged: split at midpoint and recurse
    if (at_a.kind != Kind::none && at_b.kind != Kind::none) {
        const double mid = 0.5 * (a + b);
        Config half = cfg;
        half.abs_tol = 0.5 * cfg.abs_tol;
        Result l = integrate_singular(f, a, mid, at_a, EndpointSing::none(), splits, half);
        Result r = integrate_singular(f, mid, b, EndpointSing::none(), at_b, splits, half);
        l += r;
        l.converged = l.err_est <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(l.value));
        return l;
    }
    // reflect so the singular endpoint (if any) is at a
    if (at_b.kind != Kind::none) {
        auto g = [&f, a, b](double s) { return f(a + b - s); };
        std::vector<double> rsplits;
        for (double s : splits) rsplits.push_back(a + b - s);
        return integrate_singular(g, a, b, at_b, EndpointSing::none(), rsplits, cfg);
    }
    if (at_a.kind == Kind::none) return integrate(f, a, b, splits, cfg);

    const double len = b - a;
    const double beta = at_a.beta;
    if ((at_a.kind == Kind::power || at_a.kind == Kind::power_log) && beta >= 1.0) {
        // s = a + e^{-u}, u from |ln len| upward; integrand u-profile ~ u^{-gamma}
        const double u0 = -std::log(len);
        // truncate where the modelled tail falls below abs_tol/10:
        // integral tail ~ U^{1-gamma}/(gamma-1) for beta == 1
        double gamma = std::max(at_a.gamma, 1.001);
        double U = std::pow(10.0 * (gamma - 1.0) / cfg.abs_tol, 1.0 / (gamma - 1.0));
        U = std::clamp(U, u0 + 10.0, 700.0);
        auto g = [&f, a](double u) {
            const double e = std::exp(-u);
            return f(a + e) * e;
        };
        Result r = integrate(g, u0, U, cfg);
        const double tail = std::abs(g(U)) * std::max(U, 1.0) / (gamma - 1.0);
        r.err_est += tail;
        r.converged = r.err_est <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
        return r;
    }

    double p = 1.0;  // u = (s-a)^{1/p}
    if (at_a.kind == Kind::power || at_a.kind == Kind::power_log) {
        p = 1.0 / (1.0 - beta);
    } else {  // integrable log: modest power stretching flattens it
        p = 2.0;
    }
    // s = a + u^p, ds = p u^{p-1} du, u in (0, len^{1/p})
    const double umax = std::pow(len, 1.0 / p);
    auto g = [&f, a, p](double u) {
        if (u <= 0.0) return 0.0;
        return f(a + std::pow(u, p)) * p * std::pow(u, p - 1.0);
    };
    std::vector<double> usplits;
    for (double s : splits)
        if (s > a && s < b) usplits.push_back(std::pow(s - a, 1.0 / p));
    // inset avoids evaluating exactly at the singular point through rounding
    const double u_lo = umax * cfg.endpoint_split;
    return integrate(g, u_lo, umax, usplits, cfg);
}

std::vector<double> graded_splits(double a, double b, int levels, double ratio,
                                  bool toward_a) {
    std::vector<double> out;
    if (!(a < b) || levels <= 0) return out;
    double frac = 1.0;
    for (int k = 0; k < levels; ++k) {
        frac *= ratio;
        out.push_back(toward_a ? a + (b - a) * frac : b - (b - a) * frac);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Gauss-Legendre nodes/weights, positive half (symmetric rules).
constexpr std::array<double, 8> kGl16x = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGl16w = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
constexpr std::array<double, 12> kGl24x = {
    0.0640568928626056, 0.1911188674736163, 0.3150426796961634,
    0.4337935076260451, 0.5454214713888396, 0.6480936519369755,
    0.7401241915785544, 0.8200019859739029, 0.8864155270044011,
    0.9382745520027328, 0.9747285559713095, 0.9951872199970213};
constexpr std::array<double, 12> kGl24w = {
    0.1279381953467522, 0.1258374563468283, 0.1216704729278034,
    0.1155056680537256, 0.1074442701159656, 0.0976186521041139,
    0.0861901615319533, 0.0733464814110803, 0.0592985849154368,
    0.0442774388174198, 0.0285313886289337, 0.0123412297999872};

template <std::size_t N>
void expand(const std::array<double, N>& hx, const std::array<double, N>& hw,
            std::vector<double>& x, std::vector<double>& w) {
    x.clear();
    w.clear();
    for (std::size_t i = N; i-- > 0;) {
        x.push_back(-hx[i]);
        w.push_back(hw[i]);
    }
    for (std::size_t i = 0; i < N; ++i) {
        x.push_back(hx[i]);
        w.push_back(hw[i]);
    }
}

struct Tables {
    std::vector<double> x16, w16, x24, w24;
    Tables() {
        expand(kGl16x, kGl16w, x16, w16);
        expand(kGl24x, kGl24w, x24, w24);
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

GaussRule gauss_rule(int order) {
    const Tables& t = tables();
    switch (order) {
        case 16: return {t.x16, t.w16};
        case 24: return {t.x24, t.w24};
        default: throw std::invalid_argument("gauss_rule: order must be 16 or 24");
    }
}

}  // namespace stokeshs::quad
