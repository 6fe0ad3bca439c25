#include "stokeshs/field.hpp"

#include <cmath>

#include "stokeshs/detail/strip.hpp"

namespace stokeshs::field {

using fundsol::heat1d;
using quad::Config;
using quad::Result;

namespace {

constexpr double kT0 = datum::kT0;
constexpr double kSigmaEnd = 3.0 / 16.0;  // support length of g2 in sigma

double cum_phi(double a, double tau) {
    return 0.5 * (1.0 + std::erf(a / (2.0 * std::sqrt(tau))));
}

// Newtonian kernels on (v, xn), n = 2
double kN(double v, double xn) { return 0.5 * std::log(v * v + xn * xn) / (2.0 * M_PI); }
double kD1N(double v, double xn) { return v / (2.0 * M_PI * (v * v + xn * xn)); }
double kDnN(double v, double xn) { return xn / (2.0 * M_PI * (v * v + xn * xn)); }
double kD1D1N(double v, double xn) {
    const double r2 = v * v + xn * xn;
    return (xn * xn - v * v) / (2.0 * M_PI * r2 * r2);
}
double kD1DnN(double v, double xn) {
    const double r2 = v * v + xn * xn;
    return -v * xn / (M_PI * r2 * r2);
}

double g2_sigma(double sigma, double eps) {
    if (sigma <= 0.0 || sigma >= kSigmaEnd) return 0.0;
    return std::pow(sigma, -0.25) * std::pow(std::abs(std::log(sigma)), -0.25 - eps);
}

}  // namespace

// ---------------------------------------------------------------------------
// profiles
// ---------------------------------------------------------------------------

double IndicatorProfile::conv_heat(int m, double x1, double tau) const {
    const double e2 = x1 + 2.0, e1 = x1 + 1.0;
    if (m == 0) return cum_phi(e2, tau) - cum_phi(e1, tau);
    return heat1d(e2, tau, m - 1) - heat1d(e1, tau, m - 1);
}

double IndicatorProfile::conv_newton(NK k, double x1, double xn) const {
    const double e2 = x1 + 2.0, e1 = x1 + 1.0;
    switch (k) {
        case NK::D1N: return kN(e2, xn) - kN(e1, xn);
        case NK::DnN:
            return (std::atan(e2 / xn) - std::atan(e1 / xn)) / (2.0 * M_PI);
        case NK::D1D1N: return kD1N(e2, xn) - kD1N(e1, xn);
        case NK::D1DnN: return kDnN(e2, xn) - kDnN(e1, xn);
    }
    return 0.0;
}

double MollifiedProfile::conv_heat(int m, double x1, double tau) const {
    Config cfg;
    cfg.abs_tol = 1e-11;
    cfg.rel_tol = 1e-9;
    auto f = [&](double y) { return m_->spatial(y) * heat1d(x1 - y, tau, m); };
    return quad::integrate(f, -2.0, -1.0, std::vector<double>{-1.75, -1.5, -1.25}, cfg)
        .value;
}

double MollifiedProfile::conv_newton(NK k, double x1, double xn) const {
    Config cfg;
    cfg.abs_tol = 1e-11;
    cfg.rel_tol = 1e-9;
    auto ker = [&](double v) {
        switch (k) {
            case NK::D1N: return kD1N(v, xn);
            case NK::DnN: return kDnN(v, xn);
            case NK::D1D1N: return kD1D1N(v, xn);
            case NK::D1DnN: return kD1DnN(v, xn);
        }
        return 0.0;
    };
    auto f = [&](double y) { return m_->spatial(y) * ker(x1 - y); };
    std::vector<double> splits{-1.75, -1.5, -1.25};
    for (double c : {-2.0 * xn, 0.0, 2.0 * xn}) {
        const double y = x1 + c;
        if (y > -2.0 && y < -1.0) splits.push_back(y);
    }
    return quad::integrate(f, -2.0, -1.0, splits, cfg).value;
}

TemporalFactor g2_temporal(const datum::DatumSpec& spec) {
    TemporalFactor t;
    const double eps = spec.eps;
    t.value_sigma = [eps](double sigma) { return g2_sigma(sigma, eps); };
    t.singular_at_t0 = true;
    t.eps = eps;
    t.support_hi = kSigmaEnd;
    return t;
}

const IndicatorProfile& indicator_profile() {
    static const IndicatorProfile p;
    return p;
}

// ---------------------------------------------------------------------------
// collapsed layer kernels (n = 2)
// ---------------------------------------------------------------------------

namespace {

/// Strip kernels integrated against the tangential profile:
///   lam_strip(m, q, isel) =
///     -4 int_strip P_m(x1-u1,tau) phi^{(q)}(xn-un,tau) u_sel/(2pi|u|^2) du
/// where P_m = conv_heat(m). The collapsed L entries are
///   Lam12 = lam_strip(0,2,0), Lam22 = lam_strip(0,2,1), Lam21 = lam_strip(1,1,1);
/// gradient pieces raise one derivative order.
Result lam_strip(const TangentialProfile& prof, int m, int q, int isel, double x1,
                 double xn, double tau, const Config& cfg) {
    const double W = kernels::detail::gaussian_window(tau, cfg.abs_tol);
    const double lo = x1 - prof.support_hi() - W;
    const double hi = x1 - prof.support_lo() + W;
    auto fa = [&](double u1) { return prof.conv_heat(m, x1 - u1, tau); };
    auto fb = [&](double b) { return heat1d(b, tau, q); };
    std::vector<double> splits;
    for (double e : {x1 - prof.support_hi(), x1 - prof.support_lo()})
        if (e > lo && e < hi) splits.push_back(e);
    Result r = kernels::detail::strip2(fa, fb, isel, xn, tau, lo, hi, splits, cfg);
    r.value *= -4.0;
    r.err_est *= 4.0;
    return r;
}

/// PV int P_m(x1 - z, tau) / (2 pi z) dz with symmetric pairing at the pole.
Result pv_profile(const TangentialProfile& prof, int m, double x1, double tau,
                  const Config& cfg) {
    const double W = kernels::detail::gaussian_window(tau, cfg.abs_tol);
    const double a = x1 - prof.support_hi() - W;
    const double b = x1 - prof.support_lo() + W;
    auto f = [&](double z) { return prof.conv_heat(m, x1 - z, tau) / (2.0 * M_PI * z); };
    if (a >= 0.0 || b <= 0.0) return quad::integrate(f, a, b, cfg);
    const double din = std::min({0.2, b, -a});
    Result out = quad::integrate_pv(f, 0.0, din, cfg);
    out += quad::integrate(f, a, -din, cfg);
    out += quad::integrate(f, din, b, cfg);
    return out;
}

/// boundary term of D_{x_n} Lam22:
///   -4 phi''(0,tau) int P_0(x1-u1,tau) DnN(u1,xn) du1
Result lam22_dxn_boundary(const TangentialProfile& prof, double x1, double xn,
                          double tau, const Config& cfg) {
    const double W = kernels::detail::gaussian_window(tau, cfg.abs_tol);
    const double lo = x1 - prof.support_hi() - W;
    const double hi = x1 - prof.support_lo() + W;
    auto f = [&](double u1) { return prof.conv_heat(0, x1 - u1, tau) * kDnN(u1, xn); };
    std::vector<double> splits;
    for (double c : {-2.0 * xn, 0.0, 2.0 * xn})
        if (c > lo && c < hi) splits.push_back(c);
    Result r = quad::integrate(f, lo, hi, splits, cfg);
    const double fac = -4.0 * heat1d(0.0, tau, 2);
    r.value *= fac;
    r.err_est *= std::abs(fac);
    return r;
}

/// Time-layer integral int_0^{min(t_rel, 3/16)} T(sigma) K(t_rel - sigma) dsigma
/// with the proof's midpoint split, endpoint substitution on the left and
/// kernel-peak splits near sigma = t_rel on the right.
template <class K>
Result time_layer(K&& kern, const TemporalFactor& tf, double t_rel, double xn,
                  const Config& cfg) {
    Result out;
    out.converged = true;
    const double b = std::min(t_rel, tf.support_hi);
    if (b <= 0.0) return out;
    const double mid = 0.5 * b;
    auto f = [&](double sigma) {
        const double v = tf.value_sigma(sigma);
        return v == 0.0 ? 0.0 : v * kern(t_rel - sigma);
    };
    Config half = cfg;
    half.abs_tol = 0.5 * cfg.abs_tol;
    if (tf.singular_at_t0) {
        out += quad::integrate_singular(
            f, 0.0, mid, quad::EndpointSing::power_log(0.25, 0.25 + tf.eps),
            quad::EndpointSing::none(), half);
    } else {
        out += quad::integrate(f, 0.0, mid, quad::graded_splits(0.0, mid, 8, 0.5, true),
                               half);
    }
    std::vector<double> splits;
    for (double c : {16.0, 4.0, 1.0, 0.25}) {
        const double s = t_rel - c * xn * xn;
        if (s > mid && s < b) splits.push_back(s);
    }
    if (t_rel > b) {
        out += quad::integrate(f, mid, b, splits, half);
    } else {
        auto sp = quad::graded_splits(mid, b, 10, 0.5, false);
        splits.insert(splits.end(), sp.begin(), sp.end());
        out += quad::integrate(f, mid, b, splits, half);
    }
    return out;
}

struct LayerCfg {
    Config outer;
    Config inner;
};

LayerCfg split_budget(const Config& cfg) {
    LayerCfg lc{cfg, cfg};
    // inner integrals must be noise-free relative to the outer quadrature
    lc.inner.abs_tol = std::max(cfg.abs_tol * 1e-2, 1e-13);
    lc.inner.rel_tol = std::max(cfg.rel_tol * 1e-2, 1e-9);
    return lc;
}

}  // namespace

// ---------------------------------------------------------------------------
// scan-facing evaluators (relative time, n = 2, collapsed path)
// ---------------------------------------------------------------------------

double dxn_w1_rel(double x1, double xn, double t_rel, const ScanField& f,
                  const Config& cfg, double* err_est) {
    const auto& prof = *f.profile;
    const LayerCfg lc = split_budget(cfg);
    // D_{x_n} w1_11 kernel: -(D_{x_n} Lam21) = -lam_strip(1,2,1)
    auto k11 = [&](double tau) {
        return -lam_strip(prof, 1, 2, 1, x1, xn, tau, lc.inner).value;
    };
    // D_{x_n} w1_12 kernel: +4 phi''(xn,tau) PV(P_0)
    auto k12 = [&](double tau) {
        return 4.0 * heat1d(xn, tau, 2) * pv_profile(prof, 0, x1, tau, lc.inner).value;
    };
    Result a = time_layer(k11, *f.temporal, t_rel, xn, lc.outer);
    Result b = time_layer(k12, *f.temporal, t_rel, xn, lc.outer);
    const double inst = 2.0 * f.temporal->value_sigma(t_rel) *
                        prof.conv_newton(TangentialProfile::NK::D1DnN, x1, xn);
    if (err_est) *err_est = f.spec->alpha * (a.err_est + b.err_est);
    return f.spec->alpha * (a.value + b.value + inst);
}

void grad_wn_rel(double x1, double xn, double t_rel, const ScanField& f,
                 const Config& cfg, double out[2], double* err_est) {
    const auto& prof = *f.profile;
    const LayerCfg lc = split_budget(cfg);
    auto kd1 = [&](double tau) {
        const double heatpart = -2.0 * prof.conv_heat(1, x1, tau) * heat1d(xn, tau, 1);
        return heatpart - lam_strip(prof, 1, 2, 1, x1, xn, tau, lc.inner).value;
    };
    auto kdn = [&](double tau) {
        const double heatpart = -2.0 * prof.conv_heat(0, x1, tau) * heat1d(xn, tau, 2);
        const double vol = lam_strip(prof, 0, 3, 1, x1, xn, tau, lc.inner).value;
        const double bnd = lam22_dxn_boundary(prof, x1, xn, tau, lc.inner).value;
        return heatpart - (vol + bnd);
    };
    Result r1 = time_layer(kd1, *f.temporal, t_rel, xn, lc.outer);
    Result rn = time_layer(kdn, *f.temporal, t_rel, xn, lc.outer);
    const double gt = f.temporal->value_sigma(t_rel);
    out[0] = f.spec->alpha *
             (r1.value + 2.0 * gt * prof.conv_newton(TangentialProfile::NK::D1DnN, x1, xn));
    out[1] = f.spec->alpha *
             (rn.value - 2.0 * gt * prof.conv_newton(TangentialProfile::NK::D1D1N, x1, xn));
    if (err_est) *err_est = f.spec->alpha * (r1.err_est + rn.err_est);
}

void w_values_rel(double x1, double xn, double t_rel, const ScanField& f,
                  const Config& cfg, double out[2], double* err_est) {
    const auto& prof = *f.profile;
    const LayerCfg lc = split_budget(cfg);
    auto kw1 = [&](double tau) {
        return -lam_strip(prof, 0, 2, 0, x1, xn, tau, lc.inner).value;
    };
    auto kw2 = [&](double tau) {
        const double heatpart = -2.0 * prof.conv_heat(0, x1, tau) * heat1d(xn, tau, 1);
        return heatpart - lam_strip(prof, 0, 2, 1, x1, xn, tau, lc.inner).value;
    };
    Result r1 = time_layer(kw1, *f.temporal, t_rel, xn, lc.outer);
    Result r2 = time_layer(kw2, *f.temporal, t_rel, xn, lc.outer);
    const double gt = f.temporal->value_sigma(t_rel);
    out[0] = f.spec->alpha *
             (r1.value + 2.0 * gt * prof.conv_newton(TangentialProfile::NK::D1N, x1, xn));
    out[1] = f.spec->alpha *
             (r2.value + 2.0 * gt * prof.conv_newton(TangentialProfile::NK::DnN, x1, xn));
    if (err_est) *err_est = f.spec->alpha * (r1.err_est + r2.err_est);
}

// ---------------------------------------------------------------------------
// full evaluator
// ---------------------------------------------------------------------------

namespace {

FieldSample eval_collapsed(const SpaceTimePoint& p, const datum::DatumSpec& spec,
                           const Config& cfg, const EvalOptions& opt) {
    FieldSample out;
    out.converged = true;
    const double x1 = p.x.xp[0], xn = p.x.xn;
    const double t_rel = p.t - kT0;
    const auto& prof = indicator_profile();
    const TemporalFactor tf = g2_temporal(spec);
    const LayerCfg lc = split_budget(cfg);
    using NK = TangentialProfile::NK;

    if (t_rel <= 0.0) {  // causal support: the datum vanishes for s <= t0
        if (opt.parts) out.parts = Parts{};
        return out;
    }

    ScanField sf{&spec, &prof, &tf};
    double err = 0.0;
    double wv[2];
    w_values_rel(x1, xn, t_rel, sf, cfg, wv, &err);
    out.w[0] = wv[0];
    out.w[1] = wv[1];

    const double gt = tf.value_sigma(t_rel);

    if (opt.parts) {
        // independent split of the w_1 layer through L_1n = L_n1 + B_1n
        auto k11 = [&](double tau) {
            return -lam_strip(prof, 1, 1, 1, x1, xn, tau, lc.inner).value;
        };
        auto k12 = [&](double tau) {
            return 4.0 * heat1d(xn, tau, 1) *
                   pv_profile(prof, 0, x1, tau, lc.inner).value;
        };
        auto kheat = [&](double tau) {
            return -2.0 * prof.conv_heat(0, x1, tau) * heat1d(xn, tau, 1);
        };
        auto k22 = [&](double tau) {
            return -lam_strip(prof, 0, 2, 1, x1, xn, tau, lc.inner).value;
        };
        Result w1_11 = time_layer(k11, tf, t_rel, xn, lc.outer);
        Result w1_12 = time_layer(k12, tf, t_rel, xn, lc.outer);
        Result wn_1 = time_layer(kheat, tf, t_rel, xn, lc.outer);
        Result wn_2 = time_layer(k22, tf, t_rel, xn, lc.outer);
        Parts parts;
        parts.w1_11 = spec.alpha * w1_11.value;
        parts.w1_12 = spec.alpha * w1_12.value;
        parts.w1_2 = spec.alpha * 2.0 * gt * prof.conv_newton(NK::D1N, x1, xn);
        parts.wn_1 = spec.alpha * wn_1.value;
        parts.wn_2 = spec.alpha * wn_2.value;
        parts.wn_3 = spec.alpha * 2.0 * gt * prof.conv_newton(NK::DnN, x1, xn);
        out.parts = parts;
        err += spec.alpha *
               (w1_11.err_est + w1_12.err_est + wn_1.err_est + wn_2.err_est);
    }

    if (opt.gradient) {
        double ge = 0.0;
        auto kd1w1 = [&](double tau) {
            return -lam_strip(prof, 1, 2, 0, x1, xn, tau, lc.inner).value;
        };
        Result d1w1 = time_layer(kd1w1, tf, t_rel, xn, lc.outer);
        out.grad_w[0][0] =
            spec.alpha * (d1w1.value + 2.0 * gt * prof.conv_newton(NK::D1D1N, x1, xn));
        err += spec.alpha * d1w1.err_est;
        out.grad_w[0][1] = dxn_w1_rel(x1, xn, t_rel, sf, cfg, &ge);
        err += ge;
        double rn[2];
        grad_wn_rel(x1, xn, t_rel, sf, cfg, rn, &ge);
        out.grad_w[1][0] = rn[0];
        out.grad_w[1][1] = rn[1];
        err += ge;
    }

    out.err_est = err;
    return out;
}

// nested reference path: generic ordering (kernel-internal integral, then y'
// over A, then s); values only
FieldSample eval_nested(const SpaceTimePoint& p, const datum::DatumSpec& spec,
                        const Config& cfg, const EvalOptions& opt) {
    FieldSample out;
    out.converged = true;
    const Dim dim = spec.dim;
    const int n = dim.n;
    const double t_rel = p.t - kT0;
    if (t_rel <= 0.0) {
        if (opt.parts) out.parts = Parts{};
        return out;
    }
    const LayerCfg lc = split_budget(cfg);
    Config ycfg = lc.outer;
    ycfg.abs_tol = std::max(cfg.abs_tol * 0.1, lc.inner.abs_tol);

    std::array<int, 3> dn{0, 0, 0};
    dn[n - 1] = 1;
    const TemporalFactor tf = g2_temporal(spec);

    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        auto layer_kernel = [&](double tau) {
            auto over_y1 = [&](double y1) {
                auto ksm = [&](double y2) {
                    SpaceTimePoint q;
                    q.x.xp[0] = p.x.xp[0] - y1;
                    if (n == 3) q.x.xp[1] = p.x.xp[1] - y2;
                    q.x.xn = p.x.xn;
                    q.t = tau;
                    double v = -kernels::tensor_L(i, n - 1, q, dim, lc.inner).value;
                    if (i == n - 1) v += -2.0 * fundsol::heat_deriv(q, dim, dn, 0);
                    return v;
                };
                if (n == 2) return ksm(0.0);
                const double s = 4.0 - y1 * y1;
                const double lo = std::max(-2.0, -std::sqrt(std::max(s, 0.0)));
                if (!(lo < -1.0)) return 0.0;
                return quad::integrate(ksm, lo, -1.0, ycfg).value;
            };
            return quad::integrate(over_y1, -2.0, -1.0, ycfg).value;
        };
        Result lay = time_layer(layer_kernel, tf, t_rel, p.x.xn, lc.outer);
        auto inst_y1 = [&](double y1) {
            auto f = [&](double y2) {
                SpacePoint q;
                q.xp[0] = p.x.xp[0] - y1;
                if (n == 3) q.xp[1] = p.x.xp[1] - y2;
                q.xn = p.x.xn;
                return fundsol::newton_grad(q, dim)[i];
            };
            if (n == 2) return f(0.0);
            const double s = 4.0 - y1 * y1;
            const double lo = std::max(-2.0, -std::sqrt(std::max(s, 0.0)));
            if (!(lo < -1.0)) return 0.0;
            return quad::integrate(f, lo, -1.0, ycfg).value;
        };
        Result inst = quad::integrate(inst_y1, -2.0, -1.0, ycfg);
        const double gt = tf.value_sigma(t_rel);
        out.w[i] = spec.alpha * (lay.value + 2.0 * gt * inst.value);
        err += spec.alpha * (lay.err_est + 2.0 * gt * inst.err_est);
        out.converged = out.converged && lay.converged;
    }
    out.err_est = err;
    return out;
}

}  // namespace

FieldSample eval_w(const SpaceTimePoint& p, const datum::DatumSpec& spec,
                   const Config& cfg, const EvalOptions& opt) {
    if (!(p.x.xn > 0.0)) throw std::domain_error("eval_w: x_n > 0 required");
    if (opt.path == Path::nested || spec.dim.n == 3)
        return eval_nested(p, spec, cfg, opt);
    return eval_collapsed(p, spec, cfg, opt);
}

FieldSample eval_w_split(const SpaceTimePoint& p, const datum::DatumSpec& spec,
                         const Config& cfg) {
    EvalOptions opt;
    opt.parts = true;
    opt.gradient = false;
    return eval_w(p, spec, cfg, opt);
}

double eval_Dxn_w12(const SpaceTimePoint& p, const datum::DatumSpec& spec,
                    const Config& cfg, double* err_est) {
    // factored form: PV int phi(X-z,tau)/z dz = F(X/(2 sqrt(tau)))/sqrt(tau)
    // (Dawson F), so the y'-collapsed B-layer derivative kernel is
    //   +4 phi''(xn,tau) (1/2pi) int_A F((x1-y)/(2 sqrt(tau)))/sqrt(tau) dy.
    const double x1 = p.x.xp[0], xn = p.x.xn;
    const double t_rel = p.t - kT0;
    const LayerCfg lc = split_budget(cfg);
    const TemporalFactor tf = g2_temporal(spec);
    auto kern = [&](double tau) {
        auto overA = [&](double y) {
            return kernels::dawson((x1 - y) / (2.0 * std::sqrt(tau))) / std::sqrt(tau);
        };
        Result ry = quad::integrate(overA, -2.0, -1.0, lc.inner);
        return 4.0 * heat1d(xn, tau, 2) * ry.value / (2.0 * M_PI);
    };
    Result r = time_layer(kern, tf, t_rel, xn, lc.outer);
    if (err_est) *err_est = spec.alpha * r.err_est;
    return spec.alpha * r.value;
}

}  // namespace stokeshs::field
