#pragma once

#include <functional>
#include <optional>

#include "stokeshs/boundary_data.hpp"
#include "stokeshs/kernels.hpp"
#include "stokeshs/quadrature.hpp"
#include "stokeshs/types.hpp"

namespace stokeshs::field {

/// Labeled parts of the proof's decompositions (n = 2):
///   w_1 = w1_11 + w1_12 + w1_2   (L_n1 layer, B_1n layer, instantaneous term)
///   w_n = wn_1 + wn_2 + wn_3     (heat layer, L_nn layer, instantaneous term)
struct Parts {
    double w1_11 = 0.0, w1_12 = 0.0, w1_2 = 0.0;
    double wn_1 = 0.0, wn_2 = 0.0, wn_3 = 0.0;
};

struct FieldSample {
    Vec w{};
    Mat grad_w{};  ///< grad_w[i][j] = D_{x_j} w_i
    double err_est = 0.0;
    bool converged = false;
    std::optional<Parts> parts;
};

/// Tangential datum profile entering the collapsed (y'-integrated) kernels:
/// either the indicator of A (closed forms) or a mollified spatial factor.
/// All members integrate the stated kernel against the profile a(y).
class TangentialProfile {
  public:
    virtual ~TangentialProfile() = default;
    /// int a(y) phi^{(m)}(x1 - y, tau) dy, m in [0,3]
    virtual double conv_heat(int m, double x1, double tau) const = 0;
    /// int a(y) K(x1 - y, xn) dy for the Newtonian kernels below
    enum class NK { D1N, DnN, D1D1N, D1DnN };
    virtual double conv_newton(NK k, double x1, double xn) const = 0;
    /// support bounds of a (quadrature windows)
    virtual double support_lo() const = 0;
    virtual double support_hi() const = 0;
};

/// chi_A profile, A = (-2,-1): erf / kernel-difference closed forms.
class IndicatorProfile final : public TangentialProfile {
  public:
    double conv_heat(int m, double x1, double tau) const override;
    double conv_newton(NK k, double x1, double xn) const override;
    double support_lo() const override { return -2.0; }
    double support_hi() const override { return -1.0; }
};

/// Mollified spatial factor a_k; kernel integrals by adaptive quadrature.
class MollifiedProfile final : public TangentialProfile {
  public:
    explicit MollifiedProfile(const datum::MollifiedDatum* m) : m_(m) {}
    double conv_heat(int m, double x1, double tau) const override;
    double conv_newton(NK k, double x1, double xn) const override;
    double support_lo() const override { return -2.0; }
    double support_hi() const override { return -1.0; }

  private:
    const datum::MollifiedDatum* m_;
};

/// Temporal factor of the datum as a function of sigma = s - t0 (relative
/// time; avoids cancellation at the singular endpoint).
struct TemporalFactor {
    std::function<double(double)> value_sigma;
    bool singular_at_t0 = true;  ///< sigma^{-1/4} |ln sigma|^{-1/4-eps} behaviour
    double eps = 0.05;
    double support_hi = 3.0 / 16.0;  ///< upper support bound in sigma
};

/// Evaluation paths: the collapsed path integrates the A-profile into the
/// kernels in closed form (n = 2 only); the nested path follows the generic
/// ordering (innermost kernel integral, then y' over A, then s) and also
/// serves n = 3 (values only).
enum class Path { collapsed, nested };

struct EvalOptions {
    bool gradient = true;
    bool parts = false;
    Path path = Path::collapsed;
};

/// Velocity field of the counterexample datum at p (x_n > 0); identically 0
/// for t <= t0.
FieldSample eval_w(const SpaceTimePoint& p, const datum::DatumSpec& spec,
                   const quad::Config& cfg, const EvalOptions& opt = {});

/// eval_w with the decomposition parts filled in (n = 2).
FieldSample eval_w_split(const SpaceTimePoint& p, const datum::DatumSpec& spec,
                         const quad::Config& cfg);

/// Scan-facing bundle: datum parameters plus the (possibly mollified)
/// tangential/temporal factors the collapsed kernels integrate against.
struct ScanField {
    const datum::DatumSpec* spec;
    const TangentialProfile* profile;
    const TemporalFactor* temporal;
};

/// Relative-time evaluators used by the norm scans (t_rel = t - t0 > 0).
double dxn_w1_rel(double x1, double xn, double t_rel, const ScanField& f,
                  const quad::Config& cfg, double* err_est = nullptr);
void grad_wn_rel(double x1, double xn, double t_rel, const ScanField& f,
                 const quad::Config& cfg, double out[2], double* err_est = nullptr);
void w_values_rel(double x1, double xn, double t_rel, const ScanField& f,
                  const quad::Config& cfg, double out[2], double* err_est = nullptr);

/// Dominant singular term D_{x_n} w_1^{12} through the paper's factored form:
/// the (4 x_n^2/(4 tau) - 2)-type Gaussian prefactor times the J-machinery
/// inner integral, the latter closed over z via the Dawson function.
double eval_Dxn_w12(const SpaceTimePoint& p, const datum::DatumSpec& spec,
                    const quad::Config& cfg, double* err_est = nullptr);

/// Default singular-datum factors.
TemporalFactor g2_temporal(const datum::DatumSpec& spec);
const IndicatorProfile& indicator_profile();

}  // namespace stokeshs::field
