#pragma once

#include "stokeshs/quadrature.hpp"
#include "stokeshs/types.hpp"

namespace stokeshs::datum {

/// Fixed time window of the singular datum.
inline constexpr double kT0 = 1.0 / 16.0;
inline constexpr double kTEnd = 1.0 / 4.0;

/// Parameters of the boundary datum g(y',s) = (0,...,0, alpha g1(y') g2(s)).
struct DatumSpec {
    double alpha = 1.0;
    double eps = 0.05;  ///< exponent in the |ln|^{-1/4-eps} factor, 0 < eps <= 1/4
    Dim dim{2};

    DatumSpec() = default;
    DatumSpec(double alpha_, double eps_, Dim dim_) : alpha(alpha_), eps(eps_), dim(dim_) {
        validate();
    }
    void validate() const {
        if (!(alpha > 0.0)) throw std::domain_error("DatumSpec: alpha must be > 0");
        if (!(eps > 0.0 && eps <= 0.25))
            throw std::domain_error("DatumSpec: eps must lie in (0, 1/4]");
    }
};

/// The support set A of the spatial factor:
///   n = 2: the interval (-2,-1);
///   n = 3: {1 < |y'| < 2} cut to the box (-2,-1)^2.
bool in_support_A(const double* yp, const Dim& dim);

/// Lebesgue measure of A (exact 1 for n = 2; quadrature value for n = 3,
/// computed once and cached).
double measure_A(const Dim& dim);

/// Spatial factor g1(y') = chi_A(y').
double g1(const double* yp, const DatumSpec& spec);

/// Temporal factor g2(s) = (s-1/16)^{-1/4} |ln(s-1/16)|^{-1/4-eps} on (1/16, 1/4).
double g2(double s, const DatumSpec& spec);

/// Full datum vector; only the n-th component is nonzero.
Vec g(const double* yp, double s, const DatumSpec& spec);

/// Closed form of \int_{t0}^{1/4} g2^4 ds = |ln(3/16)|^{-4 eps} / (4 eps);
/// antiderivative of the s^{-1}|ln s|^{-1-4 eps} model, used as a test oracle.
double g2_l4_fourth_power(const DatumSpec& spec);

// ---------------------------------------------------------------------------
// Mollified approximating sequence
// ---------------------------------------------------------------------------

/// Standard bump rho(x) = C exp(-1/(1-x^2)) on (-1,1), unit mass; rho_k has
/// width 2^{-k}. The cumulative P(x) = int_{-1}^x rho is tabulated once.
double bump(double x);
double bump_cumulative(double x);

/// g_k = (g * rho_k)(y', s) multiplied by a smooth cutoff that keeps the
/// support inside A x (t0, 1/4). Separable: g_k = alpha a_k(y') b_k(s) e_n.
class MollifiedDatum {
  public:
    MollifiedDatum(int k, const DatumSpec& spec);

    int k() const { return k_; }
    double width() const { return width_; }

    /// spatial factor (chi_A * rho_k) * cutoff_A   (n = 2 only)
    double spatial(double y1) const;
    /// temporal factor (g2 * rho_k) * cutoff_T
    double temporal(double s) const;
    /// full vector value (n-th component alpha * spatial * temporal)
    Vec value(const double* yp, double s) const;

  private:
    int k_;
    double width_;
    DatumSpec spec_;
};

}  // namespace stokeshs::datum
