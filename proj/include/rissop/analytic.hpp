#pragma once

#include "rissop/channel.hpp"

#include <array>

namespace rissop {

/// Intermediates of the closed-form SOP, one entry per exponential term of
/// the Q approximation where the quantity depends on the term.
struct SopBreakdown {
    double a = 0.0;  // split point of the Gamma_E axis
    std::array<double, 3> b{};
    std::array<double, 3> c{};
    double d = 0.0;
    std::array<double, 3> xi{};
    std::array<double, 3> psi_vals{};
    double i0 = 0.0;
    double i1 = 0.0;
    double i2 = 0.0;
    double sop = 1.0;
    bool regime_valid = false;
};

struct QuadratureReport {
    double sop = 1.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
};

/// SOP = int_0^inf F_{Gamma_D}(rho (x + 1) - 1) f_{Gamma_E}(x) dx by adaptive
/// Gauss-Kronrod with the exact Gaussian tail. Throws NumericalError when the
/// tolerance cannot be met.
double sop_exact_quadrature(const SystemConfig& cfg);
QuadratureReport sop_exact_quadrature_report(const LinkStats& s);

/// High-SNR closed form: three-exponential Q fit, upper tail piece dropped,
/// Taylor freeze of x / (x^2 + d) at the Gaussian peak. Out of regime
/// (a <= 0 or c^2 + d <= 0) the sop field falls back to quadrature.
SopBreakdown sop_closed_form(const SystemConfig& cfg);
SopBreakdown sop_closed_form(const LinkStats& s);

/// Large-N compact SOP, a function of alpha through exp(k / alpha) / (1 - alpha).
double sop_compact(const SystemConfig& cfg);
double sop_compact(const SystemConfig& cfg, double alpha);

/// d/dalpha and d^2/dalpha^2 of sop_compact (unclamped).
double sop_derivative(const SystemConfig& cfg, double alpha);
double sop_second_derivative(const SystemConfig& cfg, double alpha);

namespace detail {

/// alpha-independent prefactor sum_i Omega1_i Omega2_i of the compact form.
double compact_prefactor(const SystemConfig& cfg);

/// k = (rho - 1) / (rho zeta_RE zeta_SR Gamma0 N), the exponent scale.
double compact_exponent_scale(const SystemConfig& cfg);

/// Unclamped compact SOP.
double compact_raw(const SystemConfig& cfg, double alpha);

} // namespace detail

} // namespace rissop
