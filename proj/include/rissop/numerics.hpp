#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace rissop {

/// Raised when an adaptive numerical routine (quadrature, root bracketing)
/// fails to reach its tolerance. The message carries the diagnostics.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Three-term exponential fit of the Gaussian tail,
///   Q(x) ~ sum_i (w_i / 2) exp(-p_i x^2 / 2)   for x >= 0,
/// reflected as 1 - Q(-x) for negative arguments.
struct QApprox {
    static constexpr std::array<double, 3> weights{1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0};
    static constexpr std::array<double, 3> exponents{1.0, 4.0, 4.0 / 3.0};
    static constexpr std::size_t terms = 3;
};

// Gaussian tail probability Q(x) = P[Z > x], Z ~ N(0, 1).
double q_exact(double x);

// Exponential-sum approximation of Q. The x >= 0 branch is used at x == 0.
double q_approx(double x);

double erf_std(double x);

/// Exponential integral Ei(x) for x < 0, i.e. -E1(-x).
/// Power series below |x| = 6, Lentz continued fraction above.
double expint_ei(double x);

/// E1(x) for x > 0.
double expint_e1(double x);

/// exp(x) * E1(x) for x > 0; finite for arguments where E1 itself underflows.
double expint_e1_scaled(double x);

/// Upper incomplete gamma at order -1, via
///   Gamma(-1, x) = exp(-x) / x + Ei(-x).
double upper_gamma_neg1(double x);

/// exp(x) * Gamma(-1, x) for x > 0.
double upper_gamma_neg1_scaled(double x);

namespace detail {
void require_finite(double x, const char* fn);
}

} // namespace rissop
