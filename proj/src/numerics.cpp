#include "rissop/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rissop {

namespace detail {

void require_finite(double x, const char* fn) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(fn) + ": argument must be finite");
    }
}

} // namespace detail

namespace {

constexpr double kSeriesLimit = 6.0;
constexpr int kMaxTerms = 500;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
double e1_series(double x) {
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= kMaxTerms; ++k) {
        term *= -x / k;
        const double contrib = term / k;
        sum += contrib;
        if (std::abs(contrib) < kEps * std::abs(sum)) {
            break;
        }
    }
    return -std::numbers::egamma - std::log(x) - sum;
}

// exp(x) E1(x) by the modified Lentz evaluation of
//   1 / (x + 1 - 1 / (x + 3 - 4 / (x + 5 - ...)))
double e1_scaled_cf(double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxTerms; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            return h;
        }
    }
    throw NumericalError("expint_e1: continued fraction did not converge at x = " +
                         std::to_string(x));
}

void require_positive(double x, const char* fn) {
    detail::require_finite(x, fn);
    if (!(x > 0.0)) {
        throw std::domain_error(std::string(fn) + ": argument must be > 0");
    }
}

} // namespace

double q_exact(double x) {
    detail::require_finite(x, "q_exact");
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double q_approx(double x) {
    detail::require_finite(x, "q_approx");
    const double ax = std::abs(x);
    double sum = 0.0;
    for (std::size_t i = 0; i < QApprox::terms; ++i) {
        sum += 0.5 * QApprox::weights[i] * std::exp(-0.5 * QApprox::exponents[i] * ax * ax);
    }
    return x >= 0.0 ? sum : 1.0 - sum;
}

double erf_std(double x) {
    detail::require_finite(x, "erf_std");
    return std::erf(x);
}

double expint_e1(double x) {
    require_positive(x, "expint_e1");
    if (x < kSeriesLimit) {
        return e1_series(x);
    }
    return std::exp(-x) * e1_scaled_cf(x);
}

double expint_e1_scaled(double x) {
    require_positive(x, "expint_e1_scaled");
    if (x < kSeriesLimit) {
        return std::exp(x) * e1_series(x);
    }
    return e1_scaled_cf(x);
}

double expint_ei(double x) {
    detail::require_finite(x, "expint_ei");
    if (!(x < 0.0)) {
        throw std::domain_error("expint_ei: only negative arguments are supported");
    }
    return -expint_e1(-x);
}

double upper_gamma_neg1(double x) {
    require_positive(x, "upper_gamma_neg1");
    return std::exp(-x) * upper_gamma_neg1_scaled(x);
}

double upper_gamma_neg1_scaled(double x) {
    require_positive(x, "upper_gamma_neg1_scaled");
    return 1.0 / x - expint_e1_scaled(x);
}

} // namespace rissop
