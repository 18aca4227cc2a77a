#include "rissop/analytic.hpp"

#include "rissop/log.hpp"
#include "rissop/numerics.hpp"
#include "rissop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rissop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_rho_above_one(double rho, const char* fn) {
    if (!(rho > 1.0)) {
        throw std::domain_error(std::string(fn) + ": requires rate_threshold > 0 (rho > 1)");
    }
}

// Clamp to [0, 1]; report when the raw value sits noticeably outside.
double clamp_probability(double raw, const char* what) {
    const double clamped = std::clamp(raw, 0.0, 1.0);
    if (std::isnan(raw)) {
        return raw;
    }
    if (std::abs(clamped - raw) > 1e-12) {
        std::ostringstream os;
        os << what << ": raw value " << raw << " clamped to " << clamped;
        warn(os.str());
    }
    return clamped;
}

} // namespace

// ---------------------------------------------------------------------------
// Exact SOP by quadrature

QuadratureReport sop_exact_quadrature_report(const LinkStats& s) {
    const double rho = s.rho;
    const double ag = s.alpha * s.gamma0;
    const double sigma = s.sigma();

    auto integrand = [&](double x) {
        return cdf_gamma_d(rho * (x + 1.0) - 1.0, s) * pdf_gamma_e(x, s);
    };

    // Gamma_E value at which the Gamma_D CDF argument sits z standard
    // deviations from the mean; z = 0 is the split point a.
    auto x_at = [&](double z) {
        const double root = s.mu + z * sigma;
        if (root <= 0.0) {
            return -1.0;
        }
        return (ag * root * root + 1.0) / rho - 1.0;
    };

    std::vector<double> breaks{0.0};
    for (double z : {-12.0, -8.0, -4.0, -2.0, 0.0, 2.0, 4.0, 8.0, 12.0}) {
        const double x = x_at(z);
        if (x > 0.0) {
            breaks.push_back(x);
        }
    }
    const double r = s.lambda_se / s.lambda_je;
    for (double x : {r, s.lambda_se, 10.0 * s.lambda_se}) {
        breaks.push_back(x);
    }
    const double tail_start = std::max(100.0 * s.lambda_se, 2.0 * std::max(x_at(12.0), r));
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                                [&](double x) { return x >= tail_start; }),
                 breaks.end());
    breaks.push_back(tail_start);

    quad::Tolerance tol;
    tol.absolute = 1e-16;
    tol.relative = 1e-10;
    tol.max_intervals = 20000;

    const auto body = quad::integrate(integrand, std::span<const double>(breaks), tol);

    // Tail beyond tail_start with x = tail_start * e^u.
    auto tail = [&](double u) {
        const double x = tail_start * std::exp(u);
        return integrand(x) * x;
    };
    const auto rest = quad::integrate(tail, 0.0, 12.0, tol);

    QuadratureReport rep;
    rep.sop = body.value + rest.value;
    rep.error_estimate = body.error + rest.error;
    rep.evaluations = body.evaluations + rest.evaluations;
    rep.intervals = body.intervals + rest.intervals;
    const bool ok = body.converged && rest.converged && std::isfinite(rep.sop);
    if (!ok || rep.error_estimate > 1e-10) {
        std::ostringstream os;
        os << "sop_exact_quadrature: did not converge (value=" << rep.sop
           << ", error=" << rep.error_estimate << ", intervals=" << rep.intervals
           << ", evaluations=" << rep.evaluations << ", mu=" << s.mu
           << ", sigma2=" << s.sigma2 << ", lambda_se=" << s.lambda_se
           << ", lambda_je=" << s.lambda_je << ")";
        throw NumericalError(os.str());
    }
    rep.sop = clamp_probability(rep.sop, "sop_exact_quadrature");
    return rep;
}

double sop_exact_quadrature(const SystemConfig& cfg) {
    return sop_exact_quadrature_report(derive_stats(cfg)).sop;
}

// ---------------------------------------------------------------------------
// Closed form
//
// With y = sqrt(rho (x + 1) - 1) the Gamma_D exponent and the exp(-x /
// lambda_SE) factor of the Gamma_E density combine into a single Gaussian in
// y, exp(-b (y - c)^2) scaled by xi. The rational parts of the two density
// terms become 2 y / (y^2 + d) and 2 rho lambda_SE y / (y^2 + d)^2.

SopBreakdown sop_closed_form(const LinkStats& s) {
    require_rho_above_one(s.rho, "sop_closed_form");
    const double rho = s.rho;
    const double ag = s.alpha * s.gamma0;
    const double lse = s.lambda_se;
    const double lje = s.lambda_je;

    SopBreakdown out;
    out.a = (ag * s.mu * s.mu + 1.0) / rho - 1.0;
    out.d = 1.0 - rho + rho * lse / lje;

    // I0 = psi int_0^a f_E, written with Ei and Gamma(-1, .); every term is
    // carried with the common exp(1 / lambda_JE) factor folded in.
    const double u = 1.0 / lje;
    const double v = out.a / lse + u;
    if (v > 0.0 && out.a > 0.0) {
        const double decay = std::exp(-out.a / lse);
        const double bracket = -decay * expint_e1_scaled(v) + expint_e1_scaled(u) +
                               upper_gamma_neg1_scaled(u) - decay * upper_gamma_neg1_scaled(v);
        out.i0 = s.psi * bracket / lje;
    } else {
        out.i0 = kNaN;
    }

    bool valid = out.a > 0.0;
    const double lower = std::sqrt(rho - 1.0);
    const double upper = out.a > 0.0 ? std::sqrt(out.a * rho + rho - 1.0) : kNaN;
    double i1 = 0.0;
    double i2 = 0.0;
    for (std::size_t i = 0; i < QApprox::terms; ++i) {
        const double w = QApprox::weights[i];
        const double p = QApprox::exponents[i];
        const double big = rho * p * lse + 2.0 * ag * s.sigma2;
        const double b = big / (2.0 * ag * s.sigma2 * rho * lse);
        const double c = std::sqrt(ag) * rho * p * s.mu * lse / big;
        const double log_xi = -p * s.mu * s.mu * ag / big + (rho - 1.0) / (rho * lse);
        const double xi = std::exp(log_xi);
        const double c2d = c * c + out.d;
        valid = valid && c2d > 0.0;

        const double sb = std::sqrt(b);
        const double span = std::isnan(upper)
                                 ? kNaN
                                 : erf_std(sb * (upper - c)) - erf_std(sb * (lower - c));
        const double gauss = std::sqrt(kPi) / (2.0 * sb) * span;

        out.b[i] = b;
        out.c[i] = c;
        out.xi[i] = xi;
        out.psi_vals[i] = c / c2d * gauss;
        i1 += s.psi * w * xi * out.psi_vals[i] / lje;
        i2 += s.psi * w * xi * rho * lse * c / (c2d * c2d) * gauss / lje;
    }
    out.i1 = i1;
    out.i2 = i2;
    out.regime_valid = valid;

    if (valid) {
        out.sop = clamp_probability(1.0 - (out.i0 - out.i1 - out.i2), "sop_closed_form");
    } else {
        out.sop = sop_exact_quadrature_report(s).sop;
    }
    return out;
}

SopBreakdown sop_closed_form(const SystemConfig& cfg) { return sop_closed_form(derive_stats(cfg)); }

// ---------------------------------------------------------------------------
// Compact large-N form

namespace detail {

double compact_prefactor(const SystemConfig& cfg) {
    const LinkStats s = derive_stats(cfg);
    const double rho = s.rho;
    const double n = s.n;
    const double g0 = s.gamma0;
    const auto& z = s.zeta;
    const double k16 = 16.0 - kPi * kPi;
    double sum = 0.0;
    for (std::size_t i = 0; i < QApprox::terms; ++i) {
        const double w = QApprox::weights[i];
        const double p = QApprox::exponents[i];
        const double omega1 =
            s.psi * w * std::sqrt(k16) /
            (2.0 * rho * p * std::pow(n, 1.5) * std::sqrt(kPi) * g0 * z.jr * z.re) *
            std::sqrt(2.0 * rho * rho * p + k16 * rho * z.rd / (4.0 * z.re));
        const double omega2 = std::exp(-p * kPi * kPi * n / (2.0 * k16) *
                                       (1.0 / (8.0 * rho * p * z.re / (k16 * z.rd) + 1.0)));
        sum += omega1 * omega2;
    }
    return sum;
}

double compact_exponent_scale(const SystemConfig& cfg) {
    const auto z = path_gains(cfg);
    const double rho = cfg.rho();
    return (rho - 1.0) /
           (rho * z.re * z.sr * cfg.gamma0_linear() * static_cast<double>(cfg.n_elements));
}

double compact_raw(const SystemConfig& cfg, double alpha) {
    const double k = compact_exponent_scale(cfg);
    return compact_prefactor(cfg) / (1.0 - alpha) * std::exp(k / alpha);
}

} // namespace detail

namespace {

void check_compact_inputs(const SystemConfig& cfg, double alpha, const char* fn) {
    cfg.validate();
    require_rho_above_one(cfg.rho(), fn);
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error(std::string(fn) + ": alpha must lie in (0, 1)");
    }
}

} // namespace

double sop_compact(const SystemConfig& cfg, double alpha) {
    check_compact_inputs(cfg, alpha, "sop_compact");
    return clamp_probability(detail::compact_raw(cfg, alpha), "sop_compact");
}

double sop_compact(const SystemConfig& cfg) { return sop_compact(cfg, cfg.alpha); }

double sop_derivative(const SystemConfig& cfg, double alpha) {
    check_compact_inputs(cfg, alpha, "sop_derivative");
    const double k = detail::compact_exponent_scale(cfg);
    const double f = detail::compact_raw(cfg, alpha);
    return f * (1.0 / (1.0 - alpha) - k / (alpha * alpha));
}

double sop_second_derivative(const SystemConfig& cfg, double alpha) {
    check_compact_inputs(cfg, alpha, "sop_second_derivative");
    const double k = detail::compact_exponent_scale(cfg);
    const double f = detail::compact_raw(cfg, alpha);
    const double one_minus = 1.0 - alpha;
    const double g = 1.0 / one_minus - k / (alpha * alpha);
    return f * (g * g + 1.0 / (one_minus * one_minus) + 2.0 * k / (alpha * alpha * alpha));
}

} // namespace rissop
