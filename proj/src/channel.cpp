#include "rissop/channel.hpp"

#include "rissop/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rissop {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw std::invalid_argument("SystemConfig: " + what);
    }
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

void SystemConfig::validate() const {
    require(n_elements >= 1, "n_elements must be >= 1");
    require(std::isfinite(gamma0_db), "gamma0_db must be finite");
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    require(std::isfinite(rate_threshold) && rate_threshold >= 0.0,
            "rate_threshold must be >= 0");
    require(finite_positive(distances.sr) && finite_positive(distances.jr) &&
                finite_positive(distances.rd) && finite_positive(distances.re),
            "all distances must be > 0");
    require(std::isfinite(pathloss_ref_db), "pathloss_ref_db must be finite");
    require(finite_positive(pathloss_exponent), "pathloss_exponent must be > 0");
    require(std::isfinite(reflect_amplitude) && reflect_amplitude > 0.0 &&
                reflect_amplitude <= 1.0,
            "reflect_amplitude must lie in (0, 1]");
}

double SystemConfig::gamma0_linear() const { return db_to_linear(gamma0_db); }

double SystemConfig::rho() const { return std::exp2(rate_threshold); }

double LinkStats::sigma() const { return std::sqrt(sigma2); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double pathloss_linear(double distance_m, const SystemConfig& cfg) {
    if (!(std::isfinite(distance_m) && distance_m > 0.0)) {
        throw std::domain_error("pathloss_linear: distance must be > 0");
    }
    const double db =
        cfg.pathloss_ref_db - 10.0 * cfg.pathloss_exponent * std::log10(distance_m);
    return db_to_linear(db);
}

LinkMap<double> path_gains(const SystemConfig& cfg) {
    return {pathloss_linear(cfg.distances.sr, cfg), pathloss_linear(cfg.distances.jr, cfg),
            pathloss_linear(cfg.distances.rd, cfg), pathloss_linear(cfg.distances.re, cfg)};
}

LinkStats derive_stats(const SystemConfig& cfg) {
    cfg.validate();
    return derive_stats(cfg, path_gains(cfg));
}

LinkStats derive_stats(const SystemConfig& cfg, const LinkMap<double>& zeta) {
    cfg.validate();
    constexpr double pi = std::numbers::pi;
    const double n = static_cast<double>(cfg.n_elements);
    const double eta2 = cfg.reflect_amplitude * cfg.reflect_amplitude;

    LinkStats s;
    s.n = n;
    s.zeta = zeta;
    s.alpha = cfg.alpha;
    s.gamma0 = cfg.gamma0_linear();
    s.rho = cfg.rho();
    s.mu = pi * n * std::sqrt(zeta.rd * zeta.sr) / 4.0;
    s.sigma2 = n * zeta.rd * zeta.sr * (16.0 - pi * pi) / 16.0;
    s.psi = 1.0 / q_exact(-s.mu / s.sigma());
    s.lambda_se = cfg.alpha * s.gamma0 * n * eta2 * zeta.re * zeta.sr;
    s.lambda_je = (1.0 - cfg.alpha) * s.gamma0 * n * eta2 * zeta.re * zeta.jr;
    return s;
}

double cdf_gamma_d(double x, const LinkStats& s, double alpha, double gamma0) {
    if (!(x >= 0.0)) {
        throw std::domain_error("cdf_gamma_d: x must be >= 0");
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    const double sigma = s.sigma();
    const double z = (std::sqrt(x / (alpha * gamma0)) - s.mu) / sigma;
    double f;
    if (z < 0.0) {
        // 1 - psi Q(z) == psi (Q(-z) - Q(mu / sigma)); keeps the lower tail
        // accurate where the direct form cancels to zero.
        f = s.psi * (q_exact(-z) - q_exact(s.mu / sigma));
    } else {
        f = 1.0 - s.psi * q_exact(z);
    }
    return std::clamp(f, 0.0, 1.0);
}

double cdf_gamma_d(double x, const LinkStats& s) { return cdf_gamma_d(x, s, s.alpha, s.gamma0); }

double ccdf_gamma_e(double x, const LinkStats& s) {
    if (!(x >= 0.0)) {
        throw std::domain_error("ccdf_gamma_e: x must be >= 0");
    }
    const double r = s.lambda_se / s.lambda_je;
    return std::clamp(r * std::exp(-x / s.lambda_se) / (x + r), 0.0, 1.0);
}

double cdf_gamma_e(double x, const LinkStats& s) { return 1.0 - ccdf_gamma_e(x, s); }

double pdf_gamma_e(double x, const LinkStats& s) {
    if (!(x >= 0.0)) {
        throw std::domain_error("pdf_gamma_e: x must be >= 0");
    }
    const double r = s.lambda_se / s.lambda_je;
    const double e = std::exp(-x / s.lambda_se);
    const double den = x + r;
    return e / (s.lambda_je * den) + s.lambda_se * e / (s.lambda_je * den * den);
}

} // namespace rissop
