#include "rissop/optimizer.hpp"

#include "rissop/analytic.hpp"
#include "rissop/montecarlo.hpp"
#include "rissop/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rissop {

std::string to_string(Objective o) {
    switch (o) {
    case Objective::compact: return "compact";
    case Objective::closed_form: return "closed_form";
    case Objective::quadrature: return "quadrature";
    case Objective::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

Objective objective_from_string(const std::string& name) {
    if (name == "compact") return Objective::compact;
    if (name == "closed_form") return Objective::closed_form;
    if (name == "quadrature") return Objective::quadrature;
    if (name == "monte_carlo") return Objective::monte_carlo;
    throw std::invalid_argument("unknown method '" + name + "'");
}

MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double tol, int max_iter) {
    if (!(lo < hi)) {
        throw std::invalid_argument("golden_section_minimize: empty interval");
    }
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int it = 0;
    for (; it < max_iter && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    MinimizeResult r;
    r.x = 0.5 * (a + b);
    r.value = f(r.x);
    r.iterations = it;
    return r;
}

namespace {

MinimizeResult grid_then_refine_impl(const std::function<double(double)>& f, double lo,
                                     double hi, int grid_points, double tie_tol) {
    if (grid_points < 3) {
        throw std::invalid_argument("grid_then_refine: need at least 3 grid points");
    }
    auto logit = [](double p) { return std::log(p / (1.0 - p)); };
    const double t0 = logit(lo);
    const double t1 = logit(hi);
    std::vector<std::pair<double, double>> scan;
    scan.reserve(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double t = t0 + (t1 - t0) * i / (grid_points - 1);
        const double x = i == 0 ? lo : (i == grid_points - 1 ? hi : 1.0 / (1.0 + std::exp(-t)));
        scan.emplace_back(x, f(x));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < scan.size(); ++i) {
        if (scan[i].second < scan[best].second) {
            best = i;
        }
    }
    double scale = 0.0;
    for (const auto& [x, v] : scan) {
        scale = std::max(scale, std::abs(v));
    }
    const double slack = tie_tol * std::max(scale, 1e-300);
    bool unimodal = true;
    for (std::size_t i = 1; i <= best; ++i) {
        unimodal = unimodal && scan[i].second <= scan[i - 1].second + slack;
    }
    for (std::size_t i = best + 1; i < scan.size(); ++i) {
        unimodal = unimodal && scan[i].second >= scan[i - 1].second - slack;
    }
    if (!unimodal) {
        std::ostringstream os;
        os << "objective is not unimodal on the alpha grid; scan:";
        os.precision(10);
        for (const auto& [x, v] : scan) {
            os << " (" << x << ", " << v << ")";
        }
        throw NonUnimodalError(os.str(), std::move(scan));
    }
    const double a = scan[best == 0 ? 0 : best - 1].first;
    const double b = scan[std::min(best + 1, scan.size() - 1)].first;
    auto refined = golden_section_minimize(f, a, b, 1e-10 * std::max(1.0, b - a));
    if (scan[best].second < refined.value) {
        refined.x = scan[best].first;
        refined.value = scan[best].second;
    }
    return refined;
}

SystemConfig with_alpha(SystemConfig cfg, double alpha) {
    cfg.alpha = alpha;
    return cfg;
}

} // namespace

MinimizeResult grid_then_refine(const std::function<double(double)>& f, double lo, double hi,
                                int grid_points) {
    return grid_then_refine_impl(f, lo, hi, grid_points, 1e-9);
}

double alpha_star_closed_form(const SystemConfig& cfg) {
    cfg.validate();
    const double rho = cfg.rho();
    if (!(rho > 1.0)) {
        throw std::domain_error("alpha_star_closed_form: requires rate_threshold > 0 (rho > 1)");
    }
    const auto z = path_gains(cfg);
    const double k = rho * z.re * z.sr * cfg.gamma0_linear() * static_cast<double>(cfg.n_elements);
    const double r1 = rho - 1.0;
    return (-r1 + std::sqrt(r1 * r1 + 4.0 * k * r1)) / (2.0 * k);
}

double alpha_star_residual(const SystemConfig& cfg, double alpha) {
    const double rho = cfg.rho();
    const auto z = path_gains(cfg);
    const double k = rho * z.re * z.sr * cfg.gamma0_linear() * static_cast<double>(cfg.n_elements);
    return alpha * alpha * k + alpha * (rho - 1.0) - (rho - 1.0);
}

double sop_at(const SystemConfig& cfg, double alpha, Objective method, const NumericOptions& opts) {
    const SystemConfig c = with_alpha(cfg, alpha);
    switch (method) {
    case Objective::compact: return sop_compact(c);
    case Objective::closed_form: return sop_closed_form(c).sop;
    case Objective::quadrature: return sop_exact_quadrature(c);
    case Objective::monte_carlo: return estimate_sop(c, opts.mc_trials, opts.seed).sop_hat;
    }
    throw std::invalid_argument("sop_at: unknown method");
}

double alpha_star_numeric(const SystemConfig& cfg, Objective objective, const NumericOptions& opts) {
    cfg.validate();
    if (!(cfg.rho() > 1.0)) {
        throw std::domain_error("alpha_star_numeric: requires rate_threshold > 0 (rho > 1)");
    }
    if (objective == Objective::compact) {
        // Only the alpha-dependent factor exp(k / alpha) / (1 - alpha) matters;
        // its logarithm avoids overflow near the lower bound.
        const double k = detail::compact_exponent_scale(cfg);
        auto f = [k](double a) { return k / a - std::log1p(-a); };
        return golden_section_minimize(f, kAlphaMin, kAlphaMax, 1e-12).x;
    }
    auto f = [&](double a) { return sop_at(cfg, a, objective, opts); };
    double tie = 1e-9;
    if (objective == Objective::monte_carlo) {
        // Sampled objective: differences below one outage count are ties.
        tie = 1.0 / static_cast<double>(opts.mc_trials);
    }
    return grid_then_refine_impl(f, kAlphaMin, kAlphaMax, opts.grid_points, tie).x;
}

ConvexityCertificate certify_convexity_report(const SystemConfig& cfg, int grid_points) {
    if (grid_points < 3) {
        throw std::invalid_argument("certify_convexity: grid_points must be >= 3");
    }
    ConvexityCertificate cert;
    cert.grid_points = grid_points;
    std::vector<double> alpha(grid_points);
    std::vector<double> value(grid_points);
    std::vector<double> second(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        alpha[i] = static_cast<double>(i + 1) / static_cast<double>(grid_points + 1);
        value[i] = detail::compact_raw(cfg, alpha[i]);
        second[i] = sop_second_derivative(cfg, alpha[i]);
        if (!(second[i] > 0.0)) {
            ++cert.second_derivative_failures;
        }
    }
    for (int i = 1; i + 1 < grid_points; ++i) {
        const double diff = value[i - 1] - 2.0 * value[i] + value[i + 1];
        const bool diff_positive = diff > 0.0;
        if (!diff_positive) {
            ++cert.second_difference_failures;
        }
        if (diff_positive != (second[i] > 0.0)) {
            ++cert.sign_disagreements;
        }
    }
    cert.convex = cert.second_derivative_failures == 0 && cert.second_difference_failures == 0;
    return cert;
}

bool certify_convexity(const SystemConfig& cfg, int grid_points) {
    return certify_convexity_report(cfg, grid_points).convex;
}

double gamma0_at_sop(const SystemConfig& cfg, std::optional<double> alpha, double target,
                     Objective method, const NumericOptions& opts) {
    if (!(target > 0.0 && target < 1.0)) {
        throw std::invalid_argument("gamma0_at_sop: target must lie in (0, 1)");
    }
    auto excess = [&](double g0_db) {
        SystemConfig c = cfg;
        c.gamma0_db = g0_db;
        const double a = alpha ? *alpha : alpha_star_closed_form(c);
        const double sop = sop_at(c, a, method, opts);
        return std::log(std::max(sop, 1e-300)) - std::log(target);
    };
    double lo = -30.0;
    double hi = 120.0;
    double f_lo = excess(lo);
    const double f_hi = excess(hi);
    if (!(f_lo > 0.0 && f_hi < 0.0)) {
        std::ostringstream os;
        os << "gamma0_at_sop: target " << target << " not bracketed on [" << lo << ", " << hi
           << "] dB (log-excess " << f_lo << ", " << f_hi << ")";
        throw NumericalError(os.str());
    }
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = excess(mid);
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double opa_gain_db(const SystemConfig& cfg, double target, Objective method,
                   const NumericOptions& opts) {
    const double epa = gamma0_at_sop(cfg, 0.5, target, method, opts);
    const double opa = gamma0_at_sop(cfg, std::nullopt, target, method, opts);
    return epa - opa;
}

AllocationResult optimize_allocation(const SystemConfig& cfg, Objective objective,
                                     const NumericOptions& opts,
                                     std::optional<double> gain_target) {
    AllocationResult r;
    r.alpha_star_closed = alpha_star_closed_form(cfg);
    r.alpha_star_numeric = alpha_star_numeric(cfg, objective, opts);
    r.sop_at_star = sop_at(cfg, r.alpha_star_closed, objective, opts);
    r.sop_at_epa = sop_at(cfg, 0.5, objective, opts);
    if (gain_target) {
        r.gain_db = opa_gain_db(cfg, *gain_target, objective, opts);
    }
    return r;
}

} // namespace rissop
