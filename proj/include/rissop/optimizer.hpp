#pragma once

#include "rissop/channel.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rissop {

enum class Objective { compact, closed_form, quadrature, monte_carlo };

std::string to_string(Objective o);
Objective objective_from_string(const std::string& name);

/// Thrown by the grid search when the sampled objective has more than one
/// descent-ascent turn. what() includes the full scan.
class NonUnimodalError : public std::runtime_error {
public:
    NonUnimodalError(const std::string& msg, std::vector<std::pair<double, double>> scan)
        : std::runtime_error(msg), scan_(std::move(scan)) {}
    const std::vector<std::pair<double, double>>& scan() const { return scan_; }

private:
    std::vector<std::pair<double, double>> scan_;
};

inline constexpr double kAlphaMin = 1e-4;
inline constexpr double kAlphaMax = 1.0 - 1e-4;

struct MinimizeResult {
    double x = 0.0;
    double value = 0.0;
    int iterations = 0;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo,
                                       double hi, double tol = 1e-10, int max_iter = 200);

/// Evaluate f on a logit-spaced grid over [lo, hi], reject non-unimodal
/// scans, then refine by golden section around the best grid point.
MinimizeResult grid_then_refine(const std::function<double(double)>& f, double lo, double hi,
                                int grid_points = 61);

/// Positive root of
///   alpha^2 rho zeta_RE zeta_SR Gamma0 N + alpha (rho - 1) - (rho - 1) = 0.
double alpha_star_closed_form(const SystemConfig& cfg);

/// Residual of that quadratic at alpha.
double alpha_star_residual(const SystemConfig& cfg, double alpha);

struct NumericOptions {
    std::uint64_t mc_trials = 100'000;
    std::uint64_t seed = 1;
    int grid_points = 61;
};

/// Numerical argmin of the chosen SOP objective over [1e-4, 1 - 1e-4].
/// The compact objective is convex and uses golden section directly; the
/// others use grid_then_refine. The Monte Carlo objective reuses one seed at
/// every alpha (common random numbers).
double alpha_star_numeric(const SystemConfig& cfg, Objective objective,
                          const NumericOptions& opts = {});

/// SOP of `cfg` with alpha replaced, evaluated by the chosen method.
double sop_at(const SystemConfig& cfg, double alpha, Objective method,
              const NumericOptions& opts = {});

struct ConvexityCertificate {
    bool convex = false;
    int grid_points = 0;
    int second_derivative_failures = 0;
    int second_difference_failures = 0;
    int sign_disagreements = 0;  // points where the two tests disagree
};

/// Uniform grid alpha_i = i / (grid_points + 1); checks the analytic second
/// derivative at every point and the second difference of sop_compact at
/// every interior point.
ConvexityCertificate certify_convexity_report(const SystemConfig& cfg, int grid_points);
bool certify_convexity(const SystemConfig& cfg, int grid_points);

/// Gamma0 shift (dB) between the EPA and OPA curves at the SOP level
/// `target`, each crossing located by bisection on Gamma0.
double opa_gain_db(const SystemConfig& cfg, double target, Objective method,
                   const NumericOptions& opts = {});

/// Gamma0 (dB) at which the SOP under the given allocation equals target.
/// `alpha` of nullopt selects the closed-form optimum at every Gamma0.
double gamma0_at_sop(const SystemConfig& cfg, std::optional<double> alpha, double target,
                     Objective method, const NumericOptions& opts = {});

struct AllocationResult {
    double alpha_star_closed = 0.0;
    double alpha_star_numeric = 0.0;
    double sop_at_star = 0.0;
    double sop_at_epa = 0.0;
    std::optional<double> gain_db;
};

AllocationResult optimize_allocation(const SystemConfig& cfg, Objective objective,
                                     const NumericOptions& opts = {},
                                     std::optional<double> gain_target = std::nullopt);

} // namespace rissop
