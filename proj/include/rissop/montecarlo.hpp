#pragma once

#include "rissop/channel.hpp"
#include "rissop/philox.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace rissop {

struct McEstimate {
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
    double sop_hat = 0.0;
    double ci95_half_width = 0.0;
    std::uint64_t seed = 0;
    bool unreliable = false;  // fewer than 10 expected outages or successes
};

struct TrialSinr {
    double gamma_d = 0.0;
    double gamma_e = 0.0;
};

struct McOptions {
    int threads = 0;  // 0: OpenMP default
    // Test hook: force Gamma_E = 0 (no eavesdropper leakage).
    bool suppress_eavesdropper = false;
};

/// Per-configuration constants of the fading simulator. Unlike SystemConfig
/// validation, alpha may sit on the closed interval [0, 1] here.
class TrialKernel {
public:
    explicit TrialKernel(const SystemConfig& cfg);

    /// One channel realisation: h_XY^(n) ~ CN(0, zeta_XY) per element, RIS
    /// phases theta_n = -(arg h_SR^(n) + arg h_RD^(n)), then
    ///   Gamma_D = alpha Gamma0 (sum_n |h_RD^(n)| |h_SR^(n)|)^2
    ///   Gamma_E = |H_SE|^2 / (1 + |H_JE|^2).
    TrialSinr operator()(TrialRng& rng) const;

    double rho() const { return rho_; }

private:
    std::int64_t n_;
    double scale_sr_, scale_rd_, scale_jr_, scale_re_;  // sqrt(zeta / 2)
    double eta_;
    double signal_gain_;   // alpha Gamma0
    double jammer_gain_;   // (1 - alpha) Gamma0
    double rho_;
};

TrialSinr simulate_trial(const SystemConfig& cfg, TrialRng& rng);

/// Outage indicator: log2((1 + Gamma_D) / (1 + Gamma_E)) < R_th, with the
/// secrecy rate floored at zero.
bool is_outage(const TrialSinr& t, double rate_threshold);

McEstimate make_estimate(std::uint64_t trials, std::uint64_t outages, std::uint64_t seed);

/// Empirical SOP over `trials` trials. Trial t always draws from
/// TrialRng(seed, t), and outages are counted in integers, so the result is
/// bit-identical for any thread count.
McEstimate estimate_sop(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                        const McOptions& opts = {});

/// Single-threaded reference for estimate_sop; kept for tests and benchmarks.
McEstimate estimate_sop_serial(const SystemConfig& cfg, std::uint64_t trials,
                               std::uint64_t seed, const McOptions& opts = {});

inline constexpr std::uint64_t kMaxCdfSamples = 1'000'000;

struct SinrSamples {
    std::vector<double> gamma_d;  // sorted ascending
    std::vector<double> gamma_e;  // sorted ascending
};

/// Sorted Gamma_D and Gamma_E samples; at most kMaxCdfSamples trials.
SinrSamples sample_sinr(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                        const McOptions& opts = {});
SinrSamples sample_sinr_serial(const SystemConfig& cfg, std::uint64_t trials,
                               std::uint64_t seed);

/// Kolmogorov-Smirnov statistic sup_x |F_n(x) - F(x)| of sorted samples.
double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf);

struct EmpiricalCdf {
    std::vector<double> samples;  // sorted Gamma_D
    double ks_distance = 0.0;     // against the Gaussian-sum model CDF
};

EmpiricalCdf empirical_cdf_gamma_d(const SystemConfig& cfg, std::uint64_t trials,
                                   std::uint64_t seed, const McOptions& opts = {});

/// Mean of sqrt(Gamma_D / (alpha Gamma0)) = mean of sum_n |h_RD||h_SR|.
/// Summed in fixed blocks so the result does not depend on thread count.
double mean_amplitude_sum(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                          const McOptions& opts = {});

} // namespace rissop
