#pragma once

#include <cstdint>

namespace rissop {

/// One distance or path gain per RIS-facing link.
template <class T>
struct LinkMap {
    T sr{};  // source -> RIS
    T jr{};  // jammer -> RIS
    T rd{};  // RIS -> destination
    T re{};  // RIS -> eavesdropper
};

/// Physical scenario: RIS size, power budget and its split, secrecy
/// threshold, node geometry and the log-distance path-loss law.
/// Defaults are the reference scenario used throughout the figures.
struct SystemConfig {
    std::int64_t n_elements = 64;
    double gamma0_db = 20.0;       // P_T / N_0 in dB
    double alpha = 0.5;            // fraction of P_T given to the source
    double rate_threshold = 1.0;   // bits per channel use
    LinkMap<double> distances{30.0, 30.0, 30.0, 15.0};  // metres
    double pathloss_ref_db = 42.0;
    double pathloss_exponent = 3.5;
    double reflect_amplitude = 1.0;

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;

    double gamma0_linear() const;
    double rho() const;  // 2^rate_threshold
};

/// Statistics consumed by every analytic SOP evaluator.
struct LinkStats {
    double mu = 0.0;         // mean of sum_n |h_RD||h_SR|
    double sigma2 = 0.0;     // its variance
    double psi = 1.0;        // 1 / Q(-mu / sigma)
    double lambda_se = 0.0;  // mean of |H_SE|^2
    double lambda_je = 0.0;  // mean of |H_JE|^2
    double rho = 1.0;
    double gamma0 = 1.0;     // linear
    double alpha = 0.5;
    double n = 1.0;
    LinkMap<double> zeta{};  // linear path gains

    double sigma() const;
};

/// zeta(d) = 10^((z0 - 10 v log10 d) / 10).
double pathloss_linear(double distance_m, const SystemConfig& cfg);

LinkMap<double> path_gains(const SystemConfig& cfg);

LinkStats derive_stats(const SystemConfig& cfg);

/// Builds the statistics from an explicit gain table. Used for fault
/// injection and for configurations not expressed through distances.
LinkStats derive_stats(const SystemConfig& cfg, const LinkMap<double>& zeta);

/// F_{Gamma_D}(x) = 1 - psi Q((sqrt(x / (alpha gamma0)) - mu) / sigma), clamped.
double cdf_gamma_d(double x, const LinkStats& s, double alpha, double gamma0);
double cdf_gamma_d(double x, const LinkStats& s);

double cdf_gamma_e(double x, const LinkStats& s);
double pdf_gamma_e(double x, const LinkStats& s);

/// Complementary CDF 1 - F_{Gamma_E}(x), without cancellation.
double ccdf_gamma_e(double x, const LinkStats& s);

double db_to_linear(double db);

} // namespace rissop
