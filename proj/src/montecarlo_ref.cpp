// Serial reference paths for the OpenMP kernels in montecarlo.cpp.

#include "rissop/montecarlo.hpp"

#include <algorithm>
#include <stdexcept>

namespace rissop {

McEstimate estimate_sop_serial(const SystemConfig& cfg, std::uint64_t trials,
                               std::uint64_t seed, const McOptions& opts) {
    if (trials < 1) {
        throw std::invalid_argument("estimate_sop_serial: trials must be >= 1");
    }
    const TrialKernel kernel(cfg);
    std::uint64_t outages = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        TrialRng rng(seed, t);
        auto sinr = kernel(rng);
        if (opts.suppress_eavesdropper) {
            sinr.gamma_e = 0.0;
        }
        if (is_outage(sinr, cfg.rate_threshold)) {
            ++outages;
        }
    }
    return make_estimate(trials, outages, seed);
}

SinrSamples sample_sinr_serial(const SystemConfig& cfg, std::uint64_t trials,
                               std::uint64_t seed) {
    if (trials < 1 || trials > kMaxCdfSamples) {
        throw std::invalid_argument("sample_sinr_serial: trials must lie in [1, 1e6]");
    }
    const TrialKernel kernel(cfg);
    SinrSamples out;
    out.gamma_d.reserve(trials);
    out.gamma_e.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        TrialRng rng(seed, t);
        const auto sinr = kernel(rng);
        out.gamma_d.push_back(sinr.gamma_d);
        out.gamma_e.push_back(sinr.gamma_e);
    }
    std::sort(out.gamma_d.begin(), out.gamma_d.end());
    std::sort(out.gamma_e.begin(), out.gamma_e.end());
    return out;
}

} // namespace rissop
