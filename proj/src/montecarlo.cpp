#include "rissop/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rissop {

namespace {

int thread_count(const McOptions& opts) {
    return opts.threads > 0 ? opts.threads : omp_get_max_threads();
}

void require_trials(std::uint64_t trials, const char* fn) {
    if (trials < 1) {
        throw std::invalid_argument(std::string(fn) + ": trials must be >= 1");
    }
}

constexpr std::int64_t kBlock = 4096;

} // namespace

TrialKernel::TrialKernel(const SystemConfig& cfg)
    : n_(cfg.n_elements), eta_(cfg.reflect_amplitude), rho_(cfg.rho()) {
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
        throw std::invalid_argument("TrialKernel: alpha must lie in [0, 1]");
    }
    SystemConfig probe = cfg;
    probe.alpha = 0.5;
    probe.validate();
    const auto z = path_gains(cfg);
    scale_sr_ = std::sqrt(z.sr / 2.0);
    scale_rd_ = std::sqrt(z.rd / 2.0);
    scale_jr_ = std::sqrt(z.jr / 2.0);
    scale_re_ = std::sqrt(z.re / 2.0);
    const double g0 = cfg.gamma0_linear();
    signal_gain_ = cfg.alpha * g0;
    jammer_gain_ = (1.0 - cfg.alpha) * g0;
}

TrialSinr TrialKernel::operator()(TrialRng& rng) const {
    double amplitude = 0.0;
    double se_re = 0.0, se_im = 0.0;
    double je_re = 0.0, je_im = 0.0;
    for (std::int64_t n = 0; n < n_; ++n) {
        const auto [sr_re0, sr_im0] = rng.normal_pair();
        const auto [rd_re0, rd_im0] = rng.normal_pair();
        const auto [jr_re0, jr_im0] = rng.normal_pair();
        const auto [re_re0, re_im0] = rng.normal_pair();
        const double sr_re = scale_sr_ * sr_re0, sr_im = scale_sr_ * sr_im0;
        const double rd_re = scale_rd_ * rd_re0, rd_im = scale_rd_ * rd_im0;
        const double jr_re = scale_jr_ * jr_re0, jr_im = scale_jr_ * jr_im0;
        const double re_re = scale_re_ * re_re0, re_im = scale_re_ * re_im0;

        const double mag_sr = std::sqrt(sr_re * sr_re + sr_im * sr_im);
        const double mag_rd = std::sqrt(rd_re * rd_re + rd_im * rd_im);
        amplitude += mag_rd * mag_sr;

        // e^{j theta} = conj(h_SR) conj(h_RD) / (|h_SR| |h_RD|)
        const double pr = sr_re * rd_re - sr_im * rd_im;
        const double pim = -(sr_re * rd_im + sr_im * rd_re);
        const double inv = eta_ / (mag_sr * mag_rd);
        const double ph_re = pr * inv, ph_im = pim * inv;

        // g = h_RE eta e^{j theta}
        const double g_re = re_re * ph_re - re_im * ph_im;
        const double g_im = re_re * ph_im + re_im * ph_re;

        se_re += g_re * sr_re - g_im * sr_im;
        se_im += g_re * sr_im + g_im * sr_re;
        je_re += g_re * jr_re - g_im * jr_im;
        je_im += g_re * jr_im + g_im * jr_re;
    }
    const double coherent = eta_ * amplitude;
    TrialSinr out;
    out.gamma_d = signal_gain_ * coherent * coherent;
    const double hse2 = signal_gain_ * (se_re * se_re + se_im * se_im);
    const double hje2 = jammer_gain_ * (je_re * je_re + je_im * je_im);
    out.gamma_e = hse2 / (1.0 + hje2);
    return out;
}

TrialSinr simulate_trial(const SystemConfig& cfg, TrialRng& rng) { return TrialKernel(cfg)(rng); }

bool is_outage(const TrialSinr& t, double rate_threshold) {
    const double secrecy = std::max(std::log2((1.0 + t.gamma_d) / (1.0 + t.gamma_e)), 0.0);
    return secrecy < rate_threshold;
}

McEstimate make_estimate(std::uint64_t trials, std::uint64_t outages, std::uint64_t seed) {
    McEstimate e;
    e.trials = trials;
    e.outages = outages;
    e.seed = seed;
    const double n = static_cast<double>(trials);
    e.sop_hat = static_cast<double>(outages) / n;
    e.ci95_half_width = 1.96 * std::sqrt(e.sop_hat * (1.0 - e.sop_hat) / n);
    e.unreliable = std::min(outages, trials - outages) < 10;
    return e;
}

McEstimate estimate_sop(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                        const McOptions& opts) {
    require_trials(trials, "estimate_sop");
    const TrialKernel kernel(cfg);
    const double rth = cfg.rate_threshold;
    const bool quiet_e = opts.suppress_eavesdropper;
    const auto count = static_cast<std::int64_t>(trials);
    std::uint64_t outages = 0;

#pragma omp parallel for schedule(static) reduction(+ : outages) num_threads(thread_count(opts))
    for (std::int64_t t = 0; t < count; ++t) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        auto sinr = kernel(rng);
        if (quiet_e) {
            sinr.gamma_e = 0.0;
        }
        outages += is_outage(sinr, rth) ? 1 : 0;
    }
    return make_estimate(trials, outages, seed);
}

SinrSamples sample_sinr(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                        const McOptions& opts) {
    require_trials(trials, "sample_sinr");
    if (trials > kMaxCdfSamples) {
        throw std::invalid_argument("sample_sinr: at most 1e6 samples are retained");
    }
    const TrialKernel kernel(cfg);
    const auto count = static_cast<std::int64_t>(trials);
    SinrSamples out;
    out.gamma_d.resize(trials);
    out.gamma_e.resize(trials);

#pragma omp parallel for schedule(static) num_threads(thread_count(opts))
    for (std::int64_t t = 0; t < count; ++t) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        const auto sinr = kernel(rng);
        out.gamma_d[t] = sinr.gamma_d;
        out.gamma_e[t] = sinr.gamma_e;
    }
    std::sort(out.gamma_d.begin(), out.gamma_d.end());
    std::sort(out.gamma_e.begin(), out.gamma_e.end());
    return out;
}

double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
    if (sorted.empty()) {
        throw std::invalid_argument("ks_distance: no samples");
    }
    const double n = static_cast<double>(sorted.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        worst = std::max({worst, (static_cast<double>(i) + 1.0) / n - f,
                          f - static_cast<double>(i) / n});
    }
    return worst;
}

EmpiricalCdf empirical_cdf_gamma_d(const SystemConfig& cfg, std::uint64_t trials,
                                   std::uint64_t seed, const McOptions& opts) {
    auto samples = sample_sinr(cfg, trials, seed, opts);
    const LinkStats s = derive_stats(cfg);
    EmpiricalCdf out;
    out.ks_distance = ks_distance(samples.gamma_d, [&](double x) { return cdf_gamma_d(x, s); });
    out.samples = std::move(samples.gamma_d);
    return out;
}

double mean_amplitude_sum(const SystemConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                          const McOptions& opts) {
    require_trials(trials, "mean_amplitude_sum");
    const TrialKernel kernel(cfg);
    const double gain = cfg.alpha * cfg.gamma0_linear();
    const auto count = static_cast<std::int64_t>(trials);
    const std::int64_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);

#pragma omp parallel for schedule(static) num_threads(thread_count(opts))
    for (std::int64_t b = 0; b < blocks; ++b) {
        const std::int64_t end = std::min(count, (b + 1) * kBlock);
        double sum = 0.0;
        for (std::int64_t t = b * kBlock; t < end; ++t) {
            TrialRng rng(seed, static_cast<std::uint64_t>(t));
            sum += std::sqrt(kernel(rng).gamma_d / gain);
        }
        partial[b] = sum;
    }
    double total = 0.0;
    for (double p : partial) {
        total += p;
    }
    return total / static_cast<double>(trials);
}

} // namespace rissop
