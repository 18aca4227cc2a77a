// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// statistic. Exit status is the number of failed criteria.

#include "oracles.hpp"

#include "rissop/analytic.hpp"
#include "rissop/experiments.hpp"
#include "rissop/log.hpp"
#include "rissop/montecarlo.hpp"
#include "rissop/numerics.hpp"
#include "rissop/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace rissop;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, bool pass, const std::string& what, const std::string& measured) {
    std::printf("[%s] criterion %d: %s | %s\n", pass ? "PASS" : "FAIL", id, what.c_str(),
                measured.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++failures;
    }
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<SystemConfig> fig1_grid() {
    std::vector<SystemConfig> out;
    for (std::int64_t n : {16, 32, 64}) {
        for (int g = 0; g <= 60; g += 2) {
            SystemConfig c;
            c.n_elements = n;
            c.gamma0_db = g;
            out.push_back(c);
        }
    }
    return out;
}

std::vector<SystemConfig> fig3_grid() {
    const auto spec = default_fig3_spec();
    std::vector<SystemConfig> out;
    for (double n : spec.range.values()) {
        for (double g : spec.series) {
            SystemConfig c;
            c.n_elements = static_cast<std::int64_t>(n);
            c.gamma0_db = g;
            out.push_back(c);
        }
    }
    return out;
}

void criterion1() {
    Timer t;
    SystemConfig cfg;
    cfg.n_elements = 64;
    const double epa = gamma0_at_sop(cfg, 0.5, 1e-4, Objective::quadrature);
    const double opa = gamma0_at_sop(cfg, std::nullopt, 1e-4, Objective::quadrature);
    const double gain = epa - opa;
    const double secs = t.seconds();
    report(1, std::abs(gain - 3.0) <= 1.0 && secs < 120.0,
           "OPA gain at SOP=1e-4, N=64, quadrature, 3 dB +/- 1 dB, < 2 min",
           fmt("EPA %.3f dB, OPA %.3f dB, gain %.3f dB, %.1f s", epa, opa, gain, secs));
}

void criterion2() {
    Timer t;
    double worst_cf = 0.0;
    double worst_lo = 1e300;
    double worst_hi = 0.0;
    int points = 0;
    std::string worst_at;
    for (const auto& base : fig1_grid()) {
        for (bool opa : {false, true}) {
            SystemConfig c = base;
            c.alpha = opa ? alpha_star_closed_form(base) : 0.5;
            const double q = sop_exact_quadrature(c);
            if (q >= 0.1) {
                continue;
            }
            ++points;
            const double rel = std::abs(sop_closed_form(c).sop - q) / q;
            if (rel > worst_cf) {
                worst_cf = rel;
                worst_at = fmt("N=%lld G0=%g %s", static_cast<long long>(c.n_elements),
                               c.gamma0_db, opa ? "OPA" : "EPA");
            }
            const double ratio = sop_compact(c) / q;
            worst_lo = std::min(worst_lo, ratio);
            worst_hi = std::max(worst_hi, ratio);
        }
    }
    const double secs = t.seconds();
    report(2, worst_cf < 0.1 && secs < 60.0,
           "closed form within 10% of quadrature on Fig. 1 points with SOP < 0.1",
           fmt("%d points, worst relative error %.4f at %s, %.1f s", points, worst_cf,
               worst_at.c_str(), secs));
    report(2, worst_lo >= 0.5 && worst_hi <= 2.0,
           "compact within a factor 2 of quadrature on the same points",
           fmt("compact/quadrature ratio in [%.4f, %.4f]", worst_lo, worst_hi));
}

void criterion3() {
    Timer t;
    // Per N, Gamma0 is spread over the part of the 0-60 dB sweep where 1e6
    // trials expect at least 10 outages; beyond that the 95% interval of a
    // zero-outage estimate is degenerate.
    const std::int64_t ns[] = {16, 32, 64};
    const int per_n[] = {7, 7, 6};
    int within = 0;
    int total = 0;
    std::string misses;
    for (int k = 0; k < 3; ++k) {
        std::vector<double> usable;
        for (int g = 0; g <= 60; g += 2) {
            SystemConfig c;
            c.n_elements = ns[k];
            c.gamma0_db = g;
            if (sop_exact_quadrature(c) >= 1e-5) {
                usable.push_back(g);
            }
        }
        for (int j = 0; j < per_n[k]; ++j) {
            const std::size_t idx = static_cast<std::size_t>(
                std::lround(static_cast<double>(j) * (usable.size() - 1) / (per_n[k] - 1)));
            SystemConfig c;
            c.n_elements = ns[k];
            c.gamma0_db = usable[idx];
            const double q = sop_exact_quadrature(c);
            const auto e = estimate_sop(c, 1'000'000, 1000 + total);
            const bool ok = std::abs(e.sop_hat - q) <= e.ci95_half_width;
            within += ok ? 1 : 0;
            ++total;
            std::printf("    N=%-3lld G0=%4.0f dB  quadrature %.5e  MC %.5e +/- %.2e  %s\n",
                        static_cast<long long>(c.n_elements), c.gamma0_db, q, e.sop_hat,
                        e.ci95_half_width, ok ? "in" : "OUT");
        }
    }
    const double secs = t.seconds();
    report(3, within >= 18 && secs < 300.0,
           "MC (1e6 trials) within its 95% CI of quadrature for >= 18 of 20 configs, < 5 min",
           fmt("%d of %d within, %.1f s", within, total, secs));
}

void criterion4() {
    double worst = 0.0;
    double worst_residual = 0.0;
    for (const auto& c : fig3_grid()) {
        const double a = alpha_star_closed_form(c);
        worst = std::max(worst, std::abs(a - alpha_star_numeric(c, Objective::compact)));
        worst_residual = std::max(worst_residual, std::abs(alpha_star_residual(c, a)));
    }
    SystemConfig unit;
    unit.rate_threshold = 1.0;
    unit.n_elements = 1;
    unit.gamma0_db = 0.0;
    unit.pathloss_ref_db = 0.0;
    unit.distances = {1.0, 1.0, 1.0, 1.0};
    const double half = alpha_star_closed_form(unit);
    report(4, worst < 1e-3 && worst_residual < 1e-12 && half == 0.5,
           "alpha* closed form vs golden section on Fig. 3 grid, residual, unit case",
           fmt("max |closed-numeric| %.3e, max residual %.3e, unit case %.17g", worst,
               worst_residual, half));
}

void criterion5() {
    auto configs = fig1_grid();
    const auto f3 = fig3_grid();
    configs.insert(configs.end(), f3.begin(), f3.end());
    int nonpositive = 0;
    double worst_fd = 0.0;
    for (const auto& c : configs) {
        for (int i = 1; i <= 999; ++i) {
            if (!(sop_second_derivative(c, i / 1000.0) > 0.0)) {
                ++nonpositive;
            }
        }
        for (double a : {0.2, 0.5, 0.8}) {
            const double fd = oracle::derivative(
                [&](double x) { return detail::compact_raw(c, x); }, a, 1e-4);
            const double d = sop_derivative(c, a);
            worst_fd = std::max(worst_fd, std::abs(fd - d) / std::abs(d));
        }
    }
    report(5, nonpositive == 0 && worst_fd < 1e-5,
           "second derivative > 0 on 999 points (Fig. 1 and Fig. 3 configs), FD derivative",
           fmt("%zu configs, %d non-positive points, worst FD relative error %.3e",
               configs.size(), nonpositive, worst_fd));
}

void criterion6() {
    const SystemConfig cfg;  // N = 64
    const auto s = derive_stats(cfg);
    const auto samples = sample_sinr(cfg, 1'000'000, 2024);
    const double ks_e = ks_distance(samples.gamma_e, [&](double x) { return cdf_gamma_e(x, s); });
    const double ks_d = ks_distance(samples.gamma_d, [&](double x) { return cdf_gamma_d(x, s); });
    const double mass = oracle::half_line([&](double x) { return pdf_gamma_e(x, s); });
    report(6, ks_e < 0.005, "Gamma_E empirical CDF (1e6 trials, N=64) KS < 0.005",
           fmt("KS %.5f", ks_e));
    report(6, ks_d < 0.01, "Gamma_D empirical CDF (1e6 trials, N=64) KS < 0.01",
           fmt("KS %.5f", ks_d));
    report(6, std::abs(mass - 1.0) < 1e-6, "integral of the Gamma_E density is 1 within 1e-6",
           fmt("integral %.12f", mass));
}

void criterion7() {
    double worst_ei = 0.0;
    double worst_g = 0.0;
    for (double x : {0.1, 0.5, 1.0, 5.0, 20.0}) {
        const double e1 = oracle::e1(x);
        worst_ei = std::max(worst_ei, std::abs(expint_ei(-x) + e1) / e1);
        const double g = oracle::gamma_neg1(x);
        worst_g = std::max(worst_g, std::abs(upper_gamma_neg1(x) - g) / g);
    }
    double worst_q = 0.0;
    for (int i = -6000; i <= 6000; ++i) {
        const double x = i * 1e-3;
        worst_q = std::max(worst_q, std::abs(q_exact(x) + q_exact(-x) - 1.0));
    }
    report(7, worst_ei < 1e-9 && worst_g < 1e-9 && worst_q < 1e-12,
           "Ei(-x), Gamma(-1,x) vs quadrature oracles; Q symmetry on [-6, 6]",
           fmt("Ei rel %.2e, Gamma rel %.2e, Q symmetry %.2e", worst_ei, worst_g, worst_q));
}

void criterion8() {
    std::vector<std::string> broken;
    // alpha* decreasing in N and Gamma0 over the Fig. 3 grid.
    const auto f3 = run_fig3(default_fig3_spec());
    std::vector<std::vector<double>> a3;  // [n index][gamma index]
    for (std::size_t i = 0; i < f3.table.rows.size(); i += 3) {
        a3.push_back({std::stod(f3.table.rows[i][2]), std::stod(f3.table.rows[i + 1][2]),
                      std::stod(f3.table.rows[i + 2][2])});
    }
    for (std::size_t i = 0; i < a3.size(); ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (i > 0 && !(a3[i][j] < a3[i - 1][j])) broken.push_back("alpha* vs N");
            if (j > 0 && !(a3[i][j] < a3[i][j - 1])) broken.push_back("alpha* vs Gamma0");
        }
    }
    // alpha* increasing in d_RE and d_SR over the Fig. 4 grid.
    const auto f4 = run_fig4(default_fig4_spec());
    for (std::size_t i = 0; i < f4.table.rows.size(); ++i) {
        const auto& r = f4.table.rows[i];
        if (i % 3 != 0 && !(std::stod(r[2]) > std::stod(f4.table.rows[i - 1][2]))) {
            broken.push_back("alpha* vs d_SR");
        }
        if (i >= 3 && !(std::stod(r[2]) > std::stod(f4.table.rows[i - 3][2]))) {
            broken.push_back("alpha* vs d_RE");
        }
    }
    // alpha* invariant to d_JR and d_RD.
    const SystemConfig base;
    const double ref = alpha_star_closed_form(base);
    for (double d : {5.0, 15.0, 45.0, 90.0}) {
        SystemConfig c = base;
        c.distances.jr = d;
        if (alpha_star_closed_form(c) != ref) broken.push_back("alpha* depends on d_JR");
        c = base;
        c.distances.rd = d;
        if (alpha_star_closed_form(c) != ref) broken.push_back("alpha* depends on d_RD");
    }
    // SOP increasing in d_RD / d_RE.
    SweepSpec s2 = default_fig2_spec();
    s2.methods = {Objective::quadrature};
    const auto f2 = run_fig2(s2);
    const std::size_t ratios = s2.range.values().size();
    for (std::size_t i = 0; i < f2.table.rows.size(); ++i) {
        if (i % ratios != 0 &&
            !(std::stod(f2.table.rows[i][3]) >= std::stod(f2.table.rows[i - 1][3]))) {
            broken.push_back("SOP vs distance ratio");
        }
    }
    // OPA <= EPA at every Fig. 1 point: compact everywhere, quadrature where
    // the EPA SOP is below 0.1 (the high-SNR domain the optimum is derived for).
    int opa_checked = 0;
    int low_snr_exceptions = 0;
    for (const auto& c : fig1_grid()) {
        const double a = alpha_star_closed_form(c);
        if (sop_compact(c, a) > sop_compact(c, 0.5)) broken.push_back("OPA > EPA (compact)");
        SystemConfig opa = c;
        opa.alpha = a;
        const double q_epa = sop_exact_quadrature(c);
        const double q_opa = sop_exact_quadrature(opa);
        if (q_epa < 0.1) {
            ++opa_checked;
            if (q_opa > q_epa) broken.push_back("OPA > EPA (quadrature)");
        } else if (q_opa > q_epa) {
            ++low_snr_exceptions;
        }
    }
    std::string detail = broken.empty() ? "all trends hold" : broken.front();
    if (broken.size() > 1) {
        detail += fmt(" (+%zu more)", broken.size() - 1);
    }
    detail += fmt("; OPA<=EPA quadrature points %d, low-SNR points where OPA is worse %d",
                  opa_checked, low_snr_exceptions);
    report(8, broken.empty(), "trend suite (alpha* vs N, Gamma0, d_RE, d_SR, d_JR, d_RD; "
                              "SOP vs ratio; OPA <= EPA)",
           detail);
}

void criterion9() {
    const SystemConfig cfg;
    std::vector<std::string> reports;
    for (int threads : {1, 2, 8, 1}) {
        reports.push_back(run_validate(cfg, {100'000, 42, threads, {}}).json);
    }
    const bool same = std::all_of(reports.begin(), reports.end(),
                                  [&](const std::string& r) { return r == reports.front(); });
    report(9, same, "validate report byte-identical across runs and 1/2/8 threads",
           fmt("%zu reports, %zu bytes each", reports.size(), reports.front().size()));
}

} // namespace

int main() {
    std::size_t clamp_warnings = 0;
    set_warning_sink([&](const std::string&) { ++clamp_warnings; });
    const std::vector<std::function<void()>> all = {criterion1, criterion2, criterion3,
                                                    criterion4, criterion5, criterion6,
                                                    criterion7, criterion8, criterion9};
    for (const auto& run : all) {
        try {
            run();
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion raised: %s\n", e.what());
            ++failures;
        }
    }
    set_warning_sink({});
    std::printf("acceptance: %d failing line(s); %zu clamp warnings suppressed\n", failures,
                clamp_warnings);
    return failures;
}
