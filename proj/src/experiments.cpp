#include "rissop/experiments.hpp"

#include "rissop/analytic.hpp"
#include "rissop/json_io.hpp"
#include "rissop/montecarlo.hpp"
#include "rissop/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

namespace rissop {

std::string to_string(SweepVariable v) {
    switch (v) {
    case SweepVariable::gamma0_db: return "gamma0_db";
    case SweepVariable::n_elements: return "n_elements";
    case SweepVariable::d_re: return "d_re";
    case SweepVariable::d_sr: return "d_sr";
    case SweepVariable::alpha: return "alpha";
    case SweepVariable::distance_ratio: return "distance_ratio";
    }
    return "unknown";
}

SweepVariable sweep_variable_from_string(const std::string& name) {
    for (auto v : {SweepVariable::gamma0_db, SweepVariable::n_elements, SweepVariable::d_re,
                   SweepVariable::d_sr, SweepVariable::alpha, SweepVariable::distance_ratio}) {
        if (to_string(v) == name) {
            return v;
        }
    }
    throw UsageError("unknown sweep variable '" + name + "'");
}

std::vector<double> SweepRange::values() const {
    std::vector<double> out;
    if (!(step > 0.0) || !(start < stop)) {
        return out;
    }
    const double slack = 1e-9 * step;
    for (std::int64_t i = 0;; ++i) {
        const double v = start + static_cast<double>(i) * step;
        if (v > stop + slack) {
            break;
        }
        out.push_back(v);
    }
    return out;
}

void SweepSpec::validate() const {
    if (!std::isfinite(range.start) || !std::isfinite(range.stop) || !std::isfinite(range.step)) {
        throw UsageError("sweep range must be finite");
    }
    if (!(range.step > 0.0)) {
        throw UsageError("sweep step must be > 0");
    }
    if (!(range.start < range.stop)) {
        throw UsageError("sweep start must be < stop");
    }
    if (methods.empty()) {
        throw UsageError("at least one method is required");
    }
    if (series.empty()) {
        throw UsageError("series must not be empty");
    }
    if (mc_trials < 1) {
        throw UsageError("mc_trials must be >= 1");
    }
    try {
        fixed.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

SweepSpec default_fig1_spec() {
    SweepSpec s;
    s.variable = SweepVariable::gamma0_db;
    s.range = {0.0, 60.0, 2.0};
    s.series = {16, 32, 64};
    return s;
}

SweepSpec default_fig2_spec() {
    SweepSpec s;
    s.variable = SweepVariable::distance_ratio;
    s.range = {1.0, 4.0, 1.0};
    s.series = SweepRange{0.0, 60.0, 2.0}.values();
    return s;
}

SweepSpec default_fig3_spec() {
    SweepSpec s;
    s.variable = SweepVariable::n_elements;
    s.range = {16.0, 256.0, 16.0};
    s.series = {10, 20, 30};
    s.methods = {Objective::compact};
    return s;
}

SweepSpec default_fig4_spec() {
    SweepSpec s;
    s.variable = SweepVariable::d_re;
    s.range = {5.0, 40.0, 1.0};
    s.series = {20, 30, 40};
    s.methods = {Objective::compact};
    return s;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    auto emit = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << (i ? "," : "") << cells[i];
        }
        os << '\n';
    };
    emit(header);
    for (const auto& r : rows) {
        emit(r);
    }
    return os.str();
}

namespace {

void require_variable(const SweepSpec& spec, SweepVariable v, const char* fig) {
    if (spec.variable != v) {
        throw UsageError(std::string(fig) + " sweeps " + to_string(v) + ", got " +
                         to_string(spec.variable));
    }
    spec.validate();
}

std::int64_t as_element_count(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 || r < 1.0) {
        throw UsageError("element counts must be positive integers, got " + format_number(v));
    }
    return static_cast<std::int64_t>(r);
}

// Evaluates f(i) for i in [0, n) concurrently. The first failure in index
// order is rethrown after the loop.
template <class F>
std::vector<double> parallel_map(std::size_t n, F f) {
    std::vector<double> out(n, 0.0);
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            out[i] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

struct SopPoint {
    SystemConfig cfg;
    Objective method;
};

// Analytic points run as parallel sweep tasks; Monte Carlo points run one at
// a time so each uses every thread inside estimate_sop.
std::vector<double> evaluate_points(const std::vector<SopPoint>& pts, const SweepSpec& spec,
                                    std::vector<McEstimate>& mc) {
    std::vector<std::size_t> analytic;
    std::vector<std::size_t> sampled;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        (pts[i].method == Objective::monte_carlo ? sampled : analytic).push_back(i);
    }
    std::vector<double> out(pts.size(), 0.0);
    const auto values = parallel_map(analytic.size(), [&](std::size_t k) {
        const auto& p = pts[analytic[k]];
        return sop_at(p.cfg, p.cfg.alpha, p.method);
    });
    for (std::size_t k = 0; k < analytic.size(); ++k) {
        out[analytic[k]] = values[k];
    }
    for (std::size_t i : sampled) {
        auto e = estimate_sop(pts[i].cfg, spec.mc_trials, spec.seed);
        out[i] = e.sop_hat;
        mc.push_back(e);
    }
    return out;
}

CsvTable mc_table() {
    CsvTable t;
    t.header = {"gamma0_db", "alpha", "n", "trials", "sop_hat", "ci95"};
    return t;
}

void add_mc_row(CsvTable& t, const SystemConfig& cfg, const McEstimate& e) {
    t.rows.push_back({format_number(cfg.gamma0_db), format_number(cfg.alpha),
                      std::to_string(cfg.n_elements), std::to_string(e.trials),
                      format_number(e.sop_hat), format_number(e.ci95_half_width)});
}

bool has_mc(const SweepSpec& spec) {
    return std::find(spec.methods.begin(), spec.methods.end(), Objective::monte_carlo) !=
           spec.methods.end();
}

} // namespace

FigureOutput run_fig1(const SweepSpec& spec) {
    require_variable(spec, SweepVariable::gamma0_db, "fig1");
    std::vector<std::int64_t> ns;
    for (double v : spec.series) {
        ns.push_back(as_element_count(v));
    }
    std::sort(ns.begin(), ns.end());

    struct Key {
        double g0;
        std::int64_t n;
        const char* policy;
    };
    std::vector<Key> keys;
    std::vector<SopPoint> pts;
    for (double g0 : spec.range.values()) {
        for (std::int64_t n : ns) {
            SystemConfig cfg = spec.fixed;
            cfg.gamma0_db = g0;
            cfg.n_elements = n;
            SystemConfig epa = cfg;
            epa.alpha = 0.5;
            SystemConfig opa = cfg;
            opa.alpha = alpha_star_closed_form(cfg);
            for (auto [policy, c] : {std::pair{"EPA", epa}, std::pair{"OPA", opa}}) {
                for (Objective m : spec.methods) {
                    keys.push_back({g0, n, policy});
                    pts.push_back({c, m});
                }
            }
        }
    }
    std::vector<McEstimate> mc;
    const auto sop = evaluate_points(pts, spec, mc);

    FigureOutput out;
    out.table.header = {"gamma0_db", "n", "policy", "method", "sop"};
    if (has_mc(spec)) {
        out.mc = mc_table();
    }
    std::size_t next_mc = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.table.rows.push_back({format_number(keys[i].g0), std::to_string(keys[i].n),
                                  keys[i].policy, to_string(pts[i].method),
                                  format_number(sop[i])});
        if (pts[i].method == Objective::monte_carlo) {
            add_mc_row(*out.mc, pts[i].cfg, mc[next_mc++]);
        }
    }
    return out;
}

FigureOutput run_fig2(const SweepSpec& spec) {
    require_variable(spec, SweepVariable::distance_ratio, "fig2");
    std::vector<double> g0s = spec.series;
    std::sort(g0s.begin(), g0s.end());
    const auto ratios = spec.range.values();

    std::vector<std::pair<double, double>> keys;  // (gamma0_db, ratio)
    std::vector<SopPoint> pts;
    for (double g0 : g0s) {
        for (double ratio : ratios) {
            SystemConfig cfg = spec.fixed;
            cfg.gamma0_db = g0;
            cfg.distances.rd = ratio * cfg.distances.re;
            for (Objective m : spec.methods) {
                keys.emplace_back(g0, ratio);
                pts.push_back({cfg, m});
            }
        }
    }
    std::vector<McEstimate> mc;
    const auto sop = evaluate_points(pts, spec, mc);

    FigureOutput out;
    out.table.header = {"gamma0_db", "ratio", "method", "sop"};
    if (has_mc(spec)) {
        out.mc = mc_table();
    }
    std::size_t next_mc = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.table.rows.push_back({format_number(keys[i].first), format_number(keys[i].second),
                                  to_string(pts[i].method), format_number(sop[i])});
        if (pts[i].method == Objective::monte_carlo) {
            add_mc_row(*out.mc, pts[i].cfg, mc[next_mc++]);
        }
    }
    return out;
}

FigureOutput run_fig3(const SweepSpec& spec) {
    require_variable(spec, SweepVariable::n_elements, "fig3");
    std::vector<double> g0s = spec.series;
    std::sort(g0s.begin(), g0s.end());
    std::vector<std::int64_t> ns;
    for (double v : spec.range.values()) {
        ns.push_back(as_element_count(v));
    }
    FigureOutput out;
    out.table.header = {"n", "gamma0_db", "alpha_star"};
    for (std::int64_t n : ns) {
        for (double g0 : g0s) {
            SystemConfig cfg = spec.fixed;
            cfg.n_elements = n;
            cfg.gamma0_db = g0;
            out.table.rows.push_back({std::to_string(n), format_number(g0),
                                      format_number(alpha_star_closed_form(cfg))});
        }
    }
    return out;
}

FigureOutput run_fig4(const SweepSpec& spec) {
    require_variable(spec, SweepVariable::d_re, "fig4");
    std::vector<double> d_srs = spec.series;
    std::sort(d_srs.begin(), d_srs.end());
    FigureOutput out;
    out.table.header = {"d_re", "d_sr", "alpha_star"};
    for (double d_re : spec.range.values()) {
        for (double d_sr : d_srs) {
            SystemConfig cfg = spec.fixed;
            cfg.distances.re = d_re;
            cfg.distances.sr = d_sr;
            try {
                cfg.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            out.table.rows.push_back({format_number(d_re), format_number(d_sr),
                                      format_number(alpha_star_closed_form(cfg))});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation harness

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

ValidationReport run_validate(const SystemConfig& cfg, const ValidateOptions& opts) {
    if (opts.trials < 100'000) {
        throw UsageError("validate needs at least 1e5 trials");
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const McOptions mc_opts{opts.threads, false};
    const LinkStats stats = derive_stats(cfg);

    const auto quad = sop_exact_quadrature_report(stats);
    LinkStats cf_stats = stats;
    if (opts.corrupt_zeta) {
        auto z = path_gains(cfg);
        const double f = *opts.corrupt_zeta;
        z = {z.sr * f, z.jr * f, z.rd * f, z.re * f};
        cf_stats = derive_stats(cfg, z);
    }
    const auto cf = sop_closed_form(cf_stats);
    const double compact = sop_compact(cfg);
    const auto mc = estimate_sop(cfg, opts.trials, opts.seed, mc_opts);

    const double a_closed = alpha_star_closed_form(cfg);
    const double a_numeric = alpha_star_numeric(cfg, Objective::compact);
    const auto cert = certify_convexity_report(cfg, 999);

    const auto samples =
        sample_sinr(cfg, std::min<std::uint64_t>(opts.trials, kMaxCdfSamples), opts.seed, mc_opts);
    const double ks_e =
        ks_distance(samples.gamma_e, [&](double x) { return cdf_gamma_e(x, stats); });
    const double ks_d =
        ks_distance(samples.gamma_d, [&](double x) { return cdf_gamma_d(x, stats); });

    ValidationReport rep;
    const double envelope = std::abs(cf.sop - quad.sop) / quad.sop;
    rep.checks.push_back({"mc_within_ci95_of_quadrature",
                          std::abs(mc.sop_hat - quad.sop) <= mc.ci95_half_width,
                          std::abs(mc.sop_hat - quad.sop), mc.ci95_half_width});
    rep.checks.push_back({"closed_form_relative_error", envelope < 0.1, envelope, 0.1});
    rep.checks.push_back({"alpha_star_closed_vs_numeric", std::abs(a_closed - a_numeric) < 1e-3,
                          std::abs(a_closed - a_numeric), 1e-3});
    rep.checks.push_back({"convexity_failures", cert.convex,
                          static_cast<double>(cert.second_derivative_failures +
                                              cert.second_difference_failures),
                          1.0});
    rep.checks.push_back({"ks_gamma_e", ks_e < 0.005, ks_e, 0.005});
    rep.checks.push_back({"ks_gamma_d", ks_d < 0.01, ks_d, 0.01});

    ordered_json j;
    j["config"] = to_json(cfg);
    j["trials"] = opts.trials;
    j["seed"] = opts.seed;
    j["fault_injection_zeta_factor"] =
        opts.corrupt_zeta ? ordered_json(*opts.corrupt_zeta) : ordered_json(nullptr);
    j["quadrature"] = {{"sop", quad.sop},
                       {"error_estimate", quad.error_estimate},
                       {"evaluations", quad.evaluations},
                       {"intervals", quad.intervals}};
    j["closed_form"] = to_json(cf);
    j["compact"] = compact;
    j["monte_carlo"] = to_json(mc);
    j["alpha_star"] = {{"closed_form", a_closed},
                       {"numeric_compact", a_numeric},
                       {"quadratic_residual", alpha_star_residual(cfg, a_closed)}};
    j["convexity"] = to_json(cert);
    j["ks"] = {{"samples", samples.gamma_d.size()}, {"gamma_e", ks_e}, {"gamma_d", ks_d}};
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value},
                          {"limit", c.limit}});
    }
    j["checks"] = checks;
    j["pass"] = rep.all_pass();
    rep.json = j.dump(2) + "\n";
    return rep;
}

} // namespace rissop
