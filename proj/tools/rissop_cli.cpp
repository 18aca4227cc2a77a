// rissop: figure sweeps, validation harness and single-point SOP evaluation.
//
// Exit codes: 0 success, 1 usage, 2 numerical failure, 3 validation failure.

#include "rissop/analytic.hpp"
#include "rissop/experiments.hpp"
#include "rissop/json_io.hpp"
#include "rissop/log.hpp"
#include "rissop/montecarlo.hpp"
#include "rissop/numerics.hpp"
#include "rissop/optimizer.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

namespace {

using namespace rissop;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitValidation = 3;

struct Common {
    std::string config_path;
    std::string out_path;
    std::uint64_t trials = 0;  // 0: subcommand default
    std::uint64_t seed = 1;
    std::string methods;
    int threads = 0;
};

struct SweepArgs {
    std::string range;   // start:stop:step
    std::string series;  // comma list
    std::string mc_out;
    std::string manifest;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

double parse_double(const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) {
        throw UsageError(std::string("bad number '") + s + "' in " + what);
    }
    return v;
}

std::vector<Objective> parse_methods(const std::string& s) {
    std::vector<Objective> out;
    for (const auto& name : split(s, ',')) {
        try {
            out.push_back(objective_from_string(name));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (out.empty()) {
        throw UsageError("--methods needs at least one of compact,closed_form,quadrature,monte_carlo");
    }
    return out;
}

SystemConfig load_or_default(const std::string& path) {
    if (path.empty()) {
        return SystemConfig{};
    }
    try {
        return load_config(path);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write '" + path + "'");
    }
    out << text;
}

void apply_threads(int threads) {
    if (threads < 0) {
        throw UsageError("--threads must be >= 0");
    }
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
}

int run_figure(const std::string& name, const Common& c, const SweepArgs& a) {
    apply_threads(c.threads);
    SweepSpec spec = name == "fig1"   ? default_fig1_spec()
                     : name == "fig2" ? default_fig2_spec()
                     : name == "fig3" ? default_fig3_spec()
                                      : default_fig4_spec();
    spec.fixed = load_or_default(c.config_path);
    spec.seed = c.seed;
    if (c.trials > 0) {
        spec.mc_trials = c.trials;
    }
    if (!c.methods.empty()) {
        spec.methods = parse_methods(c.methods);
    }
    if (!a.range.empty()) {
        const auto parts = split(a.range, ':');
        if (parts.size() != 3) {
            throw UsageError("--range expects start:stop:step");
        }
        spec.range = {parse_double(parts[0], "--range"), parse_double(parts[1], "--range"),
                      parse_double(parts[2], "--range")};
    }
    if (!a.series.empty()) {
        spec.series.clear();
        for (const auto& s : split(a.series, ',')) {
            spec.series.push_back(parse_double(s, "--series"));
        }
    }
    const FigureOutput out = name == "fig1"   ? run_fig1(spec)
                             : name == "fig2" ? run_fig2(spec)
                             : name == "fig3" ? run_fig3(spec)
                                              : run_fig4(spec);
    write_text(c.out_path, out.table.to_string());
    if (!a.mc_out.empty()) {
        if (!out.mc) {
            throw UsageError("--mc-out needs monte_carlo in --methods");
        }
        write_text(a.mc_out, out.mc->to_string());
    }
    if (!a.manifest.empty()) {
        ordered_json m;
        m["figure"] = name;
        m["variable"] = to_string(spec.variable);
        m["range"] = {{"start", spec.range.start}, {"stop", spec.range.stop},
                      {"step", spec.range.step}};
        m["series"] = spec.series;
        ordered_json methods = ordered_json::array();
        for (auto o : spec.methods) {
            methods.push_back(to_string(o));
        }
        m["methods"] = methods;
        m["mc_trials"] = spec.mc_trials;
        m["seed"] = spec.seed;
        m["config"] = to_json(spec.fixed);
        m["csv"] = c.out_path.empty() ? "-" : c.out_path;
        m["columns"] = out.table.header;
        m["rows"] = out.table.rows.size();
        if (!a.mc_out.empty()) {
            m["mc_csv"] = a.mc_out;
        }
        write_text(a.manifest, m.dump(2) + "\n");
    }
    return kExitOk;
}

int run_validate_cmd(const Common& c, std::optional<double> corrupt) {
    ValidateOptions opts;
    opts.trials = c.trials > 0 ? c.trials : 1'000'000;
    opts.seed = c.seed;
    opts.threads = c.threads;
    opts.corrupt_zeta = corrupt;
    apply_threads(c.threads);
    const auto rep = run_validate(load_or_default(c.config_path), opts);
    write_text(c.out_path, rep.json);
    for (const auto& chk : rep.checks) {
        if (!chk.pass) {
            std::fprintf(stderr, "FAILED %s: value %.6g, limit %.6g\n", chk.name.c_str(),
                         chk.value, chk.limit);
        }
    }
    return rep.all_pass() ? kExitOk : kExitValidation;
}

int run_sop_cmd(const Common& c, bool explain) {
    apply_threads(c.threads);
    const SystemConfig cfg = load_or_default(c.config_path);
    const auto methods = parse_methods(c.methods.empty() ? "quadrature,closed_form,compact"
                                                         : c.methods);
    ordered_json j;
    j["config"] = to_json(cfg);
    ordered_json results;
    for (Objective m : methods) {
        if (m == Objective::monte_carlo) {
            results["monte_carlo"] =
                to_json(estimate_sop(cfg, c.trials > 0 ? c.trials : 1'000'000, c.seed));
        } else {
            results[to_string(m)] = sop_at(cfg, cfg.alpha, m);
        }
    }
    j["sop"] = results;
    if (cfg.rho() > 1.0) {
        j["alpha_star_closed_form"] = alpha_star_closed_form(cfg);
    }
    if (explain) {
        j["breakdown"] = to_json(sop_closed_form(cfg));
    }
    write_text(c.out_path, j.dump(2) + "\n");
    return kExitOk;
}

// Repeated warnings (a sweep can clamp at many points) are shown a few times
// and then counted.
class WarningCollector {
public:
    void operator()(const std::string& msg) {
        std::lock_guard lock(mu_);
        if (++count_ <= kShown) {
            std::fprintf(stderr, "warning: %s\n", msg.c_str());
        }
    }
    void summary() const {
        if (count_ > kShown) {
            std::fprintf(stderr, "warning: %zu further warnings suppressed\n", count_ - kShown);
        }
    }

private:
    static constexpr std::size_t kShown = 5;
    std::mutex mu_;
    std::size_t count_ = 0;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SOP analysis of an RIS-assisted wiretap link with a friendly jammer"};
    app.require_subcommand(1);

    Common common;
    SweepArgs sweep;
    bool explain = false;
    std::optional<double> corrupt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "SystemConfig JSON file");
        sub->add_option("--out", common.out_path, "output path (default stdout)");
        sub->add_option("--trials", common.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
        sub->add_option("--seed", common.seed, "RNG seed");
        sub->add_option("--methods", common.methods,
                        "comma list of compact,closed_form,quadrature,monte_carlo");
        sub->add_option("--threads", common.threads, "OpenMP threads (0: runtime default)");
    };

    std::vector<std::pair<std::string, CLI::App*>> figures;
    for (const char* name : {"fig1", "fig2", "fig3", "fig4"}) {
        auto* sub = app.add_subcommand(name, std::string("CSV data for ") + name);
        add_common(sub);
        sub->add_option("--range", sweep.range, "sweep range start:stop:step");
        sub->add_option("--series", sweep.series, "comma list of curve parameters");
        sub->add_option("--mc-out", sweep.mc_out, "Monte Carlo CSV path");
        sub->add_option("--manifest", sweep.manifest, "JSON manifest path");
        figures.emplace_back(name, sub);
    }
    auto* validate = app.add_subcommand("validate", "cross-method consistency report (JSON)");
    add_common(validate);
    validate->add_option("--corrupt-zeta", corrupt,
                         "scale the closed form's path gains by this factor (fault injection)");
    auto* sop = app.add_subcommand("sop", "single-point SOP (JSON)");
    add_common(sop);
    sop->add_flag("--explain", explain, "include the closed-form intermediates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    auto collector = std::make_shared<WarningCollector>();
    set_warning_sink([collector](const std::string& m) { (*collector)(m); });
    int code = kExitOk;
    try {
        if (validate->parsed()) {
            code = run_validate_cmd(common, corrupt);
        } else if (sop->parsed()) {
            code = run_sop_cmd(common, explain);
        } else {
            for (const auto& [name, sub] : figures) {
                if (sub->parsed()) {
                    code = run_figure(name, common, sweep);
                }
            }
        }
    } catch (const NonUnimodalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        code = kExitNumerical;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        code = kExitNumerical;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        code = kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        code = kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        code = kExitNumerical;
    }
    collector->summary();
    set_warning_sink({});
    return code;
}
