#pragma once

#include "rissop/channel.hpp"
#include "rissop/optimizer.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rissop {

/// Malformed experiment request (maps to exit code 1).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SweepVariable { gamma0_db, n_elements, d_re, d_sr, alpha, distance_ratio };

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& name);

struct SweepRange {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    /// start, start + step, ... up to stop inclusive (with a 1e-9 step slack).
    std::vector<double> values() const;
};

/// One figure sweep. `range` spans the swept variable; `series` holds the
/// values of the second parameter that tells the curves apart (N for fig1,
/// Gamma0 in dB for fig2 and fig3, d_SR for fig4).
struct SweepSpec {
    SweepVariable variable = SweepVariable::gamma0_db;
    SweepRange range{0.0, 60.0, 2.0};
    std::vector<double> series;
    SystemConfig fixed;
    std::vector<Objective> methods{Objective::quadrature, Objective::closed_form,
                                   Objective::compact};
    std::uint64_t mc_trials = 1'000'000;
    std::uint64_t seed = 1;

    /// Throws UsageError.
    void validate() const;
};

SweepSpec default_fig1_spec();
SweepSpec default_fig2_spec();
SweepSpec default_fig3_spec();
SweepSpec default_fig4_spec();

/// Fixed-format CSV: every number printed with 10 significant digits.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
};

std::string format_number(double v);

struct FigureOutput {
    CsvTable table;
    std::optional<CsvTable> mc;  // gamma0_db,alpha,n,trials,sop_hat,ci95
};

/// gamma0_db,n,policy,method,sop. OPA takes the closed-form alpha* per point.
FigureOutput run_fig1(const SweepSpec& spec);
/// gamma0_db,ratio,method,sop with d_RD = ratio * d_RE.
FigureOutput run_fig2(const SweepSpec& spec);
/// n,gamma0_db,alpha_star
FigureOutput run_fig3(const SweepSpec& spec);
/// d_re,d_sr,alpha_star
FigureOutput run_fig4(const SweepSpec& spec);

struct ValidateOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    int threads = 0;
    /// Multiplies every path gain used by the closed form (fault injection).
    std::optional<double> corrupt_zeta;
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double value = 0.0;  // measured statistic
    double limit = 0.0;  // acceptance bound for value
};

struct ValidationReport {
    std::string json;  // ordered, fixed-precision
    std::vector<ValidationCheck> checks;
    bool all_pass() const;
};

/// Cross-method consistency harness at one configuration. Requires
/// trials >= 1e5 (UsageError otherwise).
ValidationReport run_validate(const SystemConfig& cfg, const ValidateOptions& opts);

} // namespace rissop
