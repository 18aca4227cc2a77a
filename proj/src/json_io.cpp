#include "rissop/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace rissop {

namespace {

double number_field(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number()) {
        throw std::invalid_argument(std::string("config field '") + key + "' must be a number");
    }
    return v.get<double>();
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known,
                    const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw std::invalid_argument("unknown field '" + key + "' in " + where);
        }
    }
}

ordered_json array3(const std::array<double, 3>& a) { return ordered_json::array({a[0], a[1], a[2]}); }

} // namespace

SystemConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("config must be a JSON object");
    }
    reject_unknown(j,
                   {"n_elements", "gamma0_db", "alpha", "rate_threshold", "distances",
                    "pathloss_ref_db", "pathloss_exponent", "reflect_amplitude"},
                   "config");
    SystemConfig cfg;
    if (j.contains("n_elements")) {
        const auto& v = j.at("n_elements");
        if (!v.is_number_integer()) {
            throw std::invalid_argument("config field 'n_elements' must be an integer");
        }
        cfg.n_elements = v.get<std::int64_t>();
    }
    if (j.contains("gamma0_db")) cfg.gamma0_db = number_field(j, "gamma0_db");
    if (j.contains("alpha")) cfg.alpha = number_field(j, "alpha");
    if (j.contains("rate_threshold")) cfg.rate_threshold = number_field(j, "rate_threshold");
    if (j.contains("pathloss_ref_db")) cfg.pathloss_ref_db = number_field(j, "pathloss_ref_db");
    if (j.contains("pathloss_exponent")) {
        cfg.pathloss_exponent = number_field(j, "pathloss_exponent");
    }
    if (j.contains("reflect_amplitude")) {
        cfg.reflect_amplitude = number_field(j, "reflect_amplitude");
    }
    if (j.contains("distances")) {
        const auto& d = j.at("distances");
        if (!d.is_object()) {
            throw std::invalid_argument("config field 'distances' must be an object");
        }
        reject_unknown(d, {"sr", "jr", "rd", "re"}, "distances");
        if (d.contains("sr")) cfg.distances.sr = number_field(d, "sr");
        if (d.contains("jr")) cfg.distances.jr = number_field(d, "jr");
        if (d.contains("rd")) cfg.distances.rd = number_field(d, "rd");
        if (d.contains("re")) cfg.distances.re = number_field(d, "re");
    }
    cfg.validate();
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config file '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

ordered_json to_json(const SystemConfig& cfg) {
    ordered_json j;
    j["n_elements"] = cfg.n_elements;
    j["gamma0_db"] = cfg.gamma0_db;
    j["alpha"] = cfg.alpha;
    j["rate_threshold"] = cfg.rate_threshold;
    j["distances"] = {{"sr", cfg.distances.sr},
                      {"jr", cfg.distances.jr},
                      {"rd", cfg.distances.rd},
                      {"re", cfg.distances.re}};
    j["pathloss_ref_db"] = cfg.pathloss_ref_db;
    j["pathloss_exponent"] = cfg.pathloss_exponent;
    j["reflect_amplitude"] = cfg.reflect_amplitude;
    return j;
}

ordered_json to_json(const SopBreakdown& b) {
    ordered_json j;
    j["a"] = b.a;
    j["b"] = array3(b.b);
    j["c"] = array3(b.c);
    j["d"] = b.d;
    j["xi"] = array3(b.xi);
    j["psi_vals"] = array3(b.psi_vals);
    // NaN marks a term that could not be evaluated out of regime.
    j["i0"] = std::isnan(b.i0) ? ordered_json(nullptr) : ordered_json(b.i0);
    j["i1"] = std::isnan(b.i1) ? ordered_json(nullptr) : ordered_json(b.i1);
    j["i2"] = std::isnan(b.i2) ? ordered_json(nullptr) : ordered_json(b.i2);
    j["sop"] = b.sop;
    j["regime_valid"] = b.regime_valid;
    return j;
}

ordered_json to_json(const McEstimate& e) {
    ordered_json j;
    j["trials"] = e.trials;
    j["outages"] = e.outages;
    j["sop_hat"] = e.sop_hat;
    j["ci95_half_width"] = e.ci95_half_width;
    j["seed"] = e.seed;
    j["unreliable"] = e.unreliable;
    return j;
}

ordered_json to_json(const AllocationResult& r) {
    ordered_json j;
    j["alpha_star_closed"] = r.alpha_star_closed;
    j["alpha_star_numeric"] = r.alpha_star_numeric;
    j["sop_at_star"] = r.sop_at_star;
    j["sop_at_epa"] = r.sop_at_epa;
    if (r.gain_db) {
        j["gain_db"] = *r.gain_db;
    }
    return j;
}

ordered_json to_json(const ConvexityCertificate& c) {
    ordered_json j;
    j["convex"] = c.convex;
    j["grid_points"] = c.grid_points;
    j["second_derivative_failures"] = c.second_derivative_failures;
    j["second_difference_failures"] = c.second_difference_failures;
    j["sign_disagreements"] = c.sign_disagreements;
    return j;
}

} // namespace rissop
