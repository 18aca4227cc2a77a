#pragma once

#include "rissop/analytic.hpp"
#include "rissop/channel.hpp"
#include "rissop/montecarlo.hpp"
#include "rissop/optimizer.hpp"

#include <json.hpp>

#include <string>

namespace rissop {

using ordered_json = nlohmann::ordered_json;

/// Missing fields keep their defaults; unknown fields and wrong types throw
/// std::invalid_argument. Distances use the keys sr, jr, rd, re.
SystemConfig config_from_json(const nlohmann::json& j);
SystemConfig load_config(const std::string& path);

ordered_json to_json(const SystemConfig& cfg);
ordered_json to_json(const SopBreakdown& b);
ordered_json to_json(const McEstimate& e);
ordered_json to_json(const AllocationResult& r);
ordered_json to_json(const ConvexityCertificate& c);

} // namespace rissop
