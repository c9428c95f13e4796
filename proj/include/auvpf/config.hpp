#pragma once

#include "auvpf/guidance.hpp"
#include "auvpf/mpc.hpp"
#include "auvpf/types.hpp"
#include "auvpf/vehicle.hpp"
#include "auvpf/waves.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace auvpf {

/// Complete closed-loop scenario description. Loaded from a strict JSON
/// schema: every field is required unless documented otherwise, unknown keys
/// are rejected, and errors name the offending field path.
struct ScenarioConfig {
    VehicleParams vehicle;

    std::vector<Waypoint> waypoints;
    double rho_c = 0.5;
    double rho_s = 3.0;

    Vec6 Q = Vec6::Ones();
    Vec6 R = Vec6::Ones();
    int N = 10;
    int Nu = 2;
    Vec12 d_bar = Vec12::Zero();

    std::array<WaveAxisParams, 3> wave_axes{};
    bool wave_common_mode = false;

    VehicleState initial_state;
    double Ts = 0.1;
    double max_sim_time = 300.0;
    std::uint64_t seed = 1;

    void validate() const;

    McTuning tuning() const;
    /// Plan anchored at the initial position (first segment's start point).
    WaypointPlan plan() const;
};

ScenarioConfig config_from_json(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);

}  // namespace auvpf
