#include "auvpf/config.hpp"

#include <fstream>
#include <set>

namespace auvpf {

namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(path + key + ": missing required field");
    return *it;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path.empty() ? "config root: expected an object"
                                                         : path + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (allowed.count(it.key()) == 0)
            throw ConfigError(path + it.key() + ": unknown field (strict schema)");
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) throw ConfigError(path + key + ": expected a number");
    return v.get<double>();
}

int integer(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number_integer()) throw ConfigError(path + key + ": expected an integer");
    return v.get<int>();
}

bool boolean(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_boolean()) throw ConfigError(path + key + ": expected a boolean");
    return v.get<bool>();
}

VecX vector_of(const json& obj, const std::string& key, int size, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_array() || static_cast<int>(v.size()) != size)
        throw ConfigError(path + key + ": expected an array of " + std::to_string(size) +
                          " numbers");
    VecX out(size);
    for (int i = 0; i < size; ++i) {
        if (!v[i].is_number()) throw ConfigError(path + key + ": expected numeric entries");
        out(i) = v[i].get<double>();
    }
    return out;
}

// Row-major nested arrays.
Mat6 matrix6(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_array() || v.size() != 6)
        throw ConfigError(path + key + ": expected a 6x6 row-major nested array");
    Mat6 out;
    for (int r = 0; r < 6; ++r) {
        if (!v[r].is_array() || v[r].size() != 6)
            throw ConfigError(path + key + ": expected rows of 6 numbers");
        for (int c = 0; c < 6; ++c) {
            if (!v[r][c].is_number())
                throw ConfigError(path + key + ": expected numeric entries");
            out(r, c) = v[r][c].get<double>();
        }
    }
    return out;
}

VehicleParams parse_vehicle(const json& j) {
    check_keys(j, {"M", "D_lin", "D_quad", "W", "B", "r_g", "r_b", "L", "tau_bar",
                   "pitch_margin"},
               "vehicle.");
    VehicleParams p;
    p.M = matrix6(j, "M", "vehicle.");
    p.D_lin = matrix6(j, "D_lin", "vehicle.");
    p.D_quad = vector_of(j, "D_quad", 6, "vehicle.");
    p.W = number(j, "W", "vehicle.");
    p.B = number(j, "B", "vehicle.");
    p.r_g = vector_of(j, "r_g", 3, "vehicle.");
    p.r_b = vector_of(j, "r_b", 3, "vehicle.");
    p.L = number(j, "L", "vehicle.");
    p.tau_bar = number(j, "tau_bar", "vehicle.");
    if (j.contains("pitch_margin")) p.pitch_margin = number(j, "pitch_margin", "vehicle.");
    return p;
}

WaveAxisParams parse_wave_axis(const json& j, const std::string& path) {
    check_keys(j, {"xi", "omega0", "Kw", "noise_std", "bias_bounds", "bias_step_std"}, path);
    WaveAxisParams p;
    p.xi = number(j, "xi", path);
    p.omega0 = number(j, "omega0", path);
    p.Kw = number(j, "Kw", path);
    p.noise_std = number(j, "noise_std", path);
    const VecX bb = vector_of(j, "bias_bounds", 2, path);
    p.bias_lo = bb(0);
    p.bias_hi = bb(1);
    p.bias_step_std = number(j, "bias_step_std", path);
    return p;
}

}  // namespace

ScenarioConfig config_from_json(const nlohmann::json& j) {
    check_keys(j, {"vehicle", "guidance", "tuning", "wave", "initial_state", "Ts",
                   "max_sim_time", "seed"},
               "");

    ScenarioConfig cfg;
    cfg.vehicle = parse_vehicle(require(j, "vehicle", ""));

    const json& g = require(j, "guidance", "");
    check_keys(g, {"waypoints", "rho_c", "rho_s"}, "guidance.");
    const json& wps = require(g, "waypoints", "guidance.");
    if (!wps.is_array() || wps.empty())
        throw ConfigError("guidance.waypoints: expected a nonempty array of [x, y, z]");
    for (std::size_t i = 0; i < wps.size(); ++i) {
        if (!wps[i].is_array() || wps[i].size() != 3 || !wps[i][0].is_number() ||
            !wps[i][1].is_number() || !wps[i][2].is_number())
            throw ConfigError("guidance.waypoints[" + std::to_string(i) +
                              "]: expected [x, y, z] numbers");
        cfg.waypoints.push_back(Waypoint{wps[i][0].get<double>(), wps[i][1].get<double>(),
                                         wps[i][2].get<double>()});
    }
    cfg.rho_c = number(g, "rho_c", "guidance.");
    cfg.rho_s = number(g, "rho_s", "guidance.");

    const json& t = require(j, "tuning", "");
    check_keys(t, {"Q", "R", "N", "Nu", "d_bar"}, "tuning.");
    cfg.Q = vector_of(t, "Q", 6, "tuning.");
    cfg.R = vector_of(t, "R", 6, "tuning.");
    cfg.N = integer(t, "N", "tuning.");
    cfg.Nu = integer(t, "Nu", "tuning.");
    cfg.d_bar = vector_of(t, "d_bar", 12, "tuning.");

    const json& w = require(j, "wave", "");
    check_keys(w, {"common_mode", "axes"}, "wave.");
    cfg.wave_common_mode = boolean(w, "common_mode", "wave.");
    const json& axes = require(w, "axes", "wave.");
    if (!axes.is_array() || axes.size() != 3)
        throw ConfigError("wave.axes: expected exactly 3 axis blocks (X, Y, Z)");
    for (int i = 0; i < 3; ++i)
        cfg.wave_axes[i] = parse_wave_axis(axes[i], "wave.axes[" + std::to_string(i) + "].");

    const json& s = require(j, "initial_state", "");
    check_keys(s, {"pose", "nu"}, "initial_state.");
    cfg.initial_state.pose = Pose::from_vec(vector_of(s, "pose", 6, "initial_state."));
    cfg.initial_state.nu = Velocity::from_vec(vector_of(s, "nu", 6, "initial_state."));

    cfg.Ts = number(j, "Ts", "");
    cfg.max_sim_time = number(j, "max_sim_time", "");
    const json& seed = require(j, "seed", "");
    if (!seed.is_number_unsigned() && !seed.is_number_integer())
        throw ConfigError("seed: expected an integer");
    cfg.seed = seed.get<std::uint64_t>();

    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

void ScenarioConfig::validate() const {
    vehicle.validate();
    plan().validate();
    tuning().validate();
    for (int i = 0; i < 3; ++i)
        wave_axes[i].validate("wave.axes[" + std::to_string(i) + "]");
    if (!(Ts > 0.0)) throw ConfigError("Ts: must be > 0");
    if (!(max_sim_time > Ts)) throw ConfigError("max_sim_time: must be > Ts");
    if (!initial_state.pose.vec().allFinite() || !initial_state.nu.vec().allFinite())
        throw ConfigError("initial_state: entries must be finite");
    if (std::abs(initial_state.pose.theta) >= kPi / 2.0 - vehicle.pitch_margin)
        throw ConfigError("initial_state.pose: pitch within the singularity margin");
}

McTuning ScenarioConfig::tuning() const {
    McTuning t;
    t.Q = Q;
    t.R = R;
    t.N = N;
    t.Nu = Nu;
    t.d_bar = d_bar;
    t.tau_bar = vehicle.tau_bar;
    t.Ts = Ts;
    return t;
}

WaypointPlan ScenarioConfig::plan() const {
    WaypointPlan p;
    p.waypoints = waypoints;
    p.rho_c = rho_c;
    p.rho_s = rho_s;
    p.active_index = 0;
    p.start_position = Waypoint{initial_state.pose.x, initial_state.pose.y,
                                initial_state.pose.z};
    return p;
}

}  // namespace auvpf
