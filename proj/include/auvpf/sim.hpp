#pragma once

#include "auvpf/config.hpp"
#include "auvpf/guidance.hpp"
#include "auvpf/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace auvpf {

/// One closed-loop sample: the state at t, the disturbance drawn for the
/// step, the reference in force, and the control applied over [t, t+Ts).
/// The final row of a completed run has qp_status "done" and zero wrench.
struct LogRow {
    double t = 0.0;
    Vec6 pose = Vec6::Zero();
    Vec6 nu = Vec6::Zero();
    Vec6 tau = Vec6::Zero();
    Vec3 tau_w = Vec3::Zero();
    Vec6 los_ref = Vec6::Zero();
    int active_index = 0;
    std::string qp_status = "solved";
    int qp_iterations = 0;
    double worst_case_cost = 0.0;
};

struct SimLog {
    std::vector<LogRow> rows;

    /// Fixed CSV column order.
    static const std::vector<std::string>& columns();
};

struct Metrics {
    std::vector<std::optional<double>> waypoint_hit_times;  // first sphere entry, seconds
    double mean_surge = 0.0;       // straight-segment samples, 10-90% windows
    double surge_std = 0.0;
    double mean_abs_roll_deg = 0.0;
    double max_abs_roll_deg = 0.0;
    double max_abs_tau = 0.0;
    std::vector<double> cross_track_rms;  // per completed segment [m]
    bool completed = false;
};

struct RunResult {
    SimLog log;
    Metrics metrics;
    bool completed = false;
    bool aborted = false;          // pitch singularity mid-run; log is partial
    std::string abort_reason;
};

/// Runs the closed loop: disturbance draw, guidance, controller, actuation,
/// truth step, log -- in that order every sample -- until the destination
/// sphere is reached or max_sim_time elapses. Deterministic given the config
/// (including its seed).
RunResult run_simulation(const ScenarioConfig& config);

/// Derives scenario statistics from a log. Waypoint hits are first sphere
/// entries scanned in plan order; surge statistics pool samples between 10%
/// and 90% of each inter-hit segment's duration to skip heading transients.
Metrics compute_metrics(const SimLog& log, const WaypointPlan& plan);

struct SweepRow {
    double rho_c = 0.0;
    double mean_surge = 0.0;
    bool completed = false;
};

/// Repeats the scenario once per rho_c value with identical seeds.
std::vector<SweepRow> sweep_rho_c(const ScenarioConfig& config,
                                  const std::vector<double>& values);

std::string log_to_csv(const SimLog& log);
void write_log(const SimLog& log, const std::string& path, const std::string& format);
SimLog read_log_csv(const std::string& path);

nlohmann::json metrics_to_json(const Metrics& m);

}  // namespace auvpf
