#include "auvpf/sim.hpp"

#include "auvpf/mpc.hpp"
#include "auvpf/vehicle.hpp"
#include "auvpf/waves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace auvpf {

const std::vector<std::string>& SimLog::columns() {
    static const std::vector<std::string> cols = {
        "t", "x", "y", "z", "phi", "theta", "psi",
        "u", "v", "w", "p", "q", "r",
        "tau_X", "tau_Y", "tau_Z", "tau_K", "tau_M", "tau_N",
        "tau_w_X", "tau_w_Y", "tau_w_Z",
        "x_los", "y_los", "z_los", "phi_ref", "theta_ref", "psi_ref",
        "active_index", "qp_status", "qp_iterations", "worst_case_cost"};
    return cols;
}

RunResult run_simulation(const ScenarioConfig& config) {
    config.validate();

    const VehicleParams& params = config.vehicle;
    const McTuning tuning = config.tuning();
    WaypointPlan plan = config.plan();
    WaveField field = WaveField::create(config.wave_axes, config.wave_common_mode, config.seed);

    VehicleState state = config.initial_state;
    Velocity nu_prev = state.nu;
    QpWarmStart warm;
    RunResult result;

    const long max_steps = static_cast<long>(std::floor(config.max_sim_time / config.Ts + 1e-9));
    for (long k = 0; k < max_steps; ++k) {
        auto [next_field, tau_w6] = field_step(std::move(field), config.Ts);
        field = std::move(next_field);

        LogRow row;
        row.t = static_cast<double>(k) * config.Ts;
        row.pose = state.pose.vec();
        row.nu = state.nu.vec();
        row.tau_w = tau_w6.head<3>();

        try {
            GuidanceResult g = guidance_update(plan, state.pose);
            plan = g.plan;
            row.los_ref = g.reference.vec();
            row.active_index = static_cast<int>(plan.active_index);

            if (g.complete) {
                row.qp_status = "done";
                result.log.rows.push_back(row);
                result.completed = true;
                break;
            }

            auto [tau, sol] = mpc_step(state, nu_prev, g.reference, tuning, params, {}, &warm);
            row.tau = tau.vec();
            row.qp_status = to_string(sol.status);
            row.qp_iterations = sol.iterations;
            row.worst_case_cost = sol.worst_case_cost;

            const Velocity nu_k = state.nu;
            state = step_truth(state, tau, tau_w6, params, config.Ts);
            nu_prev = nu_k;
        } catch (const PitchSingularityError& e) {
            result.aborted = true;
            result.abort_reason = e.what();
            break;
        }

        result.log.rows.push_back(row);
    }

    result.metrics = compute_metrics(result.log, config.plan());
    return result;
}

namespace {

double point_line_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 < 1e-18) return (p - a).norm();
    const Vec3 perp = (p - a) - ab * (ab.dot(p - a) / len2);
    return perp.norm();
}

}  // namespace

Metrics compute_metrics(const SimLog& log, const WaypointPlan& plan) {
    Metrics m;
    const std::size_t n_wp = plan.waypoints.size();
    m.waypoint_hit_times.assign(n_wp, std::nullopt);
    if (log.rows.empty()) return m;

    // First sphere entries, scanned in plan order.
    std::size_t cursor = 0;
    for (const LogRow& row : log.rows) {
        while (cursor < n_wp &&
               switch_condition(row.pose(0), row.pose(1), row.pose(2), plan.waypoints[cursor],
                                plan.rho_s)) {
            m.waypoint_hit_times[cursor] = row.t;
            ++cursor;
        }
    }
    m.completed = cursor == n_wp;

    // Surge statistics over the interior of each completed segment.
    std::vector<double> surge;
    double seg_start = log.rows.front().t;
    for (std::size_t i = 0; i < n_wp; ++i) {
        if (!m.waypoint_hit_times[i]) break;
        const double seg_end = *m.waypoint_hit_times[i];
        const double lo = seg_start + 0.1 * (seg_end - seg_start);
        const double hi = seg_start + 0.9 * (seg_end - seg_start);
        for (const LogRow& row : log.rows) {
            if (row.t >= lo && row.t <= hi) surge.push_back(row.nu(0));
        }
        seg_start = seg_end;
    }
    if (!surge.empty()) {
        double sum = 0.0;
        for (double u : surge) sum += u;
        m.mean_surge = sum / static_cast<double>(surge.size());
        double ss = 0.0;
        for (double u : surge) ss += (u - m.mean_surge) * (u - m.mean_surge);
        m.surge_std = std::sqrt(ss / static_cast<double>(surge.size()));
    }

    // Roll and input statistics over the whole run.
    double roll_sum = 0.0;
    for (const LogRow& row : log.rows) {
        const double roll_deg = std::abs(row.pose(3)) * 180.0 / kPi;
        roll_sum += roll_deg;
        m.max_abs_roll_deg = std::max(m.max_abs_roll_deg, roll_deg);
        m.max_abs_tau = std::max(m.max_abs_tau, row.tau.cwiseAbs().maxCoeff());
    }
    m.mean_abs_roll_deg = roll_sum / static_cast<double>(log.rows.size());

    // Per-segment cross-track RMS against the straight line between endpoints.
    seg_start = log.rows.front().t;
    Vec3 seg_from(plan.start_position.x, plan.start_position.y, plan.start_position.z);
    for (std::size_t i = 0; i < n_wp; ++i) {
        if (!m.waypoint_hit_times[i]) break;
        const double seg_end = *m.waypoint_hit_times[i];
        const Vec3 seg_to(plan.waypoints[i].x, plan.waypoints[i].y, plan.waypoints[i].z);
        double acc = 0.0;
        std::size_t count = 0;
        for (const LogRow& row : log.rows) {
            if (row.t >= seg_start && row.t <= seg_end) {
                const double d = point_line_distance(Vec3(row.pose.head<3>()), seg_from, seg_to);
                acc += d * d;
                ++count;
            }
        }
        m.cross_track_rms.push_back(count > 0 ? std::sqrt(acc / static_cast<double>(count))
                                              : 0.0);
        seg_start = seg_end;
        seg_from = seg_to;
    }

    return m;
}

std::vector<SweepRow> sweep_rho_c(const ScenarioConfig& config,
                                  const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("sweep: at least one rho_c value required");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) throw ConfigError("sweep: rho_c values must be > 0");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw ConfigError("sweep: rho_c values must be ascending");
    }
    std::vector<SweepRow> table;
    for (double v : values) {
        ScenarioConfig c = config;
        c.rho_c = v;
        const RunResult r = run_simulation(c);
        table.push_back(SweepRow{v, r.metrics.mean_surge, r.metrics.completed});
    }
    return table;
}

namespace {

// Shortest round-trip decimal form.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string log_to_csv(const SimLog& log) {
    std::ostringstream out;
    const auto& cols = SimLog::columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const LogRow& r : log.rows) {
        out << fmt(r.t);
        for (int i = 0; i < 6; ++i) out << "," << fmt(r.pose(i));
        for (int i = 0; i < 6; ++i) out << "," << fmt(r.nu(i));
        for (int i = 0; i < 6; ++i) out << "," << fmt(r.tau(i));
        for (int i = 0; i < 3; ++i) out << "," << fmt(r.tau_w(i));
        for (int i = 0; i < 6; ++i) out << "," << fmt(r.los_ref(i));
        out << "," << r.active_index << "," << r.qp_status << "," << r.qp_iterations << ","
            << fmt(r.worst_case_cost) << "\n";
    }
    return out.str();
}

void write_log(const SimLog& log, const std::string& path, const std::string& format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open log file for writing: " + path);
    if (format == "csv") {
        out << log_to_csv(log);
    } else if (format == "json") {
        nlohmann::json j;
        j["columns"] = SimLog::columns();
        nlohmann::json rows = nlohmann::json::array();
        for (const LogRow& r : log.rows) {
            nlohmann::json row = nlohmann::json::array();
            row.push_back(r.t);
            for (int i = 0; i < 6; ++i) row.push_back(r.pose(i));
            for (int i = 0; i < 6; ++i) row.push_back(r.nu(i));
            for (int i = 0; i < 6; ++i) row.push_back(r.tau(i));
            for (int i = 0; i < 3; ++i) row.push_back(r.tau_w(i));
            for (int i = 0; i < 6; ++i) row.push_back(r.los_ref(i));
            row.push_back(r.active_index);
            row.push_back(r.qp_status);
            row.push_back(r.qp_iterations);
            row.push_back(r.worst_case_cost);
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        out << j.dump(2) << "\n";
    } else {
        throw std::runtime_error("unknown log format: " + format);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

SimLog read_log_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open log file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty log file: " + path);

    SimLog log;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != SimLog::columns().size())
            throw std::runtime_error("malformed log row: " + line);

        LogRow r;
        int k = 0;
        auto next = [&]() { return std::stod(fields[k++]); };
        r.t = next();
        for (int i = 0; i < 6; ++i) r.pose(i) = next();
        for (int i = 0; i < 6; ++i) r.nu(i) = next();
        for (int i = 0; i < 6; ++i) r.tau(i) = next();
        for (int i = 0; i < 3; ++i) r.tau_w(i) = next();
        for (int i = 0; i < 6; ++i) r.los_ref(i) = next();
        r.active_index = std::stoi(fields[k++]);
        r.qp_status = fields[k++];
        r.qp_iterations = std::stoi(fields[k++]);
        r.worst_case_cost = std::stod(fields[k]);
        log.rows.push_back(std::move(r));
    }
    return log;
}

nlohmann::json metrics_to_json(const Metrics& m) {
    nlohmann::json j;
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& h : m.waypoint_hit_times) {
        if (h) hits.push_back(*h);
        else hits.push_back(nullptr);
    }
    j["waypoint_hit_times"] = std::move(hits);
    j["mean_surge"] = m.mean_surge;
    j["surge_std"] = m.surge_std;
    j["mean_abs_roll_deg"] = m.mean_abs_roll_deg;
    j["max_abs_roll_deg"] = m.max_abs_roll_deg;
    j["max_abs_tau"] = m.max_abs_tau;
    j["cross_track_rms"] = m.cross_track_rms;
    j["completed"] = m.completed;
    return j;
}

}  // namespace auvpf
