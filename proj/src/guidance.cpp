#include "auvpf/guidance.hpp"

#include <cmath>

namespace auvpf {

namespace {
constexpr double kMinHorizontalOffset = 1e-9;  // [m]
}

void WaypointPlan::validate() const {
    if (waypoints.empty()) throw ConfigError("guidance.waypoints: at least one waypoint required");
    if (!(rho_c > 0.0)) throw ConfigError("guidance.rho_c: must be > 0");
    if (!(rho_s > 0.0)) throw ConfigError("guidance.rho_s: must be > 0");
    if (active_index > waypoints.size())
        throw ConfigError("guidance.active_index: out of range");
    for (const auto& wp : waypoints)
        if (!std::isfinite(wp.x) || !std::isfinite(wp.y) || !std::isfinite(wp.z))
            throw ConfigError("guidance.waypoints: coordinates must be finite");
}

double desired_heading(double x, double y, const Waypoint& wp) {
    const double dx = wp.x - x;
    const double dy = wp.y - y;
    if (std::hypot(dx, dy) < kMinHorizontalOffset)
        throw GeometryError("desired_heading: waypoint horizontally coincident with position");
    return wrap_angle(std::atan2(dy, dx));
}

std::pair<double, double> los_horizontal(double x, double y, double psi_d, double rho_c) {
    return {x + rho_c * std::cos(psi_d), y + rho_c * std::sin(psi_d)};
}

double los_surge_speed(double x_los, double x_los_prev, double Ts) {
    return (x_los - x_los_prev) / Ts;
}

double elevation_angle(double x, double y, double z, const Waypoint& wp) {
    const double hd = std::hypot(wp.x - x, wp.y - y);
    if (hd < kMinHorizontalOffset)
        throw GeometryError("elevation_angle: waypoint horizontally coincident with position");
    return std::atan((wp.z - z) / hd);
}

double los_depth(double z, double theta0, double rho_c) {
    return z + std::tan(theta0) * rho_c;
}

bool switch_condition(double x, double y, double z, const Waypoint& wp, double rho_s) {
    const double dx = wp.x - x, dy = wp.y - y, dz = wp.z - z;
    return dx * dx + dy * dy + dz * dz <= rho_s * rho_s;
}

std::pair<double, double> path_orientation(const Waypoint& wp_from, const Waypoint& wp_to) {
    const double dx = wp_to.x - wp_from.x;
    const double dy = wp_to.y - wp_from.y;
    const double dz = wp_to.z - wp_from.z;
    const double hd = std::hypot(dx, dy);
    if (hd < kMinHorizontalOffset)
        throw GeometryError("path_orientation: degenerate (vertical or zero-length) segment");
    const double psi_p = wrap_angle(std::atan2(dy, dx));
    const double theta_p = -std::atan(dz / hd);
    return {psi_p, theta_p};
}

namespace {

LosReference make_reference(const WaypointPlan& plan, const Pose& pose, std::size_t target) {
    const Waypoint& wp = plan.waypoints[target];
    const Waypoint from = target == 0 ? plan.start_position : plan.waypoints[target - 1];

    const double psi_d = desired_heading(pose.x, pose.y, wp);
    const auto [x_los, y_los] = los_horizontal(pose.x, pose.y, psi_d, plan.rho_c);
    const double theta0 = elevation_angle(pose.x, pose.y, pose.z, wp);
    const auto [psi_p, theta_p] = path_orientation(from, wp);

    LosReference ref;
    ref.x_los = x_los;
    ref.y_los = y_los;
    ref.z_los = los_depth(pose.z, theta0, plan.rho_c);
    ref.phi_ref = 0.0;
    ref.theta_ref = theta_p;
    ref.psi_ref = psi_p;
    return ref;
}

}  // namespace

GuidanceResult guidance_update(const WaypointPlan& plan, const Pose& pose) {
    GuidanceResult res;
    res.plan = plan;

    while (!res.plan.exhausted() &&
           switch_condition(pose.x, pose.y, pose.z,
                            res.plan.waypoints[res.plan.active_index], res.plan.rho_s)) {
        ++res.plan.active_index;
    }

    if (res.plan.exhausted()) {
        res.complete = true;
        // Keep pointing at the destination; the vehicle may sit right on top
        // of it, in which case the heading is undefined and we hold pose.
        try {
            res.reference = make_reference(res.plan, pose, res.plan.waypoints.size() - 1);
        } catch (const GeometryError&) {
            const Waypoint& dest = res.plan.waypoints.back();
            res.reference = LosReference{dest.x, dest.y, dest.z, 0.0, 0.0, wrap_angle(pose.psi)};
        }
        return res;
    }

    res.reference = make_reference(res.plan, pose, res.plan.active_index);
    return res;
}

}  // namespace auvpf
