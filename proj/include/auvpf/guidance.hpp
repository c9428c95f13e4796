#pragma once

#include "auvpf/types.hpp"

#include <cstddef>
#include <vector>

namespace auvpf {

struct Waypoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Ordered waypoint sequence (destination last) with the two acceptance
/// radii: rho_c places the LOS reference point around the vehicle, rho_s is
/// the switching sphere around each waypoint. start_position anchors the
/// first segment's orientation, since a segment needs two endpoints and the
/// plan begins mid-path.
struct WaypointPlan {
    std::vector<Waypoint> waypoints;
    double rho_c = 0.5;
    double rho_s = 3.0;
    std::size_t active_index = 0;
    Waypoint start_position{};

    void validate() const;
    bool exhausted() const { return active_index >= waypoints.size(); }
};

/// 3D position reference plus desired orientation. Roll is always zero;
/// pitch/yaw come from the straight-line path between waypoints.
struct LosReference {
    double x_los = 0.0;
    double y_los = 0.0;
    double z_los = 0.0;
    double phi_ref = 0.0;
    double theta_ref = 0.0;
    double psi_ref = 0.0;

    Vec6 vec() const {
        Vec6 v;
        v << x_los, y_los, z_los, phi_ref, theta_ref, psi_ref;
        return v;
    }
};

/// Four-quadrant heading of the vector from (x, y) to the waypoint, in
/// (-pi, pi]. Throws GeometryError when the horizontal offset is < 1e-9 m.
double desired_heading(double x, double y, const Waypoint& wp);

/// LOS point on the circle of acceptance: (x + rho_c cos(psi_d),
/// y + rho_c sin(psi_d)). This offset form places the point at distance
/// exactly rho_c along the psi_d ray in every quadrant, which is the
/// algebraic solution of the circle/ray intersection including its sign rule.
std::pair<double, double> los_horizontal(double x, double y, double psi_d, double rho_c);

/// (x_los - x_los_prev) / Ts. Diagnostic only; not used by the controller.
double los_surge_speed(double x_los, double x_los_prev, double Ts);

/// Elevation of the waypoint seen from (x, y, z):
/// atan((z_p - z) / horizontal distance). Throws GeometryError when the
/// horizontal distance is < 1e-9 m.
double elevation_angle(double x, double y, double z, const Waypoint& wp);

/// LOS depth z + tan(theta0) * rho_c, keeping the elevation angle constant
/// regardless of the current depth.
double los_depth(double z, double theta0, double rho_c);

/// Sphere-of-acceptance test: true iff squared distance <= rho_s^2
/// (boundary inclusive).
bool switch_condition(double x, double y, double z, const Waypoint& wp, double rho_s);

/// Yaw/pitch of the straight segment from wp_from to wp_to:
/// psi_p = atan2(dy, dx) in (-pi, pi], theta_p = -atan(dz / horiz dist).
/// Throws GeometryError for vertical or zero-length segments.
std::pair<double, double> path_orientation(const Waypoint& wp_from, const Waypoint& wp_to);

struct GuidanceResult {
    WaypointPlan plan;      // possibly advanced
    LosReference reference;
    bool complete = false;  // destination sphere reached
};

/// One guidance update: advances active_index while the vehicle sits inside
/// the active waypoint's sphere (repeatedly, so overlapping spheres cannot
/// stall the plan), then assembles the reference toward the active waypoint.
/// When the destination sphere is reached the result is flagged complete and
/// the reference keeps pointing at the destination.
GuidanceResult guidance_update(const WaypointPlan& plan, const Pose& pose);

}  // namespace auvpf
