#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace auvpf {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using VecX = Eigen::VectorXd;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat12 = Eigen::Matrix<double, 12, 12>;
using MatX = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

// Thrown when a pose hits the Euler pitch singularity (|theta| ~ pi/2,
// where the angular-rate transform divides by cos(theta)).
struct PitchSingularityError : std::runtime_error {
    explicit PitchSingularityError(double theta)
        : std::runtime_error("pitch angle " + std::to_string(theta) +
                             " rad is within the configured margin of the +-pi/2 singularity") {}
};

// Degenerate geometry in the guidance computations (coincident points,
// vertical or zero-length segment).
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration / schema violation; message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Position + ZYX Euler attitude in the inertial frame.
/// The z coordinate is a signed inertial coordinate; scenario waypoints
/// follow the convention where depth appears as negative z.
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double phi = 0.0;    // roll  [rad]
    double theta = 0.0;  // pitch [rad]
    double psi = 0.0;    // yaw   [rad]

    Vec6 vec() const {
        Vec6 v;
        v << x, y, z, phi, theta, psi;
        return v;
    }
    static Pose from_vec(const Vec6& v) { return Pose{v(0), v(1), v(2), v(3), v(4), v(5)}; }
};

/// Body-frame linear and angular velocities [u v w p q r].
struct Velocity {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;

    Vec6 vec() const {
        Vec6 x;
        x << u, v, w, p, q, r;
        return x;
    }
    static Velocity from_vec(const Vec6& x) { return Velocity{x(0), x(1), x(2), x(3), x(4), x(5)}; }
};

/// Generalized forces and moments acting at the vehicle's center of gravity.
struct Wrench {
    double tau_X = 0.0;
    double tau_Y = 0.0;
    double tau_Z = 0.0;
    double tau_K = 0.0;
    double tau_M = 0.0;
    double tau_N = 0.0;

    Vec6 vec() const {
        Vec6 v;
        v << tau_X, tau_Y, tau_Z, tau_K, tau_M, tau_N;
        return v;
    }
    static Wrench from_vec(const Vec6& v) { return Wrench{v(0), v(1), v(2), v(3), v(4), v(5)}; }
};

struct VehicleState {
    Pose pose;
    Velocity nu;

    Vec12 vec() const {
        Vec12 x;
        x << pose.vec(), nu.vec();
        return x;
    }
};

}  // namespace auvpf
