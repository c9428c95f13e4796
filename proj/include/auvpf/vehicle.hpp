#pragma once

#include "auvpf/types.hpp"

namespace auvpf {

/// Full parameterization of the coupled 6-DOF rigid-body + hydrodynamic model
///
///   M nu_dot + C(nu) nu + D(nu) nu + g(eta) = tau + tau_w
///
/// M combines rigid-body and added mass, D(nu) = D_lin + diag(|nu_i|) D_quad_i,
/// and g(eta) is the standard hydrostatic restoring vector built from weight W,
/// buoyancy B and the centers r_g / r_b.
struct VehicleParams {
    Mat6 M = Mat6::Identity();       // inertia incl. added mass [kg, kg m^2]
    Mat6 D_lin = Mat6::Zero();       // linear damping
    Vec6 D_quad = Vec6::Zero();      // diagonal quadratic (modulus) damping coefficients
    double W = 0.0;                  // weight [N]
    double B = 0.0;                  // buoyancy [N]
    Vec3 r_g = Vec3::Zero();         // center of gravity, body frame [m]
    Vec3 r_b = Vec3::Zero();         // center of buoyancy, body frame [m]
    double L = 1.0;                  // vehicle length [m]
    double tau_bar = 0.0;            // per-axis input bound [N, N m]
    double pitch_margin = 0.05;      // singularity margin for |theta| < pi/2 - margin [rad]

    // Checks symmetry/positive-definiteness of M and the other invariants;
    // throws ConfigError naming the offending field.
    void validate() const;
};

/// Block-diagonal kinematic transform J(eta) = diag(J1, J2) mapping body-frame
/// velocities to inertial pose rates. J1 is the ZYX Euler rotation (proper
/// orthonormal), J2 the Euler angular-rate transform.
/// Throws PitchSingularityError when |theta| >= pi/2 - pitch_margin.
Mat6 rotation_matrix(const Pose& pose, double pitch_margin = 0.05);

/// Coriolis-centripetal matrix C(nu). Built from M partitioned into 3x3
/// linear/angular blocks with the skew parameterization
///
///   C = [      0        -S(M11 v1 + M12 v2)
///        -S(M11 v1 + M12 v2)  -S(M21 v1 + M22 v2) ],
///
/// which is skew-symmetric, so nu' C(nu) nu = 0 for any nu.
Mat6 coriolis_matrix(const Velocity& nu, const VehicleParams& params);

/// D(nu) = D_lin + diag(|nu_i| * D_quad_i).
Mat6 damping_matrix(const Velocity& nu, const VehicleParams& params);

/// Hydrostatic restoring force/moment vector g(eta).
Vec6 restoring_vector(const Pose& pose, const VehicleParams& params);

/// chi(nu, eta) = C(nu) nu + D(nu) nu + g(eta).
Vec6 chi(const Velocity& nu, const Pose& pose, const VehicleParams& params);

/// Body-frame acceleration nu_dot = M^-1 (tau + tau_w - chi(nu, eta)).
Vec6 accel(const VehicleState& state, const Wrench& tau, const Vec6& tau_w,
           const VehicleParams& params);

/// Advances the coupled ODE (eta_dot = J(eta) nu, nu_dot from accel) by one
/// classical RK4 step with tau and tau_w held constant over the step.
VehicleState step_truth(const VehicleState& state, const Wrench& tau, const Vec6& tau_w,
                        const VehicleParams& params, double Ts);

/// Maps a commanded velocity increment to an actuator wrench,
/// tau = (M / Ts) delta_nu + chi(nu_prev, pose). No saturation is applied;
/// input bounds are enforced by the controller QP.
Wrench inverse_dynamics(const Vec6& delta_nu, const Velocity& nu_prev, const Pose& pose,
                        const VehicleParams& params, double Ts);

}  // namespace auvpf
