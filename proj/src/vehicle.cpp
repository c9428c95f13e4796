#include "auvpf/vehicle.hpp"

#include <Eigen/Eigenvalues>

namespace auvpf {

namespace {

Mat3 skew(const Vec3& a) {
    Mat3 s;
    s << 0.0, -a(2), a(1),
         a(2), 0.0, -a(0),
        -a(1), a(0), 0.0;
    return s;
}

}  // namespace

void VehicleParams::validate() const {
    if (!M.allFinite()) throw ConfigError("vehicle.M: entries must be finite");
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ConfigError("vehicle.M: must be symmetric within 1e-12");
    Eigen::SelfAdjointEigenSolver<Mat6> es(M);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw ConfigError("vehicle.M: must be positive definite");
    if (!D_lin.allFinite()) throw ConfigError("vehicle.D_lin: entries must be finite");
    if (!D_quad.allFinite()) throw ConfigError("vehicle.D_quad: entries must be finite");
    if ((D_quad.array() < 0.0).any())
        throw ConfigError("vehicle.D_quad: coefficients must be nonnegative");
    if (!(L > 0.0)) throw ConfigError("vehicle.L: must be > 0");
    if (!(tau_bar > 0.0)) throw ConfigError("vehicle.tau_bar: must be > 0");
    if (!(pitch_margin > 0.0) || pitch_margin >= kPi / 2.0)
        throw ConfigError("vehicle.pitch_margin: must be in (0, pi/2)");
    if (W < 0.0 || B < 0.0) throw ConfigError("vehicle.W/B: must be nonnegative");
}

Mat6 rotation_matrix(const Pose& pose, double pitch_margin) {
    if (std::abs(pose.theta) >= kPi / 2.0 - pitch_margin)
        throw PitchSingularityError(pose.theta);

    const double cphi = std::cos(pose.phi), sphi = std::sin(pose.phi);
    const double cth = std::cos(pose.theta), sth = std::sin(pose.theta);
    const double cpsi = std::cos(pose.psi), spsi = std::sin(pose.psi);

    Mat3 J1;
    J1 << cpsi * cth, -spsi * cphi + cpsi * sth * sphi, spsi * sphi + cpsi * cphi * sth,
          spsi * cth, cpsi * cphi + sphi * sth * spsi, -cpsi * sphi + sth * spsi * cphi,
          -sth,       cth * sphi,                      cth * cphi;

    Mat3 J2;
    J2 << 1.0, sphi * sth / cth, cphi * sth / cth,
          0.0, cphi,             -sphi,
          0.0, sphi / cth,       cphi / cth;

    Mat6 J = Mat6::Zero();
    J.topLeftCorner<3, 3>() = J1;
    J.bottomRightCorner<3, 3>() = J2;
    return J;
}

Mat6 coriolis_matrix(const Velocity& nu, const VehicleParams& params) {
    const Vec6 v = nu.vec();
    const Vec3 v1 = v.head<3>();
    const Vec3 v2 = v.tail<3>();

    const Vec3 a = params.M.topLeftCorner<3, 3>() * v1 + params.M.topRightCorner<3, 3>() * v2;
    const Vec3 b = params.M.bottomLeftCorner<3, 3>() * v1 + params.M.bottomRightCorner<3, 3>() * v2;

    Mat6 C = Mat6::Zero();
    C.topRightCorner<3, 3>() = -skew(a);
    C.bottomLeftCorner<3, 3>() = -skew(a);
    C.bottomRightCorner<3, 3>() = -skew(b);
    return C;
}

Mat6 damping_matrix(const Velocity& nu, const VehicleParams& params) {
    Mat6 D = params.D_lin;
    const Vec6 v = nu.vec();
    for (int i = 0; i < 6; ++i) D(i, i) += std::abs(v(i)) * params.D_quad(i);
    return D;
}

Vec6 restoring_vector(const Pose& pose, const VehicleParams& params) {
    const double W = params.W, B = params.B;
    const double xg = params.r_g(0), yg = params.r_g(1), zg = params.r_g(2);
    const double xb = params.r_b(0), yb = params.r_b(1), zb = params.r_b(2);
    const double cphi = std::cos(pose.phi), sphi = std::sin(pose.phi);
    const double cth = std::cos(pose.theta), sth = std::sin(pose.theta);

    Vec6 g;
    g << (W - B) * sth,
        -(W - B) * cth * sphi,
        -(W - B) * cth * cphi,
        -(yg * W - yb * B) * cth * cphi + (zg * W - zb * B) * cth * sphi,
        (zg * W - zb * B) * sth + (xg * W - xb * B) * cth * cphi,
        -(xg * W - xb * B) * cth * sphi - (yg * W - yb * B) * sth;
    return g;
}

Vec6 chi(const Velocity& nu, const Pose& pose, const VehicleParams& params) {
    const Vec6 v = nu.vec();
    return coriolis_matrix(nu, params) * v + damping_matrix(nu, params) * v +
           restoring_vector(pose, params);
}

Vec6 accel(const VehicleState& state, const Wrench& tau, const Vec6& tau_w,
           const VehicleParams& params) {
    const Vec6 rhs = tau.vec() + tau_w - chi(state.nu, state.pose, params);
    return params.M.ldlt().solve(rhs);
}

namespace {

// 12-state derivative [eta_dot; nu_dot] with constant forcing.
Vec12 state_deriv(const Vec12& x, const Vec6& tau, const Vec6& tau_w,
                  const VehicleParams& params) {
    VehicleState s{Pose::from_vec(x.head<6>()), Velocity::from_vec(x.tail<6>())};
    Vec12 dx;
    dx.head<6>() = rotation_matrix(s.pose, params.pitch_margin) * x.tail<6>();
    dx.tail<6>() = accel(s, Wrench::from_vec(tau), tau_w, params);
    return dx;
}

}  // namespace

VehicleState step_truth(const VehicleState& state, const Wrench& tau, const Vec6& tau_w,
                        const VehicleParams& params, double Ts) {
    const Vec6 t = tau.vec();
    const Vec12 x0 = state.vec();
    const Vec12 k1 = state_deriv(x0, t, tau_w, params);
    const Vec12 k2 = state_deriv(x0 + 0.5 * Ts * k1, t, tau_w, params);
    const Vec12 k3 = state_deriv(x0 + 0.5 * Ts * k2, t, tau_w, params);
    const Vec12 k4 = state_deriv(x0 + Ts * k3, t, tau_w, params);
    const Vec12 x1 = x0 + (Ts / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return VehicleState{Pose::from_vec(x1.head<6>()), Velocity::from_vec(x1.tail<6>())};
}

Wrench inverse_dynamics(const Vec6& delta_nu, const Velocity& nu_prev, const Pose& pose,
                        const VehicleParams& params, double Ts) {
    const Vec6 tau = (params.M / Ts) * delta_nu + chi(nu_prev, pose, params);
    return Wrench::from_vec(tau);
}

}  // namespace auvpf
