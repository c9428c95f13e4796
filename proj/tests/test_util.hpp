#pragma once

#include "auvpf/config.hpp"
#include "auvpf/types.hpp"
#include "auvpf/vehicle.hpp"

#include <random>

namespace auvpf::test {

// Simple diagonal test vehicle, slightly heavy with offset buoyancy center.
inline VehicleParams simple_vehicle() {
    VehicleParams p;
    p.M = Vec6(500.0, 700.0, 700.0, 40.0, 450.0, 450.0).asDiagonal();
    p.D_lin = Vec6(60.0, 150.0, 150.0, 20.0, 90.0, 90.0).asDiagonal();
    p.D_quad << 100.0, 200.0, 200.0, 10.0, 50.0, 50.0;
    p.W = 4905.0;
    p.B = 4905.0;
    p.r_g = Vec3(0.0, 0.0, 0.02);
    p.r_b = Vec3(0.0, 0.0, -0.02);
    p.L = 2.0;
    p.tau_bar = 1500.0;
    return p;
}

// The shipped scenario (synthetic coupled vehicle, paper tuning and waves).
inline ScenarioConfig default_scenario() {
    static const ScenarioConfig cfg = load_config(std::string(AUVPF_SOURCE_DIR) +
                                                  "/configs/scenario_default.json");
    return cfg;
}

inline std::mt19937_64 rng(std::uint64_t seed = 42) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Pose random_pose(std::mt19937_64& g, double max_pitch = 1.4) {
    Pose p;
    p.x = uniform(g, -50.0, 50.0);
    p.y = uniform(g, -50.0, 50.0);
    p.z = uniform(g, -30.0, 0.0);
    p.phi = uniform(g, -kPi, kPi);
    p.theta = uniform(g, -max_pitch, max_pitch);
    p.psi = uniform(g, -kPi, kPi);
    return p;
}

inline Velocity random_velocity(std::mt19937_64& g, double scale = 2.0) {
    Velocity v;
    v.u = uniform(g, -scale, scale);
    v.v = uniform(g, -scale, scale);
    v.w = uniform(g, -scale, scale);
    v.p = uniform(g, -scale, scale);
    v.q = uniform(g, -scale, scale);
    v.r = uniform(g, -scale, scale);
    return v;
}

// Random symmetric positive definite inertia with coupled off-diagonals.
inline Mat6 random_spd_inertia(std::mt19937_64& g) {
    Mat6 A;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) A(i, j) = uniform(g, -1.0, 1.0);
    Mat6 M = A.transpose() * A + 3.0 * Mat6::Identity();
    return 100.0 * M;
}

}  // namespace auvpf::test
