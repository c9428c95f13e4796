#pragma once

#include "auvpf/types.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <utility>

namespace auvpf {

/// Seeded Gaussian stream with a pinned algorithm so logs reproduce across
/// builds and platforms: mt19937_64 + single-output Box-Muller, uniforms
/// taken as (word >> 11) * 2^-53. Each normal() consumes exactly two words.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double normal() {
        const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;          // [0, 1)
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

private:
    std::mt19937_64 rng_;
};

/// Second-order wave filter parameters for one force direction, plus the
/// clipped Wiener bias that models the slowly varying load component.
struct WaveAxisParams {
    double xi = 0.2573;        // damping ratio
    double omega0 = 0.8;       // wave peak frequency [rad/s]
    double Kw = 1.5;           // white-noise gain
    double noise_std = 0.15;   // std of the white-noise samples
    double bias_lo = -100.0;   // bias clamp bounds [N]
    double bias_hi = 100.0;
    double bias_step_std = 2.0;  // Wiener increment std per sqrt(s)

    void validate(const std::string& where) const;
};

struct WaveAxisState {
    double z1 = 0.0;
    double z2 = 0.0;
    double d = 0.0;
};

/// Advances one axis by an explicit Euler-Maruyama step:
///   z1 += Ts * z2
///   z2 += Ts * (-omega0^2 z1 - 2 xi omega0 z2 + Kw * noise_sample)
///   d   = clamp(d + bias_sample * sqrt(Ts), [bias_lo, bias_hi])
/// noise_sample and bias_sample are raw draws (already scaled to noise_std
/// and bias_step_std by the caller).
WaveAxisState wave_step(const WaveAxisState& state, const WaveAxisParams& params,
                        double noise_sample, double bias_sample, double Ts);

/// Force output of one axis, tau_w_i = z2 + d.
inline double wave_output(const WaveAxisState& state) { return state.z2 + state.d; }

/// Three wave axes (X, Y, Z) plus the seeded draw stream. A value type: copy
/// it to branch the disturbance realization. With common_mode set, all three
/// axes consume the same two draws per step, reproducing a scenario where
/// the force components are identical in all directions.
struct WaveField {
    std::array<WaveAxisParams, 3> params{};
    std::array<WaveAxisState, 3> state{};
    bool common_mode = false;
    std::uint64_t rng_seed = 0;
    GaussianStream stream{0};

    static WaveField create(const std::array<WaveAxisParams, 3>& params, bool common_mode,
                            std::uint64_t seed);
};

/// [out_X, out_Y, out_Z, 0, 0, 0] -- waves act as forces only, never moments.
Vec6 assemble_wrench(const WaveField& field);

/// Draws noise for every axis (one shared draw pair in common mode, one pair
/// per axis otherwise, axis-major order), steps the filters and returns the
/// advanced field together with its wrench.
std::pair<WaveField, Vec6> field_step(WaveField field, double Ts);

}  // namespace auvpf
