#include "auvpf/waves.hpp"

#include <algorithm>

namespace auvpf {

void WaveAxisParams::validate(const std::string& where) const {
    if (!(xi > 0.0)) throw ConfigError(where + ".xi: must be > 0");
    if (!(omega0 > 0.0)) throw ConfigError(where + ".omega0: must be > 0");
    if (noise_std < 0.0) throw ConfigError(where + ".noise_std: must be >= 0");
    if (bias_step_std < 0.0) throw ConfigError(where + ".bias_step_std: must be >= 0");
    if (!(bias_lo <= bias_hi)) throw ConfigError(where + ".bias_bounds: lo must be <= hi");
}

WaveAxisState wave_step(const WaveAxisState& state, const WaveAxisParams& params,
                        double noise_sample, double bias_sample, double Ts) {
    WaveAxisState next;
    next.z1 = state.z1 + Ts * state.z2;
    next.z2 = state.z2 + Ts * (-params.omega0 * params.omega0 * state.z1 -
                               2.0 * params.xi * params.omega0 * state.z2 +
                               params.Kw * noise_sample);
    next.d = std::clamp(state.d + bias_sample * std::sqrt(Ts), params.bias_lo, params.bias_hi);
    return next;
}

WaveField WaveField::create(const std::array<WaveAxisParams, 3>& params, bool common_mode,
                            std::uint64_t seed) {
    WaveField f;
    f.params = params;
    f.common_mode = common_mode;
    f.rng_seed = seed;
    f.stream = GaussianStream(seed);
    for (int i = 0; i < 3; ++i)
        f.state[i].d = std::clamp(0.0, params[i].bias_lo, params[i].bias_hi);
    return f;
}

Vec6 assemble_wrench(const WaveField& field) {
    Vec6 w = Vec6::Zero();
    for (int i = 0; i < 3; ++i) w(i) = wave_output(field.state[i]);
    return w;
}

std::pair<WaveField, Vec6> field_step(WaveField field, double Ts) {
    if (field.common_mode) {
        const double g_noise = field.stream.normal();
        const double g_bias = field.stream.normal();
        for (int i = 0; i < 3; ++i) {
            field.state[i] = wave_step(field.state[i], field.params[i],
                                       field.params[i].noise_std * g_noise,
                                       field.params[i].bias_step_std * g_bias, Ts);
        }
    } else {
        for (int i = 0; i < 3; ++i) {
            const double noise = field.params[i].noise_std * field.stream.normal();
            const double bias = field.params[i].bias_step_std * field.stream.normal();
            field.state[i] = wave_step(field.state[i], field.params[i], noise, bias, Ts);
        }
    }
    Vec6 wrench = assemble_wrench(field);
    return {std::move(field), wrench};
}

}  // namespace auvpf
