#include "toad/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toad {

double GaussianSampler::uniform() {
    // 53 mantissa bits of the engine output, mapped to (0, 1]. Fully
    // determined by the mt19937_64 specification.
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianSampler::next(double mean, double sd) {
    if (has_spare_) {
        has_spare_ = false;
        return mean + sd * spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return mean + sd * radius * std::cos(angle);
}

LabeledSeries gen_hetero_sine(std::size_t n, std::size_t period, double base_amplitude,
                              double amplitude_growth, double noise_sd, std::uint64_t seed) {
    if (period == 0 || n < 2 * period)
        throw std::invalid_argument("gen_hetero_sine requires n >= 2 * period");
    if (noise_sd < 0.0)
        throw std::invalid_argument("noise_sd must be nonnegative");

    GaussianSampler noise(seed);
    LabeledSeries out;
    out.series.values.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double amplitude = base_amplitude + amplitude_growth * static_cast<double>(t);
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) /
                             static_cast<double>(period);
        out.series.values[t] = amplitude * std::sin(phase) + noise.next(0.0, noise_sd);
    }
    return out;
}

LabeledSeries gen_breakout(std::size_t n, std::size_t break_index, double level_shift,
                           double noise_sd, std::uint64_t seed) {
    if (break_index == 0 || break_index >= n)
        throw std::invalid_argument("gen_breakout requires 0 < break_index < n");
    if (noise_sd < 0.0)
        throw std::invalid_argument("noise_sd must be nonnegative");

    GaussianSampler noise(seed);
    LabeledSeries out;
    out.series.values.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        out.series.values[t] =
            noise.next(0.0, noise_sd) + (t >= break_index ? level_shift : 0.0);
    }
    out.truth.push_back(break_index);
    return out;
}

} // namespace toad
