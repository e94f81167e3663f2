#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "toad/types.hpp"

namespace toad {

/// A series together with its ground-truth anomaly indices.
struct LabeledSeries {
    TimeSeries series;
    std::vector<std::size_t> truth; // sorted ascending
};

/**
 * Deterministic, platform-independent gaussian source: mt19937_64 driving a
 * Box-Muller transform. std::normal_distribution is implementation-defined,
 * which would make fixtures differ across standard libraries.
 */
class GaussianSampler {
  public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double next(double mean = 0.0, double sd = 1.0);

  private:
    double uniform(); // in (0, 1]

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/**
 * Sine wave with linearly growing amplitude plus gaussian noise:
 * (base_amplitude + amplitude_growth * t) * sin(2*pi*t / period) + noise.
 * Contains no anomaly, so truth is empty. Requires n >= 2 * period.
 */
LabeledSeries gen_hetero_sine(std::size_t n, std::size_t period, double base_amplitude = 1.0,
                              double amplitude_growth = 0.01, double noise_sd = 0.05,
                              std::uint64_t seed = 0);

/**
 * Gaussian noise with a persistent level shift from break_index onward.
 * Truth is {break_index}. Requires 0 < break_index < n. The default shift is
 * large relative to the noise so the breakout is unambiguous.
 */
LabeledSeries gen_breakout(std::size_t n, std::size_t break_index, double level_shift = 4.0,
                           double noise_sd = 0.05, std::uint64_t seed = 0);

} // namespace toad
