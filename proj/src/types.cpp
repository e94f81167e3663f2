#include "toad/types.hpp"

#include <cmath>

namespace toad {

void DetectorConfig::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in [0,1]");
    if (!std::isfinite(fas_threshold))
        throw std::invalid_argument("fas_threshold must be finite");
    if (!(bound_multiplier > 0.0))
        throw std::invalid_argument("bound_multiplier must be positive");
    if (aperiodic_window < 2)
        throw std::invalid_argument("aperiodic_window must be at least 2");
    if (!(optimized_window_fraction > 0.0 && optimized_window_fraction <= 1.0))
        throw std::invalid_argument("optimized_window_fraction must lie in (0,1]");
    if (optimized_degree == 0)
        throw std::invalid_argument("optimized_degree must be positive");
    if (degree_step == 0)
        throw std::invalid_argument("degree_step must be positive");
    if (max_degree == 0)
        throw std::invalid_argument("max_degree must be positive");
    if (min_detect_length == 0)
        throw std::invalid_argument("min_detect_length must be positive");
    if (!(sd_epsilon > 0.0))
        throw std::invalid_argument("sd_epsilon must be positive");
    if (psd_peak_count == 0)
        throw std::invalid_argument("psd_peak_count must be positive");
    if (!(acf_confidence_fraction > 0.0 && acf_confidence_fraction < 1.0))
        throw std::invalid_argument("acf_confidence_fraction must lie in (0,1)");
    if (!(acf_significance >= 0.0))
        throw std::invalid_argument("acf_significance must be nonnegative");
}

TimeSeries validate_series(std::span<const double> raw) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i]))
            throw NonFiniteSample(i);
    }
    return TimeSeries{std::vector<double>(raw.begin(), raw.end()), 0};
}

} // namespace toad
