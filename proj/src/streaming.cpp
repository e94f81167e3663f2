#include "toad/streaming.hpp"

#include <algorithm>
#include <cmath>

namespace toad {

bool should_run(const StreamState& state, double sample, const DetectorConfig& config) {
    if (!state.last_signal_band) return true;
    const SignalBand& band = *state.last_signal_band;
    return std::abs(sample - band.mean) > config.bound_multiplier * band.bound;
}

StreamDetector::StreamDetector(DetectorConfig config, bool optimize,
                               std::optional<std::size_t> fixed_period)
    : config_(config), optimize_(optimize), fixed_period_(fixed_period) {
    config_.validate();
}

StreamDecision StreamDetector::push(double sample) {
    if (!std::isfinite(sample)) throw NonFiniteSample(state_.samples_seen);

    const bool triggered = !optimize_ || should_run(state_, sample, config_);
    state_.buffer.push_back(sample);
    ++state_.samples_seen;
    const std::size_t index = state_.buffer.size() - 1;

    if (state_.buffer.size() < config_.min_detect_length || !triggered)
        return StreamDecision{StreamAction::Skipped, false, index};

    const TimeSeries view{state_.buffer, 0};
    std::optional<std::size_t> period;
    if (fixed_period_) {
        period = fixed_period_;
    } else {
        const auto detected = detect_periodicity(view, config_);
        state_.period_cache = update_period_cache(state_.period_cache, detected);
        period = state_.period_cache.confirmed_period;
    }
    if (period && *period >= view.size()) period.reset();

    AnomalyReport report = detect_with_period(view, config_, /*optimized=*/true, period);

    const BandStats& last = report.signal_bands.per_bucket.back();
    state_.last_signal_band = SignalBand{last.mean, last.bound};
    ++state_.runs_executed;

    const bool newest_flagged =
        std::binary_search(report.anomalies.begin(), report.anomalies.end(), index);
    state_.last_report = std::move(report);
    return StreamDecision{StreamAction::Ran, newest_flagged, index};
}

ReplayResult replay(const TimeSeries& series, const DetectorConfig& config, bool optimize) {
    StreamDetector detector(config, optimize);
    ReplayResult result;
    result.decisions.reserve(series.size());

    for (double sample : series.values) {
        const auto band_before = detector.state().last_signal_band;
        const StreamDecision decision = detector.push(sample);
        if (decision.action == StreamAction::Skipped && band_before &&
            std::abs(sample - band_before->mean) > config.bound_multiplier * band_before->bound) {
            ++result.bound_violating_skips;
        }
        result.decisions.push_back(decision);
    }
    result.runs_executed = detector.state().runs_executed;
    result.final_state = detector.state();
    return result;
}

} // namespace toad
