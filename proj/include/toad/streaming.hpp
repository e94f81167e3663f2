#pragma once

#include <optional>
#include <vector>

#include "toad/detection.hpp"
#include "toad/periodicity.hpp"
#include "toad/types.hpp"

namespace toad {

/// Signal band of the final bucket of the most recent run; the trigger for
/// the next run occasion.
struct SignalBand {
    double mean = 0.0;
    double bound = 0.0;
};

enum class StreamAction { Skipped, Ran };

struct StreamDecision {
    StreamAction action = StreamAction::Skipped;
    bool newest_is_anomaly = false;
    std::size_t sample_index = 0;
};

/// Per-series online state. Single writer: pushes on one state must be
/// externally serialized; distinct states are fully independent.
struct StreamState {
    std::vector<double> buffer;
    PeriodCache period_cache;
    std::optional<SignalBand> last_signal_band;
    std::size_t runs_executed = 0;
    std::size_t samples_seen = 0;
    std::optional<AnomalyReport> last_report;
};

/**
 * Run-occasion trigger: true when no run has executed yet (no bounds exist),
 * or when the incoming sample violates the last run's final signal band in
 * either direction, |sample - mean| > bound_multiplier * bound. The
 * min_detect_length gate is applied by push(), not here.
 */
bool should_run(const StreamState& state, double sample, const DetectorConfig& config);

/**
 * Online detector. Each push appends the sample and either re-runs full
 * detection on the buffer (optimized bucket plan, periodicity fed through
 * the cache) or skips, when run skipping is enabled and the sample sits
 * within the last signal bounds. Skipped samples are non-anomalous by
 * construction. No run ever happens before the buffer reaches
 * min_detect_length.
 */
class StreamDetector {
  public:
    explicit StreamDetector(DetectorConfig config = {}, bool optimize = true,
                            std::optional<std::size_t> fixed_period = std::nullopt);

    /// Throws NonFiniteSample on NaN/infinite input.
    StreamDecision push(double sample);

    const StreamState& state() const noexcept { return state_; }
    const DetectorConfig& config() const noexcept { return config_; }
    bool optimize() const noexcept { return optimize_; }

  private:
    DetectorConfig config_;
    bool optimize_;
    std::optional<std::size_t> fixed_period_;
    StreamState state_;
};

/// Outcome of replaying a whole series through a StreamDetector.
struct ReplayResult {
    std::vector<StreamDecision> decisions; // chronological, one per sample
    StreamState final_state;
    std::size_t runs_executed = 0;
    // Skipped samples that violated the trigger bounds they were checked
    // against. Always 0: a violating sample forces a run.
    std::size_t bound_violating_skips = 0;
};

ReplayResult replay(const TimeSeries& series, const DetectorConfig& config, bool optimize);

} // namespace toad
