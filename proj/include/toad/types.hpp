#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toad {

/**
 * Uniformly sampled univariate series. Index order is the only time axis;
 * calendar timestamps are not modeled.
 *
 * Immutable by convention once built via validate_series(); safe to share
 * across threads.
 */
struct TimeSeries {
    std::vector<double> values;
    std::int64_t origin_index = 0;

    std::size_t size() const noexcept { return values.size(); }
    bool empty() const noexcept { return values.empty(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/**
 * All detector tunables. Defaults follow the reference parameterisation:
 * equal local/global weighting (alpha 0.5), filter threshold 1, bounds at
 * twice the blended deviation, window 10 + linear model for aperiodic data,
 * and 10%-of-length windows with quadratic models in optimized mode.
 */
struct DetectorConfig {
    double alpha = 0.5;                      // local vs global SD blend, in [0,1]
    double fas_threshold = 1.0;              // buckets scoring above lose their candidates
    double bound_multiplier = 2.0;           // outlier threshold = multiplier * bound
    std::size_t aperiodic_window = 10;       // window size when no period is known
    double optimized_window_fraction = 0.10; // optimized mode: window = fraction of length
    std::size_t optimized_degree = 2;        // optimized mode: fixed polynomial degree
    std::size_t degree_step = 5;             // one polynomial degree per this many points
    std::size_t max_degree = 8;              // conditioning cap on any fitted degree
    std::size_t min_detect_length = 20;      // shorter series: no periodicity, no stream runs
    double sd_epsilon = 1e-12;               // below this a deviation counts as zero
    std::size_t psd_peak_count = 5;          // spectral peaks considered as period candidates
    double acf_confidence_fraction = 1.0 / 3.0; // lags beyond n*fraction are discarded
    double acf_significance = 3.5;           // z-score an ACF value must reach to confirm

    /// Throws std::invalid_argument when any field is out of range.
    void validate() const;
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A sample was NaN or infinite. Carries the offending index.
struct NonFiniteSample : Error {
    explicit NonFiniteSample(std::size_t i)
        : Error("non-finite sample at index " + std::to_string(i)), index(i) {}
    std::size_t index;
};

/// Series variance is below sd_epsilon^2 (constant input).
struct DegenerateSeries : Error {
    using Error::Error;
};

struct SeriesTooShort : Error {
    using Error::Error;
};

struct LagOutOfRange : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

/// Least-squares design matrix was numerically singular down to degree 0.
struct RankDeficient : Error {
    using Error::Error;
};

/**
 * Checks every sample for finiteness and wraps the input. The value sequence
 * is preserved exactly; empty input yields an empty series.
 */
TimeSeries validate_series(std::span<const double> raw);

inline TimeSeries validate_series(const std::vector<double>& raw) {
    return validate_series(std::span<const double>(raw));
}

} // namespace toad
