#pragma once

#include <optional>
#include <span>
#include <vector>

#include "toad/trend.hpp"
#include "toad/types.hpp"

namespace toad {

/// Per-bucket dispersion summary.
struct BandStats {
    double mean = 0.0;
    double sd_local = 0.0;
    double bound = 0.0; // alpha * sd_local + (1 - alpha) * sd_global
};

/// Bands for every bucket of a plan plus the global standard deviation the
/// bounds were blended against.
struct BandSet {
    std::vector<BandStats> per_bucket;
    double sd_global = 0.0;
    double alpha_used = 0.0;
};

/// Elementwise series minus trend. Throws LengthMismatch.
std::vector<double> residuals(const TimeSeries& series, const TrendReplica& trend);

/**
 * Population statistics per bucket: mean, local SD, and the blended bound
 * alpha * sd_local + (1 - alpha) * sd_global. Zero-variance buckets yield a
 * zero local SD, not an error.
 */
BandSet band_set(std::span<const double> values, const BucketPlan& plan, double alpha);

/**
 * Flags index i in bucket b when |values[i] - mean_b| > multiplier * bound_b.
 * The comparison is strict: touching the threshold is not an outlier.
 * Returns sorted indices.
 */
std::vector<std::size_t> candidate_outliers(std::span<const double> values,
                                            const BandSet& bands, const BucketPlan& plan,
                                            double multiplier);

/**
 * Per-bucket false-alert score log10(signal_bound / residual_bound): how
 * strong the signal is relative to its residual errors. A bucket whose
 * residual bound is below sd_epsilon scores the largest representable value
 * (its candidates are always filtered), unless the signal bound is equally
 * degenerate, in which case the score is 0.
 */
std::vector<double> fas_values(const BandSet& signal_bands, const BandSet& residual_bands,
                               const DetectorConfig& config);

/// Keeps candidate i (in bucket b) iff fas[b] <= threshold.
std::vector<std::size_t> apply_fas_filter(std::span<const std::size_t> candidates,
                                          const BucketPlan& plan, std::span<const double> fas,
                                          double threshold);

/// Everything one detection run produced.
struct AnomalyReport {
    std::vector<std::size_t> candidates; // flagged before the FAS filter
    std::vector<std::size_t> anomalies;  // survived the FAS filter
    std::vector<double> fas_per_bucket;
    BandSet residual_bands;
    BandSet signal_bands;
    std::optional<std::size_t> period_used;
    BucketPlan plan_used;
};

/**
 * Full pipeline with the period supplied by the caller (streaming hands in
 * its cached value here). Periodicity detection is skipped.
 */
AnomalyReport detect_with_period(const TimeSeries& series, const DetectorConfig& config,
                                 bool optimized, std::optional<std::size_t> period);

/**
 * Whole-series batch detection: periodicity detection, bucket planning,
 * trend replica, residual and signal bands, outlier candidates, FAS filter.
 * Requires at least 3 samples.
 */
AnomalyReport detect_offline(const TimeSeries& series, const DetectorConfig& config = {},
                             bool optimized = false);

} // namespace toad
