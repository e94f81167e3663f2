#include "toad/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "toad/periodicity.hpp"

namespace toad {

namespace {

struct MeanSd {
    double mean;
    double sd;
};

MeanSd population_stats(std::span<const double> v) {
    const double mean =
        std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) {
        const double d = x - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / static_cast<double>(v.size()))};
}

} // namespace

std::vector<double> residuals(const TimeSeries& series, const TrendReplica& trend) {
    if (series.size() != trend.values.size())
        throw LengthMismatch("series and trend lengths differ");
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = series.values[i] - trend.values[i];
    return out;
}

BandSet band_set(std::span<const double> values, const BucketPlan& plan, double alpha) {
    if (values.size() != plan.series_length)
        throw LengthMismatch("values do not match the bucket plan length");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in [0,1]");

    BandSet bands;
    bands.alpha_used = alpha;
    bands.sd_global = values.empty() ? 0.0 : population_stats(values).sd;
    bands.per_bucket.reserve(plan.buckets.size());
    for (const Bucket& b : plan.buckets) {
        const auto stats = population_stats(values.subspan(b.start, b.size()));
        const double bound = alpha * stats.sd + (1.0 - alpha) * bands.sd_global;
        bands.per_bucket.push_back(BandStats{stats.mean, stats.sd, bound});
    }
    return bands;
}

std::vector<std::size_t> candidate_outliers(std::span<const double> values,
                                            const BandSet& bands, const BucketPlan& plan,
                                            double multiplier) {
    if (values.size() != plan.series_length)
        throw LengthMismatch("values do not match the bucket plan length");
    if (bands.per_bucket.size() != plan.buckets.size())
        throw LengthMismatch("band set does not match the bucket plan");
    if (!(multiplier > 0.0))
        throw std::invalid_argument("multiplier must be positive");

    std::vector<std::size_t> flagged;
    for (std::size_t b = 0; b < plan.buckets.size(); ++b) {
        const Bucket& bucket = plan.buckets[b];
        const BandStats& band = bands.per_bucket[b];
        const double threshold = multiplier * band.bound;
        for (std::size_t i = bucket.start; i < bucket.end; ++i) {
            if (std::abs(values[i] - band.mean) > threshold) flagged.push_back(i);
        }
    }
    return flagged;
}

std::vector<double> fas_values(const BandSet& signal_bands, const BandSet& residual_bands,
                               const DetectorConfig& config) {
    if (signal_bands.per_bucket.size() != residual_bands.per_bucket.size())
        throw LengthMismatch("signal and residual band sets cover different plans");

    std::vector<double> fas(signal_bands.per_bucket.size());
    for (std::size_t b = 0; b < fas.size(); ++b) {
        const double sig = signal_bands.per_bucket[b].bound;
        const double res = residual_bands.per_bucket[b].bound;
        if (res < config.sd_epsilon) {
            fas[b] = sig < config.sd_epsilon ? 0.0 : std::numeric_limits<double>::max();
        } else if (sig < config.sd_epsilon) {
            fas[b] = -std::numeric_limits<double>::max();
        } else {
            fas[b] = std::log10(sig / res);
        }
    }
    return fas;
}

std::vector<std::size_t> apply_fas_filter(std::span<const std::size_t> candidates,
                                          const BucketPlan& plan, std::span<const double> fas,
                                          double threshold) {
    if (fas.size() != plan.buckets.size())
        throw LengthMismatch("FAS values do not match the bucket plan");

    std::vector<std::size_t> kept;
    for (std::size_t idx : candidates) {
        if (fas[plan.bucket_of(idx)] <= threshold) kept.push_back(idx);
    }
    return kept;
}

AnomalyReport detect_with_period(const TimeSeries& series, const DetectorConfig& config,
                                 bool optimized, std::optional<std::size_t> period) {
    config.validate();
    if (series.size() < 3)
        throw SeriesTooShort("detection needs at least 3 samples");

    AnomalyReport report;
    report.period_used = period;
    report.plan_used = plan_buckets(series.size(), period, optimized, config);

    const TrendReplica trend = build_trend(series, report.plan_used, config);
    const std::vector<double> res = residuals(series, trend);

    report.residual_bands = band_set(res, report.plan_used, config.alpha);
    report.candidates =
        candidate_outliers(res, report.residual_bands, report.plan_used, config.bound_multiplier);
    report.signal_bands = band_set(series.values, report.plan_used, config.alpha);
    report.fas_per_bucket = fas_values(report.signal_bands, report.residual_bands, config);
    report.anomalies =
        apply_fas_filter(report.candidates, report.plan_used, report.fas_per_bucket,
                         config.fas_threshold);
    return report;
}

AnomalyReport detect_offline(const TimeSeries& series, const DetectorConfig& config,
                             bool optimized) {
    config.validate();
    if (series.size() < 3)
        throw SeriesTooShort("detection needs at least 3 samples");
    return detect_with_period(series, config, optimized, detect_periodicity(series, config));
}

} // namespace toad
