#pragma once

#include <optional>
#include <span>
#include <vector>

#include "toad/types.hpp"

namespace toad {

/// One contiguous window [start, end) with its own polynomial degree.
/// Invariant: end - start >= degree + 1, so the fit is never underdetermined.
struct Bucket {
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t degree = 1;

    std::size_t size() const noexcept { return end - start; }
};

/// Buckets tiling [0, series_length) exactly: consecutive, no gaps, no overlap.
struct BucketPlan {
    std::vector<Bucket> buckets;
    std::size_t series_length = 0;
    std::size_t window_size = 0; // base window the plan was built from

    /// Index of the bucket containing series index i.
    std::size_t bucket_of(std::size_t i) const;
};

/// Degree rule: one polynomial order per degree_step points, at least linear,
/// capped at max_degree to keep the fit well conditioned.
std::size_t degree_for_window(std::size_t window_size, const DetectorConfig& config);

/**
 * Builds the bucket layout for a series of the given length.
 *
 * Window size is the period when one is known; otherwise aperiodic_window
 * (with a linear model), or in optimized mode a window spanning roughly
 * optimized_window_fraction of the series (with optimized_degree). A final
 * remainder shorter than max(degree + 2, ceil(w / 2)) merges into the
 * previous bucket; in periodic mode merged and standalone remainder buckets
 * get their degree recomputed from their actual size.
 *
 * Throws SeriesTooShort for fewer than 3 points.
 */
BucketPlan plan_buckets(std::size_t series_length, std::optional<std::size_t> period,
                        bool optimized, const DetectorConfig& config);

/**
 * Least-squares polynomial in an abscissa basis rescaled to [-1, 1]. The
 * rescaling keeps high-degree Vandermonde systems solvable on raw indices.
 */
struct PolynomialFit {
    std::vector<double> coefficients; // in the rescaled basis, constant first
    double center = 0.0;
    double half_width = 1.0;

    double operator()(double x) const;
};

/**
 * Fits a polynomial of the requested degree by least squares. On a rank
 * deficient design matrix the degree is lowered one step at a time; if even
 * the constant fit fails, RankDeficient is thrown.
 *
 * xs and ys must have equal length >= degree + 1.
 */
PolynomialFit fit_polynomial(std::span<const double> xs, std::span<const double> ys,
                             std::size_t degree);

/// Stacked, break-smoothed concatenation of all local fits. Same length as
/// the source series.
struct TrendReplica {
    std::vector<double> values;
};

/**
 * Fits every bucket, stacks the local models, then smooths each interior
 * window break with a polynomial regression of the plan's window size
 * centered on the break. The smoothing fit is blended into the trailing side
 * of the break: full weight at the break index, fading linearly to zero over
 * about a quarter window. Values outside those spans are left untouched.
 */
TrendReplica build_trend(const TimeSeries& series, const BucketPlan& plan,
                         const DetectorConfig& config);

} // namespace toad
