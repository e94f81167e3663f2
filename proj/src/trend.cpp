#include "toad/trend.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace toad {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) {
    return (a + b - 1) / b;
}

PolynomialFit fit_index_range(const std::vector<double>& values, std::size_t start,
                              std::size_t end, std::size_t degree) {
    std::vector<double> xs(end - start);
    for (std::size_t i = start; i < end; ++i) xs[i - start] = static_cast<double>(i);
    return fit_polynomial(xs, std::span<const double>(values).subspan(start, end - start), degree);
}

} // namespace

std::size_t BucketPlan::bucket_of(std::size_t i) const {
    auto it = std::upper_bound(buckets.begin(), buckets.end(), i,
                               [](std::size_t v, const Bucket& b) { return v < b.end; });
    if (it == buckets.end())
        throw std::out_of_range("index " + std::to_string(i) + " outside bucket plan");
    return static_cast<std::size_t>(it - buckets.begin());
}

std::size_t degree_for_window(std::size_t window_size, const DetectorConfig& config) {
    if (window_size < 2)
        throw std::invalid_argument("window size must be at least 2");
    return std::min(config.max_degree, std::max<std::size_t>(1, ceil_div(window_size, config.degree_step)));
}

BucketPlan plan_buckets(std::size_t series_length, std::optional<std::size_t> period,
                        bool optimized, const DetectorConfig& config) {
    config.validate();
    if (series_length < 3)
        throw SeriesTooShort("cannot plan buckets for fewer than 3 points");
    if (period && (*period < 2 || *period >= series_length))
        throw std::invalid_argument("period must lie in [2, series_length)");

    std::size_t w;
    std::size_t degree;
    if (period) {
        w = *period;
        degree = degree_for_window(w, config);
    } else if (optimized) {
        const double raw = static_cast<double>(series_length) * config.optimized_window_fraction;
        w = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
        degree = std::min(config.optimized_degree, w - 1);
    } else {
        w = config.aperiodic_window;
        degree = 1;
    }

    BucketPlan plan;
    plan.series_length = series_length;
    plan.window_size = w;

    const std::size_t full = series_length / w;
    if (full == 0) {
        // Series shorter than one window: a single bucket, degree shrunk so
        // the fit stays overdetermined.
        const std::size_t d = std::max<std::size_t>(1, std::min(degree, series_length - 2));
        plan.buckets.push_back(Bucket{0, series_length, d});
        return plan;
    }

    for (std::size_t i = 0; i < full; ++i)
        plan.buckets.push_back(Bucket{i * w, (i + 1) * w, degree});

    const std::size_t rem = series_length - full * w;
    if (rem > 0) {
        const std::size_t min_standalone = std::max(degree + 2, ceil_div(w, 2));
        if (rem < min_standalone) {
            Bucket& last = plan.buckets.back();
            last.end = series_length;
            if (period) last.degree = degree_for_window(last.size(), config);
        } else {
            const std::size_t d = period ? degree_for_window(rem, config) : degree;
            plan.buckets.push_back(Bucket{full * w, series_length, d});
        }
    }
    return plan;
}

double PolynomialFit::operator()(double x) const {
    const double u = (x - center) / half_width;
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * u + *it;
    return acc;
}

PolynomialFit fit_polynomial(std::span<const double> xs, std::span<const double> ys,
                             std::size_t degree) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_polynomial: xs and ys lengths differ");
    if (xs.size() < degree + 1)
        throw std::invalid_argument("fit_polynomial: need at least degree + 1 points");

    const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    const double center = 0.5 * (*mn + *mx);
    double half_width = 0.5 * (*mx - *mn);
    if (!(half_width > 0.0)) half_width = 1.0;

    // Degenerate bucket: identical values fit as that constant, exactly.
    if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys[0]; }))
        return PolynomialFit{{ys[0]}, center, half_width};

    const auto m = static_cast<Eigen::Index>(xs.size());
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) rhs(i) = ys[static_cast<std::size_t>(i)];

    for (std::size_t d = degree;; --d) {
        Eigen::MatrixXd design(m, static_cast<Eigen::Index>(d + 1));
        for (Eigen::Index i = 0; i < m; ++i) {
            const double u = (xs[static_cast<std::size_t>(i)] - center) / half_width;
            design(i, 0) = 1.0;
            for (std::size_t j = 1; j <= d; ++j)
                design(i, static_cast<Eigen::Index>(j)) = design(i, static_cast<Eigen::Index>(j - 1)) * u;
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
        if (qr.rank() == static_cast<Eigen::Index>(d + 1)) {
            Eigen::VectorXd coeffs = qr.solve(rhs);
            if (coeffs.allFinite()) {
                return PolynomialFit{
                    std::vector<double>(coeffs.data(), coeffs.data() + coeffs.size()), center,
                    half_width};
            }
        }
        if (d == 0)
            throw RankDeficient("polynomial fit failed down to degree 0");
    }
}

TrendReplica build_trend(const TimeSeries& series, const BucketPlan& plan,
                         const DetectorConfig& config) {
    const std::size_t n = series.size();
    if (plan.series_length != n)
        throw LengthMismatch("bucket plan does not tile the series");
    if (plan.buckets.empty() || plan.buckets.front().start != 0 || plan.buckets.back().end != n)
        throw std::invalid_argument("bucket plan is not a tiling of [0, n)");
    (void)config;

    TrendReplica trend;
    trend.values.resize(n);
    for (const Bucket& b : plan.buckets) {
        const PolynomialFit fit = fit_index_range(series.values, b.start, b.end, b.degree);
        for (std::size_t i = b.start; i < b.end; ++i)
            trend.values[i] = fit(static_cast<double>(i));
    }

    // Smooth each interior window break. The smoothing regression spans one
    // window centered on the break; its output is faded into the trailing
    // side only, so the bucket before the break keeps its clean local fit and
    // an abrupt level change concentrates in the residuals right at the break
    // instead of leaking across it.
    const std::size_t w = plan.window_size;
    const auto blend_span = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(w) / 4.0)));
    for (std::size_t i = 0; i + 1 < plan.buckets.size(); ++i) {
        const std::size_t brk = plan.buckets[i + 1].start;
        std::size_t lo = brk > w / 2 ? brk - w / 2 : 0;
        std::size_t hi = std::min(n, lo + w);
        lo = hi > w ? std::max(lo, hi - w) : 0;
        if (hi - lo < 2) continue;

        const std::size_t deg = std::min(plan.buckets[i].degree, hi - lo - 1);
        const PolynomialFit fit = fit_index_range(series.values, lo, hi, deg);
        for (std::size_t d = 0; d < blend_span && brk + d < n; ++d) {
            const double weight = 1.0 - static_cast<double>(d) / static_cast<double>(blend_span);
            const std::size_t j = brk + d;
            // Incremental form: identical fits leave the value bit-exact.
            trend.values[j] += weight * (fit(static_cast<double>(j)) - trend.values[j]);
        }
    }
    return trend;
}

} // namespace toad
