#include "toad/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

#include "fft.hpp"

namespace toad {

namespace {

double series_mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

} // namespace

std::vector<double> autocorrelation(const TimeSeries& series, std::size_t max_lag,
                                    double sd_epsilon) {
    const std::size_t n = series.size();
    if (n < 2)
        throw std::invalid_argument("autocorrelation needs at least 2 samples");
    if (max_lag >= n)
        throw std::invalid_argument("max_lag must be smaller than the series length");

    const double mean = series_mean(series.values);
    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = series.values[i] - mean;

    double c0 = 0.0;
    for (double d : centered) c0 += d * d;
    c0 /= static_cast<double>(n);
    if (c0 <= sd_epsilon * sd_epsilon)
        throw DegenerateSeries("series variance is zero; autocorrelation undefined");

    std::vector<double> r(max_lag + 1);
    r[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) ck += centered[t] * centered[t + k];
        r[k] = ck / static_cast<double>(n) / c0;
    }
    return r;
}

std::vector<SpectrumBin> power_spectral_density(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 4)
        throw SeriesTooShort("power spectral density needs at least 4 samples");

    const double mean = series_mean(series.values);
    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = std::complex<double>(series.values[i] - mean, 0.0);

    const auto spectrum = detail::dft(buf);
    std::vector<SpectrumBin> out;
    out.reserve(n / 2);
    for (std::size_t b = 1; b <= n / 2; ++b)
        out.push_back(SpectrumBin{b, std::norm(spectrum[b])});
    return out;
}

std::vector<PeriodCandidate> candidate_periods(std::span<const SpectrumBin> psd, std::size_t n,
                                               const DetectorConfig& config) {
    if (psd.empty()) return {};

    // Strict local maxima of the power sequence; endpoints compare one-sided.
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < psd.size(); ++i) {
        const bool left_ok = (i == 0) || psd[i].power > psd[i - 1].power;
        const bool right_ok = (i + 1 == psd.size()) || psd[i].power > psd[i + 1].power;
        if (left_ok && right_ok) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
        return psd[a].power > psd[b].power;
    });
    if (peaks.size() > config.psd_peak_count) peaks.resize(config.psd_peak_count);

    const auto max_lag =
        static_cast<std::size_t>(std::floor(static_cast<double>(n) * config.acf_confidence_fraction));

    std::vector<PeriodCandidate> candidates;
    for (std::size_t idx : peaks) {
        const auto lag = static_cast<std::size_t>(
            std::llround(static_cast<double>(n) / static_cast<double>(psd[idx].bin)));
        if (lag < 2 || lag > max_lag) continue;
        candidates.push_back(PeriodCandidate{lag, psd[idx].power, 0.0});
    }
    std::sort(candidates.begin(), candidates.end(), [](const PeriodCandidate& a, const PeriodCandidate& b) {
        if (a.lag != b.lag) return a.lag < b.lag;
        return a.psd_power > b.psd_power;
    });
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const PeriodCandidate& a, const PeriodCandidate& b) {
                                     return a.lag == b.lag;
                                 }),
                     candidates.end());
    return candidates;
}

bool validate_period(std::size_t lag, std::span<const double> acf) {
    if (lag < 2 || lag + 1 >= acf.size())
        throw LagOutOfRange("lag " + std::to_string(lag) + " outside validated ACF range");
    return acf[lag] > acf[lag - 1] && acf[lag] >= acf[lag + 1] && acf[lag] > 0.0;
}

namespace {

// The periodogram quantizes a period to round(n / bin), which can sit a lag
// or two off the true one whenever n is not a multiple of the period. Climb
// to the nearest strict ACF maximum before validating.
std::size_t refine_lag(std::size_t lag, const std::vector<double>& acf, std::size_t max_lag) {
    while (true) {
        const double here = acf[lag];
        const double left = lag > 2 ? acf[lag - 1] : -std::numeric_limits<double>::infinity();
        const double right =
            lag < max_lag ? acf[lag + 1] : -std::numeric_limits<double>::infinity();
        if (left <= here && right <= here) return lag;
        lag = right > left ? lag + 1 : lag - 1;
    }
}

} // namespace

std::optional<std::size_t> detect_periodicity(const TimeSeries& series,
                                              const DetectorConfig& config) {
    config.validate();
    const std::size_t n = series.size();
    if (n < config.min_detect_length) return std::nullopt;

    const auto window =
        static_cast<std::size_t>(std::floor(static_cast<double>(n) * config.acf_confidence_fraction));
    if (window < 2) return std::nullopt;

    std::vector<double> acf;
    try {
        acf = autocorrelation(series, std::min(n - 1, window + 1), config.sd_epsilon);
    } catch (const DegenerateSeries&) {
        return std::nullopt;
    }

    const auto psd = power_spectral_density(series);
    const auto candidates = candidate_periods(psd, n, config);

    const std::size_t max_lag = std::min(window, acf.size() - 2);
    std::vector<std::size_t> refined;
    for (const auto& cand : candidates) {
        if (cand.lag > max_lag) continue;
        refined.push_back(refine_lag(cand.lag, acf, max_lag));
    }
    std::sort(refined.begin(), refined.end());
    refined.erase(std::unique(refined.begin(), refined.end()), refined.end());

    const double significance = config.acf_significance / std::sqrt(static_cast<double>(n));
    for (std::size_t lag : refined) {
        if (validate_period(lag, acf) && acf[lag] >= significance) return lag;
    }
    return std::nullopt;
}

PeriodCache update_period_cache(PeriodCache cache, std::optional<std::size_t> detected) {
    if (!detected) return cache;

    if (!cache.confirmed_period) {
        cache.confirmed_period = detected;
        cache.pending_period.reset();
        cache.consecutive_confirmations = 0;
        return cache;
    }
    if (detected == cache.confirmed_period) {
        cache.pending_period.reset();
        cache.consecutive_confirmations = 0;
        return cache;
    }
    if (cache.pending_period == detected) {
        if (++cache.consecutive_confirmations >= 2) {
            cache.confirmed_period = detected;
            cache.pending_period.reset();
            cache.consecutive_confirmations = 0;
        }
    } else {
        cache.pending_period = detected;
        cache.consecutive_confirmations = 1;
    }
    return cache;
}

} // namespace toad
