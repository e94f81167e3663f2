#pragma once

#include <optional>
#include <span>
#include <vector>

#include "toad/types.hpp"

namespace toad {

/// Power at one periodogram frequency bin (1-based, DC excluded).
struct SpectrumBin {
    std::size_t bin = 0;
    double power = 0.0;
};

/// A spectral peak translated into a lag, awaiting ACF confirmation.
struct PeriodCandidate {
    std::size_t lag = 0;
    double psd_power = 0.0;
    double acf_value = 0.0;
};

/**
 * Cached periodicity across streaming runs. A detection that disagrees with
 * the confirmed value must repeat before it replaces it; an absent detection
 * never clears the cache, which rides out short noisy stretches where the
 * series momentarily looks aperiodic.
 */
struct PeriodCache {
    std::optional<std::size_t> confirmed_period;
    std::size_t consecutive_confirmations = 0;
    std::optional<std::size_t> pending_period;
};

/**
 * Normalized sample autocorrelation r[0..max_lag], mean removed and divided
 * by the lag-0 autocovariance (biased estimator, so |r[k]| <= 1 and r[0] = 1).
 *
 * Requires series length >= 2 and max_lag < length. Throws DegenerateSeries
 * when the variance is at or below sd_epsilon^2.
 */
std::vector<double> autocorrelation(const TimeSeries& series, std::size_t max_lag,
                                    double sd_epsilon = 1e-12);

/**
 * Squared DFT magnitudes of the mean-removed series for bins 1..floor(n/2).
 * Throws SeriesTooShort for fewer than 4 samples.
 */
std::vector<SpectrumBin> power_spectral_density(const TimeSeries& series);

/**
 * Translates the strongest strict local maxima of the spectrum into lags
 * (lag = round(n / bin)). Lags below 2 or beyond the confidence window
 * floor(n * acf_confidence_fraction) are discarded; the confidence window
 * suppresses the spurious hills that build up towards the end of the ACF on
 * short series. Result is sorted ascending by lag and deduplicated.
 */
std::vector<PeriodCandidate> candidate_periods(std::span<const SpectrumBin> psd, std::size_t n,
                                               const DetectorConfig& config);

/**
 * True iff the ACF has a strict-left / weak-right local maximum with positive
 * value at `lag`: acf[lag] > acf[lag-1], acf[lag] >= acf[lag+1], acf[lag] > 0.
 * This is a deliberately small stand-in for full hill segmentation of the
 * ACF and can be swapped out without touching callers.
 *
 * Requires 2 <= lag <= acf.size() - 2; throws LagOutOfRange otherwise.
 */
bool validate_period(std::size_t lag, std::span<const double> acf);

/**
 * Hybrid periodicity test: a lag counts as a true period only when it shows
 * up as a periodogram peak and as a local ACF maximum. Each candidate lag is
 * first refined to the nearest ACF maximum, since the periodogram quantizes
 * periods to round(n / bin). The refined ACF value must additionally clear
 * acf_significance / sqrt(n), which keeps white noise from producing
 * accidental confirmations. Of multiple validated candidates the smallest
 * lag wins.
 *
 * Returns absent (not an error) for series shorter than min_detect_length,
 * degenerate series, or when no candidate validates.
 */
std::optional<std::size_t> detect_periodicity(const TimeSeries& series,
                                              const DetectorConfig& config);

/**
 * Folds one detection outcome into the cache. Absent detections leave the
 * cache untouched; the first-ever detection confirms immediately; a changed
 * period must be seen twice in a row before it replaces the confirmed one.
 */
PeriodCache update_period_cache(PeriodCache cache, std::optional<std::size_t> detected);

} // namespace toad
