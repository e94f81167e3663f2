#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "toad/periodicity.hpp"

using namespace toad;

namespace {

std::vector<double> make_sine(std::size_t n, double period, double amplitude = 1.0,
                              double offset = 0.0) {
    std::vector<double> v(n);
    for (std::size_t t = 0; t < n; ++t)
        v[t] = amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period) +
               offset;
    return v;
}

// Brute-force biased ACF, straight from the definition.
std::vector<double> acf_oracle(const std::vector<double>& x, std::size_t max_lag) {
    const auto n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    for (double v : x) c0 += (v - mean) * (v - mean);
    c0 /= static_cast<double>(n);
    std::vector<double> r(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) ck += (x[t] - mean) * (x[t + k] - mean);
        r[k] = ck / static_cast<double>(n) / c0;
    }
    return r;
}

// O(n^2) textbook DFT power spectrum of the mean-removed series.
std::vector<double> psd_oracle(const std::vector<double>& x) {
    const auto n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> powers(n / 2 + 1, 0.0);
    for (std::size_t b = 1; b <= n / 2; ++b) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(b) *
                                 static_cast<double>(t) / static_cast<double>(n);
            acc += (x[t] - mean) * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        powers[b] = std::norm(acc);
    }
    return powers;
}

} // namespace

TEST_CASE("autocorrelation of the alternating series matches the hand-computed values") {
    const TimeSeries series{{1, -1, 1, -1, 1, -1, 1, -1}, 0};
    const auto r = autocorrelation(series, 2);
    // Mean is 0; biased estimator gives sum(x_t x_{t+k}) / 8.
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(-0.875));
    CHECK(r[2] == doctest::Approx(0.75));
}

TEST_CASE("autocorrelation normalizes lag 0 to one") {
    const TimeSeries series{{3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0}, 0};
    const auto r = autocorrelation(series, 4);
    CHECK(r[0] == doctest::Approx(1.0));
}

TEST_CASE("autocorrelation of a period-28 sine peaks at lag 28") {
    const TimeSeries series{make_sine(280, 28.0), 0};
    const auto r = autocorrelation(series, 56);
    const auto oracle = acf_oracle(series.values, 56);
    for (std::size_t k = 0; k <= 56; ++k) CHECK(r[k] == doctest::Approx(oracle[k]).epsilon(1e-12));
    CHECK(r[28] > r[27]);
    CHECK(r[28] >= r[29]);
    CHECK(r[28] == doctest::Approx(0.9)); // nine of ten full cycles overlap at lag 28
}

TEST_CASE("autocorrelation values stay within [-1, 1] and start at 1") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> x(50 + static_cast<std::size_t>(rng() % 200));
        for (auto& v : x) v = dist(rng);
        const auto r = autocorrelation(TimeSeries{x, 0}, x.size() / 2);
        CHECK(r[0] == doctest::Approx(1.0));
        for (double v : r) CHECK(std::abs(v) <= 1.0 + 1e-9);
    }
}

TEST_CASE("autocorrelation rejects constant series and bad lags") {
    CHECK_THROWS_AS(autocorrelation(TimeSeries{{2.0, 2.0, 2.0, 2.0}, 0}, 2), DegenerateSeries);
    CHECK_THROWS_AS(autocorrelation(TimeSeries{{1.0, 2.0}, 0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(autocorrelation(TimeSeries{{1.0}, 0}, 0), std::invalid_argument);
}

TEST_CASE("power_spectral_density matches the brute-force DFT") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t n : {16u, 101u, 280u}) {
        std::vector<double> x(n);
        for (auto& v : x) v = dist(rng);
        const auto psd = power_spectral_density(TimeSeries{x, 0});
        const auto oracle = psd_oracle(x);
        REQUIRE(psd.size() == n / 2);
        double scale = 0.0;
        for (double p : oracle) scale = std::max(scale, p);
        for (const auto& bin : psd) {
            CHECK(bin.power >= 0.0);
            CHECK(bin.power == doctest::Approx(oracle[bin.bin]).epsilon(1e-9).scale(scale));
        }
    }
}

TEST_CASE("power_spectral_density of a period-28 sine peaks at bin 10") {
    const auto psd = power_spectral_density(TimeSeries{make_sine(280, 28.0), 0});
    std::size_t best = 0;
    for (std::size_t i = 1; i < psd.size(); ++i)
        if (psd[i].power > psd[best].power) best = i;
    CHECK(psd[best].bin == 10); // 280 / 28
}

TEST_CASE("power_spectral_density of a constant series is identically zero") {
    const auto psd = power_spectral_density(TimeSeries{{4.0, 4.0, 4.0, 4.0, 4.0, 4.0}, 0});
    for (const auto& bin : psd) CHECK(bin.power == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("power_spectral_density of a two-tone series peaks at bins 10 and 40") {
    std::vector<double> x(280);
    for (std::size_t t = 0; t < 280; ++t) {
        const double arg = 2.0 * std::numbers::pi * static_cast<double>(t);
        x[t] = std::sin(arg / 7.0) + std::sin(arg / 28.0);
    }
    const auto psd = power_spectral_density(TimeSeries{x, 0});
    // Everything except the two generating bins should be tiny.
    double background = 0.0;
    for (const auto& bin : psd)
        if (bin.bin != 10 && bin.bin != 40) background = std::max(background, bin.power);
    CHECK(psd[9].bin == 10);
    CHECK(psd[39].bin == 40);
    CHECK(psd[9].power > 1e6 * background);
    CHECK(psd[39].power > 1e6 * background);
}

TEST_CASE("power_spectral_density is invariant under adding a constant") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(137);
    for (auto& v : x) v = dist(rng);
    std::vector<double> shifted = x;
    for (auto& v : shifted) v += 123.5;
    const auto a = power_spectral_density(TimeSeries{x, 0});
    const auto b = power_spectral_density(TimeSeries{shifted, 0});
    double scale = 0.0;
    for (const auto& bin : a) scale = std::max(scale, bin.power);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].power == doctest::Approx(b[i].power).epsilon(1e-6).scale(scale));
}

TEST_CASE("power_spectral_density needs at least four samples") {
    CHECK_THROWS_AS(power_spectral_density(TimeSeries{{1.0, 2.0, 3.0}, 0}), SeriesTooShort);
}

TEST_CASE("candidate_periods translates a lone peak into its lag") {
    const DetectorConfig config;
    std::vector<SpectrumBin> psd;
    for (std::size_t b = 1; b <= 140; ++b)
        psd.push_back(SpectrumBin{b, b == 10 ? 100.0 : 1.0});
    const auto candidates = candidate_periods(psd, 280, config);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].lag == 28);
}

TEST_CASE("candidate_periods drops lags beyond the confidence window") {
    const DetectorConfig config;
    std::vector<SpectrumBin> psd;
    for (std::size_t b = 1; b <= 50; ++b)
        psd.push_back(SpectrumBin{b, b == 1 ? 100.0 : 1.0});
    CHECK(candidate_periods(psd, 100, config).empty()); // lag 100 > floor(100/3)
}

TEST_CASE("candidate_periods returns multiple lags sorted ascending") {
    const DetectorConfig config;
    std::vector<SpectrumBin> psd;
    for (std::size_t b = 1; b <= 140; ++b) {
        double p = 1.0;
        if (b == 10) p = 80.0;
        if (b == 40) p = 90.0;
        psd.push_back(SpectrumBin{b, p});
    }
    const auto candidates = candidate_periods(psd, 280, config);
    REQUIRE(candidates.size() == 2);
    CHECK(candidates[0].lag == 7);
    CHECK(candidates[1].lag == 28);
}

TEST_CASE("validate_period accepts the sine peak and rejects the trough") {
    const auto acf = acf_oracle(make_sine(280, 28.0), 56);
    CHECK(validate_period(28, acf));
    CHECK_FALSE(validate_period(14, acf)); // trough, negative value
}

TEST_CASE("validate_period rejects every lag of a monotone-decaying ACF") {
    std::vector<double> acf(40);
    for (std::size_t k = 0; k < acf.size(); ++k) acf[k] = std::pow(0.9, static_cast<double>(k));
    for (std::size_t lag = 2; lag + 1 < acf.size(); ++lag) CHECK_FALSE(validate_period(lag, acf));
}

TEST_CASE("validate_period checks its lag range") {
    const std::vector<double> acf{1.0, 0.5, 0.2, 0.1};
    CHECK_THROWS_AS(validate_period(1, acf), LagOutOfRange);
    CHECK_THROWS_AS(validate_period(3, acf), LagOutOfRange);
}

TEST_CASE("detect_periodicity finds pure sine periods exactly") {
    const DetectorConfig config;
    for (std::size_t p : {7u, 14u, 28u}) {
        const TimeSeries series{make_sine(10 * p, static_cast<double>(p)), 0};
        const auto detected = detect_periodicity(series, config);
        REQUIRE(detected.has_value());
        CHECK(*detected == p);
    }
}

TEST_CASE("detect_periodicity is exact for lengths that are not period multiples") {
    const DetectorConfig config;
    for (std::size_t p : {7u, 14u, 28u}) {
        for (std::size_t extra : {0u, 5u, 13u, 19u}) {
            const std::size_t n = 10 * p + extra;
            const TimeSeries series{make_sine(n, static_cast<double>(p)), 0};
            CHECK(detect_periodicity(series, config) == p);
        }
    }
}

TEST_CASE("detect_periodicity is unaffected by a constant offset") {
    const DetectorConfig config;
    for (std::size_t p : {7u, 14u, 28u}) {
        const TimeSeries series{make_sine(12 * p, static_cast<double>(p), 1.0, 42.0), 0};
        CHECK(detect_periodicity(series, config) == p);
    }
}

TEST_CASE("detect_periodicity prefers the smallest validated period") {
    std::vector<double> x(280);
    for (std::size_t t = 0; t < 280; ++t) {
        const double arg = 2.0 * std::numbers::pi * static_cast<double>(t);
        x[t] = std::sin(arg / 7.0) + std::sin(arg / 28.0);
    }
    CHECK(detect_periodicity(TimeSeries{x, 0}, DetectorConfig{}) == 7);
}

TEST_CASE("detect_periodicity stays within the confidence window") {
    const DetectorConfig config;
    for (std::size_t n : {60u, 100u, 256u}) {
        const TimeSeries series{make_sine(n, 14.0), 0};
        const auto detected = detect_periodicity(series, config);
        if (detected) CHECK(*detected <= static_cast<std::size_t>(n * config.acf_confidence_fraction));
    }
}

TEST_CASE("detect_periodicity mostly reports white noise as aperiodic") {
    const DetectorConfig config;
    int absent = 0;
    const int seeds = 24;
    for (int seed = 0; seed < seeds; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 1000);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> x(200);
        for (auto& v : x) v = dist(rng);
        if (!detect_periodicity(TimeSeries{x, 0}, config)) ++absent;
    }
    CHECK(absent >= static_cast<int>(0.9 * seeds));
}

TEST_CASE("detect_periodicity returns absent below the minimum length and on constants") {
    const DetectorConfig config;
    CHECK_FALSE(detect_periodicity(TimeSeries{make_sine(10, 5.0), 0}, config).has_value());
    CHECK_FALSE(detect_periodicity(TimeSeries{std::vector<double>(50, 3.0), 0}, config).has_value());
}

TEST_CASE("update_period_cache keeps the confirmed period on an absent detection") {
    PeriodCache cache;
    cache.confirmed_period = 28;
    const auto updated = update_period_cache(cache, std::nullopt);
    CHECK(updated.confirmed_period == 28);
    CHECK_FALSE(updated.pending_period.has_value());
}

TEST_CASE("update_period_cache confirms the first detection immediately") {
    const auto updated = update_period_cache(PeriodCache{}, 28);
    CHECK(updated.confirmed_period == 28);
}

TEST_CASE("update_period_cache switches after two consecutive new detections") {
    PeriodCache cache;
    cache.confirmed_period = 28;

    cache = update_period_cache(cache, 14);
    CHECK(cache.confirmed_period == 28);
    CHECK(cache.pending_period == 14);

    cache = update_period_cache(cache, 14);
    CHECK(cache.confirmed_period == 14);
    CHECK_FALSE(cache.pending_period.has_value());
}

TEST_CASE("update_period_cache resets a pending period on disagreement") {
    PeriodCache cache;
    cache.confirmed_period = 28;
    cache = update_period_cache(cache, 14);
    cache = update_period_cache(cache, 7); // different new value, restart pending
    CHECK(cache.confirmed_period == 28);
    CHECK(cache.pending_period == 7);
    cache = update_period_cache(cache, 28); // agreement with confirmed clears pending
    CHECK(cache.confirmed_period == 28);
    CHECK_FALSE(cache.pending_period.has_value());
}
