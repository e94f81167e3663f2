#include <doctest.h>

#include <cmath>
#include <limits>

#include "toad/types.hpp"

using namespace toad;

TEST_CASE("validate_series passes finite input through unchanged") {
    const std::vector<double> raw{1.0, 2.0, 3.0};
    const TimeSeries series = validate_series(raw);
    CHECK(series.size() == 3);
    CHECK(series.values == raw);
    CHECK(series.origin_index == 0);
}

TEST_CASE("validate_series reports the index of a non-finite sample") {
    const std::vector<double> raw{1.0, std::numeric_limits<double>::quiet_NaN()};
    try {
        validate_series(raw);
        FAIL("expected NonFiniteSample");
    } catch (const NonFiniteSample& e) {
        CHECK(e.index == 1);
    }
    CHECK_THROWS_AS(validate_series(std::vector<double>{std::numeric_limits<double>::infinity()}),
                    NonFiniteSample);
}

TEST_CASE("validate_series accepts an empty series") {
    CHECK(validate_series(std::vector<double>{}).size() == 0);
}

TEST_CASE("DetectorConfig defaults are valid and within range") {
    DetectorConfig config;
    CHECK_NOTHROW(config.validate());
    CHECK(config.alpha == doctest::Approx(0.5));
    CHECK(config.fas_threshold == doctest::Approx(1.0));
    CHECK(config.bound_multiplier == doctest::Approx(2.0));
    CHECK(config.aperiodic_window == 10);
    CHECK(config.optimized_window_fraction == doctest::Approx(0.10));
    CHECK(config.optimized_degree == 2);
    CHECK(config.degree_step == 5);
    CHECK(config.max_degree == 8);
    CHECK(config.min_detect_length == 20);
    CHECK(config.psd_peak_count == 5);
    CHECK(config.acf_confidence_fraction == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("DetectorConfig rejects out-of-range values") {
    DetectorConfig config;
    config.alpha = -0.1;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.alpha = 1.1;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = DetectorConfig{};
    config.bound_multiplier = 0.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.bound_multiplier = -2.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = DetectorConfig{};
    config.optimized_window_fraction = 0.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = DetectorConfig{};
    config.degree_step = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = DetectorConfig{};
    config.max_degree = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}
