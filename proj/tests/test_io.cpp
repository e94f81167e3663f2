#include <doctest.h>

#include <sstream>

#include "toad/detection.hpp"
#include "toad/generators.hpp"
#include "toad/io.hpp"

using namespace toad;

TEST_CASE("read_series parses one value per line") {
    std::istringstream in("1.5\n-2\n3e2\n");
    CHECK(io::read_series(in) == std::vector<double>{1.5, -2.0, 300.0});
}

TEST_CASE("read_series parses index,value rows and skips a header") {
    std::istringstream in("index,value\n0,1.5\n1,2.5\n2,-0.5\n");
    CHECK(io::read_series(in) == std::vector<double>{1.5, 2.5, -0.5});
}

TEST_CASE("read_series ignores blank lines and CR line endings") {
    std::istringstream in("1\r\n\n2\r\n");
    CHECK(io::read_series(in) == std::vector<double>{1.0, 2.0});
}

TEST_CASE("read_series reports the offending line number") {
    std::istringstream in("1\n2\n3\n4\n5\n6\nabc\n8\n");
    try {
        io::read_series(in);
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        CHECK(e.line == 7);
    }
}

TEST_CASE("read_series rejects non-finite literals past the header") {
    std::istringstream in("value\n1\nnan\n");
    CHECK_THROWS_AS(io::read_series(in), io::ParseError);
}

TEST_CASE("read_indices parses and validates integers") {
    std::istringstream good("250\n10\n");
    CHECK(io::read_indices(good) == std::vector<std::size_t>{250, 10});
    std::istringstream bad("250\nx\n");
    CHECK_THROWS_AS(io::read_indices(bad), io::ParseError);
}

TEST_CASE("report documents round-trip their anomaly set") {
    const LabeledSeries data = gen_breakout(500, 250, 4.0, 0.05, 1);
    const DetectorConfig config;
    const AnomalyReport report = detect_offline(data.series, config);
    const nlohmann::json doc =
        io::report_to_json(report, config, data.series.size(), "offline", false);

    CHECK(doc.at("schema_version") == io::kReportSchemaVersion);
    const auto reparsed = nlohmann::json::parse(doc.dump());
    CHECK(io::anomalies_from_json(reparsed) == report.anomalies);
    CHECK(reparsed.at("buckets").size() == report.plan_used.buckets.size());
    CHECK(reparsed.at("period").is_null());
}

TEST_CASE("replay documents carry run counts and per-arrival verdicts") {
    const LabeledSeries data = gen_breakout(200, 100, 4.0, 0.05, 2);
    const DetectorConfig config;
    const ReplayResult result = replay(data.series, config, true);
    const nlohmann::json doc = io::replay_to_json(result, config, data.series.size(), true);

    CHECK(doc.at("mode") == "online");
    CHECK(doc.at("runs_executed").get<std::size_t>() == result.runs_executed);
    CHECK(doc.at("bound_violating_skips").get<std::size_t>() == 0);
    const auto flagged = io::anomalies_from_json(doc);
    for (std::size_t i : flagged) CHECK(result.decisions[i].newest_is_anomaly);
}
