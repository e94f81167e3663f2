#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "toad/detection.hpp"
#include "toad/streaming.hpp"
#include "toad/types.hpp"

#include <json.hpp>

namespace toad::io {

/// Input that failed to parse. `line` is 1-based.
struct ParseError : Error {
    ParseError(std::size_t line_number, const std::string& what)
        : Error("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
    std::size_t line;
};

/**
 * Reads a series from newline-delimited text: either one real per line or
 * comma-delimited (index,value) rows, in which case the last column is the
 * value. A non-numeric first line is treated as a header and skipped.
 * Throws ParseError with the offending line number.
 */
std::vector<double> read_series(std::istream& in);
std::vector<double> read_series_file(const std::filesystem::path& path);

/// Newline-delimited nonnegative integer indices; blank lines ignored.
std::vector<std::size_t> read_indices(std::istream& in);
std::vector<std::size_t> read_indices_file(const std::filesystem::path& path);

void write_series_file(const std::filesystem::path& path, const std::vector<double>& values);
void write_indices_file(const std::filesystem::path& path,
                        const std::vector<std::size_t>& indices);

inline constexpr int kReportSchemaVersion = 1;

/// Offline report document. Extra fields (mode, timings) are the caller's.
nlohmann::json report_to_json(const AnomalyReport& report, const DetectorConfig& config,
                              std::size_t series_length, const std::string& mode,
                              bool optimized);

/// Online report: the offline document of the final run plus replay fields.
nlohmann::json replay_to_json(const ReplayResult& result, const DetectorConfig& config,
                              std::size_t series_length, bool optimized);

/// Anomaly indices from a previously emitted report document.
std::vector<std::size_t> anomalies_from_json(const nlohmann::json& doc);

} // namespace toad::io
