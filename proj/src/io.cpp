#include "toad/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace toad::io {

namespace {

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return in;
}

nlohmann::json bands_to_json(const BandSet& bands) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BandStats& b : bands.per_bucket)
        arr.push_back({{"mean", b.mean}, {"sd_local", b.sd_local}, {"bound", b.bound}});
    return nlohmann::json{{"per_bucket", arr},
                          {"sd_global", bands.sd_global},
                          {"alpha", bands.alpha_used}};
}

nlohmann::json config_to_json(const DetectorConfig& c) {
    return nlohmann::json{{"alpha", c.alpha},
                          {"fas_threshold", c.fas_threshold},
                          {"bound_multiplier", c.bound_multiplier},
                          {"aperiodic_window", c.aperiodic_window},
                          {"optimized_window_fraction", c.optimized_window_fraction},
                          {"optimized_degree", c.optimized_degree},
                          {"degree_step", c.degree_step},
                          {"max_degree", c.max_degree},
                          {"min_detect_length", c.min_detect_length},
                          {"sd_epsilon", c.sd_epsilon},
                          {"psd_peak_count", c.psd_peak_count},
                          {"acf_confidence_fraction", c.acf_confidence_fraction},
                          {"acf_significance", c.acf_significance}};
}

} // namespace

std::vector<double> read_series(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_number = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string text = strip(line);
        if (text.empty()) continue;

        std::string token = text;
        if (const auto comma = text.find_last_of(','); comma != std::string::npos)
            token = strip(text.substr(comma + 1));

        double value = 0.0;
        if (!parse_double(token, value)) {
            if (first_content_line) {
                first_content_line = false; // header row
                continue;
            }
            throw ParseError(line_number, "expected a number, got \"" + token + "\"");
        }
        if (!std::isfinite(value))
            throw ParseError(line_number, "non-finite value");
        first_content_line = false;
        values.push_back(value);
    }
    return values;
}

std::vector<double> read_series_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_series(in);
}

std::vector<std::size_t> read_indices(std::istream& in) {
    std::vector<std::size_t> indices;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string text = strip(line);
        if (text.empty()) continue;
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw ParseError(line_number, "expected a nonnegative integer, got \"" + text + "\"");
        indices.push_back(value);
    }
    return indices;
}

std::vector<std::size_t> read_indices_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_indices(in);
}

void write_series_file(const std::filesystem::path& path, const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out.precision(17);
    for (double v : values) out << v << '\n';
}

void write_indices_file(const std::filesystem::path& path,
                        const std::vector<std::size_t>& indices) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    for (std::size_t i : indices) out << i << '\n';
}

nlohmann::json report_to_json(const AnomalyReport& report, const DetectorConfig& config,
                              std::size_t series_length, const std::string& mode,
                              bool optimized) {
    nlohmann::json buckets = nlohmann::json::array();
    for (std::size_t b = 0; b < report.plan_used.buckets.size(); ++b) {
        const Bucket& bucket = report.plan_used.buckets[b];
        buckets.push_back({{"start", bucket.start},
                           {"end", bucket.end},
                           {"degree", bucket.degree},
                           {"fas", report.fas_per_bucket[b]}});
    }
    nlohmann::json doc{{"schema_version", kReportSchemaVersion},
                       {"mode", mode},
                       {"series_length", series_length},
                       {"optimized", optimized},
                       {"config", config_to_json(config)},
                       {"anomalies", report.anomalies},
                       {"candidates", report.candidates},
                       {"buckets", buckets},
                       {"residual_bands", bands_to_json(report.residual_bands)},
                       {"signal_bands", bands_to_json(report.signal_bands)}};
    if (report.period_used)
        doc["period"] = *report.period_used;
    else
        doc["period"] = nullptr;
    return doc;
}

nlohmann::json replay_to_json(const ReplayResult& result, const DetectorConfig& config,
                              std::size_t series_length, bool optimized) {
    std::vector<std::size_t> flagged;
    for (const StreamDecision& d : result.decisions)
        if (d.newest_is_anomaly) flagged.push_back(d.sample_index);

    nlohmann::json doc;
    if (result.final_state.last_report) {
        doc = report_to_json(*result.final_state.last_report, config, series_length, "online",
                             optimized);
    } else {
        doc = nlohmann::json{{"schema_version", kReportSchemaVersion},
                             {"mode", "online"},
                             {"series_length", series_length},
                             {"optimized", optimized},
                             {"config", config_to_json(config)},
                             {"buckets", nlohmann::json::array()},
                             {"period", nullptr}};
    }
    // Online verdicts are per-arrival; they replace the batch anomaly set.
    doc["anomalies"] = flagged;
    doc["runs_executed"] = result.runs_executed;
    doc["samples_seen"] = result.final_state.samples_seen;
    doc["bound_violating_skips"] = result.bound_violating_skips;
    return doc;
}

std::vector<std::size_t> anomalies_from_json(const nlohmann::json& doc) {
    return doc.at("anomalies").get<std::vector<std::size_t>>();
}

} // namespace toad::io
