#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "toad/detection.hpp"
#include "toad/generators.hpp"
#include "toad/io.hpp"
#include "toad/metrics.hpp"
#include "toad/streaming.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitTooShort = 3;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<double> load_series(const std::string& input) {
    if (input == "-") return toad::io::read_series(std::cin);
    return toad::io::read_series_file(input);
}

void emit(const nlohmann::json& doc, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(output);
    if (!out) throw toad::Error("cannot write " + output);
    out << doc.dump(2) << '\n';
}

struct DetectArgs {
    std::string input = "-";
    std::string mode = "offline";
    std::string output;
    toad::DetectorConfig config;
    std::optional<std::size_t> period;
    std::optional<bool> optimize;
};

int run_detect(const DetectArgs& args) {
    const auto values = load_series(args.input);
    const toad::TimeSeries series = toad::validate_series(values);
    const auto start = Clock::now();

    nlohmann::json doc;
    if (args.mode == "offline") {
        const bool optimized = args.optimize.value_or(false);
        const toad::AnomalyReport report =
            args.period ? toad::detect_with_period(series, args.config, optimized, args.period)
                        : toad::detect_offline(series, args.config, optimized);
        doc = toad::io::report_to_json(report, args.config, series.size(), "offline", optimized);
    } else {
        const bool optimize = args.optimize.value_or(true);
        toad::StreamDetector detector(args.config, optimize, args.period);
        toad::ReplayResult result;
        result.decisions.reserve(series.size());
        for (double sample : series.values) result.decisions.push_back(detector.push(sample));
        result.runs_executed = detector.state().runs_executed;
        result.final_state = detector.state();
        doc = toad::io::replay_to_json(result, args.config, series.size(), optimize);
    }
    doc["wall_time_ms"] = elapsed_ms(start);
    emit(doc, args.output);
    return kExitOk;
}

struct GenArgs {
    std::string kind = "sine";
    std::size_t n = 0;
    std::size_t period = 28;
    double base_amplitude = 1.0;
    double amplitude_growth = 0.01;
    std::size_t break_index = 0;
    double level_shift = 4.0;
    double noise_sd = 0.05;
    std::uint64_t seed = 0;
    std::string output;
};

int run_gen(GenArgs args) {
    toad::LabeledSeries data;
    if (args.kind == "sine") {
        if (args.n == 0) args.n = 256;
        data = toad::gen_hetero_sine(args.n, args.period, args.base_amplitude,
                                     args.amplitude_growth, args.noise_sd, args.seed);
    } else if (args.kind == "breakout") {
        if (args.n == 0) args.n = 500;
        if (args.break_index == 0) args.break_index = args.n / 2;
        data = toad::gen_breakout(args.n, args.break_index, args.level_shift, args.noise_sd,
                                  args.seed);
    } else {
        std::cerr << "error: unknown kind \"" << args.kind << "\"\n";
        return kExitInput;
    }
    toad::io::write_series_file(args.output, data.series.values);
    toad::io::write_indices_file(args.output + ".truth", data.truth);
    std::cout << "wrote " << data.series.size() << " samples to " << args.output << " (truth: "
              << args.output << ".truth)\n";
    return kExitOk;
}

struct EvalArgs {
    std::string predictions;
    std::string truth;
    std::size_t n = 0;
    std::size_t tolerance = 0;
};

int run_eval(const EvalArgs& args) {
    const auto predicted = toad::io::read_indices_file(args.predictions);
    const auto truth = toad::io::read_indices_file(args.truth);
    const toad::ConfusionCounts counts = toad::confusion(predicted, truth, args.n, args.tolerance);
    char line[160];
    std::snprintf(line, sizeof line, "tp=%zu tn=%zu fp=%zu fn=%zu f1=%.6f", counts.tp, counts.tn,
                  counts.fp, counts.fn, toad::f1(counts));
    std::cout << line << '\n';
    return kExitOk;
}

struct BenchArgs {
    std::string input = "-";
    toad::DetectorConfig config;
};

int run_bench(const BenchArgs& args) {
    const auto values = load_series(args.input);
    const toad::TimeSeries series = toad::validate_series(values);

    const auto start_before = Clock::now();
    const toad::ReplayResult before = toad::replay(series, args.config, /*optimize=*/false);
    const double ms_before = elapsed_ms(start_before);

    const auto start_after = Clock::now();
    const toad::ReplayResult after = toad::replay(series, args.config, /*optimize=*/true);
    const double ms_after = elapsed_ms(start_after);

    std::size_t agree = 0;
    std::vector<std::size_t> flagged_before, flagged_after;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (before.decisions[i].newest_is_anomaly == after.decisions[i].newest_is_anomaly) ++agree;
        if (before.decisions[i].newest_is_anomaly) flagged_before.push_back(i);
        if (after.decisions[i].newest_is_anomaly) flagged_after.push_back(i);
    }

    std::cout << "pushes: " << series.size() << '\n'
              << "runs_before_optimisation: " << before.runs_executed << '\n'
              << "runs_after_optimisation: " << after.runs_executed << '\n'
              << "time_before_ms: " << ms_before << '\n'
              << "time_after_ms: " << ms_after << '\n'
              << "bound_violating_skips: " << after.bound_violating_skips << '\n'
              << "verdict_agreement: " << agree << "/" << series.size() << '\n';
    auto print_indices = [](const char* label, const std::vector<std::size_t>& idx) {
        std::cout << label;
        for (std::size_t i : idx) std::cout << ' ' << i;
        std::cout << '\n';
    };
    print_indices("anomalies_before:", flagged_before);
    print_indices("anomalies_after:", flagged_after);
    return kExitOk;
}

void add_config_options(CLI::App* cmd, toad::DetectorConfig& config) {
    cmd->add_option("--alpha", config.alpha, "local/global SD blend weight")
        ->envname("TOAD_ALPHA");
    cmd->add_option("--fas-threshold", config.fas_threshold, "false-alert filter threshold")
        ->envname("TOAD_FAS_THRESHOLD");
    cmd->add_option("--multiplier", config.bound_multiplier, "outlier bound multiplier")
        ->envname("TOAD_MULTIPLIER");
    cmd->add_option("--min-detect-length", config.min_detect_length,
                    "minimum samples before detection runs");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"toad - time-series anomaly detection"};
    app.require_subcommand(1);

    DetectArgs detect_args;
    auto* detect = app.add_subcommand("detect", "detect anomalies in a series");
    detect->add_option("input", detect_args.input, "input file, or - for stdin");
    detect->add_option("--mode", detect_args.mode, "offline or online")
        ->check(CLI::IsMember({"offline", "online"}));
    add_config_options(detect, detect_args.config);
    std::size_t period_override = 0;
    detect->add_option("--period", period_override, "fixed period, skips detection");
    bool optimize_on = false, optimize_off = false;
    detect->add_flag("--optimize", optimize_on,
                     "optimized windows; online: enable run skipping (default on)");
    detect->add_flag("--no-optimize", optimize_off, "disable the optimisation");
    detect->add_option("-o,--output", detect_args.output, "report path, - for stdout");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a benchmark fixture");
    gen->add_option("--kind", gen_args.kind, "sine or breakout")
        ->check(CLI::IsMember({"sine", "breakout"}));
    gen->add_option("--n", gen_args.n, "series length");
    gen->add_option("--period", gen_args.period, "sine period");
    gen->add_option("--base-amplitude", gen_args.base_amplitude, "sine base amplitude");
    gen->add_option("--amplitude-growth", gen_args.amplitude_growth,
                    "sine amplitude growth per sample");
    gen->add_option("--break-index", gen_args.break_index, "breakout position");
    gen->add_option("--level-shift", gen_args.level_shift, "breakout level shift");
    gen->add_option("--noise-sd", gen_args.noise_sd, "gaussian noise SD");
    gen->add_option("--seed", gen_args.seed, "RNG seed");
    gen->add_option("-o,--output", gen_args.output, "fixture path (truth sidecar appended)")
        ->required();

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "score predictions against truth");
    eval->add_option("--pred", eval_args.predictions, "predicted index file")->required();
    eval->add_option("--truth", eval_args.truth, "truth index file")->required();
    eval->add_option("--n", eval_args.n, "series length")->required();
    eval->add_option("--tolerance", eval_args.tolerance, "index match tolerance");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "compare replay with and without run skipping");
    bench->add_option("input", bench_args.input, "input file, or - for stdin");
    add_config_options(bench, bench_args.config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*detect) {
            if (period_override > 0) detect_args.period = period_override;
            if (optimize_on) detect_args.optimize = true;
            if (optimize_off) detect_args.optimize = false;
            return run_detect(detect_args);
        }
        if (*gen) return run_gen(gen_args);
        if (*eval) return run_eval(eval_args);
        if (*bench) return run_bench(bench_args);
    } catch (const toad::io::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const toad::NonFiniteSample& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const toad::SeriesTooShort& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitTooShort;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
