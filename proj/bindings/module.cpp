#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toad/detection.hpp"
#include "toad/generators.hpp"
#include "toad/io.hpp"
#include "toad/metrics.hpp"
#include "toad/periodicity.hpp"
#include "toad/streaming.hpp"
#include "toad/trend.hpp"
#include "toad/types.hpp"

namespace py = pybind11;
using namespace toad;

namespace {

TimeSeries to_series(const std::vector<double>& values) {
    return validate_series(values);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Streaming and offline time-series anomaly detection";

    py::register_exception<NonFiniteSample>(m, "NonFiniteSampleError", PyExc_ValueError);
    py::register_exception<SeriesTooShort>(m, "SeriesTooShortError", PyExc_ValueError);
    py::register_exception<DegenerateSeries>(m, "DegenerateSeriesError", PyExc_ValueError);

    py::class_<DetectorConfig>(m, "DetectorConfig")
        .def(py::init<>())
        .def_readwrite("alpha", &DetectorConfig::alpha)
        .def_readwrite("fas_threshold", &DetectorConfig::fas_threshold)
        .def_readwrite("bound_multiplier", &DetectorConfig::bound_multiplier)
        .def_readwrite("aperiodic_window", &DetectorConfig::aperiodic_window)
        .def_readwrite("optimized_window_fraction", &DetectorConfig::optimized_window_fraction)
        .def_readwrite("optimized_degree", &DetectorConfig::optimized_degree)
        .def_readwrite("degree_step", &DetectorConfig::degree_step)
        .def_readwrite("max_degree", &DetectorConfig::max_degree)
        .def_readwrite("min_detect_length", &DetectorConfig::min_detect_length)
        .def_readwrite("sd_epsilon", &DetectorConfig::sd_epsilon)
        .def_readwrite("psd_peak_count", &DetectorConfig::psd_peak_count)
        .def_readwrite("acf_confidence_fraction", &DetectorConfig::acf_confidence_fraction)
        .def_readwrite("acf_significance", &DetectorConfig::acf_significance)
        .def("validate", &DetectorConfig::validate);

    py::class_<Bucket>(m, "Bucket")
        .def_readonly("start", &Bucket::start)
        .def_readonly("end", &Bucket::end)
        .def_readonly("degree", &Bucket::degree);

    py::class_<BucketPlan>(m, "BucketPlan")
        .def_readonly("buckets", &BucketPlan::buckets)
        .def_readonly("series_length", &BucketPlan::series_length)
        .def_readonly("window_size", &BucketPlan::window_size);

    py::class_<BandStats>(m, "BandStats")
        .def_readonly("mean", &BandStats::mean)
        .def_readonly("sd_local", &BandStats::sd_local)
        .def_readonly("bound", &BandStats::bound);

    py::class_<BandSet>(m, "BandSet")
        .def_readonly("per_bucket", &BandSet::per_bucket)
        .def_readonly("sd_global", &BandSet::sd_global)
        .def_readonly("alpha_used", &BandSet::alpha_used);

    py::class_<AnomalyReport>(m, "AnomalyReport")
        .def_readonly("candidates", &AnomalyReport::candidates)
        .def_readonly("anomalies", &AnomalyReport::anomalies)
        .def_readonly("fas_per_bucket", &AnomalyReport::fas_per_bucket)
        .def_readonly("residual_bands", &AnomalyReport::residual_bands)
        .def_readonly("signal_bands", &AnomalyReport::signal_bands)
        .def_readonly("period_used", &AnomalyReport::period_used)
        .def_readonly("plan", &AnomalyReport::plan_used);

    py::class_<ConfusionCounts>(m, "ConfusionCounts")
        .def_readonly("tp", &ConfusionCounts::tp)
        .def_readonly("tn", &ConfusionCounts::tn)
        .def_readonly("fp", &ConfusionCounts::fp)
        .def_readonly("fn", &ConfusionCounts::fn)
        .def("__repr__", [](const ConfusionCounts& c) {
            return "ConfusionCounts(tp=" + std::to_string(c.tp) + ", tn=" + std::to_string(c.tn) +
                   ", fp=" + std::to_string(c.fp) + ", fn=" + std::to_string(c.fn) + ")";
        });

    py::enum_<StreamAction>(m, "StreamAction")
        .value("SKIPPED", StreamAction::Skipped)
        .value("RAN", StreamAction::Ran);

    py::class_<StreamDecision>(m, "StreamDecision")
        .def_readonly("action", &StreamDecision::action)
        .def_readonly("newest_is_anomaly", &StreamDecision::newest_is_anomaly)
        .def_readonly("sample_index", &StreamDecision::sample_index);

    py::class_<StreamDetector>(m, "StreamDetector")
        .def(py::init<DetectorConfig, bool, std::optional<std::size_t>>(),
             py::arg("config") = DetectorConfig{}, py::arg("optimize") = true,
             py::arg("fixed_period") = std::nullopt)
        .def("push", &StreamDetector::push, py::arg("sample"))
        .def_property_readonly("runs_executed",
                               [](const StreamDetector& d) { return d.state().runs_executed; })
        .def_property_readonly("samples_seen",
                               [](const StreamDetector& d) { return d.state().samples_seen; })
        .def_property_readonly("confirmed_period", [](const StreamDetector& d) {
            return d.state().period_cache.confirmed_period;
        });

    m.def(
        "detect_offline",
        [](const std::vector<double>& values, const DetectorConfig& config, bool optimized) {
            return detect_offline(to_series(values), config, optimized);
        },
        py::arg("values"), py::arg("config") = DetectorConfig{}, py::arg("optimized") = false);

    m.def(
        "detect_periodicity",
        [](const std::vector<double>& values, const DetectorConfig& config) {
            return detect_periodicity(to_series(values), config);
        },
        py::arg("values"), py::arg("config") = DetectorConfig{});

    m.def(
        "replay",
        [](const std::vector<double>& values, const DetectorConfig& config, bool optimize) {
            const ReplayResult result = replay(to_series(values), config, optimize);
            std::vector<std::size_t> flagged;
            for (const StreamDecision& d : result.decisions)
                if (d.newest_is_anomaly) flagged.push_back(d.sample_index);
            py::dict out;
            out["anomalies"] = flagged;
            out["runs_executed"] = result.runs_executed;
            out["samples_seen"] = result.final_state.samples_seen;
            out["bound_violating_skips"] = result.bound_violating_skips;
            return out;
        },
        py::arg("values"), py::arg("config") = DetectorConfig{}, py::arg("optimize") = true);

    m.def(
        "gen_hetero_sine",
        [](std::size_t n, std::size_t period, double base_amplitude, double amplitude_growth,
           double noise_sd, std::uint64_t seed) {
            const LabeledSeries data =
                gen_hetero_sine(n, period, base_amplitude, amplitude_growth, noise_sd, seed);
            return py::make_tuple(data.series.values, data.truth);
        },
        py::arg("n"), py::arg("period"), py::arg("base_amplitude") = 1.0,
        py::arg("amplitude_growth") = 0.01, py::arg("noise_sd") = 0.05, py::arg("seed") = 0);

    m.def(
        "gen_breakout",
        [](std::size_t n, std::size_t break_index, double level_shift, double noise_sd,
           std::uint64_t seed) {
            const LabeledSeries data = gen_breakout(n, break_index, level_shift, noise_sd, seed);
            return py::make_tuple(data.series.values, data.truth);
        },
        py::arg("n"), py::arg("break_index"), py::arg("level_shift") = 4.0,
        py::arg("noise_sd") = 0.05, py::arg("seed") = 0);

    m.def(
        "confusion",
        [](const std::vector<std::size_t>& predicted, const std::vector<std::size_t>& truth,
           std::size_t n, std::size_t tolerance) { return confusion(predicted, truth, n, tolerance); },
        py::arg("predicted"), py::arg("truth"), py::arg("n"), py::arg("tolerance") = 0);

    m.def("f1", &f1, py::arg("counts"));

    m.attr("__version__") = "0.1.0";
}
