#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "blepc/sim.hpp"

namespace blepc {

// What the run was trying to hold, and how close counts as recovered.
struct SummaryTargets {
    Strategy strategy = Strategy::fixed;
    double rssi_target_dbm = -60.0;
    double throughput_target_kbps = 800.0;
    double rssi_band_db = 2.0;
    double throughput_band_frac = 0.2;
    // Earliest disturbance; taken from the trace events when unset.
    std::optional<double> disturbance_time_s;

    static SummaryTargets from(const ScenarioSpec& spec);
};

// Population statistics over the connected part of a trace.
struct MetricsSummary {
    std::size_t samples = 0;
    std::size_t connected_samples = 0;
    double mean_rssi_dbm = kNaN;
    double std_rssi_db = kNaN;
    double mean_throughput_kbps = kNaN;
    double std_throughput_kbps = kNaN;
    double mean_txp_dbm = kNaN;
    double mean_power_mw = kNaN;
    int disconnect_count = 0;
    std::optional<double> disconnect_time_s;
    std::optional<double> recovery_time_s;
};

MetricsSummary summarize(const RunTrace& trace, const SummaryTargets& targets);

// Population mean/std of the finite values; NaN pair when there are none.
std::pair<double, double> mean_std(const std::vector<double>& values);

inline constexpr const char* kTraceHeader =
    "t_s,distance_m,rssi_dbm,throughput_kbps,txp_dbm,rssi_target_dbm,power_mw,connected";

std::string format_trace(const RunTrace& trace);
// Throws std::runtime_error on malformed input.
RunTrace parse_trace(const std::string& text);
std::string format_summary(const MetricsSummary& s, const std::string& name);

struct ComparisonRow {
    std::string label;
    MetricsSummary summary;
};

std::string format_comparison(const std::vector<ComparisonRow>& rows);

struct OutputFiles {
    std::filesystem::path trace;
    std::filesystem::path summary;
};

// Writes <prefix>.trace.csv and <prefix>.summary.json. Throws
// std::runtime_error naming the path on I/O failure.
OutputFiles write_outputs(const RunTrace& trace, const MetricsSummary& summary,
                          const std::string& name, const std::filesystem::path& prefix);
void write_comparison(const std::vector<ComparisonRow>& rows, const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace blepc
