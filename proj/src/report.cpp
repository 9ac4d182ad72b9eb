#include "blepc/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace blepc {

SummaryTargets SummaryTargets::from(const ScenarioSpec& spec) {
    SummaryTargets t;
    t.strategy = spec.controller.strategy;
    t.rssi_target_dbm = spec.controller.rssi_target_dbm;
    t.throughput_target_kbps = spec.controller.throughput_target_kbps;
    for (const auto& d : spec.disturbances)
        if (!t.disturbance_time_s || d.time_s < *t.disturbance_time_s) t.disturbance_time_s = d.time_s;
    return t;
}

std::pair<double, double> mean_std(const std::vector<double>& values) {
    double sum = 0.0;
    std::size_t n = 0;
    for (double v : values)
        if (std::isfinite(v)) {
            sum += v;
            ++n;
        }
    if (n == 0) return {kNaN, kNaN};
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values)
        if (std::isfinite(v)) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(n))};
}

namespace {

bool is_disturbance_label(const std::string& label) {
    return label == "fem_remove" || label == "fem_restore" || label == "step_atten";
}

std::optional<double> recovery_time(const RunTrace& trace, const SummaryTargets& targets) {
    std::optional<double> t_dist = targets.disturbance_time_s;
    if (!t_dist)
        for (const auto& e : trace.events)
            if (is_disturbance_label(e.label)) {
                t_dist = e.t_s;
                break;
            }
    if (!t_dist) return std::nullopt;

    const bool by_rssi = targets.strategy == Strategy::rssi;
    if (!by_rssi && targets.strategy != Strategy::throughput && targets.strategy != Strategy::hybrid)
        return std::nullopt;
    auto in_band = [&](const TraceSample& s) -> std::optional<bool> {
        if (!s.connected) return false;
        if (by_rssi) {
            if (!std::isfinite(s.rssi_dbm)) return std::nullopt;
            return std::abs(s.rssi_dbm - targets.rssi_target_dbm) <= targets.rssi_band_db;
        }
        return std::abs(s.throughput_kbps - targets.throughput_target_kbps) <=
               targets.throughput_band_frac * targets.throughput_target_kbps;
    };

    // First run of kConsecutive in-band samples at or after the disturbance.
    constexpr int kConsecutive = 3;
    int run = 0;
    double run_start = 0.0;
    for (const auto& s : trace.samples) {
        if (s.t_s < *t_dist) continue;
        const auto ok = in_band(s);
        if (!ok) continue;
        if (!*ok) {
            run = 0;
            continue;
        }
        if (run == 0) run_start = s.t_s;
        if (++run >= kConsecutive) return run_start - *t_dist;
    }
    return std::nullopt;
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

double parse_num(std::string_view field) {
    if (field == "nan") return kNaN;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error("bad number '" + std::string(field) + "' in trace");
    return v;
}

nlohmann::json opt(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json finite_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

MetricsSummary summarize(const RunTrace& trace, const SummaryTargets& targets) {
    MetricsSummary m;
    m.samples = trace.samples.size();
    for (const auto& e : trace.events)
        if (e.label == "disconnect") {
            if (!m.disconnect_time_s) m.disconnect_time_s = e.t_s;
            ++m.disconnect_count;
        }

    std::vector<double> rssi, thr, txp, power;
    for (const auto& s : trace.samples) {
        if (!s.connected) continue;
        ++m.connected_samples;
        rssi.push_back(s.rssi_dbm);
        thr.push_back(s.throughput_kbps);
        txp.push_back(s.txp_dbm);
        power.push_back(s.power_mw);
    }
    if (m.connected_samples == 0) return m;
    std::tie(m.mean_rssi_dbm, m.std_rssi_db) = mean_std(rssi);
    std::tie(m.mean_throughput_kbps, m.std_throughput_kbps) = mean_std(thr);
    m.mean_txp_dbm = mean_std(txp).first;
    m.mean_power_mw = mean_std(power).first;
    m.recovery_time_s = recovery_time(trace, targets);
    return m;
}

std::string format_trace(const RunTrace& trace) {
    std::string out = kTraceHeader;
    out += '\n';
    for (const auto& s : trace.samples) {
        out += num(s.t_s) + ',' + num(s.distance_m) + ',' + num(s.rssi_dbm) + ',' +
               num(s.throughput_kbps) + ',' + num(s.txp_dbm) + ',' + num(s.rssi_target_dbm) + ',' +
               num(s.power_mw) + ',' + (s.connected ? "1" : "0") + '\n';
    }
    return out;
}

RunTrace parse_trace(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTraceHeader)
        throw std::runtime_error("trace header mismatch");
    RunTrace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> f;
        std::string_view rest(line);
        for (;;) {
            auto comma = rest.find(',');
            f.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (f.size() != 8) throw std::runtime_error("trace row has " + std::to_string(f.size()) + " fields");
        TraceSample s;
        s.t_s = parse_num(f[0]);
        s.distance_m = parse_num(f[1]);
        s.rssi_dbm = parse_num(f[2]);
        s.throughput_kbps = parse_num(f[3]);
        s.txp_dbm = parse_num(f[4]);
        s.rssi_target_dbm = parse_num(f[5]);
        s.power_mw = parse_num(f[6]);
        if (f[7] != "0" && f[7] != "1")
            throw std::runtime_error("bad connected flag '" + std::string(f[7]) + "'");
        s.connected = f[7] == "1";
        trace.samples.push_back(s);
    }
    return trace;
}

std::string format_summary(const MetricsSummary& s, const std::string& name) {
    nlohmann::ordered_json j;
    j["scenario"] = name;
    j["std_convention"] = "population";
    j["samples"] = s.samples;
    j["connected_samples"] = s.connected_samples;
    j["mean_rssi_dbm"] = finite_or_null(s.mean_rssi_dbm);
    j["std_rssi_db"] = finite_or_null(s.std_rssi_db);
    j["mean_throughput_kbps"] = finite_or_null(s.mean_throughput_kbps);
    j["std_throughput_kbps"] = finite_or_null(s.std_throughput_kbps);
    j["mean_txp_dbm"] = finite_or_null(s.mean_txp_dbm);
    j["mean_power_mw"] = finite_or_null(s.mean_power_mw);
    j["disconnect_count"] = s.disconnect_count;
    j["disconnect_time_s"] = opt(s.disconnect_time_s);
    j["recovery_time_s"] = opt(s.recovery_time_s);
    return j.dump(2) + "\n";
}

std::string format_comparison(const std::vector<ComparisonRow>& rows) {
    std::string out =
        "# std: population\nlabel,mean_rssi_dbm,std_rssi_db,mean_throughput_kbps,"
        "std_throughput_kbps,mean_txp_dbm,mean_power_mw,disconnect_count,disconnect_time_s,"
        "recovery_time_s\n";
    for (const auto& r : rows) {
        const auto& s = r.summary;
        out += r.label + ',' + num(s.mean_rssi_dbm) + ',' + num(s.std_rssi_db) + ',' +
               num(s.mean_throughput_kbps) + ',' + num(s.std_throughput_kbps) + ',' +
               num(s.mean_txp_dbm) + ',' + num(s.mean_power_mw) + ',' +
               std::to_string(s.disconnect_count) + ',' +
               num(s.disconnect_time_s.value_or(kNaN)) + ',' +
               num(s.recovery_time_s.value_or(kNaN)) + '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

OutputFiles write_outputs(const RunTrace& trace, const MetricsSummary& summary,
                          const std::string& name, const std::filesystem::path& prefix) {
    OutputFiles files{prefix.string() + ".trace.csv", prefix.string() + ".summary.json"};
    write_text_file(files.trace, format_trace(trace));
    write_text_file(files.summary, format_summary(summary, name));
    return files;
}

void write_comparison(const std::vector<ComparisonRow>& rows, const std::filesystem::path& path) {
    write_text_file(path, format_comparison(rows));
}

}  // namespace blepc
