// blepc: command-line front end for the simulator.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blepc/batch.hpp"
#include "blepc/config.hpp"
#include "blepc/power.hpp"
#include "blepc/presets.hpp"
#include "blepc/report.hpp"
#include "blepc/sweep.hpp"

using namespace blepc;

namespace {

const char* const kScenarioFlags[] = {
    "env",       "strategy",      "name",          "duration",       "seed",
    "distance",  "ramp",          "disturbances",  "fem-initial",    "fem-remove-drops-tx",
    "calc-hz",   "fixed-txp",     "initial-txp",   "target-rssi",    "target-kbps",
    "clamp",     "kp",            "ki",            "kd",             "update-hz",
    "integral-clamp",
    "inner-kp",  "inner-ki",      "inner-kd",      "inner-clamp",    "inner-integral-clamp",
    "inner-update-hz",
    "outer-kp",  "outer-ki",      "outer-kd",      "outer-clamp",    "outer-integral-clamp",
    "outer-update-hz",
};

struct Common {
    std::string config_path;
    std::map<std::string, std::string> flags;  // only the ones given
    std::string seeds;

    std::optional<ConfigFile> config() const {
        std::string path = config_path;
        if (path.empty())
            if (const char* env = std::getenv(kConfigEnvVar)) path = env;
        if (path.empty()) return std::nullopt;
        return load_config(path);
    }

    ModelConfig model() const {
        ModelConfig m;
        if (auto cfg = config()) apply_model(*cfg, m);
        m.validate();
        return m;
    }

    ScenarioSpec scenario(const std::string& preset) const {
        ScenarioSpec spec = preset.empty() ? ScenarioSpec{} : make_preset(preset);
        if (auto cfg = config(); cfg && cfg->count("scenario")) apply_scenario(cfg->at("scenario"), spec);
        ConfigSection kv(flags.begin(), flags.end());
        apply_scenario(kv, spec);
        spec.validate();
        return spec;
    }
};

void add_scenario_flags(CLI::App* app, Common& c) {
    for (const char* f : kScenarioFlags) {
        const std::string key = f;
        app->add_option_function<std::string>(
               "--" + key, [&c, key](const std::string& v) { c.flags[key] = v; },
               "scenario override")
            ->group("Scenario");
    }
    app->add_option("--seeds", c.seeds, "seed range first:last (batch)")
        ->group("Scenario");
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    if (text.empty()) return seed_range(1, 10);
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const auto s = std::stoull(text);
            return {s};
        }
        return seed_range(std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1)));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("--seeds: expected N or first:last, got '" + text + "'");
    }
}

int cmd_run(const Common& c, const std::string& preset, const std::string& out) {
    const auto model = c.model();
    const auto spec = c.scenario(preset);
    const auto trace = run_scenario(spec, model);
    const auto summary = summarize(trace, SummaryTargets::from(spec));
    if (!out.empty()) {
        auto files = write_outputs(trace, summary, spec.name, std::filesystem::path(out) / spec.name);
        std::cerr << "wrote " << files.trace.string() << " and " << files.summary.string() << "\n";
    }
    for (const auto& e : trace.events) std::cerr << "event " << num(e.t_s) << " s " << e.label << "\n";
    std::cout << format_summary(summary, spec.name) << "\n";
    return 0;
}

int cmd_batch(const Common& c, const std::string& preset, const std::string& out) {
    const auto model = c.model();
    const auto spec = c.scenario(preset);
    const auto seeds = parse_seeds(c.seeds);
    const auto runs = run_batch(spec, seeds, model);
    std::vector<ComparisonRow> rows;
    for (const auto& r : runs) rows.push_back({spec.name + "/seed" + std::to_string(r.seed), r.summary});
    const auto text = format_comparison(rows);
    std::cout << text;
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        write_comparison(rows, std::filesystem::path(out) / (spec.name + ".batch.csv"));
        for (const auto& r : runs)
            {
            const auto stem = spec.name + ".seed" + std::to_string(r.seed);
            write_outputs(r.trace, r.summary, stem, std::filesystem::path(out) / stem);
        }
    }
    return 0;
}

int cmd_compare(const Common& c, const std::vector<std::string>& presets, const std::string& out) {
    const auto model = c.model();
    std::vector<ComparisonRow> rows;
    for (const auto& p : presets) {
        const auto spec = c.scenario(p);
        const auto trace = run_scenario(spec, model);
        rows.push_back({spec.name, summarize(trace, SummaryTargets::from(spec))});
        if (!out.empty()) write_outputs(trace, rows.back().summary, spec.name, std::filesystem::path(out) / spec.name);
    }
    std::cout << format_comparison(rows);
    if (!out.empty()) write_comparison(rows, std::filesystem::path(out) / "comparison.csv");
    return 0;
}

int cmd_sweep_calcfreq(const Common& c, std::vector<double> values, std::size_t min_windows,
                       const std::string& out) {
    const auto model = c.model();
    const auto base = c.scenario("calcfreq-sweep");
    if (values.empty()) values.assign(std::begin(kCalcFreqsHz), std::end(kCalcFreqsHz));
    const auto rows = calcfreq_sweep(base, values, model, min_windows);
    std::string text =
        "# std: population\ncalc_hz,duration_s,rssi_samples,rssi_mean_dbm,rssi_std_db,windows,"
        "throughput_mean_kbps,throughput_std_kbps\n";
    for (const auto& r : rows)
        text += num(r.calc_hz) + ',' + num(r.duration_s) + ',' + std::to_string(r.rssi_samples) + ',' +
                num(r.rssi_mean_dbm) + ',' + num(r.rssi_std_db) + ',' + std::to_string(r.windows) +
                ',' + num(r.throughput_mean_kbps) + ',' + num(r.throughput_std_kbps) + '\n';
    std::cout << text;
    if (!out.empty()) write_text_file(out, text);
    return 0;
}

int cmd_sweep_txp(const Common& c, const std::string& env, std::vector<double> values,
                  double distance, std::size_t events, const std::string& out) {
    const auto model = c.model();
    const auto seed = c.scenario("").seed;
    if (values.empty()) values.assign(std::begin(kSweepTxpDbm), std::end(kSweepTxpDbm));
    std::vector<Environment> envs;
    if (env == "all") envs.assign(std::begin(kAllEnvironments), std::end(kAllEnvironments));
    else envs.push_back(environment_from_string(env));
    std::string text =
        "# std: population\nenv,txp_dbm,rssi_mean_dbm,rssi_std_db,throughput_mean_kbps,power_mean_mw\n";
    for (auto e : envs) {
        const auto rows = txp_sweep(e, values, distance, events, seed, model);
        std::vector<double> x, y;
        for (const auto& r : rows) {
            text += std::string(to_string(e)) + ',' + num(r.txp_dbm) + ',' + num(r.rssi_mean_dbm) +
                    ',' + num(r.rssi_std_db) + ',' + num(r.throughput_mean_kbps) + ',' +
                    num(r.power_mean_mw) + '\n';
            x.push_back(r.txp_dbm);
            y.push_back(r.rssi_mean_dbm);
        }
        std::cerr << to_string(e) << " slope " << num(regression_slope(x, y)) << " dB/dB\n";
    }
    std::cout << text;
    if (!out.empty()) write_text_file(out, text);
    return 0;
}

int cmd_presets() {
    for (const auto& p : preset_list()) std::cout << p.name << "\t" << p.description << "\n";
    return 0;
}

int cmd_power_table(const Common& c) {
    const auto model = c.model();
    std::cout << "# peripheral power, mW, radio duty 0.25, 500 kbps delivered\n"
                 "txp_dbm,fem_on_mw,fem_off_mw\n";
    for (double l : model.table.levels())
        std::cout << num(l) << ',' << num(peripheral_power(model.power, l, 0.25, 500.0, true)) << ','
                  << num(peripheral_power(model.power, l, 0.25, 500.0, false)) << "\n";
    std::cout << "\n# control overhead, mW\nrole,strategy,update_hz,mw\n";
    for (auto role : {Role::central, Role::peripheral})
        for (auto s : {Strategy::rssi, Strategy::throughput, Strategy::hybrid})
            for (const auto& [hz, mw] : overhead_curve(role, s).points())
                std::cout << (role == Role::central ? "central" : "peripheral") << ','
                          << to_string(s) << ',' << num(hz) << ',' << num(mw) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BLE transmission power control simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--config", common.config_path,
                   std::string("INI file with model constants and a [scenario] section (or $") +
                       kConfigEnvVar + ")");

    std::string preset, out;
    std::vector<std::string> presets;
    std::vector<double> values;
    std::size_t min_windows = 200, events = 2000;
    double distance = 5.0;
    std::string sweep_env = "all";

    auto* run = app.add_subcommand("run", "run one scenario and print its summary");
    run->add_option("preset", preset, "preset name (default: a custom static lab link)");
    run->add_option("--out", out, "directory for the trace CSV and summary JSON");
    add_scenario_flags(run, common);

    auto* batch = app.add_subcommand("batch", "run a scenario over a seed range in parallel");
    batch->add_option("preset", preset, "preset name");
    batch->add_option("--out", out, "directory for per-seed traces and the batch table");
    add_scenario_flags(batch, common);

    auto* compare = app.add_subcommand("compare", "run several presets and tabulate them");
    compare->add_option("presets", presets, "preset names")->required();
    compare->add_option("--out", out, "directory for traces and comparison.csv");
    add_scenario_flags(compare, common);

    auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
    sweep->require_subcommand(1);
    auto* calc = sweep->add_subcommand("calcfreq", "throughput calculation frequency sweep");
    calc->add_option("--values", values, "frequencies in Hz")->delimiter(',');
    calc->add_option("--min-windows", min_windows, "lower bound on windows per frequency");
    calc->add_option("--out", out, "CSV output path");
    add_scenario_flags(calc, common);
    auto* txp = sweep->add_subcommand("txp", "RSSI against TXP at a fixed distance");
    txp->add_option("--values", values, "TXP levels in dBm")->delimiter(',');
    txp->add_option("--sweep-env", sweep_env, "environment or 'all'");
    txp->add_option("--at", distance, "distance in m");
    txp->add_option("--events", events, "connection events per level");
    txp->add_option("--out", out, "CSV output path");
    add_scenario_flags(txp, common);

    auto* list = app.add_subcommand("presets", "list preset scenarios");
    auto* dump = app.add_subcommand("dump-defaults", "print every model constant as an INI file");
    auto* power = app.add_subcommand("power-table", "print the power and overhead tables");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(common, preset, out);
        if (*batch) return cmd_batch(common, preset, out);
        if (*compare) return cmd_compare(common, presets, out);
        if (*calc) return cmd_sweep_calcfreq(common, values, min_windows, out);
        if (*txp) return cmd_sweep_txp(common, sweep_env, values, distance, events, out);
        if (*list) return cmd_presets();
        if (*dump) {
            std::cout << dump_model(common.model());
            return 0;
        }
        if (*power) return cmd_power_table(common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
