#include "blepc/config.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "blepc/report.hpp"

namespace blepc {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    const std::string t = trim(value);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
        throw std::invalid_argument("'" + key + "': expected a number, got '" + value + "'");
    return v;
}

int to_int(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v != static_cast<int>(v)) throw std::invalid_argument("'" + key + "': expected an integer");
    return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
    const std::string t = trim(value);
    if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
    if (t == "0" || t == "false" || t == "no" || t == "off") return false;
    throw std::invalid_argument("'" + key + "': expected a boolean, got '" + value + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

std::string num(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

template <class Setter>
void each_key(const std::string& section, const ConfigSection& kv, const Setter& set) {
    for (const auto& [k, v] : kv)
        if (!set(k, v)) throw std::invalid_argument("unknown key '" + k + "' in [" + section + "]");
}

}  // namespace

ConfigFile parse_config(const std::string& text, const std::string& source) {
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw std::runtime_error(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    ConfigFile cfg;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw std::runtime_error(source + ": key '" + section + "' outside any section");
        auto& out = cfg[section];
        for (const auto& [key, value] : body) out[key] = value.data();
    }
    return cfg;
}

ConfigFile load_config(const std::filesystem::path& path) {
    return parse_config(read_text_file(path), path.string());
}

void apply_model(const ConfigFile& cfg, ModelConfig& model) {
    for (const auto& [section, kv] : cfg) {
        if (section.rfind("env.", 0) == 0) {
            auto& p = model.profile(environment_from_string(section.substr(4)));
            each_key(section, kv, [&](const std::string& k, const std::string& v) {
                if (k == "pl0_db") p.pl0_db = to_double(k, v);
                else if (k == "exponent") p.exponent = to_double(k, v);
                else if (k == "shadow_sigma_db") p.shadow_sigma_db = to_double(k, v);
                else if (k == "shadow_corr") p.shadow_corr = to_double(k, v);
                else if (k == "fade_sigma_db") p.fade_sigma_db = to_double(k, v);
                else if (k == "per_r50_dbm") p.per_r50_dbm = to_double(k, v);
                else if (k == "per_slope_db") p.per_slope_db = to_double(k, v);
                else return false;
                return true;
            });
        } else if (section == "radio") {
            auto& l = model.link;
            each_key(section, kv, [&](const std::string& k, const std::string& v) {
                if (k == "levels_dbm") {
                    std::vector<double> levels;
                    for (const auto& item : split(v, ',')) levels.push_back(to_double(k, item));
                    model.table = TxPowerTable(std::move(levels));
                } else if (k == "sensitivity_dbm") l.sensitivity_dbm = to_double(k, v);
                else if (k == "conn_interval_s") l.conn_interval_s = to_double(k, v);
                else if (k == "payload_bytes") l.payload_bytes = to_int(k, v);
                else if (k == "pkt_cycle_s") l.pkt_cycle_s = to_double(k, v);
                else if (k == "max_pkts_per_event") l.max_pkts_per_event = to_int(k, v);
                else if (k == "supervision_timeout_s") l.supervision_timeout_s = to_double(k, v);
                else return false;
                return true;
            });
        } else if (section == "fem") {
            each_key(section, kv, [&](const std::string& k, const std::string& v) {
                if (k == "tx_shift_db") model.fem.tx_shift_db = to_double(k, v);
                else if (k == "rx_gain_db") model.fem.rx_gain_db = to_double(k, v);
                else return false;
                return true;
            });
        } else if (section == "power") {
            auto& p = model.power;
            each_key(section, kv, [&](const std::string& k, const std::string& v) {
                if (k == "p_idle_mw") p.p_idle_mw = to_double(k, v);
                else if (k == "e_per_bit_mj") p.e_per_bit_mj = to_double(k, v);
                else if (k == "radio_base_mw") p.radio_base_mw = to_double(k, v);
                else if (k == "radio_per_tx_mw") p.radio_per_tx_mw = to_double(k, v);
                else if (k == "fem_multiplier") p.fem_multiplier = to_double(k, v);
                else return false;
                return true;
            });
        } else if (section == "latency") {
            each_key(section, kv, [&](const std::string& k, const std::string& v) {
                if (k == "mean_s") model.latency.mean_s = to_double(k, v);
                else if (k == "sigma_s") model.latency.sigma_s = to_double(k, v);
                else return false;
                return true;
            });
        } else if (section != "scenario") {
            throw std::invalid_argument("unknown config section [" + section + "]");
        }
    }
    model.validate();
}

namespace {

Disturbance parse_disturbance(const std::string& item) {
    // time:kind[:dB]
    const auto parts = split(item, ':');
    if (parts.size() < 2 || parts.size() > 3)
        throw std::invalid_argument("disturbance '" + item + "': expected time:kind[:dB]");
    Disturbance d;
    d.time_s = to_double("disturbances", parts[0]);
    if (parts[1] == "fem_remove") d.kind = DisturbanceKind::fem_remove;
    else if (parts[1] == "fem_restore") d.kind = DisturbanceKind::fem_restore;
    else if (parts[1] == "step_atten") d.kind = DisturbanceKind::step_atten;
    else throw std::invalid_argument("unknown disturbance kind '" + parts[1] + "'");
    if (parts.size() == 3) d.atten_db = to_double("disturbances", parts[2]);
    return d;
}

bool set_pid(PidConfig& c, const std::string& field, const std::string& key, const std::string& v) {
    if (field == "kp") c.kp = to_double(key, v);
    else if (field == "ki") c.ki = to_double(key, v);
    else if (field == "kd") c.kd = to_double(key, v);
    else if (field == "clamp") {
        c.output_clamp = to_double(key, v);
        c.integral_clamp = std::max(c.integral_clamp, c.output_clamp);
    } else if (field == "integral-clamp") c.integral_clamp = to_double(key, v);
    else if (field == "update-hz") c.update_hz = to_double(key, v);
    else return false;
    return true;
}

}  // namespace

void apply_scenario(const ConfigSection& kv, ScenarioSpec& spec) {
    auto& ctrl = spec.controller;
    if (auto it = kv.find("strategy"); it != kv.end()) {
        auto fresh = default_controller(strategy_from_string(trim(it->second)));
        fresh.fixed_txp_dbm = ctrl.fixed_txp_dbm;
        fresh.initial_txp_dbm = ctrl.initial_txp_dbm;
        fresh.rssi_target_dbm = ctrl.rssi_target_dbm;
        fresh.throughput_target_kbps = ctrl.throughput_target_kbps;
        ctrl = fresh;
    }
    // The loop the un-prefixed gain flags address.
    PidConfig& primary = ctrl.strategy == Strategy::throughput ? ctrl.outer_cfg : ctrl.inner_cfg;

    for (const auto& [k, v] : kv) {
        if (k == "strategy") continue;
        if (k == "env") spec.env = environment_from_string(trim(v));
        else if (k == "name") spec.name = trim(v);
        else if (k == "duration") spec.duration_s = to_double(k, v);
        else if (k == "seed") {
            const double s = to_double(k, v);
            if (s < 0 || s != static_cast<double>(static_cast<std::uint64_t>(s)))
                throw std::invalid_argument("'seed': expected a non-negative integer");
            spec.seed = static_cast<std::uint64_t>(s);
        } else if (k == "distance") spec.motion = Motion::at(to_double(k, v));
        else if (k == "ramp") {
            const auto parts = split(v, ':');
            if (parts.size() != 3)
                throw std::invalid_argument("'ramp': expected start:end:duration");
            spec.motion = Motion::ramp(to_double(k, parts[0]), to_double(k, parts[1]),
                                       to_double(k, parts[2]));
        } else if (k == "disturbances") {
            spec.disturbances.clear();
            for (const auto& item : split(v, ';'))
                if (!item.empty()) spec.disturbances.push_back(parse_disturbance(item));
        } else if (k == "fem-initial") spec.fem_initial = to_bool(k, v);
        else if (k == "fem-remove-drops-tx") spec.fem_remove_drops_tx = to_bool(k, v);
        else if (k == "calc-hz") spec.throughput_calc_hz = to_double(k, v);
        else if (k == "fixed-txp") ctrl.fixed_txp_dbm = to_double(k, v);
        else if (k == "initial-txp") ctrl.initial_txp_dbm = to_double(k, v);
        else if (k == "target-rssi") {
            ctrl.rssi_target_dbm = to_double(k, v);
        } else if (k == "target-kbps") ctrl.throughput_target_kbps = to_double(k, v);
        else if (k == "clamp") {
            set_pid(ctrl.inner_cfg, "clamp", k, v);
            set_pid(ctrl.outer_cfg, "clamp", k, v);
        } else if (k.rfind("inner-", 0) == 0) {
            if (!set_pid(ctrl.inner_cfg, k.substr(6), k, v))
                throw std::invalid_argument("unknown scenario key '" + k + "'");
        } else if (k.rfind("outer-", 0) == 0) {
            if (!set_pid(ctrl.outer_cfg, k.substr(6), k, v))
                throw std::invalid_argument("unknown scenario key '" + k + "'");
        } else if (!set_pid(primary, k, k, v)) {
            throw std::invalid_argument("unknown scenario key '" + k + "'");
        }
    }
}

std::string dump_model(const ModelConfig& model) {
    std::ostringstream out;
    out << "# blepc model constants (fitted defaults)\n";
    for (const auto& p : model.profiles) {
        out << "\n[env." << to_string(p.name) << "]\n"
            << "pl0_db = " << num(p.pl0_db) << "\n"
            << "exponent = " << num(p.exponent) << "\n"
            << "shadow_sigma_db = " << num(p.shadow_sigma_db) << "\n"
            << "shadow_corr = " << num(p.shadow_corr) << "\n"
            << "fade_sigma_db = " << num(p.fade_sigma_db) << "\n"
            << "per_r50_dbm = " << num(p.per_r50_dbm) << "\n"
            << "per_slope_db = " << num(p.per_slope_db) << "\n";
    }
    out << "\n[radio]\nlevels_dbm = ";
    bool first = true;
    for (double l : model.table.levels()) {
        out << (first ? "" : ",") << num(l);
        first = false;
    }
    const auto& l = model.link;
    out << "\nsensitivity_dbm = " << num(l.sensitivity_dbm) << "\n"
        << "conn_interval_s = " << num(l.conn_interval_s) << "\n"
        << "payload_bytes = " << l.payload_bytes << "\n"
        << "pkt_cycle_s = " << num(l.pkt_cycle_s) << "\n"
        << "max_pkts_per_event = " << l.max_pkts_per_event << "\n"
        << "supervision_timeout_s = " << num(l.supervision_timeout_s) << "\n";
    out << "\n[fem]\ntx_shift_db = " << num(model.fem.tx_shift_db) << "\n"
        << "rx_gain_db = " << num(model.fem.rx_gain_db) << "\n";
    const auto& p = model.power;
    out << "\n[power]\np_idle_mw = " << num(p.p_idle_mw) << "\n"
        << "e_per_bit_mj = " << num(p.e_per_bit_mj) << "\n"
        << "radio_base_mw = " << num(p.radio_base_mw) << "\n"
        << "radio_per_tx_mw = " << num(p.radio_per_tx_mw) << "\n"
        << "fem_multiplier = " << num(p.fem_multiplier) << "\n";
    out << "\n[latency]\nmean_s = " << num(model.latency.mean_s) << "\n"
        << "sigma_s = " << num(model.latency.sigma_s) << "\n";
    return out.str();
}

}  // namespace blepc
