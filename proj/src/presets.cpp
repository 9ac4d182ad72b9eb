#include "blepc/presets.hpp"

#include <stdexcept>

namespace blepc {

namespace {

constexpr double kRampLengthM = 50.0;
constexpr double kRampDurationS = 100.0;
constexpr double kFemDistanceM = 0.3;
constexpr double kFemStepS = 10.0;
constexpr double kFemDurationS = 20.0;

ScenarioSpec ramp(std::string name, Environment env, ControllerSpec ctrl) {
    ScenarioSpec s;
    s.name = std::move(name);
    s.env = env;
    s.controller = ctrl;
    s.duration_s = kRampDurationS;
    s.motion = Motion::ramp(0.0, kRampLengthM, kRampDurationS);
    return s;
}

ControllerSpec fixed(double dbm) {
    auto c = default_controller(Strategy::fixed);
    c.fixed_txp_dbm = dbm;
    return c;
}

ControllerSpec from_floor(Strategy s) {
    auto c = default_controller(s);
    c.initial_txp_dbm = -36.0;
    return c;
}

ScenarioSpec femstep(std::string name, ControllerSpec ctrl) {
    ScenarioSpec s;
    s.name = std::move(name);
    s.env = Environment::lab;
    s.controller = ctrl;
    s.controller.initial_txp_dbm = -36.0;
    s.duration_s = kFemDurationS;
    s.motion = Motion::at(kFemDistanceM);
    s.disturbances = {{kFemStepS, DisturbanceKind::fem_remove, 0.0}};
    return s;
}

struct Entry {
    PresetInfo info;
    ScenarioSpec (*make)();
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table{
        {{"rooftop-ramp-rssi", "rooftop, 0-50 m ramp, RSSI loop at -60 dBm"},
         [] {
             auto c = from_floor(Strategy::rssi);
             c.rssi_target_dbm = -60.0;
             return ramp("rooftop-ramp-rssi", Environment::rooftop, c);
         }},
        {{"rooftop-ramp-fixed20", "rooftop, 0-50 m ramp, fixed 20 dBm"},
         [] { return ramp("rooftop-ramp-fixed20", Environment::rooftop, fixed(20.0)); }},
        {{"rooftop-ramp-fixed-10", "rooftop, 0-50 m ramp, fixed -10 dBm"},
         [] { return ramp("rooftop-ramp-fixed-10", Environment::rooftop, fixed(-10.0)); }},
        {{"corridor-ramp-throughput", "corridor, 0-50 m ramp, throughput loop at 800 kbps"},
         [] {
             auto c = from_floor(Strategy::throughput);
             c.throughput_target_kbps = 800.0;
             return ramp("corridor-ramp-throughput", Environment::corridor, c);
         }},
        {{"corridor-ramp-fixed20", "corridor, 0-50 m ramp, fixed 20 dBm"},
         [] { return ramp("corridor-ramp-fixed20", Environment::corridor, fixed(20.0)); }},
        {{"corridor-ramp-fixed-10", "corridor, 0-50 m ramp, fixed -10 dBm"},
         [] { return ramp("corridor-ramp-fixed-10", Environment::corridor, fixed(-10.0)); }},
        {{"lab-ramp-hybrid", "lab, 0-50 m ramp, cascaded loop at 800 kbps, RSSI target from -60 dBm"},
         [] {
             auto c = from_floor(Strategy::hybrid);
             c.throughput_target_kbps = 800.0;
             c.rssi_target_dbm = -60.0;
             return ramp("lab-ramp-hybrid", Environment::lab, c);
         }},
        {{"lab-ramp-throughput", "lab, 0-50 m ramp, throughput loop at 800 kbps"},
         [] {
             auto c = from_floor(Strategy::throughput);
             c.throughput_target_kbps = 800.0;
             return ramp("lab-ramp-throughput", Environment::lab, c);
         }},
        {{"lab-ramp-rssi", "lab, 0-50 m ramp, RSSI loop at -60 dBm"},
         [] {
             auto c = from_floor(Strategy::rssi);
             c.rssi_target_dbm = -60.0;
             return ramp("lab-ramp-rssi", Environment::lab, c);
         }},
        {{"lab-femstep-rssi", "lab, 30 cm, RSSI loop at -65 dBm, FEM removed at 10 s"},
         [] {
             auto c = default_controller(Strategy::rssi);
             c.rssi_target_dbm = -65.0;
             return femstep("lab-femstep-rssi", c);
         }},
        {{"lab-femstep-throughput", "lab, 30 cm, throughput loop at 100 kbps, FEM removed at 10 s"},
         [] {
             auto c = default_controller(Strategy::throughput);
             c.throughput_target_kbps = 100.0;
             return femstep("lab-femstep-throughput", c);
         }},
        {{"lab-femstep-hybrid", "lab, 30 cm, cascaded loop at 100 kbps, FEM removed at 10 s"},
         [] {
             auto c = default_controller(Strategy::hybrid);
             c.throughput_target_kbps = 100.0;
             c.rssi_target_dbm = -65.0;
             return femstep("lab-femstep-hybrid", c);
         }},
        {{"calcfreq-sweep", "lab, 5 m, fixed 20 dBm; base scenario of the calculation-frequency sweep"},
         [] {
             ScenarioSpec s;
             s.name = "calcfreq-sweep";
             s.env = Environment::lab;
             s.controller = fixed(20.0);
             s.duration_s = 2000.0;
             s.motion = Motion::at(5.0);
             return s;
         }},
        {{"txp-sweep", "5 m, fixed TXP; base scenario of the TXP sweep over -18..20 dBm"},
         [] {
             ScenarioSpec s;
             s.name = "txp-sweep";
             s.env = Environment::lab;
             s.controller = fixed(20.0);
             s.duration_s = 100.0;
             s.motion = Motion::at(5.0);
             return s;
         }},
    };
    return table;
}

}  // namespace

const std::vector<PresetInfo>& preset_list() {
    static const std::vector<PresetInfo> list = [] {
        std::vector<PresetInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return list;
}

ScenarioSpec make_preset(std::string_view name) {
    for (const auto& e : entries())
        if (e.info.name == name) return e.make();
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace blepc
