#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "blepc/control.hpp"
#include "blepc/model.hpp"

namespace blepc {

struct Motion {
    enum class Kind { fixed, ramp };
    Kind kind = Kind::fixed;
    double d_start_m = 1.0;
    double d_end_m = 1.0;
    double duration_s = 0.0;  // ramp only

    static Motion at(double d) { return {Kind::fixed, d, d, 0.0}; }
    static Motion ramp(double from, double to, double duration) {
        return {Kind::ramp, from, to, duration};
    }
};

double distance_at(const Motion& motion, double t_s);

enum class DisturbanceKind { fem_remove, fem_restore, step_atten };

struct Disturbance {
    double time_s = 0.0;
    DisturbanceKind kind = DisturbanceKind::fem_remove;
    double atten_db = 0.0;  // step_atten only
};

std::string_view to_string(DisturbanceKind k);

struct ScenarioSpec {
    std::string name = "custom";
    Environment env = Environment::lab;
    ControllerSpec controller;
    double duration_s = 100.0;
    Motion motion;
    std::vector<Disturbance> disturbances;
    std::uint64_t seed = 1;
    bool fem_initial = true;
    // false: fem_remove drops only the receive gain.
    bool fem_remove_drops_tx = true;
    double throughput_calc_hz = 1.0;

    // Throws std::invalid_argument before any simulation work.
    void validate() const;
};

// Link and front-end conditions a disturbance acts on.
struct DisturbanceState {
    FemModel fem;
    double extra_atten_db = 0.0;
};

DisturbanceState apply_disturbance(const DisturbanceState& state, const Disturbance& d,
                                   bool drops_tx);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TraceSample {
    double t_s = 0.0;
    double distance_m = 0.0;
    double rssi_dbm = kNaN;          // NaN when no reading was taken at t
    double throughput_kbps = 0.0;    // held windowed estimate
    double txp_dbm = 0.0;            // commanded (on-grid)
    double rssi_target_dbm = kNaN;   // NaN for strategies without an RSSI target
    double power_mw = 0.0;
    bool connected = true;

    bool operator==(const TraceSample&) const = default;
};

struct TraceEvent {
    double t_s = 0.0;
    std::string label;
    bool operator==(const TraceEvent&) const = default;
};

struct RunTrace {
    std::vector<TraceSample> samples;
    std::vector<TraceEvent> events;
};

// Runs one scenario. Samples are emitted at every connection event and every
// RSSI-loop tick; identical spec and model produce identical traces.
RunTrace run_scenario(const ScenarioSpec& spec, const ModelConfig& model = {});

}  // namespace blepc
