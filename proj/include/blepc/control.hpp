#pragma once

#include "blepc/power.hpp"
#include "blepc/radio.hpp"

namespace blepc {

struct PidConfig {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double output_clamp = 2.0;     // max |increment| per step
    double update_hz = 1.0;
    double integral_clamp = 2.0;   // bound on |ki * integral|

    void validate(const char* which) const;
};

struct PidState {
    double integral = 0.0;
    double prev_error = 0.0;
    bool initialized = false;
};

struct PidStep {
    double increment = 0.0;
    double raw = 0.0;
    PidState state;
};

// Incremental PID: the output is a bounded adjustment to the actuator, not an
// absolute setting. Integration is suspended while the output is saturated in
// the direction of the error.
PidStep pid_step(const PidConfig& cfg, const PidState& state, double error, double dt);

/// What drives the TXP. "inner" is the RSSI loop and "outer" the throughput
/// loop; the standalone RSSI strategy uses only inner, the standalone
/// throughput strategy only outer.
struct ControllerSpec {
    Strategy strategy = Strategy::fixed;
    double fixed_txp_dbm = 20.0;
    double initial_txp_dbm = 0.0;
    double rssi_target_dbm = -60.0;
    double throughput_target_kbps = 800.0;
    PidConfig inner_cfg;
    PidConfig outer_cfg;

    // Throws std::invalid_argument.
    void validate() const;
    double total_update_hz() const;
};

ControllerSpec default_controller(Strategy strategy);

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

struct ControllerState {
    PidState inner;
    PidState outer;
    // Unquantized actuator setting the increments accumulate into; kept inside
    // the table range. Commands are its quantized value.
    double txp_setpoint_dbm = 0.0;
    double rssi_target_dbm = -60.0;
};

ControllerState init_controller(const ControllerSpec& spec, const TxPowerTable& table);

struct TickResult {
    double commanded_txp_dbm;
    ControllerState state;
};

TickResult rssi_controller_tick(const ControllerSpec& spec, const ControllerState& state,
                                double measured_rssi_dbm, const TxPowerTable& table);

TickResult throughput_controller_tick(const ControllerSpec& spec, const ControllerState& state,
                                      double measured_kbps, const TxPowerTable& table);

// Outer hybrid tick: moves the RSSI target by the clamped throughput-loop
// increment. TXP is untouched.
ControllerState hybrid_outer_tick(const ControllerSpec& spec, const ControllerState& state,
                                  double measured_kbps);

// Inner hybrid tick: RSSI loop against the current (outer-set) target.
TickResult hybrid_inner_tick(const ControllerSpec& spec, const ControllerState& state,
                             double measured_rssi_dbm, const TxPowerTable& table);

struct HybridTickResult {
    double commanded_txp_dbm;
    double rssi_target_dbm;
    ControllerState state;
};

// One scheduler instant of the cascade. Outer runs first when both are due.
HybridTickResult hybrid_tick(const ControllerSpec& spec, const ControllerState& state,
                             double measured_rssi_dbm, double measured_kbps, bool outer_due,
                             bool inner_due, const TxPowerTable& table);

double fixed_policy(double txp_dbm, const TxPowerTable& table);

}  // namespace blepc
