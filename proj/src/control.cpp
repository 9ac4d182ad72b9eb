#include "blepc/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace blepc {

void PidConfig::validate(const char* which) const {
    const std::string who = std::string(which) + ": ";
    if (!(update_hz > 0.0)) throw std::invalid_argument(who + "update_hz must be > 0");
    if (!(output_clamp > 0.0)) throw std::invalid_argument(who + "output_clamp must be > 0");
    if (!(integral_clamp >= output_clamp))
        throw std::invalid_argument(who + "integral_clamp must be >= output_clamp");
}

PidStep pid_step(const PidConfig& cfg, const PidState& state, double error, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("pid_step: dt must be positive");
    const double integral = state.integral + error * dt;
    const double derivative = state.initialized ? (error - state.prev_error) / dt : 0.0;
    const double raw = cfg.kp * error + cfg.ki * integral + cfg.kd * derivative;

    PidStep out;
    out.raw = raw;
    out.increment = std::clamp(raw, -cfg.output_clamp, cfg.output_clamp);
    const bool saturated = std::abs(raw) > cfg.output_clamp;
    const bool same_sign = (error > 0.0 && raw > 0.0) || (error < 0.0 && raw < 0.0);
    out.state.integral = (saturated && same_sign) ? state.integral : integral;
    if (cfg.ki != 0.0) {
        const double bound = cfg.integral_clamp / std::abs(cfg.ki);
        out.state.integral = std::clamp(out.state.integral, -bound, bound);
    }
    out.state.prev_error = error;
    out.state.initialized = true;
    return out;
}

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::fixed: return "fixed";
        case Strategy::rssi: return "rssi";
        case Strategy::throughput: return "throughput";
        case Strategy::hybrid: return "hybrid";
    }
    return "unknown";
}

Strategy strategy_from_string(std::string_view name) {
    for (auto s : {Strategy::fixed, Strategy::rssi, Strategy::throughput, Strategy::hybrid})
        if (to_string(s) == name) return s;
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

void ControllerSpec::validate() const {
    switch (strategy) {
        case Strategy::fixed: break;
        case Strategy::rssi: inner_cfg.validate("inner"); break;
        case Strategy::throughput: outer_cfg.validate("outer"); break;
        case Strategy::hybrid:
            inner_cfg.validate("inner");
            outer_cfg.validate("outer");
            if (inner_cfg.update_hz < outer_cfg.update_hz)
                throw std::invalid_argument("hybrid: inner update_hz must be >= outer update_hz");
            break;
    }
}

double ControllerSpec::total_update_hz() const {
    switch (strategy) {
        case Strategy::fixed: return 0.0;
        case Strategy::rssi: return inner_cfg.update_hz;
        case Strategy::throughput: return outer_cfg.update_hz;
        case Strategy::hybrid: return inner_cfg.update_hz + outer_cfg.update_hz;
    }
    return 0.0;
}

ControllerSpec default_controller(Strategy strategy) {
    ControllerSpec spec;
    spec.strategy = strategy;
    switch (strategy) {
        case Strategy::fixed: break;
        case Strategy::rssi:
            spec.inner_cfg = {0.2, 0.01, 0.0, 2.0, 100.0, 2.0};
            break;
        case Strategy::throughput:
            spec.outer_cfg = {0.009, 0.0, 0.0001, 2.0, 1.0, 2.0};
            break;
        case Strategy::hybrid:
            // Gains as published for the cascade; they look swapped against the
            // standalone loops but are kept verbatim.
            spec.inner_cfg = {0.009, 0.0, 0.0001, 2.0, 100.0, 2.0};
            spec.outer_cfg = {0.1, 0.0, 0.01, 2.0, 1.0, 2.0};
            break;
    }
    return spec;
}

ControllerState init_controller(const ControllerSpec& spec, const TxPowerTable& table) {
    ControllerState st;
    const double start =
        spec.strategy == Strategy::fixed ? spec.fixed_txp_dbm : spec.initial_txp_dbm;
    st.txp_setpoint_dbm = std::clamp(start, table.min_dbm(), table.max_dbm());
    st.rssi_target_dbm = spec.rssi_target_dbm;
    return st;
}

namespace {

TickResult move_txp(ControllerState st, double increment, const TxPowerTable& table) {
    st.txp_setpoint_dbm =
        std::clamp(st.txp_setpoint_dbm + increment, table.min_dbm(), table.max_dbm());
    return {quantize_txp(table, st.txp_setpoint_dbm), st};
}

}  // namespace

TickResult rssi_controller_tick(const ControllerSpec& spec, const ControllerState& state,
                                double measured_rssi_dbm, const TxPowerTable& table) {
    const auto& cfg = spec.inner_cfg;
    auto step = pid_step(cfg, state.inner, spec.rssi_target_dbm - measured_rssi_dbm,
                         1.0 / cfg.update_hz);
    ControllerState st = state;
    st.inner = step.state;
    return move_txp(st, step.increment, table);
}

TickResult throughput_controller_tick(const ControllerSpec& spec, const ControllerState& state,
                                      double measured_kbps, const TxPowerTable& table) {
    const auto& cfg = spec.outer_cfg;
    auto step = pid_step(cfg, state.outer, spec.throughput_target_kbps - measured_kbps,
                         1.0 / cfg.update_hz);
    ControllerState st = state;
    st.outer = step.state;
    return move_txp(st, step.increment, table);
}

ControllerState hybrid_outer_tick(const ControllerSpec& spec, const ControllerState& state,
                                  double measured_kbps) {
    const auto& cfg = spec.outer_cfg;
    auto step = pid_step(cfg, state.outer, spec.throughput_target_kbps - measured_kbps,
                         1.0 / cfg.update_hz);
    ControllerState st = state;
    st.outer = step.state;
    st.rssi_target_dbm += step.increment;
    return st;
}

TickResult hybrid_inner_tick(const ControllerSpec& spec, const ControllerState& state,
                             double measured_rssi_dbm, const TxPowerTable& table) {
    const auto& cfg = spec.inner_cfg;
    auto step = pid_step(cfg, state.inner, state.rssi_target_dbm - measured_rssi_dbm,
                         1.0 / cfg.update_hz);
    ControllerState st = state;
    st.inner = step.state;
    return move_txp(st, step.increment, table);
}

HybridTickResult hybrid_tick(const ControllerSpec& spec, const ControllerState& state,
                             double measured_rssi_dbm, double measured_kbps, bool outer_due,
                             bool inner_due, const TxPowerTable& table) {
    ControllerState st = state;
    if (outer_due) st = hybrid_outer_tick(spec, st, measured_kbps);
    double commanded = quantize_txp(table, st.txp_setpoint_dbm);
    if (inner_due) {
        auto r = hybrid_inner_tick(spec, st, measured_rssi_dbm, table);
        commanded = r.commanded_txp_dbm;
        st = r.state;
    }
    return {commanded, st.rssi_target_dbm, st};
}

double fixed_policy(double txp_dbm, const TxPowerTable& table) {
    return quantize_txp(table, txp_dbm);
}

}  // namespace blepc
