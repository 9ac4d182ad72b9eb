#include "blepc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blepc {

std::string_view to_string(Environment env) {
    switch (env) {
        case Environment::rooftop: return "rooftop";
        case Environment::corridor: return "corridor";
        case Environment::lab: return "lab";
    }
    return "unknown";
}

Environment environment_from_string(std::string_view name) {
    for (auto env : kAllEnvironments)
        if (to_string(env) == name) return env;
    throw std::invalid_argument("unknown environment '" + std::string(name) + "'");
}

void EnvironmentProfile::validate() const {
    const std::string who = std::string(to_string(name)) + ": ";
    if (!(exponent >= 2.0)) throw std::invalid_argument(who + "exponent must be >= 2.0");
    if (!(shadow_sigma_db >= 0.0))
        throw std::invalid_argument(who + "shadow_sigma_db must be >= 0");
    if (!(fade_sigma_db >= 0.0)) throw std::invalid_argument(who + "fade_sigma_db must be >= 0");
    if (!(shadow_corr >= 0.0 && shadow_corr < 1.0))
        throw std::invalid_argument(who + "shadow_corr must be in [0, 1)");
    if (!(per_slope_db > 0.0)) throw std::invalid_argument(who + "per_slope_db must be > 0");
}

EnvironmentProfile default_profile(Environment env) {
    // Fitted constants; see tests/test_calibration.cpp for the targets they satisfy.
    switch (env) {
        case Environment::rooftop:
            return {Environment::rooftop, 43.0, 2.2, 2.5, 0.95, 1.0, -77.5, 2.82};
        case Environment::corridor:
            return {Environment::corridor, 45.0, 2.2, 3.5, 0.95, 1.5, -76.2, 3.2};
        case Environment::lab:
            return {Environment::lab, 46.0, 2.4, 4.75, 0.95, 1.5, -75.3, 3.4};
    }
    throw std::invalid_argument("unknown environment");
}

double path_loss(const EnvironmentProfile& env, double distance_m) {
    const double d = std::max(distance_m, kReferenceDistanceM);
    return env.pl0_db + 10.0 * env.exponent * std::log10(d / kReferenceDistanceM);
}

ChannelState step_channel(const EnvironmentProfile& env, const ChannelState& state, double dt,
                          Engine& eng) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_channel: dt must be positive");
    ChannelState next = state;
    if (env.shadow_sigma_db == 0.0) {
        next.shadow_db = 0.0;
        return next;
    }
    const double rho = env.shadow_corr;
    const double innovation = env.shadow_sigma_db * std::sqrt(1.0 - rho * rho);
    next.shadow_db = rho * state.shadow_db + innovation * standard_normal(eng);
    return next;
}

double draw_fade(const EnvironmentProfile& env, Engine& eng) {
    if (env.fade_sigma_db == 0.0) return 0.0;
    return env.fade_sigma_db * standard_normal(eng);
}

double rssi(const EnvironmentProfile& env, const ChannelState& state, double effective_txp_dbm,
            double rx_gain_db, double distance_m, double fade_db) {
    return effective_txp_dbm + rx_gain_db - path_loss(env, distance_m) + state.shadow_db + fade_db;
}

double per(const EnvironmentProfile& env, double rssi_dbm) {
    const double z = (rssi_dbm - env.per_r50_dbm) / env.per_slope_db;
    // 1 / (1 + e^z), written to stay finite for large |z|.
    if (z >= 0.0) {
        const double e = std::exp(-z);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(z));
}

double expected_throughput_from_per(double per_value, const EventCapacity& cap) {
    const double p = std::clamp(per_value, 0.0, 1.0);
    // Mean of min(N_max, Geometric(p)) successes before the first failure:
    // (1-p)/p * (1 - (1-p)^N_max).
    const double n_max = static_cast<double>(cap.max_pkts_per_event);
    double packets = n_max;
    if (p >= 1.0) packets = 0.0;
    else if (p > 0.0) packets = (1.0 - p) / p * -std::expm1(n_max * std::log1p(-p));
    return packets * cap.payload_bytes * 8.0 / cap.conn_interval_s / 1000.0;
}

double expected_throughput(const EnvironmentProfile& env, double rssi_dbm,
                           const EventCapacity& cap) {
    if (rssi_dbm < cap.sensitivity_dbm) return 0.0;
    return expected_throughput_from_per(per(env, rssi_dbm), cap);
}

}  // namespace blepc
