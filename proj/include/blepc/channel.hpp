#pragma once

#include <array>
#include <string>
#include <string_view>

#include "blepc/rng.hpp"

namespace blepc {

enum class Environment { rooftop, corridor, lab };

std::string_view to_string(Environment env);
// Throws std::invalid_argument for unknown names.
Environment environment_from_string(std::string_view name);

inline constexpr std::array<Environment, 3> kAllEnvironments{
    Environment::rooftop, Environment::corridor, Environment::lab};

inline constexpr double kReferenceDistanceM = 1.0;

/// Propagation and packet-error parameters of one environment.
///
/// RSSI = txp + rx_gain - path_loss(d) + shadow + fade, with log-distance path
/// loss, AR(1) shadowing advanced once per connection event and i.i.d. fading
/// drawn per RSSI reading. PER is logistic in RSSI.
struct EnvironmentProfile {
    Environment name = Environment::lab;
    double pl0_db = 40.0;          // loss at 1 m
    double exponent = 2.0;
    double shadow_sigma_db = 0.0;
    double shadow_corr = 0.0;      // per channel step, [0, 1)
    double fade_sigma_db = 0.0;
    double per_r50_dbm = -75.0;    // PER = 0.5 here
    double per_slope_db = 4.0;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

EnvironmentProfile default_profile(Environment env);

struct ChannelState {
    double shadow_db = 0.0;
    Stream rng_stream = Stream::shadowing;
};

double path_loss(const EnvironmentProfile& env, double distance_m);

// Advances the shadowing process by one sample. dt must be positive.
ChannelState step_channel(const EnvironmentProfile& env, const ChannelState& state, double dt,
                          Engine& eng);

double draw_fade(const EnvironmentProfile& env, Engine& eng);

// Deterministic given the fade sample; callers draw the fade with draw_fade so
// two calls can share a noise realization.
double rssi(const EnvironmentProfile& env, const ChannelState& state, double effective_txp_dbm,
            double rx_gain_db, double distance_m, double fade_db);

double per(const EnvironmentProfile& env, double rssi_dbm);

// Link-layer constants the throughput oracle needs. Defaults match the radio
// defaults (244 B payload, 400 ms interval, 266 packets per event).
struct EventCapacity {
    int max_pkts_per_event = 266;
    int payload_bytes = 244;
    double conn_interval_s = 0.4;
    double sensitivity_dbm = -90.0;

    double peak_kbps() const {
        return max_pkts_per_event * payload_bytes * 8.0 / conn_interval_s / 1000.0;
    }
};

// Closed-form throughput for a fixed RSSI: the mean run of successes before
// the first failure, truncated at N_max packets per event. Approaches
// min(N_max, (1-p)/p) away from the knee. RSSI under the receiver sensitivity
// yields zero.
double expected_throughput(const EnvironmentProfile& env, double rssi_dbm,
                           const EventCapacity& cap = {});

// Same, from a packet error probability.
double expected_throughput_from_per(double per_value, const EventCapacity& cap = {});

}  // namespace blepc
