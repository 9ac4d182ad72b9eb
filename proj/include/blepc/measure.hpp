#pragma once

#include <optional>
#include <vector>

#include "blepc/channel.hpp"
#include "blepc/radio.hpp"
#include "blepc/time.hpp"

namespace blepc {

// Tumbling-window goodput estimate. The value of the last closed window is
// held until the next one closes.
class ThroughputEstimator {
public:
    // window = 1 / calc_hz. Throws std::invalid_argument if calc_hz <= 0.
    explicit ThroughputEstimator(double calc_hz, SimTime start = {}, bool keep_history = false);

    // Deliveries must arrive in non-decreasing time order.
    void record_delivery(double bits, SimTime now);
    double read_estimate(SimTime now);

    SimTime window() const { return window_; }
    SimTime window_start() const { return window_start_; }
    double bits_in_window() const { return bits_in_window_; }
    double last_estimate_kbps() const { return last_estimate_kbps_; }
    // Bits credited to windows that have closed.
    double finalized_bits() const { return finalized_bits_; }
    std::size_t finalized_windows() const { return finalized_windows_; }
    const std::vector<double>& history() const { return history_; }

private:
    void roll_to(SimTime now);

    SimTime window_;
    SimTime window_start_;
    double bits_in_window_ = 0.0;
    double last_estimate_kbps_ = 0.0;
    double finalized_bits_ = 0.0;
    std::size_t finalized_windows_ = 0;
    bool keep_history_;
    std::vector<double> history_;
};

// Instantaneous RSSI at the central; empty while disconnected.
std::optional<double> sample_rssi(const LinkState& link, const FemModel& fem,
                                  const EnvironmentProfile& env, const ChannelState& channel,
                                  double distance_m, double extra_atten_db, double fade_db);

}  // namespace blepc
