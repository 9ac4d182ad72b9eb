#include "blepc/measure.hpp"

#include <stdexcept>

namespace blepc {

ThroughputEstimator::ThroughputEstimator(double calc_hz, SimTime start, bool keep_history)
    : window_start_(start), keep_history_(keep_history) {
    if (!(calc_hz > 0.0)) throw std::invalid_argument("calculation frequency must be > 0");
    window_ = period_of(calc_hz);
    if (window_.us <= 0) throw std::invalid_argument("calculation window below 1 us");
}

void ThroughputEstimator::roll_to(SimTime now) {
    if (now < window_start_) throw std::invalid_argument("estimator time went backwards");
    while (window_start_ + window_ <= now) {
        last_estimate_kbps_ = bits_in_window_ / window_.seconds() / 1000.0;
        finalized_bits_ += bits_in_window_;
        ++finalized_windows_;
        if (keep_history_) history_.push_back(last_estimate_kbps_);
        bits_in_window_ = 0.0;
        window_start_ = window_start_ + window_;
        // Jump over long empty stretches without looping per window.
        if (window_start_ + window_ <= now && !keep_history_) {
            const std::int64_t skip = (now - window_start_).us / window_.us;
            if (skip > 0) {
                last_estimate_kbps_ = 0.0;
                finalized_windows_ += static_cast<std::size_t>(skip);
                window_start_ = window_start_ + SimTime{skip * window_.us};
            }
        }
    }
}

void ThroughputEstimator::record_delivery(double bits, SimTime now) {
    roll_to(now);
    bits_in_window_ += bits;
}

double ThroughputEstimator::read_estimate(SimTime now) {
    roll_to(now);
    return last_estimate_kbps_;
}

std::optional<double> sample_rssi(const LinkState& link, const FemModel& fem,
                                  const EnvironmentProfile& env, const ChannelState& channel,
                                  double distance_m, double extra_atten_db, double fade_db) {
    if (!link.connected) return std::nullopt;
    return rssi(env, channel, effective_tx_power(link, fem), fem.rx_gain(), distance_m,
                fade_db) -
           extra_atten_db;
}

}  // namespace blepc
