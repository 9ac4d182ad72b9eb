#include "blepc/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace blepc {

TxPowerTable::TxPowerTable(std::vector<double> levels_dbm) : levels_(std::move(levels_dbm)) {
    if (levels_.empty()) throw std::invalid_argument("TX power table is empty");
    for (std::size_t i = 1; i < levels_.size(); ++i)
        if (!(levels_[i] > levels_[i - 1]))
            throw std::invalid_argument("TX power levels must be strictly increasing");
}

TxPowerTable TxPowerTable::fem_default() {
    // Chip: +8..-10 in 1 dB, -10..-22 in 2 dB, then -28, -40, -46. Shifted +12.
    std::vector<double> levels{-36.0, -34.0, -28.0, -16.0};
    for (int v = -10; v < 2; v += 2) levels.push_back(v);
    for (int v = 2; v <= 20; ++v) levels.push_back(v);
    return TxPowerTable(std::move(levels));
}

bool TxPowerTable::contains(double dbm) const {
    return std::binary_search(levels_.begin(), levels_.end(), dbm);
}

double TxPowerTable::max_gap_db() const {
    double gap = 0.0;
    for (std::size_t i = 1; i < levels_.size(); ++i) gap = std::max(gap, levels_[i] - levels_[i - 1]);
    return gap;
}

double quantize_txp(const TxPowerTable& table, double requested_dbm) {
    const auto levels = table.levels();
    const double x = std::clamp(requested_dbm, table.min_dbm(), table.max_dbm());
    auto hi = std::lower_bound(levels.begin(), levels.end(), x);
    if (hi == levels.begin()) return *hi;
    if (hi == levels.end()) return levels.back();
    const double upper = *hi;
    const double lower = *(hi - 1);
    return (upper - x < x - lower) ? upper : lower;
}

LinkState LinkState::open(const LinkParams& params, double initial_txp_dbm, SimTime now) {
    LinkState link;
    link.params = params;
    link.connected = true;
    link.commanded_txp_dbm = initial_txp_dbm;
    link.supervision_deadline = now + SimTime::from_seconds(params.supervision_timeout_s);
    return link;
}

double effective_tx_power(const LinkState& link, const FemModel& fem) {
    if (fem.tx_present) return link.commanded_txp_dbm;
    return std::min(link.commanded_txp_dbm - fem.tx_shift_db, kChipMaxTxpDbm);
}

double event_per(const LinkParams& params, const EnvironmentProfile& env, double rssi_dbm) {
    if (rssi_dbm < params.sensitivity_dbm) return 1.0;
    return per(env, rssi_dbm);
}

namespace {

EventResult finish(const LinkParams& params, int delivered, bool failed) {
    EventResult r;
    r.delivered_packets = delivered;
    r.delivered_bits = static_cast<double>(delivered) * params.payload_bytes * 8.0;
    r.first_failure = failed;
    r.radio_active_s = std::min((delivered + (failed ? 1 : 0)) * params.pkt_cycle_s,
                                params.conn_interval_s);
    return r;
}

}  // namespace

EventResult run_connection_event(const LinkState& link, const EnvironmentProfile& env,
                                 double rssi_dbm, Engine& eng) {
    const auto& params = link.params;
    const double p = event_per(params, env, rssi_dbm);
    const int cap = params.max_pkts_per_event;
    if (p <= 0.0) return finish(params, cap, false);
    if (p >= 1.0) return finish(params, 0, true);
    // Successes before the first failure, by inversion. Kept in double so a
    // denormal p cannot overflow the integer conversion.
    const double u = 1.0 - uniform01(eng);  // (0, 1]
    const double run = std::floor(std::log(u) / std::log1p(-p));
    if (!(run < cap)) return finish(params, cap, false);
    return finish(params, static_cast<int>(run), true);
}

EventResult run_connection_event_reference(const LinkState& link, const EnvironmentProfile& env,
                                           double rssi_dbm, Engine& eng) {
    const auto& params = link.params;
    const double p = event_per(params, env, rssi_dbm);
    int delivered = 0;
    while (delivered < params.max_pkts_per_event) {
        if (uniform01(eng) < p) return finish(params, delivered, true);
        ++delivered;
    }
    return finish(params, delivered, false);
}

LinkState update_supervision(const LinkState& link, const EventResult& result, SimTime now) {
    LinkState next = link;
    if (!next.connected) return next;
    if (result.delivered_packets > 0)
        next.supervision_deadline = now + SimTime::from_seconds(next.params.supervision_timeout_s);
    if (now >= next.supervision_deadline) next.connected = false;
    return next;
}

double LatencyModel::sample(Engine& eng) const {
    if (sigma_s == 0.0) return std::max(mean_s, 0.0);
    return std::max(0.0, mean_s + sigma_s * standard_normal(eng));
}

LinkState apply_txp_command(const LinkState& link, const TxPowerTable& table, double txp_dbm,
                            SimTime issue_time, double latency_s) {
    if (!table.contains(txp_dbm))
        throw std::invalid_argument("TXP command " + std::to_string(txp_dbm) +
                                    " dBm is not a table level");
    LinkState next = link;
    SimTime apply = issue_time + SimTime::from_seconds(std::max(latency_s, 0.0));
    if (!next.pending_commands.empty())
        apply = std::max(apply, next.pending_commands.back().apply_time);
    next.pending_commands.push_back({apply, txp_dbm});
    return next;
}

LinkState advance_commands(const LinkState& link, SimTime now) {
    LinkState next = link;
    while (!next.pending_commands.empty() && next.pending_commands.front().apply_time <= now) {
        next.commanded_txp_dbm = next.pending_commands.front().txp_dbm;
        next.pending_commands.pop_front();
    }
    return next;
}

}  // namespace blepc
