#pragma once

#include <deque>
#include <span>
#include <vector>

#include "blepc/channel.hpp"
#include "blepc/rng.hpp"
#include "blepc/time.hpp"

namespace blepc {

/// Selectable transmit power levels of the chip+FEM system, ascending.
class TxPowerTable {
public:
    // Throws std::invalid_argument unless levels are non-empty and strictly increasing.
    explicit TxPowerTable(std::vector<double> levels_dbm);

    // Chip table shifted by the FEM's +12 dB, plus the -36 dBm endpoint.
    static TxPowerTable fem_default();

    std::span<const double> levels() const { return levels_; }
    double min_dbm() const { return levels_.front(); }
    double max_dbm() const { return levels_.back(); }
    bool contains(double dbm) const;
    // Largest distance between adjacent levels.
    double max_gap_db() const;

private:
    std::vector<double> levels_;
};

// Nearest level to clamp(requested, min, max); ties go to the lower level.
double quantize_txp(const TxPowerTable& table, double requested_dbm);

// External front-end module. The transmit and receive paths can be dropped
// independently; "present" means both are in circuit.
struct FemModel {
    bool tx_present = true;
    bool rx_present = true;
    double tx_shift_db = 12.0;
    double rx_gain_db = 13.0;

    bool present() const { return tx_present && rx_present; }
    void set_present(bool on) { tx_present = rx_present = on; }
    double rx_gain() const { return rx_present ? rx_gain_db : 0.0; }
};

inline constexpr double kChipMaxTxpDbm = 8.0;

struct LinkParams {
    double sensitivity_dbm = -90.0;
    double conn_interval_s = 0.4;
    int payload_bytes = 244;
    double pkt_cycle_s = 1.5e-3;
    int max_pkts_per_event = 266;
    double supervision_timeout_s = 3.2;

    EventCapacity capacity() const {
        return {max_pkts_per_event, payload_bytes, conn_interval_s, sensitivity_dbm};
    }
};

struct PendingCommand {
    SimTime apply_time;
    double txp_dbm;
};

struct LinkState {
    LinkParams params;
    bool connected = true;
    double commanded_txp_dbm = 0.0;
    std::deque<PendingCommand> pending_commands;  // ascending apply_time
    SimTime supervision_deadline{};

    static LinkState open(const LinkParams& params, double initial_txp_dbm, SimTime now);
};

struct EventResult {
    int delivered_packets = 0;
    double delivered_bits = 0.0;
    double radio_active_s = 0.0;
    bool first_failure = false;
};

double effective_tx_power(const LinkState& link, const FemModel& fem);

// Packet engine for one connection event at a given RSSI. Packets go out back
// to back until the first CRC failure; the rest of the interval is idle.
// Draws the run length in one geometric sample.
EventResult run_connection_event(const LinkState& link, const EnvironmentProfile& env,
                                 double rssi_dbm, Engine& eng);

// Packet-by-packet Bernoulli version of run_connection_event. Same law, used
// as the test reference for the geometric shortcut.
EventResult run_connection_event_reference(const LinkState& link, const EnvironmentProfile& env,
                                           double rssi_dbm, Engine& eng);

// Packet error probability the engine uses, including the sensitivity floor.
double event_per(const LinkParams& params, const EnvironmentProfile& env, double rssi_dbm);

LinkState update_supervision(const LinkState& link, const EventResult& result, SimTime now);

struct LatencyModel {
    double mean_s = 1.75e-3;
    double sigma_s = 1.02e-3;

    // Normal sample censored at zero.
    double sample(Engine& eng) const;
};

// Queues a TXP change to take effect at issue_time + latency. Commands are
// applied in issue order. Throws std::invalid_argument for off-grid values.
LinkState apply_txp_command(const LinkState& link, const TxPowerTable& table, double txp_dbm,
                            SimTime issue_time, double latency_s);

// Applies every pending command due at or before now.
LinkState advance_commands(const LinkState& link, SimTime now);

}  // namespace blepc
