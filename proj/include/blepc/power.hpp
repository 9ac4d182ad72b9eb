#pragma once

#include <span>
#include <utility>
#include <vector>

namespace blepc {

// Peripheral system power: idle floor + per-bit processing + duty-weighted
// radio power, the radio term scaled up while the FEM is engaged.
struct PowerModel {
    double p_idle_mw = 0.6;
    double e_per_bit_mj = 7.46e-6;
    // p_radio(txp) = radio_base_mw + radio_per_tx_mw * 10^(txp/10)
    double radio_base_mw = 17.53;
    double radio_per_tx_mw = 0.391;
    double fem_multiplier = 2.5;

    double p_radio(double effective_txp_dbm) const;
    // Throws std::invalid_argument on a violated invariant.
    void validate() const;
};

// Throws std::invalid_argument if radio_duty is outside [0, 1].
double peripheral_power(const PowerModel& model, double effective_txp_dbm, double radio_duty,
                        double delivered_kbps, bool fem_present);

enum class Role { central, peripheral };
enum class Strategy { fixed, rssi, throughput, hybrid };

/// Controller overhead lookup: (frequency Hz, mW) points, interpolated
/// linearly in log10(frequency) and held flat outside the table.
class OverheadCurve {
public:
    explicit OverheadCurve(std::vector<std::pair<double, double>> points);
    double at(double hz) const;
    std::span<const std::pair<double, double>> points() const { return points_; }

private:
    std::vector<std::pair<double, double>> points_;
};

const OverheadCurve& overhead_curve(Role role, Strategy strategy);

// Extra power for running the control loop at update_hz. For the hybrid pass
// the total update rate of both loops (e.g. 1 + 100 Hz). Fixed TXP costs nothing.
double control_overhead(Role role, Strategy strategy, double update_hz);

}  // namespace blepc
