#include "blepc/power.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blepc {

double PowerModel::p_radio(double effective_txp_dbm) const {
    return radio_base_mw + radio_per_tx_mw * std::pow(10.0, effective_txp_dbm / 10.0);
}

void PowerModel::validate() const {
    if (!(p_idle_mw > 0.0)) throw std::invalid_argument("power: p_idle_mw must be > 0");
    if (!(e_per_bit_mj >= 0.0)) throw std::invalid_argument("power: e_per_bit_mj must be >= 0");
    if (!(radio_base_mw >= 0.0 && radio_per_tx_mw >= 0.0))
        throw std::invalid_argument("power: radio coefficients must be >= 0");
    if (!(fem_multiplier >= 1.0)) throw std::invalid_argument("power: fem_multiplier must be >= 1");
}

double peripheral_power(const PowerModel& model, double effective_txp_dbm, double radio_duty,
                        double delivered_kbps, bool fem_present) {
    if (!(radio_duty >= 0.0 && radio_duty <= 1.0))
        throw std::invalid_argument("peripheral_power: radio duty outside [0, 1]");
    const double radio = model.p_radio(effective_txp_dbm) * radio_duty *
                         (fem_present ? model.fem_multiplier : 1.0);
    return model.p_idle_mw + model.e_per_bit_mj * delivered_kbps * 1000.0 + radio;
}

OverheadCurve::OverheadCurve(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("overhead curve needs at least one point");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i].first > points_[i - 1].first) || points_[i].second < points_[i - 1].second)
            throw std::invalid_argument("overhead curve must be increasing in frequency and power");
}

double OverheadCurve::at(double hz) const {
    if (hz <= points_.front().first) return points_.front().second;
    if (hz >= points_.back().first) return points_.back().second;
    auto hi = std::upper_bound(points_.begin(), points_.end(), hz,
                               [](double f, const auto& p) { return f < p.first; });
    auto lo = hi - 1;
    const double w = (std::log10(hz) - std::log10(lo->first)) /
                     (std::log10(hi->first) - std::log10(lo->first));
    return lo->second + w * (hi->second - lo->second);
}

const OverheadCurve& overhead_curve(Role role, Strategy strategy) {
    // Peripheral values at 100/1000 Hz and the hybrid point (101 Hz total) are
    // measured anchors; the remaining points only fix the curve shape.
    static const OverheadCurve none({{0.01, 0.0}});
    static const OverheadCurve periph_single(
        {{0.01, 0.005}, {1.0, 0.01}, {10.0, 0.02}, {100.0, 0.18}, {1000.0, 0.34}});
    static const OverheadCurve periph_hybrid(
        {{0.01, 0.005}, {1.0, 0.01}, {10.0, 0.02}, {101.0, 0.19}, {1000.0, 0.35}});
    static const OverheadCurve central_rssi(
        {{0.01, 0.02}, {1.0, 0.05}, {10.0, 0.3}, {100.0, 1.6}, {1000.0, 6.0}});
    static const OverheadCurve central_throughput(
        {{0.01, 0.03}, {1.0, 0.1}, {10.0, 0.6}, {100.0, 3.2}, {1000.0, 12.0}});
    static const OverheadCurve central_hybrid(
        {{0.01, 0.03}, {1.0, 0.1}, {10.0, 0.5}, {101.0, 2.39}, {1000.0, 9.0}});

    switch (strategy) {
        case Strategy::fixed: return none;
        case Strategy::rssi:
            return role == Role::central ? central_rssi : periph_single;
        case Strategy::throughput:
            return role == Role::central ? central_throughput : periph_single;
        case Strategy::hybrid:
            return role == Role::central ? central_hybrid : periph_hybrid;
    }
    return none;
}

double control_overhead(Role role, Strategy strategy, double update_hz) {
    if (!(update_hz > 0.0)) throw std::invalid_argument("control_overhead: update_hz must be > 0");
    if (strategy == Strategy::fixed) return 0.0;
    return overhead_curve(role, strategy).at(update_hz);
}

}  // namespace blepc
