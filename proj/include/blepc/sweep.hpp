#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blepc/model.hpp"
#include "blepc/sim.hpp"

namespace blepc {

struct CalcFreqRow {
    double calc_hz = 0.0;
    double duration_s = 0.0;
    std::size_t rssi_samples = 0;
    double rssi_mean_dbm = 0.0;
    double rssi_std_db = 0.0;
    std::size_t windows = 0;
    double throughput_mean_kbps = 0.0;
    double throughput_std_kbps = 0.0;
};

inline constexpr double kCalcFreqsHz[] = {0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};

// Static link measured at several calculation frequencies. Each frequency runs
// for max(base.duration_s, min_windows / f) on the same seed, so every
// frequency sees the same channel realization.
std::vector<CalcFreqRow> calcfreq_sweep(const ScenarioSpec& base, std::span<const double> freqs_hz,
                                        const ModelConfig& model = {},
                                        std::size_t min_windows = 200);

struct TxpRow {
    Environment env = Environment::lab;
    double txp_dbm = 0.0;
    double rssi_mean_dbm = 0.0;
    double rssi_std_db = 0.0;
    double throughput_mean_kbps = 0.0;
    double power_mean_mw = 0.0;
};

inline constexpr double kSweepTxpDbm[] = {-18.0, -12.0, -4.0, 4.0, 12.0, 20.0};

// Fixed geometry, FEM engaged, one row per TXP level. The levels are applied as
// effective transmit powers (no table quantization).
std::vector<TxpRow> txp_sweep(Environment env, std::span<const double> txp_dbm, double distance_m,
                              std::size_t events, std::uint64_t seed,
                              const ModelConfig& model = {});

// Least-squares slope of y on x.
double regression_slope(std::span<const double> x, std::span<const double> y);

}  // namespace blepc
