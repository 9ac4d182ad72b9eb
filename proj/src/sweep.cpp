#include "blepc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blepc/measure.hpp"
#include "blepc/report.hpp"

namespace blepc {

namespace {

CalcFreqRow sweep_one(const ScenarioSpec& base, double hz, const ModelConfig& model,
                      std::size_t min_windows) {
    const auto& env = model.profile(base.env);
    RngStreams rng(base.seed);
    FemModel fem = model.fem;
    fem.set_present(base.fem_initial);
    const double txp = fixed_policy(base.controller.fixed_txp_dbm, model.table);
    LinkState link = LinkState::open(model.link, txp, SimTime{});
    const double eff = effective_tx_power(link, fem);
    const double distance = distance_at(base.motion, 0.0);

    CalcFreqRow row;
    row.calc_hz = hz;
    row.duration_s = std::max(base.duration_s, static_cast<double>(min_windows) / hz);
    const SimTime end = SimTime::from_seconds(row.duration_s);
    const SimTime interval = SimTime::from_seconds(model.link.conn_interval_s);
    const SimTime cycle = SimTime::from_seconds(model.link.pkt_cycle_s);
    const SimTime sample_period = period_of(hz);
    const double bits = model.link.payload_bytes * 8.0;

    ThroughputEstimator est(hz, SimTime{}, true);
    ChannelState channel;
    if (env.shadow_sigma_db > 0.0) channel.shadow_db = env.shadow_sigma_db * standard_normal(rng.shadowing);

    std::vector<double> readings;
    SimTime next_sample = sample_period;
    for (SimTime t{}; t < end; t = t + interval) {
        if (t.us > 0) channel = step_channel(env, channel, model.link.conn_interval_s, rng.shadowing);
        const double r = rssi(env, channel, eff, fem.rx_gain(), distance, draw_fade(env, rng.fading));
        const auto result = run_connection_event(link, env, r, rng.packet);
        for (int i = 0; i < result.delivered_packets; ++i) {
            const SimTime done = t + SimTime{cycle.us * (i + 1)};
            if (done >= end) break;
            est.record_delivery(bits, done);
        }
        const SimTime event_end = std::min(t + interval, end);
        for (; next_sample < event_end; next_sample = next_sample + sample_period)
            readings.push_back(
                rssi(env, channel, eff, fem.rx_gain(), distance, draw_fade(env, rng.fading)));
    }
    est.read_estimate(end);

    std::tie(row.rssi_mean_dbm, row.rssi_std_db) = mean_std(readings);
    row.rssi_samples = readings.size();
    std::tie(row.throughput_mean_kbps, row.throughput_std_kbps) = mean_std(est.history());
    row.windows = est.history().size();
    return row;
}

}  // namespace

std::vector<CalcFreqRow> calcfreq_sweep(const ScenarioSpec& base, std::span<const double> freqs_hz,
                                        const ModelConfig& model, std::size_t min_windows) {
    model.validate();
    for (double f : freqs_hz)
        if (!(f > 0.0)) throw std::invalid_argument("calculation frequency must be > 0");
    std::vector<CalcFreqRow> rows(freqs_hz.size());
    const auto n = static_cast<long long>(freqs_hz.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i)] =
            sweep_one(base, freqs_hz[static_cast<std::size_t>(i)], model, min_windows);
    return rows;
}

std::vector<TxpRow> txp_sweep(Environment env_name, std::span<const double> txp_dbm,
                              double distance_m, std::size_t events, std::uint64_t seed,
                              const ModelConfig& model) {
    model.validate();
    const auto& env = model.profile(env_name);
    const LinkState link = LinkState::open(model.link, model.table.max_dbm(), SimTime{});
    const double interval = model.link.conn_interval_s;
    std::vector<TxpRow> rows;
    for (double txp : txp_dbm) {
        RngStreams rng(seed);
        ChannelState channel;
        if (env.shadow_sigma_db > 0.0)
            channel.shadow_db = env.shadow_sigma_db * standard_normal(rng.shadowing);
        std::vector<double> r_all;
        double kbps_sum = 0.0, power_sum = 0.0;
        for (std::size_t k = 0; k < events; ++k) {
            if (k > 0) channel = step_channel(env, channel, interval, rng.shadowing);
            const double r = rssi(env, channel, txp, model.fem.rx_gain_db, distance_m,
                                  draw_fade(env, rng.fading));
            const auto res = run_connection_event(link, env, r, rng.packet);
            const double kbps = res.delivered_bits / interval / 1000.0;
            r_all.push_back(r);
            kbps_sum += kbps;
            power_sum += peripheral_power(model.power, txp,
                                          std::clamp(res.radio_active_s / interval, 0.0, 1.0), kbps,
                                          true);
        }
        TxpRow row;
        row.env = env_name;
        row.txp_dbm = txp;
        std::tie(row.rssi_mean_dbm, row.rssi_std_db) = mean_std(r_all);
        row.throughput_mean_kbps = kbps_sum / static_cast<double>(events);
        row.power_mean_mw = power_sum / static_cast<double>(events);
        rows.push_back(row);
    }
    return rows;
}

double regression_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("regression needs two equal-length series of >= 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("regression: x has no spread");
    return sxy / sxx;
}

}  // namespace blepc
