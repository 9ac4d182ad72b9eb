#include <random>
#include <stdexcept>
#include <vector>

#include "blepc/measure.hpp"
#include "blepc/presets.hpp"
#include "blepc/sweep.hpp"
#include "doctest.h"

using namespace blepc;

TEST_CASE("empty window reads zero") {
    ThroughputEstimator est(1.0);
    CHECK(est.read_estimate(SimTime::from_seconds(0.5)) == 0.0);
    CHECK(est.read_estimate(SimTime::from_seconds(3.0)) == 0.0);
}

TEST_CASE("50 packets of 244 B in a 1 s window is 97.6 kbps") {
    ThroughputEstimator est(1.0);
    for (int i = 0; i < 50; ++i) est.record_delivery(244 * 8, SimTime::from_seconds(0.01 * i));
    CHECK(est.read_estimate(SimTime::from_seconds(0.99)) == 0.0);  // not closed yet
    CHECK(est.read_estimate(SimTime::from_seconds(1.0)) == doctest::Approx(97.6));
    // held until the next close
    CHECK(est.read_estimate(SimTime::from_seconds(1.7)) == doctest::Approx(97.6));
    CHECK(est.read_estimate(SimTime::from_seconds(2.0)) == 0.0);
}

TEST_CASE("window bookkeeping conserves delivered bits") {
    for (double hz : {0.7, 1.0, 10.0, 1000.0}) {
        ThroughputEstimator est(hz, SimTime{}, true);
        std::mt19937_64 g(42);
        std::uniform_int_distribution<int> gap(0, 4000);
        SimTime t{};
        double total = 0.0;
        for (int i = 0; i < 5000; ++i) {
            t = t + SimTime{gap(g)};
            est.record_delivery(1952.0, t);
            total += 1952.0;
        }
        est.read_estimate(t + est.window());
        double from_history = 0.0;
        for (double k : est.history()) from_history += k * 1000.0 * est.window().seconds();
        CHECK(est.finalized_bits() == doctest::Approx(total));
        CHECK(from_history == doctest::Approx(total));
        CHECK(est.bits_in_window() == 0.0);
        CHECK(est.history().size() == est.finalized_windows());
    }
}

TEST_CASE("long gaps are skipped without history") {
    ThroughputEstimator est(1000.0);
    est.record_delivery(8000.0, SimTime::from_seconds(0.0005));
    CHECK(est.read_estimate(SimTime::from_seconds(1e4)) == 0.0);
    CHECK(est.finalized_windows() == 10000000);
    CHECK(est.finalized_bits() == 8000.0);
}

TEST_CASE("estimator errors") {
    CHECK_THROWS_AS(ThroughputEstimator(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ThroughputEstimator(-1.0), std::invalid_argument);
    ThroughputEstimator est(1.0, SimTime::from_seconds(5.0));
    CHECK_THROWS_AS(est.record_delivery(1.0, SimTime::from_seconds(4.0)), std::invalid_argument);
}

TEST_CASE("sample_rssi") {
    auto env = default_profile(Environment::lab);
    auto link = LinkState::open(LinkParams{}, 4.0, SimTime{});
    FemModel fem;
    ChannelState ch;
    ch.shadow_db = 1.25;
    auto a = sample_rssi(link, fem, env, ch, 5.0, 0.0, 0.3);
    auto b = sample_rssi(link, fem, env, ch, 5.0, 0.0, 0.3);
    REQUIRE(a);
    CHECK(*a == *b);
    CHECK(*a == doctest::Approx(rssi(env, ch, 4.0, 13.0, 5.0, 0.3)));
    CHECK(*sample_rssi(link, fem, env, ch, 5.0, 6.0, 0.3) == doctest::Approx(*a - 6.0));
    link.connected = false;
    CHECK_FALSE(sample_rssi(link, fem, env, ch, 5.0, 0.0, 0.3).has_value());
}

TEST_CASE("estimate spread grows with calculation frequency at a fixed mean") {
    auto base = make_preset("calcfreq-sweep");
    base.duration_s = 100.0;
    const double freqs[] = {1.0, 10.0, 100.0, 1000.0};
    auto rows = calcfreq_sweep(base, freqs, ModelConfig{}, 100);
    REQUIRE(rows.size() == 4);
    CHECK(rows[3].throughput_std_kbps > rows[0].throughput_std_kbps);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].throughput_std_kbps >= rows[i - 1].throughput_std_kbps);
        CHECK(rows[i].throughput_mean_kbps ==
              doctest::Approx(rows[0].throughput_mean_kbps).epsilon(0.1));
    }
}
