#include <stdexcept>

#include "blepc/power.hpp"
#include "doctest.h"

using namespace blepc;

namespace {

// Radio-on fraction of a 400 ms interval carrying `kbps`, one failed packet
// per event included when the event is cut short.
double duty_for(double kbps, bool cut_short) {
    double pkts = kbps * 1000.0 * 0.4 / (244 * 8);
    return (pkts + (cut_short ? 1.0 : 0.0)) * 1.5e-3 / 0.4;
}

}  // namespace

TEST_CASE("no-FEM power anchors at 8 dBm chip output") {
    PowerModel m;
    double low = peripheral_power(m, 8.0, duty_for(2.0, true), 2.0, false);
    double mid = peripheral_power(m, 8.0, duty_for(600.0, true), 600.0, false);
    double high = peripheral_power(m, 8.0, duty_for(1298.08, false), 1298.08, false);
    CHECK(low == doctest::Approx(0.65).epsilon(0.2));
    CHECK(mid == doctest::Approx(14.15).epsilon(0.2));
    CHECK(high == doctest::Approx(30.31).epsilon(0.2));
}

TEST_CASE("FEM multiplies high-throughput power about fivefold") {
    PowerModel m;
    double bare = peripheral_power(m, 8.0, duty_for(1298.08, false), 1298.08, false);
    double fem = peripheral_power(m, 20.0, duty_for(1298.08, false), 1298.08, true);
    CHECK(fem / bare == doctest::Approx(5.0).epsilon(0.3));
    // at ~2 kbps the FEM hardly matters
    double lo_bare = peripheral_power(m, 8.0, duty_for(2.0, true), 2.0, false);
    double lo_fem = peripheral_power(m, 20.0, duty_for(2.0, true), 2.0, true);
    CHECK(lo_fem / lo_bare < 2.0);
}

TEST_CASE("power is monotone in TXP at fixed duty and throughput") {
    PowerModel m;
    for (double duty : {0.0, 0.1, 0.5, 1.0}) {
        double prev = peripheral_power(m, -40.0, duty, 300.0, true);
        for (double txp = -39.0; txp <= 20.0; txp += 1.0) {
            double p = peripheral_power(m, txp, duty, 300.0, true);
            REQUIRE(p >= prev);
            prev = p;
        }
    }
}

TEST_CASE("peripheral_power rejects duty outside [0,1]") {
    PowerModel m;
    CHECK_THROWS_AS(peripheral_power(m, 0.0, -0.01, 0.0, false), std::invalid_argument);
    CHECK_THROWS_AS(peripheral_power(m, 0.0, 1.01, 0.0, false), std::invalid_argument);
    CHECK(peripheral_power(m, 0.0, 0.0, 0.0, false) == doctest::Approx(m.p_idle_mw));
}

TEST_CASE("power model validation") {
    PowerModel m;
    CHECK_NOTHROW(m.validate());
    auto bad = m;
    bad.p_idle_mw = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = m;
    bad.fem_multiplier = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = m;
    bad.radio_per_tx_mw = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("controller overhead anchors") {
    CHECK(control_overhead(Role::peripheral, Strategy::rssi, 100.0) == doctest::Approx(0.18));
    CHECK(control_overhead(Role::peripheral, Strategy::rssi, 1000.0) == doctest::Approx(0.34));
    CHECK(control_overhead(Role::peripheral, Strategy::hybrid, 101.0) == doctest::Approx(0.19));
    CHECK(control_overhead(Role::central, Strategy::hybrid, 101.0) == doctest::Approx(2.39));
    CHECK(control_overhead(Role::central, Strategy::throughput, 1000.0) ==
          doctest::Approx(2.0 * control_overhead(Role::central, Strategy::rssi, 1000.0)));
    CHECK(control_overhead(Role::central, Strategy::fixed, 100.0) == 0.0);
    CHECK_THROWS_AS(control_overhead(Role::central, Strategy::rssi, 0.0), std::invalid_argument);
}

TEST_CASE("overhead is monotone in frequency and larger on the central") {
    for (auto s : {Strategy::rssi, Strategy::throughput, Strategy::hybrid}) {
        double prev_c = 0.0, prev_p = 0.0;
        for (double hz = 0.001; hz <= 5000.0; hz *= 1.3) {
            double c = control_overhead(Role::central, s, hz);
            double p = control_overhead(Role::peripheral, s, hz);
            REQUIRE(c >= prev_c);
            REQUIRE(p >= prev_p);
            REQUIRE(c > p);
            prev_c = c;
            prev_p = p;
        }
    }
}

TEST_CASE("overhead curve interpolates in log frequency") {
    OverheadCurve c({{1.0, 1.0}, {100.0, 3.0}});
    CHECK(c.at(10.0) == doctest::Approx(2.0));
    CHECK(c.at(0.1) == 1.0);
    CHECK(c.at(1e4) == 3.0);
    CHECK_THROWS_AS(OverheadCurve({}), std::invalid_argument);
    CHECK_THROWS_AS(OverheadCurve({{2.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
}
