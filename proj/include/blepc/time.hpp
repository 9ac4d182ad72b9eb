#pragma once

#include <cmath>
#include <cstdint>

namespace blepc {

// Simulation clock in integer microseconds. Integer ticks keep event ties
// exact (a 100 Hz tick and a 400 ms connection event at t=0.4 s coincide).
struct SimTime {
    std::int64_t us = 0;

    static constexpr SimTime from_seconds(double s) {
        return SimTime{static_cast<std::int64_t>(s * 1e6 + (s >= 0 ? 0.5 : -0.5))};
    }
    constexpr double seconds() const { return static_cast<double>(us) * 1e-6; }

    friend constexpr auto operator<=>(SimTime, SimTime) = default;
    friend constexpr SimTime operator+(SimTime a, SimTime b) { return {a.us + b.us}; }
    friend constexpr SimTime operator-(SimTime a, SimTime b) { return {a.us - b.us}; }
};

// Period of a frequency, rounded to the microsecond grid.
inline SimTime period_of(double hz) {
    return SimTime{static_cast<std::int64_t>(std::llround(1e6 / hz))};
}

}  // namespace blepc
