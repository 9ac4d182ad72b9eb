#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace blepc {

// Named noise sources. Each gets its own engine derived from the root seed so
// that changing how often one source is drawn leaves the others untouched.
enum class Stream : std::uint32_t { shadowing = 1, fading = 2, packet = 3, latency = 4 };

using Engine = std::mt19937_64;

Engine make_engine(std::uint64_t root_seed, Stream stream);

struct RngStreams {
    Engine shadowing;
    Engine fading;
    Engine packet;
    Engine latency;

    explicit RngStreams(std::uint64_t root_seed)
        : shadowing(make_engine(root_seed, Stream::shadowing)),
          fading(make_engine(root_seed, Stream::fading)),
          packet(make_engine(root_seed, Stream::packet)),
          latency(make_engine(root_seed, Stream::latency)) {}
};

inline double standard_normal(Engine& eng) {
    return std::normal_distribution<double>(0.0, 1.0)(eng);
}

inline double uniform01(Engine& eng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng);
}

}  // namespace blepc
