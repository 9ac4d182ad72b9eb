#pragma once

#include <array>

#include "blepc/channel.hpp"
#include "blepc/power.hpp"
#include "blepc/radio.hpp"

namespace blepc {

// Every calibrated constant the simulator uses. Defaults are the fitted values;
// a config file may override any of them.
struct ModelConfig {
    std::array<EnvironmentProfile, 3> profiles{default_profile(Environment::rooftop),
                                               default_profile(Environment::corridor),
                                               default_profile(Environment::lab)};
    TxPowerTable table = TxPowerTable::fem_default();
    LinkParams link;
    FemModel fem;
    PowerModel power;
    LatencyModel latency;

    const EnvironmentProfile& profile(Environment env) const {
        return profiles[static_cast<std::size_t>(env)];
    }
    EnvironmentProfile& profile(Environment env) { return profiles[static_cast<std::size_t>(env)]; }

    // Throws std::invalid_argument.
    void validate() const;
};

}  // namespace blepc
