#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "blepc/sim.hpp"

namespace blepc {

struct PresetInfo {
    std::string name;
    std::string description;
};

const std::vector<PresetInfo>& preset_list();

// Throws std::invalid_argument for unknown names.
ScenarioSpec make_preset(std::string_view name);

}  // namespace blepc
