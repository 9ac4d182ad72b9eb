#pragma once

#include <cstdint>
#include <vector>

#include "blepc/report.hpp"
#include "blepc/sim.hpp"

namespace blepc {

struct SeedRun {
    std::uint64_t seed = 0;
    RunTrace trace;
    MetricsSummary summary;
};

// Runs `spec` once per seed. Each run owns its state and RNG streams, so the
// seeds are independent; results come back in the order of `seeds`.
std::vector<SeedRun> run_batch(const ScenarioSpec& spec, const std::vector<std::uint64_t>& seeds,
                               const ModelConfig& model = {});

// Single-threaded reference for run_batch.
std::vector<SeedRun> run_batch_serial(const ScenarioSpec& spec,
                                      const std::vector<std::uint64_t>& seeds,
                                      const ModelConfig& model = {});

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::uint64_t last);

}  // namespace blepc
