#include "blepc/batch.hpp"

#include <exception>
#include <stdexcept>

namespace blepc {

namespace {

SeedRun run_one(const ScenarioSpec& spec, std::uint64_t seed, const ModelConfig& model) {
    ScenarioSpec s = spec;
    s.seed = seed;
    SeedRun r;
    r.seed = seed;
    r.trace = run_scenario(s, model);
    r.summary = summarize(r.trace, SummaryTargets::from(s));
    return r;
}

}  // namespace

std::vector<SeedRun> run_batch_serial(const ScenarioSpec& spec,
                                      const std::vector<std::uint64_t>& seeds,
                                      const ModelConfig& model) {
    spec.validate();
    std::vector<SeedRun> out;
    out.reserve(seeds.size());
    for (auto seed : seeds) out.push_back(run_one(spec, seed, model));
    return out;
}

std::vector<SeedRun> run_batch(const ScenarioSpec& spec, const std::vector<std::uint64_t>& seeds,
                               const ModelConfig& model) {
    spec.validate();
    model.validate();
    std::vector<SeedRun> out(seeds.size());
    std::exception_ptr failure;
    const auto n = static_cast<long long>(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = run_one(spec, seeds[static_cast<std::size_t>(i)], model);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::uint64_t last) {
    if (last < first) throw std::invalid_argument("seed range is empty");
    std::vector<std::uint64_t> seeds;
    for (auto s = first; s <= last; ++s) seeds.push_back(s);
    return seeds;
}

}  // namespace blepc
