#include "blepc/rng.hpp"

namespace blepc {

Engine make_engine(std::uint64_t root_seed, Stream stream) {
    const auto id = static_cast<std::uint32_t>(stream);
    std::seed_seq seq{static_cast<std::uint32_t>(root_seed & 0xffffffffu),
                      static_cast<std::uint32_t>(root_seed >> 32), id, 0x9e3779b9u};
    return Engine(seq);
}

}  // namespace blepc
