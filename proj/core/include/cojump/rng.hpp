#pragma once

#include <cstdint>
#include <random>

namespace cojump {

// (master seed, path index) pins down every draw of one path, independent of
// worker count or scheduling.
struct RngSeed {
    std::uint64_t master = 0;
    std::uint64_t path_index = 0;
};

// Named substreams of one path. Each model component draws from its own
// stream, so skipping a component never shifts another component's numbers.
enum class Stream : std::uint64_t {
    Diffusion = 1, // z1, z3 interleaved per step
    LogVol1 = 2,
    LogVol2 = 3,
    Jumps = 4,     // compound Poisson skeleton: counts, times, sizes
    Vg1 = 5,       // gamma + normal interleaved per step
    Vg3 = 6,
};

std::mt19937_64 make_stream(const RngSeed& seed, Stream stream);

} // namespace cojump
