#include "cojump/rng.hpp"

namespace cojump {

namespace {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

std::mt19937_64 make_stream(const RngSeed& seed, Stream stream) {
    std::uint64_t u = mix64(seed.master + 0x9E3779B97F4A7C15ull);
    u = mix64(u ^ (seed.path_index + 0xBF58476D1CE4E5B9ull));
    u = mix64(u ^ (static_cast<std::uint64_t>(stream) + 0x94D049BB133111EBull));
    return std::mt19937_64(u);
}

} // namespace cojump
