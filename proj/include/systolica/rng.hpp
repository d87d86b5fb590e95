#pragma once

// splitmix64-based uniforms: platform-stable deterministic sampling for
// scans and verification suites.

#include <cstdint>

namespace systolica {

inline double next_uniform(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::uint64_t& state, double lo, double hi) {
    return lo + (hi - lo) * next_uniform(state);
}

}  // namespace systolica
