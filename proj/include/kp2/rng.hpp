#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace kp2 {

// Counter-based generator: value i of stream `seed` is a pure function of
// (seed, i), so draws replay exactly no matter how work is partitioned.
inline std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + counter * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return double(splitmix64(seed, counter) >> 11) * 0x1.0p-53;
}

// Box-Muller on two counted uniforms; avoids the implementation-defined
// std::normal_distribution so streams are platform-stable.
inline double gaussian(std::uint64_t seed, std::uint64_t counter) {
    double u1 = uniform01(seed, 2 * counter);
    double u2 = uniform01(seed, 2 * counter + 1);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

inline std::complex<double> complex_gaussian(std::uint64_t seed, std::uint64_t counter) {
    return {gaussian(seed, 2 * counter), gaussian(seed, 2 * counter + 1)};
}

// Integer in [lo, hi], inclusive.
inline std::int64_t uniform_int(std::uint64_t seed, std::uint64_t counter, std::int64_t lo,
                                std::int64_t hi) {
    std::uint64_t span = std::uint64_t(hi - lo + 1);
    return lo + std::int64_t(splitmix64(seed, counter) % span);
}

}  // namespace kp2
