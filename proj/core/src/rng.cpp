#include "pcp/rng.hpp"

#include <cmath>
#include <numbers>

namespace pcp::rng {

std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

std::uint64_t key(std::uint64_t seed, std::uint64_t stream, std::uint64_t step,
                  std::uint64_t component) {
    std::uint64_t k = mix(seed);
    k = mix(k ^ stream);
    k = mix(k ^ step);
    k = mix(k ^ component);
    return k;
}

double to_open_unit(std::uint64_t bits) {
    // 53 mantissa bits, offset by 1/2 ulp: strictly inside (0, 1).
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t step,
               std::uint32_t component) {
    return to_open_unit(key(seed, stream, step, component));
}

double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t step,
              std::uint32_t component) {
    const std::uint64_t k = key(seed, stream, step, component);
    const double u1 = to_open_unit(k);
    const double u2 = to_open_unit(mix(k));
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace pcp::rng
