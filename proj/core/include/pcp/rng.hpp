#pragma once

#include <cstdint>

namespace pcp {

/// Counter-based random streams: every variate is a pure function of
/// (seed, stream, step, component), so parallel path simulation reproduces
/// bitwise regardless of worker count or execution order.
namespace rng {

/// 64-bit finalizer (splitmix64 mixing function).
std::uint64_t mix(std::uint64_t z);

/// Uniform in the open interval (0, 1).
double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t step,
               std::uint32_t component);

/// Standard normal deviate via Box-Muller on two counter-derived uniforms.
double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t step,
              std::uint32_t component);

}  // namespace rng

}  // namespace pcp
