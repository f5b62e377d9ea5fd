#pragma once

#include <cstdint>
#include <random>

namespace flatbundle {

// Deterministic draws that do not depend on the standard library's
// distribution implementations, so reports are reproducible across
// toolchains for a given seed.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

// Independent seed for one trial of one stream.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

}  // namespace flatbundle
