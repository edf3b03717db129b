#pragma once
// Deterministic seeding. A single user-facing seed fans out into named
// sub-streams (injection, CV repetitions, Dirichlet sampling, ...) so each
// randomized component is reproducible on its own and independent of the
// order in which the others run.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace simpute {

// splitmix64 step; good avalanche, stable across platforms.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives a child seed from (base, stream name, index).
std::uint64_t mix_seed(std::uint64_t base, std::string_view stream,
                       std::uint64_t index = 0);

std::mt19937_64 make_rng(std::uint64_t base, std::string_view stream,
                         std::uint64_t index = 0);

// `count` distinct indices from [0, n), sorted ascending.
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t count,
                                                    std::mt19937_64& rng);

}  // namespace simpute
