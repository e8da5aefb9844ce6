#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace crsim {

using RandomStream = std::mt19937_64;

// Derives an independent, reproducible stream from (seed, purpose, index).
// The same triple always yields the same stream; distinct triples yield
// streams with unrelated state. Purposes in use: "pu" (per channel),
// "su" (per pair), "prs" (per frame), "rdv" (per frame), "baseline" (per pair).
RandomStream derive_stream(std::uint64_t seed, std::string_view purpose, std::uint64_t index);

// Uniform double in [0, 1) with 53 random bits.
double canonical(RandomStream& rs);

// Exponentially distributed interval with the given rate (mean 1/rate).
// Sampled by inversion so results are bit-identical across platforms.
double exp_interval(RandomStream& rs, double rate);

// Uniform integer in [0, n); n must be positive.
std::uint64_t uniform_index(RandomStream& rs, std::uint64_t n);

// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle_vector(std::vector<T>& v, RandomStream& rs) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_index(rs, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace crsim
