#include "crsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace crsim {
namespace {

// splitmix64: the usual finalizer, good avalanche, cheap.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_purpose(std::string_view purpose) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RandomStream derive_stream(std::uint64_t seed, std::string_view purpose, std::uint64_t index) {
  std::uint64_t state = mix(seed);
  state = mix(state ^ hash_purpose(purpose));
  state = mix(state ^ index);
  return RandomStream(state);
}

double canonical(RandomStream& rs) {
  return static_cast<double>(rs() >> 11) * 0x1.0p-53;
}

double exp_interval(RandomStream& rs, double rate) {
  if (rate <= 0) throw std::invalid_argument("exp_interval: rate must be positive");
  // Inversion on [0,1); 1-u stays strictly positive so log() is safe.
  double u = canonical(rs);
  return -std::log(1.0 - u) / rate;
}

std::uint64_t uniform_index(RandomStream& rs, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  // Modulo bias is below 2^-50 for every n used here.
  return rs() % n;
}

}  // namespace crsim
