#include "dcflex/core/rng.hpp"

namespace dcflex {

std::uint64_t splitmix64(std::uint64_t value) {
  value += 0x9E3779B97F4A7C15ULL;
  value = (value ^ (value >> 30)) * 0xBF58476D1CE4E5B9ULL;
  value = (value ^ (value >> 27)) * 0x94D049BB133111EBULL;
  return value ^ (value >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t window_index, std::string_view cell_key) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ window_index);
  return splitmix64(h ^ fnv1a64(cell_key));
}

}  // namespace dcflex
