#pragma once

#include <cstdint>
#include <string_view>

namespace dcflex {

/// One round of the SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t value);

/// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text);

/// Seed for one (horizon, cell) task. Depends only on its arguments, so the
/// sampled activations do not change with worker count or execution order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t window_index, std::string_view cell_key);

}  // namespace dcflex
