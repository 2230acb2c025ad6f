#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace dauction {

/// Derives an independent 64-bit seed from a base seed and a list of keys
/// through std::seed_seq, whose mixing is fixed by the standard.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys);

/// Stable 64-bit FNV-1a hash, used to key seeds by names.
std::uint64_t stable_hash(std::string_view text);

} // namespace dauction
