#pragma once

#include <cstdint>

namespace cfm {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Radicands and range bounds above this are rejected; keeps every surd and
// sieve intermediate inside u64 with u128 products.
inline constexpr u64 kMaxRadicand = u64(1) << 40;

// Largest per-chunk counter array the sieve will allocate (entries).
inline constexpr u64 kMaxChunkSize = u64(1) << 26;

// Full-table cap for tabulation (entries of 4 bytes each).
inline constexpr u64 kMaxTableSize = u64(1) << 31;

}  // namespace cfm
