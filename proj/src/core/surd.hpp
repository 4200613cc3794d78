#pragma once

#include <vector>

#include "core/ints.hpp"

namespace cfm {

// Floor of sqrt(n), exact for all u64 n.
u64 isqrt(u64 n) noexcept;

struct PeriodResult {
  u64 period = 0;        // 0 iff d is a perfect square
  bool is_square = false;
};

// Length of the shortest period of the continued fraction of sqrt(d).
// Rejects d == 0 and d > kMaxRadicand.
PeriodResult period_length(u64 d);

// Same recurrence with the floor of sqrt(d) supplied by the caller; the hot
// loops keep a0 incrementally instead of re-deriving it per d.
u64 period_length_with_root(u64 d, u64 a0);

// First `limit` partial quotients a_0, a_1, ..., a_{limit-1} of sqrt(d),
// wrapping past the period end as the expansion repeats.  Rejects perfect
// squares (their expansion terminates) and enforces the same width guard as
// period_length.
std::vector<u64> partial_quotients(u64 d, u64 limit);

}  // namespace cfm
