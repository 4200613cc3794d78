#include "core/gfunction.hpp"

#include <algorithm>
#include <thread>

#include "core/errors.hpp"
#include "core/surd.hpp"

namespace cfm {

namespace {

void check_point_domain(u64 d) {
  if (d == 0) fail(errc::invalid, "d must be positive");
  if (d > kMaxRadicand) fail(errc::range, "d exceeds supported width");
}

// Window predicate in squared form; q can reach d - m*m during divisor
// enumeration, so squares go through u128.
bool in_window(u64 d, u64 m, u64 q) {
  if (u128(q + m) * (q + m) <= d) return false;
  if (q > m && u128(q - m) * (q - m) >= d) return false;
  return true;
}

}  // namespace

u64 g_point(u64 d) {
  check_point_domain(d);
  u64 total = 0;
  u64 mmax = d > 1 ? isqrt(d - 1) : 0;  // m*m < d
  for (u64 m = 1; m <= mmax; ++m) {
    u64 n = d - m * m;
    u64 root = isqrt(n);
    if (2 * m - 1 < 2 * root) {
      // Window scan: q ranges over an interval of length about 2m around
      // sqrt(d), cheaper than divisor enumeration for small m.
      u64 s = isqrt(d);
      u64 qlo = s > m ? s - m : 1;  // one below the tight bound; the
                                    // predicate re-checks the edge
      u64 qhi = m + mmax;           // q - m <= isqrt(d-1) when q > m
      for (u64 q = qlo; q <= qhi; ++q)
        if (n % q == 0 && in_window(d, m, q)) ++total;
    } else {
      for (u64 e = 1; e <= root; ++e) {
        if (n % e != 0) continue;
        if (in_window(d, m, e)) ++total;
        u64 f = n / e;
        if (f != e && in_window(d, m, f)) ++total;
      }
    }
  }
  return total;
}

std::vector<GWitness> g_witnesses(u64 d) {
  check_point_domain(d);
  std::vector<GWitness> out;
  u64 mmax = d > 1 ? isqrt(d - 1) : 0;
  u64 s = isqrt(d);
  for (u64 m = 1; m <= mmax; ++m) {
    u64 n = d - m * m;
    u64 qlo = s > m ? s - m : 1;
    u64 qhi = m + mmax;
    // Ascending q keeps the output sorted by (m, q) with no post-sort.
    for (u64 q = qlo; q <= qhi; ++q)
      if (n % q == 0 && in_window(d, m, q)) out.push_back({m, q, n / q});
  }
  return out;
}

void g_sieve_block(u64 lo, u64 hi, std::span<u32> counts) {
  if (counts.size() != hi - lo) fail(errc::internal, "sieve span size mismatch");
  // Triples with d = m*m + k*q in (lo, hi]: iterate m, then q, then the k
  // interval cut down to this block.  Each d receives exactly its own
  // witnesses, so block boundaries never change the result.
  u64 s_lo = isqrt(lo);
  u64 s_hi = hi > 1 ? isqrt(hi - 1) : 0;  // largest m with m*m < hi
  for (u64 m = 1; m <= s_hi; ++m) {
    u64 m2 = m * m;
    u64 q = s_lo > m ? s_lo - m : 1;  // (q+m)^2 > lo is necessary for d > lo
    for (;; ++q) {
      if (q > m && (q - m) * (q - m) >= hi) break;  // d > (q-m)^2 forces d > hi
      u64 klo = q > 2 * m ? q - 2 * m + 1 : 1;
      u64 khi = q + 2 * m - 1;
      u64 kcap = (hi - m2) / q;  // d <= hi
      if (khi > kcap) khi = kcap;
      if (m2 <= lo) {            // d > lo
        u64 kfloor = (lo - m2) / q + 1;
        if (klo < kfloor) klo = kfloor;
      }
      if (klo > khi) continue;
      u64 d = m2 + klo * q;
      for (u64 k = klo; k <= khi; ++k, d += q) ++counts[d - lo - 1];
    }
  }
}

GTable g_tabulate(u64 x, u64 chunk_size, u64 shards) {
  if (x == 0 || chunk_size == 0 || shards == 0)
    fail(errc::invalid, "x, chunk_size and shards must be positive");
  if (x > kMaxRadicand) fail(errc::range, "x exceeds supported width");
  if (x > kMaxTableSize) fail(errc::memory, "table size exceeds budget");
  if (chunk_size > kMaxChunkSize) fail(errc::memory, "chunk_size exceeds budget");

  GTable table;
  table.x = x;
  table.values.assign(x, 0);

  u64 blocks = (x + chunk_size - 1) / chunk_size;
  if (shards > blocks) shards = blocks;

  // Shard w owns blocks w, w+shards, w+2*shards, ...; blocks are disjoint
  // d-ranges writing to disjoint table slices, so no synchronization.
  auto run_shard = [&](u64 w) {
    for (u64 b = w; b < blocks; b += shards) {
      u64 lo = b * chunk_size;
      u64 hi = std::min(lo + chunk_size, x);
      g_sieve_block(lo, hi, std::span<u32>(table.values.data() + lo, hi - lo));
    }
  };

  if (shards == 1) {
    run_shard(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(shards);
    for (u64 w = 0; w < shards; ++w) pool.emplace_back(run_shard, w);
    for (auto& t : pool) t.join();
  }
  return table;
}

}  // namespace cfm
