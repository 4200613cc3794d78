#include "core/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <span>
#include <thread>

#include "core/errors.hpp"
#include "core/gfunction.hpp"
#include "core/primes.hpp"
#include "core/surd.hpp"

namespace cfm {

namespace {

u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) fail(errc::overflow, "sum exceeds 128 bits");
  return r;
}

u128 pow_checked(u64 v, unsigned r) {
  u128 p = 1;
  for (unsigned i = 0; i < r; ++i)
    if (__builtin_mul_overflow(p, u128(v), &p)) fail(errc::overflow, "power exceeds 128 bits");
  return p;
}

std::vector<unsigned> normalize_rs(std::vector<unsigned> rs) {
  if (rs.empty()) fail(errc::invalid, "rs must be non-empty");
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  for (unsigned r : rs)
    if (r < 1 || r > 4) fail(errc::invalid, "exponents limited to 1..4");
  return rs;
}

void accumulate_chunk(u64 lo, u64 hi, const std::vector<unsigned>& rs, bool primes,
                      const std::vector<u32>& base, MomentAccumulator& out) {
  out.x_lo = lo;
  out.x_hi = hi;
  out.rs = rs;
  out.with_primes = primes;
  out.count = hi - lo;

  std::vector<u32> g(hi - lo, 0);
  g_sieve_block(lo, hi, std::span<u32>(g));
  std::vector<bool> is_prime;
  if (primes) is_prime = prime_segment(lo, hi, base);

  u64 s = isqrt(lo + 1);  // floor sqrt, maintained incrementally over d
  for (u64 d = lo + 1; d <= hi; ++d) {
    while ((s + 1) * (s + 1) <= d) ++s;
    u64 T = s * s == d ? 0 : period_length_with_root(d, s);
    u64 gd = g[d - lo - 1];
    bool p = primes && is_prime[d - lo - 1];
    if (p) ++out.prime_count;
    for (unsigned r : rs) {
      u128 tp = pow_checked(T, r);
      u128 gp = pow_checked(gd, r);
      out.sums_T[r] = checked_add(out.sums_T[r], tp);
      out.sums_g[r] = checked_add(out.sums_g[r], gp);
      if (p) {
        out.prime_sums_T[r] = checked_add(out.prime_sums_T[r], tp);
        out.prime_sums_g[r] = checked_add(out.prime_sums_g[r], gp);
      }
    }
  }
}

// Runs fn(i) for i in [0, n) across `shards` threads with a static stride
// assignment; worker exceptions are rethrown on the caller thread.
template <class Fn>
void parallel_for_strided(u64 n, u64 shards, Fn fn) {
  if (shards > n) shards = n;
  if (shards <= 1) {
    for (u64 i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(shards);
  std::vector<std::thread> pool;
  pool.reserve(shards);
  for (u64 w = 0; w < shards; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (u64 i = w; i < n; i += shards) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void check_range_args(u64 x_lo, u64 x_hi, u64 chunk_size, u64 shards) {
  if (x_lo >= x_hi) fail(errc::invalid, "need x_lo < x_hi");
  if (x_hi > kMaxRadicand) fail(errc::range, "x_hi exceeds supported width");
  if (chunk_size == 0 || shards == 0) fail(errc::invalid, "chunk_size and shards must be positive");
  if (chunk_size > kMaxChunkSize) fail(errc::memory, "chunk_size exceeds budget");
}

}  // namespace

MomentAccumulator accumulate(u64 x_lo, u64 x_hi, std::vector<unsigned> rs,
                             bool include_primes, u64 chunk_size, u64 shards) {
  check_range_args(x_lo, x_hi, chunk_size, shards);
  rs = normalize_rs(std::move(rs));

  std::vector<u32> base;
  if (include_primes) base = base_primes(std::max<u64>(isqrt(x_hi), 2));

  u64 span = x_hi - x_lo;
  u64 chunks = (span + chunk_size - 1) / chunk_size;
  std::vector<MomentAccumulator> parts(chunks);
  parallel_for_strided(chunks, shards, [&](u64 i) {
    u64 lo = x_lo + i * chunk_size;
    u64 hi = std::min(lo + chunk_size, x_hi);
    accumulate_chunk(lo, hi, rs, include_primes, base, parts[i]);
  });

  MomentAccumulator total = std::move(parts[0]);
  for (u64 i = 1; i < chunks; ++i) merge_into(total, parts[i]);
  return total;
}

void merge_into(MomentAccumulator& dst, const MomentAccumulator& src) {
  if (dst.rs != src.rs || dst.with_primes != src.with_primes)
    fail(errc::invalid, "accumulators configured differently");
  if (dst.x_hi == src.x_lo) {
    dst.x_hi = src.x_hi;
  } else if (src.x_hi == dst.x_lo) {
    dst.x_lo = src.x_lo;
  } else {
    fail(errc::invalid, "ranges not adjacent");
  }
  dst.count += src.count;
  dst.prime_count += src.prime_count;
  for (unsigned r : dst.rs) {
    dst.sums_T[r] = checked_add(dst.sums_T[r], src.sums_T[r]);
    dst.sums_g[r] = checked_add(dst.sums_g[r], src.sums_g[r]);
    dst.prime_sums_T[r] = checked_add(dst.prime_sums_T[r], src.prime_sums_T[r]);
    dst.prime_sums_g[r] = checked_add(dst.prime_sums_g[r], src.prime_sums_g[r]);
  }
}

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  char buf[48];
  int i = 48;
  while (v > 0) {
    buf[--i] = char('0' + int(v % 10));
    v /= 10;
  }
  return std::string(buf + i, buf + 48);
}

double u128_to_double(u128 v) { return double(v); }

DeviationReport deviation_count(u64 x, u64 alpha_num, u64 alpha_den, u64 shards) {
  if (x == 0 || shards == 0) fail(errc::invalid, "x and shards must be positive");
  if (alpha_num == 0 || alpha_den == 0) fail(errc::invalid, "alpha must be positive");
  if (alpha_num > (u64(1) << 20) || alpha_den > (u64(1) << 20))
    fail(errc::invalid, "alpha terms exceed 2^20");
  if (2 * x > kMaxRadicand) fail(errc::range, "2x exceeds supported width");

  const u64 chunk_size = u64(1) << 20;
  u64 chunks = (x + chunk_size - 1) / chunk_size;

  struct Part {
    u64 count = 0;
    std::vector<u64> sample;
  };
  std::vector<Part> parts(chunks);
  const u128 rhs_factor = u128(alpha_num) * alpha_num;
  const u64 lhs_factor = alpha_den * alpha_den;

  parallel_for_strided(chunks, shards, [&](u64 i) {
    u64 lo = x + i * chunk_size;
    u64 hi = std::min(lo + chunk_size, 2 * x);
    Part& part = parts[i];
    u64 s = isqrt(lo + 1);
    for (u64 d = lo + 1; d <= hi; ++d) {
      while ((s + 1) * (s + 1) <= d) ++s;
      if (s * s == d) continue;  // T = 0 never exceeds a positive threshold
      u64 T = period_length_with_root(d, s);
      // T > (p/q) sqrt(d)  <=>  q^2 T^2 > p^2 d, all exact
      if (u128(T) * T * lhs_factor > rhs_factor * d) {
        ++part.count;
        if (part.sample.size() < kDeviationSampleSize) part.sample.push_back(d);
      }
    }
  });

  DeviationReport report;
  report.x = x;
  report.alpha_num = alpha_num;
  report.alpha_den = alpha_den;
  double alpha = double(alpha_num) / double(alpha_den);
  DeviationCaps caps = deviation_caps(x, alpha);
  report.bound_first = caps.first;
  report.bound_second = caps.second;
  for (const Part& part : parts) {
    report.count += part.count;
    for (u64 d : part.sample) {
      if (report.members_sample.size() >= kDeviationSampleSize) break;
      report.members_sample.push_back(d);
    }
  }
  return report;
}

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

VerificationReport verify_bounds(u64 x, const std::vector<std::pair<u64, u64>>& alphas,
                                 u64 chunk_size, u64 shards) {
  if (x < 2) fail(errc::invalid, "verification requires x >= 2");
  MomentAccumulator acc = accumulate(0, x, {1, 2}, false, chunk_size, shards);

  VerificationReport rep;
  rep.x = x;
  rep.sum_g = acc.sums_g[1];
  rep.sum_g2 = acc.sums_g[2];
  rep.sum_T = acc.sums_T[1];
  rep.sum_T2 = acc.sums_T[2];

  BoundEnvelope env = g_mean_envelope(x);
  double xd = double(x), sx = std::sqrt(xd);
  double sum_g = u128_to_double(rep.sum_g);
  rep.theta_empirical = (sum_g - env.lower) / (xd + 4.0 * sx);
  rep.mean_pass = rep.theta_empirical >= 0.0 && rep.theta_empirical <= 1.0;

  double cap2 = second_moment_cap(x);
  rep.second_pass = u128_to_double(rep.sum_g2) <= cap2;

  double t_cap1 = kC1 * xd * sx;
  rep.t_first_pass = u128_to_double(rep.sum_T) <= t_cap1;
  rep.t_second_pass = u128_to_double(rep.sum_T2) <= cap2;

  rep.rows.push_back({"g_mean_theta", x, format_real(rep.theta_empirical), 0.0, 1.0, rep.mean_pass});
  rep.rows.push_back({"g_sum_envelope", x, u128_to_string(rep.sum_g), env.lower, env.upper, rep.mean_pass});
  rep.rows.push_back({"g_second_moment", x, u128_to_string(rep.sum_g2), 0.0, cap2, rep.second_pass});
  rep.rows.push_back({"t_first_moment", x, u128_to_string(rep.sum_T), 0.0, t_cap1, rep.t_first_pass});
  rep.rows.push_back({"t_second_moment", x, u128_to_string(rep.sum_T2), 0.0, cap2, rep.t_second_pass});

  for (auto [p, q] : alphas) {
    DeviationReport dev = deviation_count(x, p, q, shards);
    std::string tag = u128_to_string(p) + "/" + u128_to_string(q);
    bool pass_first = double(dev.count) <= dev.bound_first;
    bool pass_second = double(dev.count) <= dev.bound_second;
    rep.rows.push_back({"deviation_first_" + tag, x, u128_to_string(dev.count), 0.0,
                        dev.bound_first, pass_first});
    rep.rows.push_back({"deviation_second_" + tag, x, u128_to_string(dev.count), 0.0,
                        dev.bound_second, pass_second});
  }
  return rep;
}

std::vector<FigureRow> figure_series(u64 x_max, u64 step, int which,
                                     u64 chunk_size, u64 shards) {
  if (x_max < 100) fail(errc::invalid, "figure series needs x_max >= 100");
  if (x_max > kMaxRadicand) fail(errc::range, "x_max exceeds supported width");
  if (which != 1 && which != 2) fail(errc::invalid, "figure selector must be 1 or 2");

  std::vector<u64> samples;
  if (step >= 1) {
    for (u64 xi = step; xi <= x_max; xi += step)
      if (xi >= 2) samples.push_back(xi);  // log-normalizers undefined below 2
    if (samples.empty()) fail(errc::invalid, "step leaves no usable sample points");
  } else {
    // 64 multiplicatively spaced points from 100 to x_max inclusive.
    const int n = 64;
    double lo = std::log(100.0), hi = std::log(double(x_max));
    for (int i = 0; i < n; ++i) {
      double t = lo + (hi - lo) * double(i) / double(n - 1);
      samples.push_back(u64(std::llround(std::exp(t))));
    }
    samples.back() = x_max;
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  }

  bool primes = which == 2;
  std::vector<FigureRow> rows;
  rows.reserve(samples.size());
  MomentAccumulator running;
  bool have = false;
  u64 prev = 0;
  for (u64 xi : samples) {
    MomentAccumulator slice = accumulate(prev, xi, {1, 2}, primes, chunk_size, shards);
    if (!have) {
      running = std::move(slice);
      have = true;
    } else {
      merge_into(running, slice);
    }
    prev = xi;

    double xd = double(xi), sx = std::sqrt(xd), lx = std::log(xd);
    FigureRow row{xi, 0.0, 0.0};
    if (which == 1) {
      double mean = u128_to_double(running.sums_T[1]) / xd;
      double second = u128_to_double(running.sums_T[2]) / xd;
      row.ratio_mean = mean / (sx / std::pow(lx, 0.6));
      row.ratio_second = second / (xd / std::pow(lx, 0.8));
    } else if (running.prime_count > 0) {
      double pc = double(running.prime_count);
      row.ratio_mean = (u128_to_double(running.prime_sums_T[1]) / pc) / sx;
      row.ratio_second = (u128_to_double(running.prime_sums_T[2]) / pc) / xd;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cfm
