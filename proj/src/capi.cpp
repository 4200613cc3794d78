#include "cfmoments.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <memory>
#include <new>
#include <thread>

#include "core/analytic.hpp"
#include "core/errors.hpp"
#include "core/gfunction.hpp"
#include "core/modular.hpp"
#include "core/moments.hpp"
#include "core/primes.hpp"
#include "core/surd.hpp"

using cfm::u64;

namespace {

// errc values line up with the CFM_ codes by construction.
template <class Fn>
int guarded(Fn&& fn) noexcept {
  try {
    fn();
    return CFM_OK;
  } catch (const cfm::error& e) {
    return int(e.code());
  } catch (const std::bad_alloc&) {
    return CFM_ENOMEM;
  } catch (...) {
    return CFM_EINTERNAL;
  }
}

u64 default_chunk(u64 chunk_size) { return chunk_size == 0 ? u64(1) << 20 : chunk_size; }

u64 default_shards(u64 shards) {
  if (shards != 0) return shards;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

int copy_string(const std::string& s, char* out, size_t cap) {
  if (out == nullptr || cap == 0) return CFM_EINVAL;
  if (s.size() + 1 > cap) return CFM_EBUF;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return CFM_OK;
}

void rational_out(cfm::Rational r, cfm_rational* out) {
  out->num = r.num;
  out->den = r.den;
}

}  // namespace

struct cfm_gtable {
  cfm::GTable table;
};

struct cfm_accumulator {
  cfm::MomentAccumulator acc;
};

extern "C" {

const char* cfm_strerror(int code) { return cfm::errc_message(cfm::errc(code)); }

uint64_t cfm_isqrt(uint64_t n) { return cfm::isqrt(n); }

int cfm_period_length(uint64_t d, uint64_t* period, int* is_square) {
  return guarded([&] {
    cfm::PeriodResult r = cfm::period_length(d);
    if (period) *period = r.period;
    if (is_square) *is_square = r.is_square ? 1 : 0;
  });
}

int cfm_partial_quotients(uint64_t d, size_t count, uint64_t* out) {
  if (count == 0 || out == nullptr) return CFM_EINVAL;
  return guarded([&] {
    std::vector<u64> terms = cfm::partial_quotients(d, count);
    std::memcpy(out, terms.data(), count * sizeof(uint64_t));
  });
}

int cfm_g_point(uint64_t d, uint64_t* g) {
  if (g == nullptr) return CFM_EINVAL;
  return guarded([&] { *g = cfm::g_point(d); });
}

int cfm_g_witnesses(uint64_t d, cfm_triple* out, size_t cap, size_t* written) {
  if (written == nullptr || (out == nullptr && cap > 0)) return CFM_EINVAL;
  int truncated = 0;
  int rc = guarded([&] {
    std::vector<cfm::GWitness> ws = cfm::g_witnesses(d);
    *written = ws.size();
    size_t n = ws.size() < cap ? ws.size() : cap;
    for (size_t i = 0; i < n; ++i) out[i] = {ws[i].m, ws[i].q, ws[i].k};
    truncated = ws.size() > cap;
  });
  return rc != CFM_OK ? rc : (truncated ? CFM_EBUF : CFM_OK);
}

int cfm_gtable_build(uint64_t x, uint64_t chunk_size, uint64_t shards, cfm_gtable** out) {
  if (out == nullptr) return CFM_EINVAL;
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<cfm_gtable>();
    handle->table = cfm::g_tabulate(x, default_chunk(chunk_size), default_shards(shards));
    *out = handle.release();
  });
}

void cfm_gtable_free(cfm_gtable* table) { delete table; }

uint64_t cfm_gtable_limit(const cfm_gtable* table) { return table ? table->table.x : 0; }

int cfm_gtable_value(const cfm_gtable* table, uint64_t d, uint32_t* g) {
  if (table == nullptr || g == nullptr) return CFM_EINVAL;
  if (d == 0 || d > table->table.x) return CFM_EINVAL;
  *g = table->table.values[d - 1];
  return CFM_OK;
}

int cfm_chi(uint64_t modulus, int64_t m1, int64_t m2, int* out) {
  if (out == nullptr) return CFM_EINVAL;
  return guarded([&] { *out = cfm::chi(modulus, m1, m2); });
}

int cfm_c_closed(uint64_t modulus, cfm_rational* out) {
  if (out == nullptr) return CFM_EINVAL;
  return guarded([&] { rational_out(cfm::c_closed(modulus), out); });
}

int cfm_c_brute(uint64_t modulus, cfm_rational* out) {
  if (out == nullptr) return CFM_EINVAL;
  return guarded([&] { rational_out(cfm::c_brute(modulus), out); });
}

int cfm_c_brute_naive(uint64_t modulus, cfm_rational* out) {
  if (out == nullptr) return CFM_EINVAL;
  return guarded([&] { rational_out(cfm::c_brute_naive(modulus), out); });
}

int cfm_constants_get(cfm_constants* out) {
  if (out == nullptr) return CFM_EINVAL;
  return guarded([&] {
    cfm::Constants c = cfm::constants();
    *out = {c.c1, c.c2, c.F2, c.Htilde1, c.A, c.B, c.C, c.zeta2, c.zeta3, c.zeta4};
  });
}

int cfm_harmonic_tail(uint64_t y, double* theta, char* sum_frac, size_t frac_cap) {
  if (theta == nullptr) return CFM_EINVAL;
  int rc_buf = CFM_OK;
  int rc = guarded([&] {
    cfm::HarmonicTail t = cfm::harmonic_tail(y);
    *theta = t.theta;
    if (sum_frac) rc_buf = copy_string(t.sum.get_str(), sum_frac, frac_cap);
  });
  return rc != CFM_OK ? rc : rc_buf;
}

int cfm_harmonic_tail_sweep(uint64_t y_max, double* out) {
  if (out == nullptr) return CFM_EINVAL;
  return guarded([&] {
    std::vector<double> thetas = cfm::harmonic_tail_sweep(y_max);
    std::memcpy(out, thetas.data(), thetas.size() * sizeof(double));
  });
}

double cfm_bernoulli3_frac(double x) { return cfm::bernoulli3_frac(x); }

int cfm_zeta(double s, double* out) {
  if (out == nullptr) return CFM_EINVAL;
  return guarded([&] { *out = cfm::zeta(s); });
}

int cfm_dirichlet_f(double s, double* out) {
  if (out == nullptr) return CFM_EINVAL;
  return guarded([&] { *out = cfm::dirichlet_F(s); });
}

double cfm_htilde_at_1(void) { return cfm::htilde_at_1(); }

int cfm_integral(char which, double tol, double* numeric, double* closed) {
  if (numeric == nullptr || closed == nullptr) return CFM_EINVAL;
  return guarded([&] {
    cfm::IntegralResult r = cfm::integral_abc(which, tol);
    *numeric = r.numeric;
    *closed = r.closed;
  });
}

int cfm_g_mean_envelope(uint64_t x, double* lower, double* upper) {
  if (lower == nullptr || upper == nullptr) return CFM_EINVAL;
  return guarded([&] {
    cfm::BoundEnvelope env = cfm::g_mean_envelope(x);
    *lower = env.lower;
    *upper = env.upper;
  });
}

int cfm_second_moment_cap(uint64_t x, double* out) {
  if (out == nullptr) return CFM_EINVAL;
  return guarded([&] { *out = cfm::second_moment_cap(x); });
}

int cfm_deviation_caps(uint64_t x, uint64_t alpha_num, uint64_t alpha_den,
                       double* first, double* second) {
  if (first == nullptr || second == nullptr) return CFM_EINVAL;
  if (alpha_den == 0) return CFM_EINVAL;
  return guarded([&] {
    cfm::DeviationCaps caps =
        cfm::deviation_caps(x, double(alpha_num) / double(alpha_den));
    *first = caps.first;
    *second = caps.second;
  });
}

int cfm_accumulate(uint64_t x_lo, uint64_t x_hi, const unsigned* rs, size_t rs_len,
                   int include_primes, uint64_t chunk_size, uint64_t shards,
                   cfm_accumulator** out) {
  if (out == nullptr || rs == nullptr || rs_len == 0) return CFM_EINVAL;
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<cfm_accumulator>();
    handle->acc = cfm::accumulate(x_lo, x_hi, std::vector<unsigned>(rs, rs + rs_len),
                                  include_primes != 0, default_chunk(chunk_size),
                                  default_shards(shards));
    *out = handle.release();
  });
}

void cfm_accumulator_free(cfm_accumulator* acc) { delete acc; }

int cfm_accumulator_merge(cfm_accumulator* dst, const cfm_accumulator* src) {
  if (dst == nullptr || src == nullptr) return CFM_EINVAL;
  return guarded([&] { cfm::merge_into(dst->acc, src->acc); });
}

int cfm_accumulator_range(const cfm_accumulator* acc, uint64_t* x_lo, uint64_t* x_hi) {
  if (acc == nullptr) return CFM_EINVAL;
  if (x_lo) *x_lo = acc->acc.x_lo;
  if (x_hi) *x_hi = acc->acc.x_hi;
  return CFM_OK;
}

uint64_t cfm_accumulator_count(const cfm_accumulator* acc) {
  return acc ? acc->acc.count : 0;
}

uint64_t cfm_accumulator_prime_count(const cfm_accumulator* acc) {
  return acc ? acc->acc.prime_count : 0;
}

int cfm_accumulator_sum(const cfm_accumulator* acc, char which, unsigned r,
                        int primes_only, char* out, size_t cap) {
  if (acc == nullptr || out == nullptr) return CFM_EINVAL;
  if (which != 'T' && which != 'g') return CFM_EINVAL;
  const auto& rs = acc->acc.rs;
  if (std::find(rs.begin(), rs.end(), r) == rs.end()) return CFM_EINVAL;
  if (primes_only && !acc->acc.with_primes) return CFM_EINVAL;
  cfm::u128 v;
  if (which == 'T')
    v = primes_only ? acc->acc.prime_sums_T[r] : acc->acc.sums_T[r];
  else
    v = primes_only ? acc->acc.prime_sums_g[r] : acc->acc.sums_g[r];
  return copy_string(cfm::u128_to_string(v), out, cap);
}

int cfm_deviation_count(uint64_t x, uint64_t alpha_num, uint64_t alpha_den,
                        uint64_t shards, cfm_deviation_report* out) {
  if (out == nullptr) return CFM_EINVAL;
  return guarded([&] {
    cfm::DeviationReport rep =
        cfm::deviation_count(x, alpha_num, alpha_den, default_shards(shards));
    out->x = rep.x;
    out->alpha_num = rep.alpha_num;
    out->alpha_den = rep.alpha_den;
    out->count = rep.count;
    out->bound_first = rep.bound_first;
    out->bound_second = rep.bound_second;
    out->member_count = rep.members_sample.size();
    for (size_t i = 0; i < rep.members_sample.size(); ++i)
      out->members[i] = rep.members_sample[i];
  });
}

int cfm_verify_bounds(uint64_t x, const uint64_t* alpha_nums,
                      const uint64_t* alpha_dens, size_t alpha_len,
                      uint64_t chunk_size, uint64_t shards,
                      cfm_verify_row* rows, size_t cap, size_t* written,
                      int* all_pass) {
  if (written == nullptr || all_pass == nullptr) return CFM_EINVAL;
  if (alpha_len > 0 && (alpha_nums == nullptr || alpha_dens == nullptr)) return CFM_EINVAL;
  if (cap > 0 && rows == nullptr) return CFM_EINVAL;
  int truncated = 0;
  int rc = guarded([&] {
    std::vector<std::pair<u64, u64>> alphas;
    alphas.reserve(alpha_len);
    for (size_t i = 0; i < alpha_len; ++i) alphas.emplace_back(alpha_nums[i], alpha_dens[i]);
    cfm::VerificationReport rep =
        cfm::verify_bounds(x, alphas, default_chunk(chunk_size), default_shards(shards));
    *written = rep.rows.size();
    *all_pass = 1;
    for (size_t i = 0; i < rep.rows.size(); ++i) {
      const cfm::VerifyRow& r = rep.rows[i];
      if (!r.pass) *all_pass = 0;
      if (i >= cap) continue;
      std::snprintf(rows[i].check, sizeof rows[i].check, "%s", r.check.c_str());
      rows[i].x = r.x;
      std::snprintf(rows[i].measured, sizeof rows[i].measured, "%s", r.measured.c_str());
      rows[i].lower = r.lower;
      rows[i].upper = r.upper;
      rows[i].pass = r.pass ? 1 : 0;
    }
    truncated = rep.rows.size() > cap;
  });
  return rc != CFM_OK ? rc : (truncated ? CFM_EBUF : CFM_OK);
}

int cfm_figure_series(uint64_t x_max, uint64_t step, int which,
                      uint64_t chunk_size, uint64_t shards,
                      cfm_figure_row* rows, size_t cap, size_t* written) {
  if (written == nullptr) return CFM_EINVAL;
  if (cap > 0 && rows == nullptr) return CFM_EINVAL;
  int truncated = 0;
  int rc = guarded([&] {
    std::vector<cfm::FigureRow> data = cfm::figure_series(
        x_max, step, which, default_chunk(chunk_size), default_shards(shards));
    *written = data.size();
    size_t n = data.size() < cap ? data.size() : cap;
    for (size_t i = 0; i < n; ++i) rows[i] = {data[i].x, data[i].ratio_mean, data[i].ratio_second};
    truncated = data.size() > cap;
  });
  return rc != CFM_OK ? rc : (truncated ? CFM_EBUF : CFM_OK);
}

int cfm_prime_table(uint64_t n, uint8_t* out, size_t cap) {
  if (out == nullptr) return CFM_EINVAL;
  if (cap < n + 1) return CFM_EBUF;
  return guarded([&] {
    std::vector<bool> table = cfm::prime_table(n);
    for (u64 i = 0; i <= n; ++i) out[i] = table[i] ? 1 : 0;
  });
}

}  // extern "C"
