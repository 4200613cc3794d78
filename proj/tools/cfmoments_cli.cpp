// Command-line front end over the cfmoments C API.  Every command writes one
// flat CSV (header row, single-newline terminators) to --out or stdout.
// Exit codes: 0 success, 2 invalid arguments, 3 verify found a violated
// bound, 4 resource/width guard.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfmoments.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;
constexpr int kExitResource = 4;

int exit_for_status(int rc) {
  if (rc == CFM_OK) return kExitOk;
  if (rc == CFM_EINVAL) return kExitUsage;
  return kExitResource;
}

void print_error(int exit_code, const std::string& reason) {
  std::string flat = reason;
  for (char& c : flat)
    if (c == '\n') c = ' ';
  std::fprintf(stderr, "error: code=%d reason=%s\n", exit_code, flat.c_str());
}

int fail_status(int rc, const std::string& context) {
  int code = exit_for_status(rc);
  print_error(code, context + ": " + cfm_strerror(rc));
  return code;
}

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// "p/q" or a bare integer; anything else (signs, floats) is rejected so the
// deviation comparison stays exact.
bool parse_alpha(const std::string& s, uint64_t& num, uint64_t& den) {
  size_t slash = s.find('/');
  std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
  std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (ns.empty() || ds.empty()) return false;
  for (char c : ns)
    if (c < '0' || c > '9') return false;
  for (char c : ds)
    if (c < '0' || c > '9') return false;
  try {
    num = std::stoull(ns);
    den = std::stoull(ds);
  } catch (...) {
    return false;
  }
  return num > 0 && den > 0;
}

struct Sink {
  std::ofstream file;
  std::ostream* stream = nullptr;

  bool open(const std::string& path) {
    if (path.empty() || path == "-") {
      stream = &std::cout;
      return true;
    }
    file.open(path, std::ios::binary);  // binary keeps \n as-is everywhere
    stream = &file;
    return file.is_open();
  }
  std::ostream& out() { return *stream; }
};

struct CommonOpts {
  uint64_t x = 0;
  uint64_t chunk_size = uint64_t(1) << 20;
  uint64_t shards = 0;  // 0 = all hardware threads
  std::string out_path;
};

void add_output_flag(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out_path, "Output file; '-' or absent for stdout");
}

void add_parallel_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--chunk-size", opts.chunk_size, "Sieve block length")
      ->default_val(uint64_t(1) << 20);
  cmd->add_option("--shards", opts.shards, "Worker threads; 0 = all cores")
      ->default_val(0);
}

int run_tabulate(const CommonOpts& opts) {
  cfm_gtable* table = nullptr;
  int rc = cfm_gtable_build(opts.x, opts.chunk_size, opts.shards, &table);
  if (rc != CFM_OK) return fail_status(rc, "tabulate");
  std::unique_ptr<cfm_gtable, void (*)(cfm_gtable*)> guard(table, cfm_gtable_free);

  Sink sink;
  if (!sink.open(opts.out_path)) return fail_status(CFM_EINVAL, "open " + opts.out_path);
  sink.out() << "d,T,g\n";
  for (uint64_t d = 1; d <= opts.x; ++d) {
    uint64_t period = 0;
    rc = cfm_period_length(d, &period, nullptr);
    if (rc != CFM_OK) return fail_status(rc, "period");
    uint32_t g = 0;
    cfm_gtable_value(table, d, &g);
    sink.out() << d << ',' << period << ',' << g << '\n';
  }
  return kExitOk;
}

int run_moments(const CommonOpts& opts, uint64_t x_lo, std::vector<unsigned> rs) {
  cfm_accumulator* acc = nullptr;
  int rc = cfm_accumulate(x_lo, opts.x, rs.data(), rs.size(), 1, opts.chunk_size,
                          opts.shards, &acc);
  if (rc != CFM_OK) return fail_status(rc, "moments");
  std::unique_ptr<cfm_accumulator, void (*)(cfm_accumulator*)> guard(acc, cfm_accumulator_free);

  Sink sink;
  if (!sink.open(opts.out_path)) return fail_status(CFM_EINVAL, "open " + opts.out_path);
  sink.out() << "x_lo,x_hi,r,sum_T_r,sum_g_r,prime_count,prime_sum_T_r,prime_sum_g_r\n";
  for (unsigned r : rs) {
    char sum_T[CFM_SUM_STR_LEN], sum_g[CFM_SUM_STR_LEN];
    char psum_T[CFM_SUM_STR_LEN], psum_g[CFM_SUM_STR_LEN];
    if ((rc = cfm_accumulator_sum(acc, 'T', r, 0, sum_T, sizeof sum_T)) != CFM_OK ||
        (rc = cfm_accumulator_sum(acc, 'g', r, 0, sum_g, sizeof sum_g)) != CFM_OK ||
        (rc = cfm_accumulator_sum(acc, 'T', r, 1, psum_T, sizeof psum_T)) != CFM_OK ||
        (rc = cfm_accumulator_sum(acc, 'g', r, 1, psum_g, sizeof psum_g)) != CFM_OK)
      return fail_status(rc, "moments sum");
    sink.out() << x_lo << ',' << opts.x << ',' << r << ',' << sum_T << ',' << sum_g
               << ',' << cfm_accumulator_prime_count(acc) << ',' << psum_T << ','
               << psum_g << '\n';
  }
  return kExitOk;
}

int run_deviations(const CommonOpts& opts, const std::vector<std::string>& alphas) {
  std::vector<uint64_t> nums, dens;
  for (const std::string& s : alphas) {
    uint64_t num = 0, den = 1;
    if (!parse_alpha(s, num, den)) {
      print_error(kExitUsage, "alpha must be a positive rational p/q, got " + s);
      return kExitUsage;
    }
    nums.push_back(num);
    dens.push_back(den);
  }

  Sink sink;
  if (!sink.open(opts.out_path)) return fail_status(CFM_EINVAL, "open " + opts.out_path);
  sink.out() << "x,alpha,count,bound_first,bound_second\n";
  for (size_t i = 0; i < nums.size(); ++i) {
    cfm_deviation_report rep;
    int rc = cfm_deviation_count(opts.x, nums[i], dens[i], opts.shards, &rep);
    if (rc != CFM_OK) return fail_status(rc, "deviations");
    sink.out() << rep.x << ',' << nums[i] << '/' << dens[i] << ',' << rep.count << ','
               << fmt_real(rep.bound_first) << ',' << fmt_real(rep.bound_second) << '\n';
  }
  return kExitOk;
}

int run_constants(const CommonOpts& opts) {
  cfm_constants c;
  int rc = cfm_constants_get(&c);
  if (rc != CFM_OK) return fail_status(rc, "constants");

  Sink sink;
  if (!sink.open(opts.out_path)) return fail_status(CFM_EINVAL, "open " + opts.out_path);
  sink.out() << "name,closed_form,value\n";
  auto emit = [&](const char* name, const char* form, double v) {
    sink.out() << name << ',' << form << ',' << fmt_real(v) << '\n';
  };
  emit("c1", "(4/3)*log(2)", c.c1);
  emit("c2", "((8*sqrt(2)-4)/3)*log(2)", c.c2);
  emit("F2", "(13/14)*zeta(2)^2/zeta(3)", c.F2);
  emit("Htilde1", "(18/15)*zeta(2)/zeta(4)", c.Htilde1);
  emit("Htilde1_half", "(3/5)*zeta(2)/zeta(4)", c.Htilde1 / 2.0);
  emit("A", "(7/6)*log(2)-37/72", c.A);
  emit("B", "(19/6)*log(2)-11/12", c.B);
  emit("C", "2*log(2)", c.C);
  emit("zeta2", "pi^2/6", c.zeta2);
  emit("zeta3", "zeta(3)", c.zeta3);
  emit("zeta4", "pi^4/90", c.zeta4);
  for (char which : {'A', 'B', 'C'}) {
    double numeric = 0, closed = 0;
    rc = cfm_integral(which, 1e-8, &numeric, &closed);
    if (rc != CFM_OK) return fail_status(rc, "quadrature");
    std::string name = std::string(1, which) + "_quadrature";
    emit(name.c_str(), "adaptive_quadrature", numeric);
  }
  return kExitOk;
}

int run_verify(const CommonOpts& opts, const std::vector<std::string>& alpha_args) {
  std::vector<uint64_t> nums, dens;
  for (const std::string& s : alpha_args) {
    uint64_t num = 0, den = 1;
    if (!parse_alpha(s, num, den)) {
      print_error(kExitUsage, "alpha must be a positive rational p/q, got " + s);
      return kExitUsage;
    }
    nums.push_back(num);
    dens.push_back(den);
  }

  size_t cap = 5 + 2 * nums.size();
  std::vector<cfm_verify_row> rows(cap);
  size_t written = 0;
  int all_pass = 0;
  int rc = cfm_verify_bounds(opts.x, nums.data(), dens.data(), nums.size(),
                             opts.chunk_size, opts.shards, rows.data(), cap,
                             &written, &all_pass);
  if (rc != CFM_OK) return fail_status(rc, "verify");

  Sink sink;
  if (!sink.open(opts.out_path)) return fail_status(CFM_EINVAL, "open " + opts.out_path);
  sink.out() << "check,x,measured,lower,upper,pass\n";
  for (size_t i = 0; i < written; ++i) {
    const cfm_verify_row& r = rows[i];
    sink.out() << r.check << ',' << r.x << ',' << r.measured << ','
               << fmt_real(r.lower) << ',' << fmt_real(r.upper) << ','
               << (r.pass ? 1 : 0) << '\n';
  }
  if (!all_pass) {
    print_error(kExitViolation, "verify found at least one violated bound");
    return kExitViolation;
  }
  return kExitOk;
}

int run_figures(const CommonOpts& opts, bool primes_only, uint64_t step) {
  size_t cap = step == 0 ? 64 : size_t(opts.x / step) + 1;
  std::vector<cfm_figure_row> rows(cap);
  size_t written = 0;
  int which = primes_only ? 2 : 1;
  int rc = cfm_figure_series(opts.x, step, which, opts.chunk_size, opts.shards,
                             rows.data(), cap, &written);
  if (rc != CFM_OK) return fail_status(rc, "figures");

  Sink sink;
  if (!sink.open(opts.out_path)) return fail_status(CFM_EINVAL, "open " + opts.out_path);
  sink.out() << "x,ratio_mean,ratio_second\n";
  for (size_t i = 0; i < written && i < cap; ++i)
    sink.out() << rows[i].x << ',' << fmt_real(rows[i].ratio_mean) << ','
               << fmt_real(rows[i].ratio_second) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continued-fraction period statistics of sqrt(d)"};
  app.require_subcommand(1);

  CommonOpts opts;
  uint64_t x_lo = 0;
  uint64_t step = 0;
  bool primes_only = false;
  std::vector<unsigned> rs{1, 2};
  std::vector<std::string> alphas;
  std::vector<std::string> verify_alphas{"2/1", "4/1", "8/1"};

  auto* tabulate = app.add_subcommand("tabulate", "Emit d,T(d),g(d) for d up to x");
  tabulate->add_option("--x", opts.x, "Upper bound")->required();
  add_parallel_flags(tabulate, opts);
  add_output_flag(tabulate, opts);

  auto* moments = app.add_subcommand("moments", "Exact power sums of T and g over (x_lo, x]");
  moments->add_option("--x", opts.x, "Upper bound")->required();
  moments->add_option("--x-lo", x_lo, "Lower bound (exclusive)")->default_val(0);
  moments->add_option("--r", rs, "Exponents, subset of 1..4")->delimiter(',');
  add_parallel_flags(moments, opts);
  add_output_flag(moments, opts);

  auto* deviations = app.add_subcommand(
      "deviations", "Count d in (x,2x] with T(d) > alpha*sqrt(d), alpha exact");
  deviations->add_option("--x", opts.x, "Dyadic range start")->required();
  deviations->add_option("--alpha", alphas, "Threshold p/q; repeatable")->required();
  add_parallel_flags(deviations, opts);
  add_output_flag(deviations, opts);

  auto* constants = app.add_subcommand("constants", "Analytic constants and quadrature checks");
  add_output_flag(constants, opts);

  auto* verify = app.add_subcommand("verify", "Check every asserted bound at x");
  verify->add_option("--x", opts.x, "Upper bound")->required();
  verify->add_option("--alpha", verify_alphas, "Deviation thresholds p/q; repeatable");
  add_parallel_flags(verify, opts);
  add_output_flag(verify, opts);

  auto* figures = app.add_subcommand("figures", "Normalized moment curves up to x");
  figures->add_option("--x", opts.x, "Largest sample point")->required();
  figures->add_flag("--primes", primes_only, "Restrict to prime d");
  figures->add_option("--step", step, "Sample spacing; 0 = 64 log-spaced points")
      ->default_val(0);
  add_parallel_flags(figures, opts);
  add_output_flag(figures, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    print_error(kExitUsage, e.what());
    return kExitUsage;
  }

  if (tabulate->parsed()) return run_tabulate(opts);
  if (moments->parsed()) return run_moments(opts, x_lo, rs);
  if (deviations->parsed()) return run_deviations(opts, alphas);
  if (constants->parsed()) return run_constants(opts);
  if (verify->parsed()) return run_verify(opts, verify_alphas);
  if (figures->parsed()) return run_figures(opts, primes_only, step);
  return kExitUsage;
}
