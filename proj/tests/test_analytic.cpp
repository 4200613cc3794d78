#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/analytic.hpp"
#include "core/errors.hpp"
#include "core/modular.hpp"

using namespace cfm;

TEST_CASE("harmonic tail exact sums") {
  HarmonicTail t1 = harmonic_tail(1);
  CHECK(t1.sum == mpq_class(1, 2));
  CHECK(t1.theta == doctest::Approx(0.58870).epsilon(1e-3));

  HarmonicTail t2 = harmonic_tail(2);
  CHECK(t2.sum == mpq_class(7, 12));
  CHECK(t2.theta == doctest::Approx(0.55336).epsilon(1e-3));

  // tail sums increase toward log 2 from below
  CHECK(mpq_get_d(t1.sum.get_mpq_t()) < mpq_get_d(t2.sum.get_mpq_t()));
  CHECK(mpq_get_d(t2.sum.get_mpq_t()) < std::log(2.0));
}

TEST_CASE("harmonic tail sweep matches single evaluations") {
  auto thetas = harmonic_tail_sweep(200);
  REQUIRE(thetas.size() == 200);
  for (u64 y : {u64(1), u64(2), u64(3), u64(17), u64(100), u64(200)}) {
    CHECK(thetas[y - 1] == doctest::Approx(harmonic_tail(y).theta).epsilon(1e-12));
  }
  for (double th : thetas) {
    CHECK(th >= 0.0);
    CHECK(th <= 1.0);
  }
}

TEST_CASE("periodic cubic stays inside [-1/20, 1/20]") {
  CHECK(bernoulli3_frac(0.0) == 0.0);
  CHECK(bernoulli3_frac(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(bernoulli3_frac(0.2113) == doctest::Approx(0.0481).epsilon(1e-3));
  CHECK(bernoulli3_frac(3.25) == doctest::Approx(bernoulli3_frac(0.25)).epsilon(1e-12));
  CHECK(bernoulli3_frac(-0.75) == doctest::Approx(bernoulli3_frac(0.25)).epsilon(1e-12));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-50.0, 50.0);
  for (int i = 0; i < 100000; ++i) {
    double v = bernoulli3_frac(uni(rng));
    CHECK(v <= 0.05);
    CHECK(v >= -0.05);
  }
  // the extremum near t = (3 - sqrt 3)/6
  double t_star = (3.0 - std::sqrt(3.0)) / 6.0;
  CHECK(std::abs(bernoulli3_frac(t_star)) == doctest::Approx(std::sqrt(3.0) / 36.0).epsilon(1e-12));
}

TEST_CASE("zeta against closed anchors") {
  double pi = std::acos(-1.0);
  CHECK(std::abs(zeta(2.0) - pi * pi / 6.0) <= 1e-12);
  CHECK(std::abs(zeta(4.0) - pi * pi * pi * pi / 90.0) <= 1e-12);
  CHECK(zeta(3.0) == doctest::Approx(1.2020569031595943).epsilon(1e-12));
  CHECK(zeta(1.5) == doctest::Approx(2.6123753486854883).epsilon(1e-11));
  CHECK(zeta(6.0) == doctest::Approx(std::pow(pi, 6) / 945.0).epsilon(1e-12));
  CHECK_THROWS_AS(zeta(1.0), error);
  CHECK_THROWS_AS(zeta(0.5), error);
}

TEST_CASE("Dirichlet series of the pair-count density") {
  double f2 = dirichlet_F(2.0);
  CHECK(f2 >= 2.090);
  CHECK(f2 <= 2.091);
  // same value through the reduced fraction at s = 2
  double alt = (13.0 / 14.0) * zeta(2.0) * zeta(2.0) / zeta(3.0);
  CHECK(f2 == doctest::Approx(alt).epsilon(1e-10));
  CHECK_THROWS_AS(dirichlet_F(1.0), error);

  // partial sums approach F(2) from below; all terms positive
  double partial = 0.0;
  for (u64 n = 1; n <= 5000; ++n) {
    Rational c = c_closed(n);
    partial += double(c.num) / double(c.den) / (double(n) * double(n));
  }
  CHECK(partial < f2);
  CHECK(partial > f2 - 0.01);
}

TEST_CASE("H-tilde evaluations") {
  double h = htilde_at_1();
  CHECK(h == doctest::Approx(1.823781).epsilon(1e-5));
  CHECK(h / 2.0 == doctest::Approx((3.0 / 5.0) * zeta(2.0) / zeta(4.0)).epsilon(1e-12));
  CHECK(h / 2.0 == doctest::Approx(0.911891).epsilon(1e-5));
  CHECK(h / 8.0 <= 0.228);
}

TEST_CASE("quadrature hits the closed forms") {
  const double log2 = std::log(2.0);
  IntegralResult a = integral_abc('A', 1e-6);
  CHECK(a.closed == doctest::Approx((7.0 / 6.0) * log2 - 37.0 / 72.0).epsilon(1e-15));
  CHECK(std::abs(a.numeric - a.closed) <= 1e-6);

  IntegralResult b = integral_abc('B', 1e-6);
  CHECK(b.closed == doctest::Approx((19.0 / 6.0) * log2 - 11.0 / 12.0).epsilon(1e-15));
  CHECK(std::abs(b.numeric - b.closed) <= 1e-6);

  IntegralResult c = integral_abc('C', 1e-6);
  CHECK(c.closed == doctest::Approx(2.0 * log2).epsilon(1e-15));
  CHECK(std::abs(c.numeric - c.closed) <= 1e-6);

  // tighter tolerance still converges
  IntegralResult c9 = integral_abc('C', 1e-9);
  CHECK(std::abs(c9.numeric - c9.closed) <= 1e-9);

  CHECK_THROWS_AS(integral_abc('D', 1e-6), error);
  CHECK_THROWS_AS(integral_abc('A', 1e-12), error);
}

TEST_CASE("first-moment envelope") {
  BoundEnvelope e10 = g_mean_envelope(10);
  CHECK(e10.lower == doctest::Approx(2.90).epsilon(2e-3));
  CHECK(e10.upper == doctest::Approx(25.55).epsilon(2e-3));
  CHECK(e10.lower < 18.0);
  CHECK(18.0 < e10.upper);

  BoundEnvelope e5 = g_mean_envelope(5);
  CHECK(e5.lower < 5.0);
  CHECK(5.0 < e5.upper);

  CHECK_THROWS_AS(g_mean_envelope(1), error);
}

TEST_CASE("second-moment cap formula") {
  double l1 = std::log(4.0 * std::exp(4.0));
  CHECK(second_moment_cap(1) == doctest::Approx(11.9 + 5.0 * l1 * l1).epsilon(1e-12));
  double l10 = std::log(40.0 * std::exp(4.0));
  CHECK(second_moment_cap(10) ==
        doctest::Approx(1190.0 + 5.0 * std::pow(10.0, 1.5) * l10 * l10).epsilon(1e-12));
}

TEST_CASE("deviation caps") {
  DeviationCaps at_c2 = deviation_caps(100000, kC2);
  CHECK(at_c2.first == doctest::Approx(100000.0).epsilon(1e-12));
  DeviationCaps at_root47 = deviation_caps(100000, std::sqrt(47.0));
  CHECK(at_root47.second == doctest::Approx(100000.0).epsilon(1e-12));
  // between sqrt(47) and 47/c2 the first cap is the sharper one
  DeviationCaps mid = deviation_caps(100000, 7.0);
  CHECK(mid.first < mid.second);
  CHECK_THROWS_AS(deviation_caps(0, 1.0), error);
}

TEST_CASE("constants snapshot") {
  Constants c = constants();
  CHECK(c.c1 >= 0.9241);
  CHECK(c.c1 <= 0.9242);
  CHECK(c.c2 >= 1.6898);
  CHECK(c.c2 <= 1.6899);
  CHECK(c.F2 >= 2.090);
  CHECK(c.F2 <= 2.091);
  CHECK(c.Htilde1 == doctest::Approx(htilde_at_1()).epsilon(1e-15));
  CHECK(c.zeta2 == doctest::Approx(zeta(2.0)).epsilon(1e-15));
  CHECK(c.A + 37.0 / 72.0 == doctest::Approx((7.0 / 6.0) * std::log(2.0)).epsilon(1e-12));
}
