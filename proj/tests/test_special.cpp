#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgv/dual.hpp"
#include "hgv/special.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace hgv;
using testing::agree_to;
using testing::agrees;
using testing::close;
using testing::random_in;
using testing::random_rational;

namespace {

Rational H(unsigned long n, unsigned order = 1) { return gen_harmonic(n, order, 0); }

Rational factorial(unsigned long n) { return pochhammer(Rational(1), n); }

Rational binom(unsigned long n, unsigned long k) { return Rational(binomial(n, k)); }

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  for (unsigned long n : {0UL, 1UL, 17UL, 400UL}) CHECK(binomial(n, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(6, 3) * binomial(3, 1) == 60);
  // (1/3)_3 (2/3)_3 / (1)_3^2 * 27^3 = C(6,3) C(9,3)
  const Rational lhs =
      pochhammer(Rational(1, 3), 3) * pochhammer(Rational(2, 3), 3) / pow(factorial(3), 2) * 19683;
  CHECK(lhs == 1680);
  CHECK(Rational(binomial(6, 3) * binomial(9, 3)) == lhs);
  CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(Rational(1, 2), 0) == 1);
  CHECK(pochhammer(Rational(1, 2), 3) == Rational(15, 8));
  CHECK(pow(pochhammer(Rational(1, 2), 2), 2) / pow(factorial(2), 2) == Rational(9, 64));
  CHECK(Rational(9, 64) == pow(binom(4, 2), 2) / 256);
  CHECK(pochhammer(Rational(-3), 5) == 0);
  const Rational x(7, 11);
  Rational acc = 1;
  for (unsigned long m = 0; m <= 500; ++m) {
    CHECK(pochhammer(x, m) == acc);
    acc *= x + m;
  }
}

TEST_CASE("generalized harmonic numbers") {
  CHECK(gen_harmonic(0, 1, Rational(3, 7)) == 0);
  CHECK(gen_harmonic(2, 1, Rational(-1, 2)) == Rational(8, 3));
  CHECK(Rational(8, 3) == 2 * H(4) - H(2));
  CHECK(gen_harmonic(3, 1, 0) == Rational(11, 6));
  for (unsigned order = 1; order <= 4; ++order) {
    Rational s = 0;
    for (unsigned long j = 1; j <= 40; ++j) s += Rational(1) / pow(Rational(j), order);
    CHECK(gen_harmonic(40, order, 0) == s);
  }
  CHECK_THROWS(gen_harmonic(3, 1, Rational(-2)));
  CHECK_THROWS(gen_harmonic(3, 0, Rational(0)));
}

TEST_CASE("harmonic offset relations hold exactly for k <= 300") {
  for (unsigned long k = 0; k <= 300; ++k) {
    const Rational hk = H(k);
    const Rational h2 = H(2 * k);
    const Rational h3 = H(3 * k);
    CHECK(gen_harmonic(k, 1, Rational(-1, 2)) == 2 * h2 - hk);
    CHECK(gen_harmonic(k, 1, Rational(-1, 3)) + gen_harmonic(k, 1, Rational(-2, 3)) == 3 * h3 - hk);
    CHECK(gen_harmonic(k, 1, Rational(-1, 4)) + gen_harmonic(k, 1, Rational(-3, 4)) ==
          4 * H(4 * k) - 2 * h2);
    CHECK(gen_harmonic(k, 1, Rational(-1, 6)) + gen_harmonic(k, 1, Rational(-5, 6)) ==
          6 * H(6 * k) - 3 * h3 - 2 * h2 + hk);
  }
}

TEST_CASE("Pochhammer-binomial ratios hold exactly for k <= 200") {
  for (unsigned long k = 0; k <= 200; ++k) {
    const Rational f2 = pow(factorial(k), 2);
    const auto p = [&](long num, long den) { return pochhammer(Rational(num, den), k); };
    CHECK(pow(p(1, 2), 2) / f2 == pow(binom(2 * k, k), 2) / pow(Rational(16), k));
    CHECK(p(1, 3) * p(2, 3) / f2 == binom(2 * k, k) * binom(3 * k, k) / pow(Rational(27), k));
    CHECK(p(1, 4) * p(3, 4) / f2 == binom(2 * k, k) * binom(4 * k, 2 * k) / pow(Rational(64), k));
    CHECK(p(1, 6) * p(5, 6) / f2 ==
          binom(3 * k, k) * binom(6 * k, 3 * k) / pow(Rational(432), k));
  }
}

TEST_CASE("dual Pochhammer") {
  using D = Dual<Rational>;
  // (1+x)_3 at x = 1: value 24, derivative 26
  const D r = dual_pochhammer(D(Rational(2), Rational(1)), 3);
  CHECK(r.val == 24);
  CHECK(r.der == 26);
  const D e = dual_pochhammer(D(Rational(5, 3), Rational(1)), 0);
  CHECK(e.val == 1);
  CHECK(e.der == 0);
  const D h = dual_pochhammer(D(Rational(1, 2), Rational(1)), 2);
  CHECK(h.val == Rational(3, 4));
  CHECK(h.der == 2);
}

TEST_CASE("dual Pochhammer derivative law on 200 random cases") {
  using D = Dual<Rational>;
  for (int t = 0; t < 200; ++t) {
    Rational x = random_in(0, 20, 50);
    const unsigned long m = static_cast<unsigned long>(testing::uniform(0, 50));
    const D r = dual_pochhammer(D(x, Rational(1)), m);
    // d/dx (x)_m = (x)_m H_m(x - 1)
    CHECK(r.val == pochhammer(x, m));
    CHECK(r.der == pochhammer(x, m) * gen_harmonic(m, 1, Rational(x - 1)));
  }
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(12) == Rational(-691, 2730));
  CHECK(bernoulli(30) == Rational(BigInt("8615841276005"), 14322));
}

TEST_CASE("gamma values") {
  const Approx sqrt_pi = constant(ConstantName::sqrt_pi(), 50);
  CHECK(agree_to(gamma(Rational(1, 2), 50), sqrt_pi, 50));
  const Approx g14 = constant(ConstantName::gamma_quarter(), 50);
  CHECK(agree_to(gamma(Rational(5, 4), 50), g14 * Rational(1, 4), 50));
  CHECK(agrees(gamma(Rational(1, 4), 60), oracle::kGammaQuarter, 60));
  CHECK(agrees(gamma(Rational(7, 3), 60), oracle::kGammaSevenThirds, 60));
  CHECK(agrees(gamma(Rational(5), 30), "24", 30));
  CHECK(agrees(gamma(Rational(-1, 2), 30),
               "-3.544907701811032054596334966682290365595098912244774256427", 30));

  const Approx reflect = gamma(Rational(1, 4), 60) * gamma(Rational(3, 4), 60);
  const Approx target = constant(ConstantName::pi(), 60) * constant(ConstantName::sqrt(2), 60);
  CHECK(close(reflect, target, 60));
  CHECK(reflect.within_digits(59));

  CHECK_THROWS_AS(gamma(Rational(0), 20), DomainError);
  CHECK_THROWS_AS(gamma(Rational(-3), 20), DomainError);
}

TEST_CASE("gamma functional equation on 50 random rationals") {
  for (int t = 0; t < 50; ++t) {
    Rational q = random_rational(400, 37);
    if (is_integer(q) && sgn(q) <= 0) q += Rational(1, 2);
    const Approx a = gamma(Rational(q + 1), 30);
    const Approx b = gamma(q, 30) * q;
    CHECK(close(a, b, 28));
  }
}

TEST_CASE("polygamma values") {
  const long d = 45;
  const Approx pi = constant(ConstantName::pi(), d);
  const Approx g = constant(ConstantName::catalan(), d);
  const Approx pi2 = pi * pi;
  const Approx t14 = polygamma(1, Rational(1, 4), d);
  const Approx t34 = polygamma(1, Rational(3, 4), d);
  CHECK(close(t14, pi2 + g * Rational(8), 42));
  CHECK(close(t34, pi2 - g * Rational(8), 42));
  CHECK(close(polygamma(1, Rational(5, 4), d), t14 + Rational(-16), 42));
  CHECK(agrees(t14, oracle::kTrigammaQuarter, 60));
  CHECK(agrees(polygamma(0, Rational(1, 3), 60), oracle::kDigammaThird, 60));
  CHECK(agrees(polygamma(2, Rational(2, 7), 60), oracle::kTetragammaTwoSevenths, 58));
  CHECK_THROWS_AS(polygamma(1, Rational(-2), 20), DomainError);
}

TEST_CASE("polygamma recurrence on 50 random rationals") {
  for (int t = 0; t < 50; ++t) {
    Rational q = random_rational(60, 29);
    if (is_integer(q) && sgn(q) <= 0) q += Rational(1, 3);
    for (unsigned n = 0; n <= 3; ++n) {
      const Approx lhs = polygamma(n, Rational(q + 1), 30) - polygamma(n, q, 30);
      Rational rhs = factorial(n) / pow(q, static_cast<long>(n) + 1);
      if (n % 2 == 1) rhs = -rhs;
      CHECK(close(lhs, to_approx(rhs, lhs.precision()), 30));
    }
  }
}

TEST_CASE("constants by two methods agree to 60 digits") {
  const Precision p = working_precision(70);
  CHECK(agree_to(pi_machin(p), pi_chudnovsky(p), 60));
  CHECK(agree_to(catalan_cvz(p), catalan_ramanujan(p), 60));
  CHECK(agree_to(constant(ConstantName::gamma_quarter(), 60, Method::Primary),
                 constant(ConstantName::gamma_quarter(), 60, Method::Secondary), 60));
  CHECK(agrees(constant(ConstantName::pi(), 60), oracle::kPi, 60));
  CHECK(agrees(constant(ConstantName::catalan(), 60), oracle::kCatalan, 60));
  CHECK(agrees(constant(ConstantName::gamma_quarter(), 60), oracle::kGammaQuarter, 60));
}

TEST_CASE("Catalan agrees with the trigamma route") {
  const long d = 40;
  const Approx g = constant(ConstantName::catalan(), d);
  const Approx pi = constant(ConstantName::pi(), d);
  const Approx via = (polygamma(1, Rational(1, 4), d) - pi * pi) * Rational(1, 8);
  CHECK(close(g, via, 39));
}

TEST_CASE("constant names") {
  const Approx l = constant(ConstantName::log(1), 30);
  CHECK(l.is_exact());
  CHECK(l.value.is_zero());
  CHECK(parse_constant_name("pi")->kind == ConstantKind::Pi);
  const auto pg = parse_constant_name("polygamma(1,1/4)");
  REQUIRE(pg);
  CHECK(pg->kind == ConstantKind::Polygamma);
  CHECK(pg->order == 1);
  CHECK(pg->arg == Rational(1, 4));
  CHECK(parse_constant_name("pow(2/1,1/2)")->arg2 == Rational(1, 2));
  CHECK_FALSE(parse_constant_name("foo"));
  CHECK_FALSE(parse_constant_name("log(1.5)"));
  CHECK_THROWS_AS(constant(ConstantName::log(-1), 20), DomainError);
  CHECK(agrees(constant(ConstantName::rat_pow(8, Rational(2, 3)), 40), "4", 40));
}
