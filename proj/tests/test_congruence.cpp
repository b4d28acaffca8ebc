#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgv/congruence.hpp"
#include "hgv/special.hpp"
#include "support.hpp"

using namespace hgv;
using testing::uniform;

namespace {

/// Residue mod m of an exact rational with denominator prime to m.
std::uint64_t residue(const Rational& q, unsigned long m) {
  BigInt inv;
  BigInt den = q.get_den();
  BigInt mod = m;
  REQUIRE(mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) != 0);
  BigInt r = (q.get_num() * inv) % mod;
  if (r < 0) r += mod;
  return r.get_ui();
}

BigInt pair_term(const SupercongruenceCase& c, unsigned long k) {
  return c.binomials == BinomialPair::TwoThree ? BigInt(binomial(2 * k, k) * binomial(3 * k, k))
                                               : BigInt(binomial(2 * k, k) * binomial(4 * k, 2 * k));
}

}  // namespace

TEST_CASE("Legendre symbol examples") {
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(7, 7) == 0);
  CHECK(legendre(-2, 5) == -1);
  CHECK(legendre(3, 5) == -1);
  CHECK(legendre(-1, 13) == 1);
  CHECK_THROWS_AS(legendre(1, 9), std::invalid_argument);
  CHECK_THROWS_AS(legendre(1, 2), std::invalid_argument);
}

TEST_CASE("Legendre symbol is multiplicative") {
  const std::vector<long> primes = {5, 7, 11, 13, 101, 197, 1009};
  for (int t = 0; t < 200; ++t) {
    const long p = primes[t % primes.size()];
    const long a = uniform(-500, 500), b = uniform(-500, 500);
    CHECK(legendre(a, p) * legendre(b, p) == legendre(a * b, p));
  }
}

TEST_CASE("Legendre symbol matches enumeration of squares") {
  for (long p : {5L, 7L, 11L, 13L, 17L}) {
    for (long a = 1; a < p; ++a) {
      bool square = false;
      for (long x = 1; x < p; ++x) square = square || (x * x) % p == a;
      CHECK(legendre(a, p) == (square ? 1 : -1));
    }
  }
}

TEST_CASE("modular ring") {
  const ModRing r(49);
  CHECK(r.reduce(-1LL) == 48);
  CHECK(r.reduce(BigInt(-50)) == 48);
  CHECK(r.mul(48, 48) == 1);
  CHECK(r.pow(3, 42) == 1);
  CHECK(r.inverse(7) == std::nullopt);
  CHECK(r.mul(*r.inverse(10), 10) == 1);
  const ModRing big(4611686018427387847ULL);
  CHECK(big.mul(big.modulus() - 1, big.modulus() - 1) == 1);
}

TEST_CASE("reduce-then-multiply equals multiply-then-reduce") {
  for (int t = 0; t < 100; ++t) {
    const long p = std::vector<long>{5, 7, 11, 13, 101, 199}[t % 6];
    const ModRing r(static_cast<std::uint64_t>(p * p));
    const unsigned long k = static_cast<unsigned long>(uniform(0, p - 1));
    const BigInt a = binomial(2 * k, k), b = binomial(3 * k, k), c = binomial(4 * k, 2 * k);
    CHECK(r.mul(r.mul(r.reduce(a), r.reduce(b)), r.reduce(c)) == r.reduce(BigInt(a * b * c)));
  }
}

TEST_CASE("check examples") {
  CHECK(supercongruence_check(1, 5) == CongruenceResult::Holds);
  CHECK(supercongruence_check(2, 3) == CongruenceResult::Inapplicable);
  CHECK(supercongruence_check(3, 7) == CongruenceResult::Inapplicable);
  CHECK(supercongruence_check(4, 7) == CongruenceResult::Holds);
  CHECK(supercongruence_check(1, 9) == CongruenceResult::Inapplicable);
  CHECK_THROWS_AS(supercongruence_check(5, 7), std::invalid_argument);
  const CongruenceRecord rec = supercongruence_record(3, 11);
  CHECK(rec.symbol == legendre(-2, 11));
  CHECK(rec.lhs == rec.rhs);
}

TEST_CASE("records agree with exact rational sums") {
  for (const auto& c : supercongruence_cases()) {
    for (long p : {5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
      if (c.lhs_base % p == 0 || c.rhs_base % p == 0) continue;
      Rational lhs = 0, rhs = 0;
      for (long k = 0; k < p; ++k) {
        const Rational b(pair_term(c, static_cast<unsigned long>(k)));
        lhs += b / pow(Rational(c.lhs_base), k);
        rhs += b / pow(Rational(c.rhs_base), k);
      }
      const int symbol = c.symbol_p_over_3 ? legendre(p, 3) : legendre(-2, p);
      const unsigned long m = static_cast<unsigned long>(p * p);
      const CongruenceRecord rec = supercongruence_record(c.which, p);
      CHECK(rec.lhs == residue(lhs, m));
      CHECK(rec.rhs == residue(Rational(symbol * rhs), m));
      CHECK(rec.result == CongruenceResult::Holds);
    }
  }
}

TEST_CASE("scan") {
  const auto s50 = scan(50);
  CHECK_FALSE(s50.empty());
  for (const auto& r : s50) CHECK(r.result == CongruenceResult::Holds);
  const auto s5 = scan(5);
  CHECK(s5.size() == 4);
  for (const auto& r : s5) CHECK(r.p == 5);
  CHECK(scan(4).empty());
  for (const auto& r : scan(60, 3)) CHECK(r.which == 3);
}

TEST_CASE("parallel scan equals the serial scan") {
  const auto par = scan(199);
  const auto ser = scan_serial(199);
  REQUIRE(par.size() == ser.size());
  for (std::size_t j = 0; j < par.size(); ++j) {
    CHECK(par[j].which == ser[j].which);
    CHECK(par[j].p == ser[j].p);
    CHECK(par[j].lhs == ser[j].lhs);
    CHECK(par[j].rhs == ser[j].rhs);
    CHECK(par[j].result == CongruenceResult::Holds);
  }
}
