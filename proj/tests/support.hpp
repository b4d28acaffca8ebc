#pragma once

// Helpers shared by the unit tests: decimal oracles, agreement checks,
// seeded random rationals.

#include <random>
#include <string>

#include "hgv/numeric.hpp"

namespace testing {

/// Exact value of a decimal literal such as "-3.1415".
inline hgv::Rational decimal(const std::string& text) {
  const bool neg = !text.empty() && text[0] == '-';
  const std::string body = neg ? text.substr(1) : text;
  const auto dot = body.find('.');
  std::string digits = body;
  long scale = 0;
  if (dot != std::string::npos) {
    digits = body.substr(0, dot) + body.substr(dot + 1);
    scale = static_cast<long>(body.size() - dot - 1);
  }
  hgv::Rational q(hgv::BigInt(digits, 10), 1);
  q /= hgv::pow(hgv::Rational(10), scale);
  return neg ? hgv::Rational(-q) : q;
}

/// |x - oracle| <= x.abs_err + 10^-digits, where the oracle string carries
/// more than `digits` correct decimals.
inline bool agrees(const hgv::Approx& x, const std::string& oracle, long digits) {
  const hgv::Approx ref = hgv::to_approx(decimal(oracle), x.precision() + 64);
  const hgv::BigFloat slack = hgv::add_up(x.abs_err, hgv::BigFloat::ten_pow_neg_up(digits));
  return hgv::abs_difference(x, ref) <= slack;
}

/// Both enclosures overlap up to 10^-digits.
inline bool close(const hgv::Approx& a, const hgv::Approx& b, long digits) {
  return hgv::abs_difference(a, b) <=
         hgv::add_up(hgv::add_up(a.abs_err, b.abs_err), hgv::BigFloat::ten_pow_neg_up(digits));
}

/// Values agree and both carry error at most 10^-digits.
inline bool agree_to(const hgv::Approx& a, const hgv::Approx& b, long digits) {
  return a.within_digits(digits) && b.within_digits(digits) &&
         hgv::abs_difference(a, b) <= hgv::BigFloat::ten_pow_neg_up(digits);
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240519);
  return gen;
}

inline long uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

/// Random p/q with |p| <= num_bound and 1 <= q <= den_bound.
inline hgv::Rational random_rational(long num_bound, long den_bound) {
  hgv::Rational q(uniform(-num_bound, num_bound), uniform(1, den_bound));
  q.canonicalize();
  return q;
}

/// Random rational strictly inside (lo, hi) with denominator up to den_bound.
inline hgv::Rational random_in(long lo, long hi, long den_bound) {
  for (;;) {
    const long d = uniform(1, den_bound);
    hgv::Rational q(uniform(lo * d + 1, hi * d - 1), d);
    q.canonicalize();
    if (q > lo && q < hi) return q;
  }
}

}  // namespace testing
