#pragma once

// Exact rationals, MPFR-backed big floats, and error-carrying approximations.
//
// Every inexact value in the library is an Approx: a BigFloat together with
// an upper bound on its absolute error. Arithmetic on Approx values
// propagates that bound conservatively; error terms are computed with
// upward rounding at a fixed low precision.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hgv {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Precision in bits of a BigFloat mantissa.
using Precision = mpfr_prec_t;

// ---------------------------------------------------------------------------
// Errors

/// A parameter lies outside the domain of a function or identity.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series does not converge geometrically at the requested binding.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity instance is ill-formed: division by zero, a pole in a
/// Pochhammer denominator, an unbound symbol.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Rational helpers

enum class ArithOp { Add, Sub, Mul, Div };

/// Exact arithmetic in canonical form. Division by zero throws InstanceError.
Rational rat_arith(const Rational& a, const Rational& b, ArithOp op);

/// a / b, throwing InstanceError when b == 0.
Rational checked_div(const Rational& a, const Rational& b);

/// Parses "num/den" or "num". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form (den printed even when 1).
std::string to_fraction_string(const Rational& q);

bool is_integer(const Rational& q);

/// q^n for any integer n (n < 0 requires q != 0).
Rational pow(const Rational& q, long n);

/// Number of decimal digits needed to print |q|'s integer part, minimum 1.
long decimal_magnitude(const Rational& q);

// ---------------------------------------------------------------------------
// BigFloat

class BigFloat {
 public:
  explicit BigFloat(Precision prec = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat zero(Precision prec = 64);
  /// 2^e, exact.
  static BigFloat pow2(long e, Precision prec = 64);
  /// 10^(-digits) rounded toward zero, a safe lower bound for comparisons.
  static BigFloat ten_pow_neg_down(long digits);
  /// 10^(-digits) rounded upward.
  static BigFloat ten_pow_neg_up(long digits);

  Precision precision() const { return mpfr_get_prec(value_); }
  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Binary exponent e such that 2^(e-1) <= |x| < 2^e; LONG_MIN for zero.
  long exponent() const;

  /// Fixed-point decimal with `fraction_digits` digits after the point.
  std::string to_fixed(int fraction_digits) const;
  /// Scientific notation with `significant` significant digits.
  std::string to_scientific(int significant) const;

 private:
  mpfr_t value_;
};

/// Rounded conversion. `exact` (if non-null) reports whether no rounding
/// occurred.
BigFloat from_rational(const Rational& q, Precision prec, mpfr_rnd_t rnd,
                       bool* exact = nullptr);
/// Exact conversion of a BigFloat to a Rational.
Rational to_rational(const BigFloat& x);

BigFloat abs_up(const BigFloat& x);
BigFloat add_up(const BigFloat& a, const BigFloat& b);
BigFloat mul_up(const BigFloat& a, const BigFloat& b);
BigFloat div_up(const BigFloat& a, const BigFloat& b);
/// a - b rounded down (for lower bounds).
BigFloat sub_down(const BigFloat& a, const BigFloat& b);
BigFloat max(const BigFloat& a, const BigFloat& b);

bool operator<(const BigFloat& a, const BigFloat& b);
bool operator<=(const BigFloat& a, const BigFloat& b);
bool operator>(const BigFloat& a, const BigFloat& b);

// ---------------------------------------------------------------------------
// Approx

/// A big-float value with a rigorous absolute error bound:
/// the represented quantity lies in [value - abs_err, value + abs_err].
struct Approx {
  BigFloat value;
  BigFloat abs_err;  // >= 0, 64-bit, rounded up

  Approx();
  Approx(BigFloat v, BigFloat err);

  Precision precision() const { return value.precision(); }
  bool is_exact() const { return abs_err.is_zero(); }
  /// True when abs_err <= 10^(-digits).
  bool within_digits(long digits) const;
  /// Upper bound on |value| + abs_err.
  BigFloat magnitude_up() const;
  /// Lower bound on the magnitude of every point of the enclosure (0 when
  /// the enclosure contains zero).
  BigFloat magnitude_down() const;
};

/// to_bigfloat: correctly rounded conversion; exact values carry abs_err = 0.
Approx to_approx(const Rational& q, Precision prec);

Approx operator+(const Approx& a, const Approx& b);
Approx operator-(const Approx& a, const Approx& b);
Approx operator*(const Approx& a, const Approx& b);
Approx operator/(const Approx& a, const Approx& b);
Approx operator-(const Approx& a);

Approx operator*(const Approx& a, const Rational& q);
Approx operator+(const Approx& a, const Rational& q);

/// Residual |a - b| rounded upward, including both error bounds.
BigFloat residual_bound(const Approx& a, const Approx& b);
/// |a.value - b.value| rounded upward.
BigFloat abs_difference(const Approx& a, const Approx& b);

Approx sqrt(const Approx& x);
Approx exp(const Approx& x);
Approx log(const Approx& x);
Approx pow_int(const Approx& x, long n);
/// x^q for x > 0 as exp(q log x).
Approx pow(const Approx& x, const Rational& q);
Approx sin(const Approx& x);
Approx cos(const Approx& x);
Approx agm(const Approx& a, const Approx& b);

/// Bits used for a request of `digits` decimal digits:
/// ceil(digits * log2(10)) + 32.
Precision working_precision(long digits);

/// Runs `eval(prec)` starting at working_precision(digits), doubling the
/// precision until the abs_err meets 10^(-digits).
template <class Eval>
Approx evaluate_to_digits(long digits, Eval&& eval) {
  Precision prec = working_precision(digits);
  for (int attempt = 0; attempt < 8; ++attempt, prec *= 2) {
    Approx result = eval(prec);
    if (result.within_digits(digits)) return result;
  }
  throw ConvergenceError("precision escalation did not reach " +
                         std::to_string(digits) + " digits");
}

// ---------------------------------------------------------------------------
// Elementary functions at a requested number of digits.

enum class ElemFn { Sqrt, Exp, Log, PowInt, SinPi, CosPi, TanPi };

/// pi by Machin's arctangent formula (exact rational partial sums).
Approx pi_machin(Precision prec);

Approx sin_pi(const Rational& q, Precision prec);
Approx cos_pi(const Rational& q, Precision prec);
/// Requires q - 1/2 not an integer.
Approx tan_pi(const Rational& q, Precision prec);
/// Requires q > 0.
Approx log(const Rational& q, Precision prec);

/// Top-level evaluation with abs_err <= 10^(-digits). `n` is the exponent
/// for PowInt and ignored otherwise.
Approx elem(ElemFn f, const Rational& x, long digits, long n = 0);

}  // namespace hgv
