#include "hgv/numeric.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <utility>

namespace hgv {

namespace {

// Error bounds are tracked at this precision and always rounded upward.
constexpr Precision kErrPrec = 64;

// |v| * 2^(1-p), the faithful-rounding slack of a result v at precision p.
// Zero when the operation was exact.
BigFloat rounding_slack(const BigFloat& v, int ternary) {
  BigFloat out(kErrPrec);
  if (ternary == 0 || v.is_zero()) return out;
  mpfr_abs(out.get(), v.get(), MPFR_RNDU);
  mpfr_mul_2si(out.get(), out.get(), 1 - static_cast<long>(v.precision()),
               MPFR_RNDU);
  return out;
}

Precision max_prec(const Approx& a, const Approx& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational helpers

Rational checked_div(const Rational& a, const Rational& b) {
  if (sgn(b) == 0) throw InstanceError("division by zero");
  return Rational(a / b);
}

Rational rat_arith(const Rational& a, const Rational& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return Rational(a + b);
    case ArithOp::Sub: return Rational(a - b);
    case ArithOp::Mul: return Rational(a * b);
    case ArithOp::Div: return checked_div(a, b);
  }
  throw std::logic_error("unknown ArithOp");
}

Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto strip_plus = [](std::string_view s) {
    return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  BigInt n(strip_plus(num)), d(strip_plus(den));
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational pow(const Rational& q, long n) {
  if (n < 0) return checked_div(Rational(1), pow(q, -n));
  Rational out(1);
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

long decimal_magnitude(const Rational& q) {
  BigInt ip = abs(q.get_num()) / q.get_den();
  return ip == 0 ? 1 : static_cast<long>(ip.get_str().size());
}

// ---------------------------------------------------------------------------
// BigFloat

BigFloat::BigFloat(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::zero(Precision prec) { return BigFloat(prec); }

BigFloat BigFloat::pow2(long e, Precision prec) {
  BigFloat out(prec);
  mpfr_set_ui_2exp(out.get(), 1, e, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::ten_pow_neg_down(long digits) {
  BigFloat out(kErrPrec);
  mpfr_set_ui(out.get(), 10, MPFR_RNDN);
  mpfr_pow_si(out.get(), out.get(), -digits, MPFR_RNDD);
  return out;
}

BigFloat BigFloat::ten_pow_neg_up(long digits) {
  BigFloat out(kErrPrec);
  mpfr_set_ui(out.get(), 10, MPFR_RNDN);
  mpfr_pow_si(out.get(), out.get(), -digits, MPFR_RNDU);
  return out;
}

long BigFloat::exponent() const {
  if (is_zero()) return LONG_MIN;
  return mpfr_get_exp(value_);
}

std::string BigFloat::to_fixed(int fraction_digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rf", fraction_digits, value_);
  std::string out(buf);
  mpfr_free_str(buf);
  if (!out.empty() && out[0] == '-' &&
      out.find_first_not_of("0.", 1) == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::string BigFloat::to_scientific(int significant) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(0, significant - 1), value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

BigFloat from_rational(const Rational& q, Precision prec, mpfr_rnd_t rnd,
                       bool* exact) {
  BigFloat out(prec);
  int t = mpfr_set_q(out.get(), q.get_mpq_t(), rnd);
  if (exact) *exact = (t == 0);
  return out;
}

Rational to_rational(const BigFloat& x) {
  if (x.is_zero()) return Rational(0);
  BigInt m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x.get());
  Rational out(m);
  if (e >= 0) {
    mpz_mul_2exp(out.get_num_mpz_t(), out.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  out.canonicalize();
  return out;
}

BigFloat abs_up(const BigFloat& x) {
  BigFloat out(std::max(x.precision(), kErrPrec));
  mpfr_abs(out.get(), x.get(), MPFR_RNDU);
  return out;
}

BigFloat add_up(const BigFloat& a, const BigFloat& b) {
  BigFloat out(kErrPrec);
  mpfr_add(out.get(), a.get(), b.get(), MPFR_RNDU);
  return out;
}

BigFloat mul_up(const BigFloat& a, const BigFloat& b) {
  BigFloat out(kErrPrec);
  mpfr_mul(out.get(), a.get(), b.get(), MPFR_RNDU);
  return out;
}

BigFloat div_up(const BigFloat& a, const BigFloat& b) {
  BigFloat out(kErrPrec);
  mpfr_div(out.get(), a.get(), b.get(), MPFR_RNDU);
  return out;
}

BigFloat sub_down(const BigFloat& a, const BigFloat& b) {
  BigFloat out(kErrPrec);
  mpfr_sub(out.get(), a.get(), b.get(), MPFR_RNDD);
  return out;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.get(), b.get()); }
bool operator<=(const BigFloat& a, const BigFloat& b) {
  return mpfr_lessequal_p(a.get(), b.get());
}
bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.get(), b.get()); }

// ---------------------------------------------------------------------------
// Approx

Approx::Approx() : value(64), abs_err(kErrPrec) {}

Approx::Approx(BigFloat v, BigFloat err) : value(std::move(v)), abs_err(std::move(err)) {}

bool Approx::within_digits(long digits) const {
  return abs_err <= BigFloat::ten_pow_neg_down(digits);
}

BigFloat Approx::magnitude_up() const { return add_up(abs_up(value), abs_err); }

BigFloat Approx::magnitude_down() const {
  BigFloat m(kErrPrec);
  mpfr_abs(m.get(), value.get(), MPFR_RNDD);
  BigFloat d = sub_down(m, abs_err);
  if (d.sign() < 0) return BigFloat::zero(kErrPrec);
  return d;
}

Approx to_approx(const Rational& q, Precision prec) {
  BigFloat v(prec);
  int t = mpfr_set_q(v.get(), q.get_mpq_t(), MPFR_RNDN);
  BigFloat err = rounding_slack(v, t);
  return {std::move(v), std::move(err)};
}

Approx operator+(const Approx& a, const Approx& b) {
  BigFloat v(max_prec(a, b));
  int t = mpfr_add(v.get(), a.value.get(), b.value.get(), MPFR_RNDN);
  BigFloat err = add_up(add_up(a.abs_err, b.abs_err), rounding_slack(v, t));
  return {std::move(v), std::move(err)};
}

Approx operator-(const Approx& a, const Approx& b) {
  BigFloat v(max_prec(a, b));
  int t = mpfr_sub(v.get(), a.value.get(), b.value.get(), MPFR_RNDN);
  BigFloat err = add_up(add_up(a.abs_err, b.abs_err), rounding_slack(v, t));
  return {std::move(v), std::move(err)};
}

Approx operator-(const Approx& a) {
  BigFloat v(a.precision());
  mpfr_neg(v.get(), a.value.get(), MPFR_RNDN);
  return {std::move(v), a.abs_err};
}

Approx operator*(const Approx& a, const Approx& b) {
  BigFloat v(max_prec(a, b));
  int t = mpfr_mul(v.get(), a.value.get(), b.value.get(), MPFR_RNDN);
  BigFloat err = add_up(mul_up(abs_up(a.value), b.abs_err), mul_up(abs_up(b.value), a.abs_err));
  err = add_up(err, mul_up(a.abs_err, b.abs_err));
  err = add_up(err, rounding_slack(v, t));
  return {std::move(v), std::move(err)};
}

Approx operator/(const Approx& a, const Approx& b) {
  BigFloat b_low = b.magnitude_down();
  if (b_low.is_zero()) throw DomainError("division by an enclosure containing zero");
  BigFloat v(max_prec(a, b));
  int t = mpfr_div(v.get(), a.value.get(), b.value.get(), MPFR_RNDN);
  // |a'/b' - a/b| <= (|a| e_b + |b| e_a) / (|b| (|b| - e_b))
  BigFloat num = add_up(mul_up(abs_up(a.value), b.abs_err), mul_up(abs_up(b.value), a.abs_err));
  BigFloat b_abs_down(kErrPrec);
  mpfr_abs(b_abs_down.get(), b.value.get(), MPFR_RNDD);
  BigFloat den(kErrPrec);
  mpfr_mul(den.get(), b_abs_down.get(), b_low.get(), MPFR_RNDD);
  BigFloat err = add_up(div_up(num, den), rounding_slack(v, t));
  return {std::move(v), std::move(err)};
}

Approx operator*(const Approx& a, const Rational& q) {
  return a * to_approx(q, a.precision());
}

Approx operator+(const Approx& a, const Rational& q) {
  return a + to_approx(q, a.precision());
}

BigFloat abs_difference(const Approx& a, const Approx& b) {
  BigFloat d(kErrPrec);
  mpfr_sub(d.get(), a.value.get(), b.value.get(), MPFR_RNDU);
  BigFloat d2(kErrPrec);
  mpfr_sub(d2.get(), a.value.get(), b.value.get(), MPFR_RNDD);
  return max(abs_up(d), abs_up(d2));
}

BigFloat residual_bound(const Approx& a, const Approx& b) {
  return add_up(abs_difference(a, b), add_up(a.abs_err, b.abs_err));
}

Approx sqrt(const Approx& x) {
  if (x.value.sign() < 0 && x.magnitude_down().sign() > 0) {
    throw DomainError("sqrt of a negative value");
  }
  BigFloat v(x.precision());
  int t = 0;
  if (x.value.sign() < 0) {
    mpfr_set_zero(v.get(), 1);  // enclosure straddles zero
  } else {
    t = mpfr_sqrt(v.get(), x.value.get(), MPFR_RNDN);
  }
  BigFloat err(kErrPrec);
  if (x.is_exact()) {
    err = rounding_slack(v, t);
  } else if (x.value.sign() > 0 && x.magnitude_down().sign() > 0) {
    // |sqrt(x') - sqrt(x)| <= e / sqrt(x)
    BigFloat s(kErrPrec);
    mpfr_sqrt(s.get(), x.value.get(), MPFR_RNDD);
    err = add_up(div_up(x.abs_err, s), rounding_slack(v, t));
  } else {
    BigFloat hi = x.magnitude_up();
    mpfr_sqrt(err.get(), hi.get(), MPFR_RNDU);
    err = add_up(err, rounding_slack(v, t));
  }
  return {std::move(v), std::move(err)};
}

Approx exp(const Approx& x) {
  BigFloat v(x.precision());
  int t = mpfr_exp(v.get(), x.value.get(), MPFR_RNDN);
  BigFloat err = rounding_slack(v, t);
  if (!x.is_exact()) {
    BigFloat hi = add_up(x.value, x.abs_err);
    mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
    err = add_up(err, mul_up(hi, x.abs_err));
  }
  return {std::move(v), std::move(err)};
}

Approx log(const Approx& x) {
  if (x.value.sign() <= 0 || x.magnitude_down().sign() <= 0) {
    throw DomainError("log of a value not provably positive");
  }
  BigFloat v(x.precision());
  int t = mpfr_log(v.get(), x.value.get(), MPFR_RNDN);
  BigFloat err = add_up(div_up(x.abs_err, x.magnitude_down()), rounding_slack(v, t));
  return {std::move(v), std::move(err)};
}

Approx pow_int(const Approx& x, long n) {
  if (n < 0) {
    Approx one = to_approx(Rational(1), x.precision());
    return one / pow_int(x, -n);
  }
  Approx result = to_approx(Rational(1), x.precision());
  Approx base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Approx pow(const Approx& x, const Rational& q) {
  if (sgn(q) == 0) return to_approx(Rational(1), x.precision());
  if (is_integer(q) && q.get_num().fits_slong_p()) {
    return pow_int(x, q.get_num().get_si());
  }
  return exp(log(x) * q);
}

Approx sin(const Approx& x) {
  BigFloat v(x.precision());
  int t = mpfr_sin(v.get(), x.value.get(), MPFR_RNDN);
  BigFloat err = add_up(x.abs_err, rounding_slack(v, t));
  return {std::move(v), std::move(err)};
}

Approx cos(const Approx& x) {
  BigFloat v(x.precision());
  int t = mpfr_cos(v.get(), x.value.get(), MPFR_RNDN);
  BigFloat err = add_up(x.abs_err, rounding_slack(v, t));
  return {std::move(v), std::move(err)};
}

Approx agm(const Approx& a, const Approx& b) {
  if (a.magnitude_down().sign() <= 0 || b.magnitude_down().sign() <= 0 ||
      a.value.sign() < 0 || b.value.sign() < 0) {
    throw DomainError("agm needs positive arguments");
  }
  BigFloat v(max_prec(a, b));
  int t = mpfr_agm(v.get(), a.value.get(), b.value.get(), MPFR_RNDN);
  // M is increasing and homogeneous of degree one, so dM/da <= M/a.
  BigFloat rel = add_up(div_up(a.abs_err, a.magnitude_down()),
                        div_up(b.abs_err, b.magnitude_down()));
  BigFloat hi = max(a.magnitude_up(), b.magnitude_up());
  BigFloat err = add_up(mul_up(hi, rel), rounding_slack(v, t));
  return {std::move(v), std::move(err)};
}

Precision working_precision(long digits) {
  return static_cast<Precision>(std::ceil(static_cast<double>(std::max(digits, 1L)) *
                                          3.321928094887362)) + 32;
}

// ---------------------------------------------------------------------------
// pi and trigonometric functions of rational multiples of pi

namespace {

// arctan(1/n) as an exact partial sum plus an alternating-series tail bound.
struct ArctanSum {
  Rational sum;
  Rational tail;
};

ArctanSum arctan_inverse(long n, Precision prec) {
  const Rational target = pow(Rational(2), -static_cast<long>(prec) - 8);
  const Rational n2(n * n);
  Rational power(1, n);  // 1/n^(2k+1)
  Rational sum(0);
  for (long k = 0;; ++k) {
    Rational term = power / Rational(2 * k + 1);
    if (term < target) return {sum, term};
    sum += (k % 2 == 0) ? term : Rational(-term);
    power /= n2;
  }
}

}  // namespace

Approx pi_machin(Precision prec) {
  const Precision p = prec + 8;
  ArctanSum a5 = arctan_inverse(5, p);
  ArctanSum a239 = arctan_inverse(239, p);
  Rational value = 16 * a5.sum - 4 * a239.sum;
  Rational tail = 16 * a5.tail + 4 * a239.tail;
  Approx out = to_approx(value, prec);
  out.abs_err = add_up(out.abs_err, from_rational(tail, kErrPrec, MPFR_RNDU));
  return out;
}

namespace {

// sin(pi r) for r in [0, 1/4].
Approx sin_kernel(const Rational& r, Precision prec) {
  if (sgn(r) == 0) return to_approx(Rational(0), prec);
  return sin(pi_machin(prec + 8) * r);
}

// cos(pi r) for r in [0, 1/4].
Approx cos_kernel(const Rational& r, Precision prec) {
  if (sgn(r) == 0) return to_approx(Rational(1), prec);
  return cos(pi_machin(prec + 8) * r);
}

Rational floor_q(const Rational& q) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

}  // namespace

Approx sin_pi(const Rational& q, Precision prec) {
  // Exact reduction of q into [0, 1/2] followed by the [0, 1/4] kernels.
  Rational r = q - 2 * floor_q(Rational(q / 2));
  bool negate = false;
  if (r >= 1) {
    r -= 1;
    negate = true;
  }
  if (r > Rational(1, 2)) r = 1 - r;
  Approx out;
  if (r == Rational(1, 2)) {
    out = to_approx(Rational(1), prec);
  } else if (r > Rational(1, 4)) {
    out = cos_kernel(Rational(Rational(1, 2) - r), prec);
  } else {
    out = sin_kernel(r, prec);
  }
  return negate ? -out : out;
}

Approx cos_pi(const Rational& q, Precision prec) {
  return sin_pi(Rational(q + Rational(1, 2)), prec);
}

Approx tan_pi(const Rational& q, Precision prec) {
  if (is_integer(Rational(q - Rational(1, 2)))) {
    throw DomainError("tan_pi pole at " + to_fraction_string(q));
  }
  Rational r = q - floor_q(q);
  if (sgn(r) == 0) return to_approx(Rational(0), prec);
  return sin_pi(r, prec + 8) / cos_pi(r, prec + 8);
}

Approx log(const Rational& q, Precision prec) {
  if (sgn(q) <= 0) throw DomainError("log of nonpositive " + to_fraction_string(q));
  if (q == 1) return to_approx(Rational(0), prec);
  return log(to_approx(q, prec));
}

Approx elem(ElemFn f, const Rational& x, long digits, long n) {
  switch (f) {
    case ElemFn::Sqrt:
      if (sgn(x) < 0) throw DomainError("sqrt of negative " + to_fraction_string(x));
      return evaluate_to_digits(digits, [&](Precision p) { return sqrt(to_approx(x, p)); });
    case ElemFn::Exp:
      return evaluate_to_digits(digits, [&](Precision p) { return exp(to_approx(x, p)); });
    case ElemFn::Log:
      return evaluate_to_digits(digits, [&](Precision p) { return log(x, p); });
    case ElemFn::PowInt:
      if (sgn(x) == 0 && n < 0) throw DomainError("zero to a negative power");
      return evaluate_to_digits(digits, [&](Precision p) { return pow_int(to_approx(x, p), n); });
    case ElemFn::SinPi:
      return evaluate_to_digits(digits, [&](Precision p) { return sin_pi(x, p); });
    case ElemFn::CosPi:
      return evaluate_to_digits(digits, [&](Precision p) { return cos_pi(x, p); });
    case ElemFn::TanPi:
      return evaluate_to_digits(digits, [&](Precision p) { return tan_pi(x, p); });
  }
  throw std::logic_error("unknown ElemFn");
}

}  // namespace hgv
