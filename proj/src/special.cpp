#include "hgv/special.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <vector>

namespace hgv {

namespace {

constexpr Precision kErrPrec = 64;

Approx with_extra_error(Approx a, const Rational& extra) {
  a.abs_err = add_up(a.abs_err, from_rational(abs(extra), kErrPrec, MPFR_RNDU));
  return a;
}

bool is_nonpositive_integer(const Rational& q) { return is_integer(q) && sgn(q) <= 0; }

}  // namespace

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (unsigned long i = 1; i <= k; ++i) {
    c *= n - k + i;
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), i);
  }
  return c;
}

Rational pochhammer(const Rational& x, unsigned long m) {
  Rational out(1);
  Rational factor = x;
  for (unsigned long j = 0; j < m; ++j) {
    out *= factor;
    factor += 1;
  }
  return out;
}

Rational gen_harmonic(unsigned long n, unsigned order, const Rational& x) {
  if (order < 1) throw DomainError("harmonic order must be >= 1");
  Rational sum(0);
  Rational denom = x;
  for (unsigned long k = 1; k <= n; ++k) {
    denom += 1;
    if (sgn(denom) == 0) {
      throw DomainError("harmonic pole: x + " + std::to_string(k) + " = 0");
    }
    sum += pow(denom, -static_cast<long>(order));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

namespace {

class BernoulliTable {
 public:
  Rational get(unsigned n) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (values_.size() <= n) extend();
    return values_[n];
  }

 private:
  // sum_{j=0}^{m} C(m+1, j) B_j = 0
  void extend() {
    const unsigned long m = values_.size();
    if (m == 0) {
      values_.emplace_back(1);
      return;
    }
    if (m >= 3 && m % 2 == 1) {
      values_.emplace_back(0);
      return;
    }
    Rational acc(0);
    BigInt c = 1;  // C(m+1, j)
    for (unsigned long j = 0; j < m; ++j) {
      if (sgn(values_[j]) != 0) acc += Rational(c) * values_[j];
      c *= m + 1 - j;
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), j + 1);
    }
    values_.push_back(Rational(-acc / Rational(m + 1)));
  }

  std::mutex mutex_;
  std::vector<Rational> values_;
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

// Smallest shifted argument for which the asymptotic expansions reach
// 2^-prec well before their terms start growing.
long asymptotic_threshold(Precision prec) {
  return static_cast<long>(std::ceil(0.3 * static_cast<double>(prec))) + 10;
}

}  // namespace

Rational bernoulli(unsigned n) { return bernoulli_table().get(n); }

// ---------------------------------------------------------------------------
// Gamma

Approx log_gamma_stirling(const Rational& z, Precision prec) {
  if (sgn(z) <= 0) throw DomainError("Stirling series needs z > 0");
  const Precision p = prec + 16;
  const Rational target = pow(Rational(2), -static_cast<long>(p) - 4);
  // sum_{j>=1} B_2j / (2j (2j-1) z^(2j-1)); the remainder is bounded by the
  // first omitted term for real z > 0.
  Rational series(0);
  Rational remainder(0);
  const Rational z2 = z * z;
  Rational zpow = z;  // z^(2j-1)
  for (unsigned j = 1;; ++j) {
    Rational term = bernoulli(2 * j) / (Rational(2 * j) * Rational(2 * j - 1) * zpow);
    if (abs(term) < target) {
      remainder = 2 * abs(term);
      break;
    }
    if (j > 2000) throw ConvergenceError("Stirling series did not reach precision");
    series += term;
    zpow *= z2;
  }
  Approx zz = to_approx(z, p);
  Approx half_log_2pi = log(pi_machin(p) * Rational(2)) * Rational(1, 2);
  Approx out = (zz + Rational(-1, 2)) * log(zz) - zz + half_log_2pi + to_approx(series, p);
  return with_extra_error(std::move(out), remainder);
}

Approx gamma_prec(const Rational& q, Precision prec) {
  if (is_nonpositive_integer(q)) {
    throw DomainError("gamma pole at " + to_fraction_string(q));
  }
  if (is_integer(q) && q <= 200) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), q.get_num().get_ui() - 1);
    return to_approx(Rational(f), prec);
  }
  const long threshold = asymptotic_threshold(prec);
  long shift = 0;
  if (q < threshold) {
    Rational gap = Rational(threshold) - q;
    shift = static_cast<long>(std::ceil(gap.get_d()));
  }
  const Rational z = q + shift;
  // lnGamma(z) ~ z log z, so its absolute error must be smaller by that many bits.
  const Precision guard = 32 + static_cast<Precision>(std::log2(z.get_d() * std::log(z.get_d()) + 2));
  Approx gz = exp(log_gamma_stirling(z, prec + guard));
  Rational poch = pochhammer(q, static_cast<unsigned long>(shift));
  return gz / to_approx(poch, prec + guard);
}

Approx gamma(const Rational& q, long digits) {
  if (is_nonpositive_integer(q)) {
    throw DomainError("gamma pole at " + to_fraction_string(q));
  }
  return evaluate_to_digits(digits, [&](Precision p) { return gamma_prec(q, p); });
}

// ---------------------------------------------------------------------------
// Polygamma

Approx polygamma_prec(unsigned n, const Rational& q, Precision prec) {
  if (is_nonpositive_integer(q)) {
    throw DomainError("polygamma pole at " + to_fraction_string(q));
  }
  const Precision p = prec + 16;
  const long threshold = asymptotic_threshold(prec) + static_cast<long>(n);
  long shift = 0;
  if (q < threshold) shift = static_cast<long>(std::ceil(Rational(Rational(threshold) - q).get_d()));
  const Rational z = q + shift;

  BigInt nfact;
  mpz_fac_ui(nfact.get_mpz_t(), n);
  const Rational sign_n = (n % 2 == 0) ? Rational(1) : Rational(-1);

  // psi^(n)(q) = psi^(n)(q+M) - sum_{j<M} (-1)^n n! / (q+j)^(n+1)
  Rational shift_sum(0);
  for (long j = 0; j < shift; ++j) {
    shift_sum += pow(Rational(q + j), -static_cast<long>(n) - 1);
  }
  shift_sum *= sign_n * Rational(nfact);

  const Rational target = pow(Rational(2), -static_cast<long>(p) - 4);
  Rational asym(0);
  Rational remainder(0);
  const Rational z2 = z * z;

  if (n == 0) {
    // psi(z) = log z - 1/(2z) - sum B_2j / (2j z^2j)
    asym = Rational(-1) / (2 * z);
    Rational zpow = z2;
    for (unsigned j = 1;; ++j) {
      Rational term = bernoulli(2 * j) / (Rational(2 * j) * zpow);
      if (abs(term) < target) {
        remainder = 2 * abs(term);
        break;
      }
      if (j > 2000) throw ConvergenceError("digamma expansion did not reach precision");
      asym -= term;
      zpow *= z2;
    }
    Approx out = log(to_approx(z, p)) + to_approx(Rational(asym - shift_sum), p);
    return with_extra_error(std::move(out), remainder);
  }

  // psi^(n)(z) = (-1)^(n+1) [ (n-1)!/z^n + n!/(2 z^(n+1))
  //                           + sum B_2j (2j+n-1)! / ((2j)! z^(2j+n)) ]
  BigInt nm1fact;
  mpz_fac_ui(nm1fact.get_mpz_t(), n - 1);
  asym = Rational(nm1fact) / pow(z, static_cast<long>(n)) +
         Rational(nfact) / (2 * pow(z, static_cast<long>(n) + 1));
  // ratio (2j+n-1)!/(2j)! maintained incrementally
  Rational fact_ratio(1);  // at j = 0: (n-1)!/0! handled separately, start below
  {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n + 1);  // (2+n-1)! = (n+1)!
    fact_ratio = Rational(f) / 2;      // / 2!
  }
  Rational zpow = pow(z, static_cast<long>(n) + 2);
  for (unsigned j = 1;; ++j) {
    Rational term = bernoulli(2 * j) * fact_ratio / zpow;
    if (abs(term) < target) {
      remainder = 2 * abs(term);
      break;
    }
    if (j > 2000) throw ConvergenceError("polygamma expansion did not reach precision");
    asym += term;
    // (2j+n+1)!/(2j+2)! = (2j+n-1)!/(2j)! * (2j+n)(2j+n+1) / ((2j+1)(2j+2))
    fact_ratio *= Rational((2 * j + n) * (2 * j + n + 1), (2 * j + 1) * (2 * j + 2));
    zpow *= z2;
  }
  const Rational sign_out = (n % 2 == 1) ? Rational(1) : Rational(-1);  // (-1)^(n+1)
  Rational value = sign_out * asym - shift_sum;
  Approx out = to_approx(value, prec);
  return with_extra_error(std::move(out), remainder);
}

Approx polygamma(unsigned n, const Rational& q, long digits) {
  if (is_nonpositive_integer(q)) {
    throw DomainError("polygamma pole at " + to_fraction_string(q));
  }
  return evaluate_to_digits(digits, [&](Precision p) { return polygamma_prec(n, q, p); });
}

// ---------------------------------------------------------------------------
// Constants

Approx pi_chudnovsky(Precision prec) {
  // pi = 426880 sqrt(10005) / sum_k (-1)^k (6k)! (13591409 + 545140134 k)
  //                                     / ((3k)! (k!)^3 640320^(3k))
  const Precision p = prec + 16;
  const Rational target = pow(Rational(2), -static_cast<long>(p) - 8);
  const BigInt c3 = BigInt(640320) * 640320 * 640320;
  Rational coef(1);  // (-1)^k (6k)! / ((3k)! (k!)^3 640320^(3k))
  Rational sum(0);
  Rational tail(0);
  for (unsigned long k = 0;; ++k) {
    Rational term = coef * Rational(BigInt(13591409) + BigInt(545140134) * k);
    if (abs(term) < target) {
      tail = abs(term);  // alternating, decreasing in magnitude
      break;
    }
    sum += term;
    BigInt num = BigInt(6 * k + 1) * (6 * k + 2) * (6 * k + 3) * (6 * k + 4) * (6 * k + 5) * (6 * k + 6);
    BigInt den = BigInt(3 * k + 1) * (3 * k + 2) * (3 * k + 3) * (k + 1) * (k + 1) * (k + 1) * c3;
    Rational step(-num, den);
    step.canonicalize();
    coef *= step;
  }
  Approx s = with_extra_error(to_approx(sum, p), tail);
  Approx root = sqrt(to_approx(Rational(10005), p));
  return root * Rational(426880) / s;
}

Approx catalan_cvz(Precision prec) {
  // S_n = (1/d) sum_k c_k a_k with d = T_n(3); |G - S_n| <= a_0 / d = 1/d
  // because a_k = 1/(2k+1)^2 is a moment sequence of a positive measure of
  // total mass 1 on [0, 1].
  const Precision p = prec + 16;
  const Rational target = pow(Rational(2), -static_cast<long>(p) - 4);
  long n = 1;
  BigInt t_prev = 1, t_cur = 3;  // T_0(3), T_1(3)
  while (Rational(1, t_cur) >= target) {
    BigInt t_next = 6 * t_cur - t_prev;
    t_prev = t_cur;
    t_cur = t_next;
    ++n;
  }
  const BigInt& d = t_cur;
  Rational b(-1);
  Rational c(-d);
  Rational s(0);
  for (long k = 0; k < n; ++k) {
    c = b - c;
    s += c / Rational(BigInt(2 * k + 1) * (2 * k + 1));
    b = b * Rational((k + n) * (k - n)) / (Rational(2 * k + 1, 2) * Rational(k + 1));
  }
  return with_extra_error(to_approx(Rational(s / Rational(d)), p), Rational(1, d));
}

Approx catalan_ramanujan(Precision prec) {
  const Precision p = prec + 16;
  const Rational target = pow(Rational(2), -static_cast<long>(p) - 8);
  // t_k = 1 / (C(2k,k) (2k+1)^2); t_{k+1}/t_k < 1/4 for every k.
  Rational term(1);
  Rational sum(0);
  Rational tail(0);
  for (unsigned long k = 0;; ++k) {
    if (term < target) {
      tail = term * Rational(4, 3);
      break;
    }
    sum += term;
    term *= Rational(BigInt(k + 1) * (2 * k + 1), BigInt(2) * (2 * k + 3) * (2 * k + 3));
  }
  Approx series = with_extra_error(to_approx(sum, p), tail);
  Approx root3 = sqrt(to_approx(Rational(3), p));
  Approx log_term = log(root3 + Rational(2));
  return pi_machin(p) * Rational(1, 8) * log_term + series * Rational(3, 8);
}

Approx gamma_quarter_agm(Precision prec) {
  const Precision p = prec + 16;
  Approx m = agm(to_approx(Rational(1), p), sqrt(to_approx(Rational(2), p)));
  Approx two_pi = pi_machin(p) * Rational(2);
  Approx scale = exp(log(two_pi) * Rational(3, 4));
  return scale / sqrt(m);
}

void ConstantName::check_domain() const {
  switch (kind) {
    case ConstantKind::Sqrt:
      if (sgn(arg) < 0) throw DomainError("sqrt of negative " + to_fraction_string(arg));
      break;
    case ConstantKind::Log:
      if (sgn(arg) <= 0) throw DomainError("log of nonpositive " + to_fraction_string(arg));
      break;
    case ConstantKind::Gamma:
    case ConstantKind::Polygamma:
      if (is_nonpositive_integer(arg)) throw DomainError("pole at " + to_fraction_string(arg));
      break;
    case ConstantKind::TanPi:
      if (is_integer(Rational(arg - Rational(1, 2)))) {
        throw DomainError("tan_pi pole at " + to_fraction_string(arg));
      }
      break;
    case ConstantKind::RatPow:
      if (sgn(arg) <= 0) throw DomainError("pow needs a positive base");
      break;
    default:
      break;
  }
}

std::string ConstantName::to_string() const {
  switch (kind) {
    case ConstantKind::Pi: return "pi";
    case ConstantKind::Catalan: return "catalan";
    case ConstantKind::GammaQuarter: return "gamma_quarter";
    case ConstantKind::SqrtPi: return "sqrt_pi";
    case ConstantKind::Sqrt: return "sqrt(" + to_fraction_string(arg) + ")";
    case ConstantKind::Log: return "log(" + to_fraction_string(arg) + ")";
    case ConstantKind::Polygamma:
      return "polygamma(" + std::to_string(order) + "," + to_fraction_string(arg) + ")";
    case ConstantKind::Gamma: return "gamma(" + to_fraction_string(arg) + ")";
    case ConstantKind::SinPi: return "sin_pi(" + to_fraction_string(arg) + ")";
    case ConstantKind::CosPi: return "cos_pi(" + to_fraction_string(arg) + ")";
    case ConstantKind::TanPi: return "tan_pi(" + to_fraction_string(arg) + ")";
    case ConstantKind::RatPow:
      return "pow(" + to_fraction_string(arg) + "," + to_fraction_string(arg2) + ")";
  }
  return "?";
}

std::optional<ConstantName> parse_constant_name(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
  }
  if (s == "pi") return ConstantName::pi();
  if (s == "catalan" || s == "g") return ConstantName::catalan();
  if (s == "gamma_quarter") return ConstantName::gamma_quarter();
  if (s == "sqrt_pi") return ConstantName::sqrt_pi();

  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') return std::nullopt;
  const std::string head = s.substr(0, open);
  const std::string body = s.substr(open + 1, s.size() - open - 2);
  const auto comma = body.find(',');
  try {
    if (comma == std::string::npos) {
      Rational q = parse_rational(body);
      if (head == "sqrt") return ConstantName::sqrt(q);
      if (head == "log") return ConstantName::log(q);
      if (head == "gamma") return ConstantName::gamma(q);
      if (head == "psi" || head == "digamma") return ConstantName::polygamma(0, q);
      if (head == "sin_pi") return ConstantName::sin_pi(q);
      if (head == "cos_pi") return ConstantName::cos_pi(q);
      if (head == "tan_pi") return ConstantName::tan_pi(q);
      return std::nullopt;
    }
    const std::string first = body.substr(0, comma);
    const std::string second = body.substr(comma + 1);
    if (head == "polygamma") {
      Rational n = parse_rational(first);
      if (!is_integer(n) || sgn(n) < 0) return std::nullopt;
      return ConstantName::polygamma(static_cast<unsigned>(n.get_num().get_ui()),
                                     parse_rational(second));
    }
    if (head == "pow") return ConstantName::rat_pow(parse_rational(first), parse_rational(second));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return std::nullopt;
}

Approx constant_prec(const ConstantName& name, Precision prec, Method method) {
  name.check_domain();
  switch (name.kind) {
    case ConstantKind::Pi:
      return method == Method::Primary ? pi_machin(prec) : pi_chudnovsky(prec);
    case ConstantKind::Catalan:
      return method == Method::Primary ? catalan_cvz(prec) : catalan_ramanujan(prec);
    case ConstantKind::GammaQuarter:
      return method == Method::Primary ? gamma_quarter_agm(prec)
                                       : gamma_prec(Rational(1, 4), prec);
    case ConstantKind::SqrtPi:
      return sqrt(method == Method::Primary ? pi_machin(prec + 8) : pi_chudnovsky(prec + 8));
    case ConstantKind::Sqrt:
      return sqrt(to_approx(name.arg, prec));
    case ConstantKind::Log:
      return log(name.arg, prec);
    case ConstantKind::Polygamma:
      return polygamma_prec(name.order, name.arg, prec);
    case ConstantKind::Gamma:
      return gamma_prec(name.arg, prec);
    case ConstantKind::SinPi:
      return sin_pi(name.arg, prec);
    case ConstantKind::CosPi:
      return cos_pi(name.arg, prec);
    case ConstantKind::TanPi:
      return tan_pi(name.arg, prec);
    case ConstantKind::RatPow:
      return pow(to_approx(name.arg, prec + 16), name.arg2);
  }
  throw std::logic_error("unknown ConstantKind");
}

Approx constant(const ConstantName& name, long digits, Method method) {
  name.check_domain();
  return evaluate_to_digits(digits,
                            [&](Precision p) { return constant_prec(name, p, method); });
}

}  // namespace hgv
