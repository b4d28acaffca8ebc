#pragma once

// Exact combinatorial quantities and big-float special functions.
//
// Functions taking `long digits` return an Approx with abs_err <= 10^-digits
// (escalating precision as needed). The `*_prec` variants evaluate at a
// fixed working precision and report whatever error bound results.

#include <optional>
#include <string>
#include <string_view>

#include "hgv/numeric.hpp"

namespace hgv {

BigInt binomial(unsigned long n, unsigned long k);

/// Rising factorial (x)_m = x (x+1) ... (x+m-1), (x)_0 = 1.
Rational pochhammer(const Rational& x, unsigned long m);

/// H_n^(l)(x) = sum_{k=1}^n 1/(x+k)^l. Throws DomainError at a pole or when
/// order < 1.
Rational gen_harmonic(unsigned long n, unsigned order, const Rational& x);

/// H_{m n}^(l)(x) as a named quantity.
struct HarmonicKind {
  unsigned order = 1;
  Rational offset = 0;
  unsigned index_multiplier = 1;

  Rational at(unsigned long n) const {
    return gen_harmonic(index_multiplier * n, order, offset);
  }
};

/// Bernoulli number B_n (B_1 = -1/2). Backed by a grow-only table guarded
/// by a mutex.
Rational bernoulli(unsigned n);

Approx gamma_prec(const Rational& q, Precision prec);
Approx gamma(const Rational& q, long digits);

/// log Gamma(z) for z >= z_min via the Stirling series; exposed for tests.
Approx log_gamma_stirling(const Rational& z, Precision prec);

/// psi^(n)(q): shift q upward by an integer, then the asymptotic
/// (Euler-Maclaurin) expansion with its first omitted term as remainder.
Approx polygamma_prec(unsigned n, const Rational& q, Precision prec);
Approx polygamma(unsigned n, const Rational& q, long digits);

// ---------------------------------------------------------------------------
// Constants

enum class ConstantKind {
  Pi,
  Catalan,
  GammaQuarter,
  SqrtPi,
  Sqrt,       // sqrt(arg)
  Log,        // log(arg), arg > 0
  Polygamma,  // psi^(order)(arg)
  Gamma,      // Gamma(arg)
  SinPi,      // sin(pi arg)
  CosPi,      // cos(pi arg)
  TanPi,      // tan(pi arg)
  RatPow,     // arg^arg2, arg > 0
};

struct ConstantName {
  ConstantKind kind = ConstantKind::Pi;
  Rational arg = 0;
  Rational arg2 = 0;
  unsigned order = 0;

  static ConstantName pi() { return {ConstantKind::Pi}; }
  static ConstantName catalan() { return {ConstantKind::Catalan}; }
  static ConstantName gamma_quarter() { return {ConstantKind::GammaQuarter}; }
  static ConstantName sqrt_pi() { return {ConstantKind::SqrtPi}; }
  static ConstantName sqrt(Rational r) { return {ConstantKind::Sqrt, std::move(r)}; }
  static ConstantName log(Rational q) { return {ConstantKind::Log, std::move(q)}; }
  static ConstantName polygamma(unsigned n, Rational q) {
    return {ConstantKind::Polygamma, std::move(q), 0, n};
  }
  static ConstantName gamma(Rational q) { return {ConstantKind::Gamma, std::move(q)}; }
  static ConstantName sin_pi(Rational q) { return {ConstantKind::SinPi, std::move(q)}; }
  static ConstantName cos_pi(Rational q) { return {ConstantKind::CosPi, std::move(q)}; }
  static ConstantName tan_pi(Rational q) { return {ConstantKind::TanPi, std::move(q)}; }
  static ConstantName rat_pow(Rational base, Rational exponent) {
    return {ConstantKind::RatPow, std::move(base), std::move(exponent)};
  }

  /// Throws DomainError when the arguments violate the kind's constraints.
  void check_domain() const;
  std::string to_string() const;
};

/// Parses names like "pi", "catalan", "gamma_quarter", "sqrt_pi",
/// "log(8/9)", "sqrt(2)", "gamma(1/3)", "polygamma(1,1/4)", "tan_pi(1/3)",
/// "pow(4/5,1/3)". Returns nullopt for unknown names.
std::optional<ConstantName> parse_constant_name(std::string_view text);

/// Which of the two independent algorithms to use for pi, G and Gamma(1/4).
enum class Method { Primary, Secondary };

Approx constant_prec(const ConstantName& name, Precision prec,
                     Method method = Method::Primary);
Approx constant(const ConstantName& name, long digits, Method method = Method::Primary);

// Individual algorithms, exposed for cross-checking.
Approx pi_chudnovsky(Precision prec);
/// Cohen-Villegas-Zagier acceleration of sum (-1)^k/(2k+1)^2.
Approx catalan_cvz(Precision prec);
/// (pi/8) log(2+sqrt3) + (3/8) sum 1/(C(2k,k) (2k+1)^2).
Approx catalan_ramanujan(Precision prec);
/// Gamma(1/4) = (2 pi)^(3/4) / sqrt(AGM(1, sqrt 2)).
Approx gamma_quarter_agm(Precision prec);

}  // namespace hgv
