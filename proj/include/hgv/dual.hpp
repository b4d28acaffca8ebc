#pragma once

// Dual numbers over an exact scalar: val + der * eps, eps^2 = 0.

#include "hgv/numeric.hpp"

namespace hgv {

template <class T>
struct Dual {
  T val{};
  T der{};

  Dual() = default;
  Dual(T v, T d) : val(std::move(v)), der(std::move(d)) {}
  /// A constant: derivative zero.
  explicit Dual(const Rational& q) : val(lift(q)), der(lift(Rational(0))) {}

  static T lift(const Rational& q) {
    if constexpr (std::is_same_v<T, Rational>) {
      return q;
    } else {
      return T(q);
    }
  }

  friend bool operator==(const Dual& a, const Dual& b) { return a.val == b.val && a.der == b.der; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.val + b.val, a.der + b.der}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.val - b.val, a.der - b.der}; }
  friend Dual operator-(const Dual& a) { return {-a.val, -a.der}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.val * b.val, a.der * b.val + a.val * b.der};
  }
  Dual& operator+=(const Dual& b) { return *this = *this + b; }
  Dual& operator*=(const Dual& b) { return *this = *this * b; }
};

// Scalar operations used by the series engine, overloaded for Rational and
// Dual<...>. Division throws InstanceError on a zero divisor.

inline Rational sdiv(const Rational& a, const Rational& b) { return checked_div(a, b); }

template <class T>
Dual<T> sdiv(const Dual<T>& a, const Dual<T>& b) {
  T q = sdiv(a.val, b.val);
  // (a/b)' = (a' - q b') / b
  return {q, sdiv(T(a.der - q * b.der), b.val)};
}

inline Rational lift_scalar(const Rational& q, const Rational*) { return q; }
template <class T>
Dual<T> lift_scalar(const Rational& q, const Dual<T>*) {
  return Dual<T>(q);
}

/// Builds a scalar of type T from an exact rational.
template <class T>
T make_scalar(const Rational& q) {
  return lift_scalar(q, static_cast<const T*>(nullptr));
}

inline const Rational& value_part(const Rational& q) { return q; }
template <class T>
const Rational& value_part(const Dual<T>& d) {
  return value_part(d.val);
}

inline bool is_zero_scalar(const Rational& q) { return sgn(q) == 0; }
template <class T>
bool is_zero_scalar(const Dual<T>& d) {
  return is_zero_scalar(d.val) && is_zero_scalar(d.der);
}

template <class T>
T spow(const T& x, long n) {
  if (n < 0) return sdiv(make_scalar<T>(Rational(1)), spow(x, -n));
  T out = make_scalar<T>(Rational(1));
  T base = x;
  while (n > 0) {
    if (n & 1) out = out * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return out;
}

/// Rising factorial of a dual argument: val = (x.val)_m, derivative by the
/// product rule.
template <class T>
Dual<T> dual_pochhammer(const Dual<T>& x, unsigned long m) {
  Dual<T> out(Rational(1));
  Dual<T> factor = x;
  const Dual<T> one(Rational(1));
  for (unsigned long j = 0; j < m; ++j) {
    out = out * factor;
    factor = factor + one;
  }
  return out;
}

}  // namespace hgv
