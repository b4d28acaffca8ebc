#pragma once

// Series of the form
//
//   sum_k  base^k * prod (p_j)_{m_j k}^{e_j} * prod C(a_j k, b_j k)^{f_j} * W(k)
//
// where the base and Pochhammer parameters are parameter expressions and
// W is an Expr in k, the parameters, and inner sums (harmonic numbers).
// Terms are generated incrementally from the exact ratio of consecutive
// hypergeometric parts; weights are re-evaluated with incrementally
// maintained inner sums.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hgv/dual.hpp"
#include "hgv/expr.hpp"
#include "hgv/numeric.hpp"

namespace hgv {

using Bindings = std::map<std::string, Rational>;

struct PochhammerFactor {
  Expr param;
  unsigned step = 1;  // (param)_{step k}
  int power = 1;      // negative: denominator
};

struct BinomialFactor {
  unsigned top = 2;  // C(top k, bottom k)
  unsigned bottom = 1;
  int power = 1;
};

struct TermSpec {
  Expr base = 1;
  std::vector<PochhammerFactor> pochhammers;
  std::vector<BinomialFactor> binomials;
  Expr weight = 1;

  std::set<std::string> free_symbols() const;
  std::string to_string() const;
};

/// Exact term t_k, computed directly (no recurrence): Pochhammer symbols,
/// binomials, and inner sums are all evaluated from scratch.
Rational term(const TermSpec& spec, long k, const Bindings& bindings);

struct ExactSum {
  Rational value;
  long terms_used = 0;
};

/// Index of the last possibly-nonzero term when a numerator factor vanishes,
/// or nullopt for a non-terminating series.
std::optional<long> termination_index(const TermSpec& spec, const Bindings& bindings);

/// Exact sum of a terminating series. Throws ConvergenceError if the series
/// does not terminate, InstanceError on a denominator pole.
ExactSum sum_terminating(const TermSpec& spec, const Bindings& bindings);

struct SumResult {
  Approx value;
  long terms_used = 0;
  BigFloat tail_bound;
  /// Exact partial sum (or the exact total for terminating series).
  Rational partial;
  bool exact = false;
};

/// Geometric convergence data of a bound spec.
struct RatioInfo {
  /// lim |t_{k+1}/t_k| of the hypergeometric part.
  Rational limit;
  /// First index from which the inflated ratio bound is below one.
  long start = 0;
};

/// Throws ConvergenceError when the asymptotic ratio is >= 1.
RatioInfo ratio_info(const TermSpec& spec, const Bindings& bindings);

/// Sum with abs_err <= 10^-digits. Terminating series are summed exactly.
SumResult sum_to_digits(const TermSpec& spec, const Bindings& bindings, long digits);

/// d/d(wrt) of the series sum, via dual-number terms, within 10^-digits.
SumResult derivative_series(const TermSpec& spec, const Bindings& bindings,
                            const std::string& wrt, long digits);

/// Sum of terms 0..last computed term by term with term() (reference path).
Rational brute_force_sum(const TermSpec& spec, const Bindings& bindings, long last);

}  // namespace hgv
