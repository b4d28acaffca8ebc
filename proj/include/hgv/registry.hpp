#pragma once

// Catalog of identities (series = closed form, series = series, and one
// limit), closed-form evaluation, and the verification driver.

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hgv/series.hpp"
#include "hgv/special.hpp"

namespace hgv {

/// Expression tree over exact parameter expressions and named constants.
class ClosedForm {
 public:
  enum class Op { Lit, Const, Add, Sub, Mul, Div, Neg, Pow };

  struct Node {
    Op op = Op::Lit;
    Expr lit = 0;
    ConstantKind kind = ConstantKind::Pi;
    Expr arg = 0;
    Expr arg2 = 0;
    unsigned order = 0;
    long exponent = 1;
    std::vector<ClosedForm> kids;
  };

  ClosedForm(Expr lit);  // NOLINT(google-explicit-constructor)
  ClosedForm(long v) : ClosedForm(Expr(v)) {}  // NOLINT(google-explicit-constructor)
  ClosedForm(int v) : ClosedForm(Expr(v)) {}   // NOLINT(google-explicit-constructor)
  ClosedForm(Rational v) : ClosedForm(Expr(std::move(v))) {}  // NOLINT

  static ClosedForm constant(ConstantKind kind, Expr arg = 0, Expr arg2 = 0, unsigned order = 0);
  static ClosedForm pi() { return constant(ConstantKind::Pi); }
  static ClosedForm catalan() { return constant(ConstantKind::Catalan); }
  static ClosedForm gamma_quarter() { return constant(ConstantKind::GammaQuarter); }
  static ClosedForm sqrt_pi() { return constant(ConstantKind::SqrtPi); }
  static ClosedForm sqrt(Expr r) { return constant(ConstantKind::Sqrt, std::move(r)); }
  static ClosedForm log(Expr q) { return constant(ConstantKind::Log, std::move(q)); }
  static ClosedForm gamma(Expr q) { return constant(ConstantKind::Gamma, std::move(q)); }
  static ClosedForm polygamma(unsigned n, Expr q) {
    return constant(ConstantKind::Polygamma, std::move(q), 0, n);
  }
  static ClosedForm sin_pi(Expr q) { return constant(ConstantKind::SinPi, std::move(q)); }
  static ClosedForm cos_pi(Expr q) { return constant(ConstantKind::CosPi, std::move(q)); }
  static ClosedForm tan_pi(Expr q) { return constant(ConstantKind::TanPi, std::move(q)); }
  static ClosedForm rat_pow(Expr base, Expr exponent) {
    return constant(ConstantKind::RatPow, std::move(base), std::move(exponent));
  }

  friend ClosedForm operator+(ClosedForm a, ClosedForm b);
  friend ClosedForm operator-(ClosedForm a, ClosedForm b);
  friend ClosedForm operator*(ClosedForm a, ClosedForm b);
  friend ClosedForm operator/(ClosedForm a, ClosedForm b);
  friend ClosedForm operator-(ClosedForm a);
  friend ClosedForm pow(ClosedForm a, long n);

  const Node& node() const { return *node_; }

  std::set<std::string> free_symbols() const;
  bool uses(ConstantKind kind) const;
  /// Exact value when the tree has no constant leaves.
  std::optional<Rational> try_exact(const Bindings& bindings) const;
  /// Value at a fixed working precision; the error bound is whatever results.
  Approx eval_prec(const Bindings& bindings, Precision prec) const;
  std::string to_string() const;

 private:
  explicit ClosedForm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static ClosedForm make(Node n);
  std::shared_ptr<const Node> node_;
};

/// Value within 10^-digits (precision escalates as needed).
Approx evaluate_closed_form(const ClosedForm& form, const Bindings& bindings, long digits);

// ---------------------------------------------------------------------------

enum class IdentityKind { SeriesEqClosed, SeriesEqSeries, Limit };

std::string to_string(IdentityKind kind);

/// One summand of a right-hand side: factor, or factor times a series.
struct RhsTerm {
  ClosedForm factor = 1;
  std::optional<TermSpec> series;
};

struct ParamSpec {
  std::string symbol;
  std::string constraint;
};

/// lim_{symbol -> point} function = value, probed at point +- 10^-m.
struct LimitSpec {
  ClosedForm function = 0;
  std::string symbol;
  Rational point;
  Rational value;
  int first_m = 3;
  int last_m = 8;
};

struct Identity {
  std::string id;
  std::string anchor;
  IdentityKind kind = IdentityKind::SeriesEqClosed;
  TermSpec lhs;
  std::vector<RhsTerm> rhs;
  /// Second evaluation route for the right-hand side, checked alongside rhs.
  std::optional<ClosedForm> alt_rhs;
  std::vector<ParamSpec> params;
  /// Throws DomainError or ConvergenceError when bindings are inadmissible.
  std::function<void(const Bindings&)> check;
  /// Bindings used by verify-all and when verify is called without params.
  std::vector<Bindings> samples;
  /// Parameter that must be a nonpositive integer (terminating instances).
  std::optional<std::string> terminating_param;
  std::optional<LimitSpec> limit;

  std::set<std::string> free_symbols() const;
  std::string constraints() const;
};

/// All identities, ordered by id.
const std::vector<Identity>& catalog();
const Identity* find_identity(std::string_view id);

// ---------------------------------------------------------------------------

enum class Status { Ok, Fail, DomainError, ConvergenceError, Inapplicable };

std::string to_string(Status s);
std::optional<Status> parse_status(std::string_view s);

struct VerificationReport {
  std::string id;
  Bindings bindings;
  long digits = 0;
  Approx lhs;
  Approx rhs;
  BigFloat residual;
  long terms_used = 0;
  double elapsed_ms = 0;
  Status status = Status::Fail;
  /// Both sides were exact rationals and compared exactly.
  bool exact = false;
  /// Residual of the alternative right-hand side, when the identity has one.
  std::optional<BigFloat> alt_residual;
  std::string message;
};

/// Fills in defaults (first sample) for an empty binding set and checks
/// names. Throws std::invalid_argument for unknown or missing parameters.
Bindings resolve_bindings(const Identity& identity, const Bindings& given);

/// Evaluates both sides and compares them. Never throws for inadmissible
/// bindings; the report status carries the outcome.
VerificationReport verify(const Identity& identity, const Bindings& bindings, long digits);
/// Throws std::invalid_argument for an unknown id.
VerificationReport verify(std::string_view id, const Bindings& bindings, long digits);

/// One report per value of `param`, other parameters from the first sample.
std::vector<VerificationReport> sweep(const Identity& identity, const std::string& param,
                                      const std::vector<Rational>& values, long digits);
std::vector<VerificationReport> sweep_serial(const Identity& identity, const std::string& param,
                                             const std::vector<Rational>& values, long digits);

/// Every sample of every identity, ordered by id then sample.
std::vector<VerificationReport> verify_all(long digits);
std::vector<VerificationReport> verify_all_serial(long digits);

// Limit identity support

struct LimitPoint {
  int m = 0;     // distance 10^-m from the limit point
  int side = 1;  // +1 above, -1 below
  Approx value;
  BigFloat error;  // |value - limit|
};

/// The limit function evaluated at point + side*10^-m for m = first_m..last_m,
/// below then above, each within 10^-digits.
std::vector<LimitPoint> limit_sequence(const LimitSpec& spec, long digits);

}  // namespace hgv
