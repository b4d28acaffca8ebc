#include "hgv/registry.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace hgv {

namespace {

using Clock = std::chrono::steady_clock;

constexpr Precision kErrBits = 64;
// Report digits for limit identities: the probe closest to the limit point
// sits 10^-8 away.
constexpr long kLimitDigits = 8;

BigFloat tolerance(long digits) { return BigFloat::ten_pow_neg_down(digits); }

BigFloat quarter(const BigFloat& x) {
  BigFloat out = x;
  mpfr_div_2ui(out.get(), out.get(), 2, MPFR_RNDD);
  return out;
}

long get_si_checked(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p()) throw DomainError("expected a small integer");
  return q.get_num().get_si();
}

/// Decimal digits above the unit place needed for |x| (0 when |x| < 1).
long integer_digits(const Approx& x) {
  BigFloat m = x.magnitude_up();
  if (m.is_zero()) return 0;
  long e = m.exponent();
  return e <= 0 ? 0 : static_cast<long>(std::ceil(static_cast<double>(e) * 0.30103)) + 1;
}

struct Side {
  Approx value;
  std::optional<Rational> exact;
  long terms = 0;
};

Side sum_side(const TermSpec& spec, const Bindings& b, long digits) {
  SumResult r = sum_to_digits(spec, b, digits);
  Side s;
  s.value = std::move(r.value);
  s.terms = r.terms_used;
  if (r.exact) s.exact = r.partial;
  return s;
}

Side rhs_side(const Identity& id, const Bindings& b, long digits) {
  Side out;
  out.exact = Rational(0);
  out.value = to_approx(Rational(0), working_precision(digits));
  for (const auto& term : id.rhs) {
    const std::optional<Rational> f_exact = term.factor.try_exact(b);
    if (!term.series) {
      Approx f = f_exact ? to_approx(*f_exact, working_precision(digits) + 64)
                         : evaluate_closed_form(term.factor, b, digits);
      if (out.exact && f_exact) {
        out.exact = *out.exact + *f_exact;
      } else {
        out.exact.reset();
      }
      out.value = out.value + f;
      continue;
    }
    Approx f = f_exact ? to_approx(*f_exact, working_precision(digits) + 64)
                       : evaluate_closed_form(term.factor, b, digits);
    Side s = sum_side(*term.series, b, digits + integer_digits(f));
    if (!f_exact && integer_digits(s.value) > 0) {
      f = evaluate_closed_form(term.factor, b, digits + integer_digits(s.value));
    }
    out.terms += s.terms;
    if (out.exact && f_exact && s.exact) {
      out.exact = *out.exact + *f_exact * *s.exact;
    } else {
      out.exact.reset();
    }
    out.value = out.value + f * s.value;
  }
  return out;
}

std::string format_bindings(const Bindings& b) {
  std::string out;
  for (const auto& [name, v] : b) {
    if (!out.empty()) out += ", ";
    out += name + "=" + to_fraction_string(v);
  }
  return out;
}

// A terminating instance is an identity between rational functions of the
// parameters. It holds wherever no denominator vanishes for k <= n, even when
// another numerator factor truncates the sum earlier, so poles are checked
// over the full range.
void check_terminating_range(const Identity& id, const Bindings& b) {
  const long n = -get_si_checked(b.at(*id.terminating_param));
  const SymbolTable<Rational> symbols(b.begin(), b.end());
  auto scan = [&](const TermSpec& spec) {
    for (long k = 0; k <= n; ++k) {
      for (const auto& f : spec.pochhammers) {
        if (f.power >= 0) continue;
        const Rational p = eval_params(f.param, symbols);
        if (sgn(pochhammer(p, f.step * static_cast<unsigned long>(k))) == 0) {
          throw InstanceError("denominator factor vanishes at k = " + std::to_string(k));
        }
      }
      Env<Rational> env;
      env.symbols = &symbols;
      env.index = k;
      eval(spec.weight, env);
    }
  };
  scan(id.lhs);
  for (const auto& t : id.rhs) {
    if (t.series) scan(*t.series);
  }
}

void verify_limit(const Identity& id, VerificationReport& report) {
  const LimitSpec& spec = *id.limit;
  report.digits = kLimitDigits;
  const auto points = limit_sequence(spec, report.digits + 4);
  bool bounded = true;
  for (const auto& p : points) {
    // Each probe must sit within 10^-m of the limit.
    if (tolerance(p.m) < p.error) bounded = false;
  }
  const LimitPoint& last = points.back();
  report.lhs = last.value;
  report.rhs = to_approx(spec.value, working_precision(report.digits + 4));
  report.residual = last.error;
  report.terms_used = static_cast<long>(points.size());
  report.status = bounded && report.residual <= tolerance(report.digits) ? Status::Ok : Status::Fail;
}

void verify_series(const Identity& id, VerificationReport& report) {
  const BigFloat tol = tolerance(report.digits);
  const BigFloat err_cap = quarter(tol);
  Side lhs;
  Side rhs;
  std::optional<Approx> alt;
  for (long extra : {2L, 8L, 24L}) {
    const long target = report.digits + extra;
    lhs = sum_side(id.lhs, report.bindings, target);
    rhs = rhs_side(id, report.bindings, target);
    if (id.alt_rhs) alt = evaluate_closed_form(*id.alt_rhs, report.bindings, target);
    if (lhs.value.abs_err <= err_cap && rhs.value.abs_err <= err_cap) break;
  }
  report.terms_used = lhs.terms + rhs.terms;
  if (lhs.exact && rhs.exact) {
    report.exact = true;
    const Rational diff = abs(*lhs.exact - *rhs.exact);
    const Precision p = working_precision(report.digits) + 64;
    report.lhs = to_approx(*lhs.exact, p);
    report.rhs = to_approx(*rhs.exact, p);
    report.residual = from_rational(diff, kErrBits, MPFR_RNDU);
    report.status = diff <= to_rational(tol) ? Status::Ok : Status::Fail;
    return;
  }
  report.lhs = lhs.value;
  report.rhs = rhs.value;
  report.residual = abs_difference(lhs.value, rhs.value);
  bool ok = report.residual <= tol && lhs.value.abs_err <= err_cap && rhs.value.abs_err <= err_cap;
  if (alt) {
    report.alt_residual = abs_difference(lhs.value, *alt);
    ok = ok && *report.alt_residual <= tol && alt->abs_err <= err_cap;
  }
  report.status = ok ? Status::Ok : Status::Fail;
}

std::vector<VerificationReport> run_jobs(
    const std::vector<std::pair<const Identity*, Bindings>>& jobs, long digits, bool parallel) {
  std::vector<VerificationReport> out(jobs.size());
  const long n = static_cast<long>(jobs.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long j = 0; j < n; ++j) out[j] = verify(*jobs[j].first, jobs[j].second, digits);
  } else {
    for (long j = 0; j < n; ++j) out[j] = verify(*jobs[j].first, jobs[j].second, digits);
  }
  return out;
}

std::vector<std::pair<const Identity*, Bindings>> sweep_jobs(const Identity& identity,
                                                             const std::string& param,
                                                             const std::vector<Rational>& values) {
  bool known = false;
  for (const auto& p : identity.params) known = known || p.symbol == param;
  if (!known) {
    throw std::invalid_argument("identity '" + identity.id + "' has no parameter '" + param + "'");
  }
  std::vector<std::pair<const Identity*, Bindings>> jobs;
  for (const auto& v : values) {
    Bindings b = identity.samples.empty() ? Bindings{} : identity.samples.front();
    b[param] = v;
    jobs.emplace_back(&identity, std::move(b));
  }
  return jobs;
}

std::vector<std::pair<const Identity*, Bindings>> all_jobs() {
  std::vector<std::pair<const Identity*, Bindings>> jobs;
  for (const auto& id : catalog()) {
    for (const auto& b : id.samples) jobs.emplace_back(&id, b);
  }
  return jobs;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Fail: return "fail";
    case Status::DomainError: return "domain_error";
    case Status::ConvergenceError: return "convergence_error";
    case Status::Inapplicable: return "inapplicable";
  }
  return "?";
}

std::optional<Status> parse_status(std::string_view s) {
  for (Status st : {Status::Ok, Status::Fail, Status::DomainError, Status::ConvergenceError,
                    Status::Inapplicable}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

Bindings resolve_bindings(const Identity& identity, const Bindings& given) {
  Bindings out = given;
  if (out.empty() && !identity.samples.empty()) out = identity.samples.front();
  for (const auto& [name, v] : out) {
    bool known = false;
    for (const auto& p : identity.params) known = known || p.symbol == name;
    if (!known) {
      throw std::invalid_argument("identity '" + identity.id + "' has no parameter '" + name + "'");
    }
  }
  for (const auto& p : identity.params) {
    if (out.find(p.symbol) == out.end()) {
      throw std::invalid_argument("missing parameter '" + p.symbol + "' for " + identity.id);
    }
  }
  return out;
}

VerificationReport verify(const Identity& identity, const Bindings& bindings, long digits) {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  const auto start = Clock::now();
  VerificationReport report;
  report.id = identity.id;
  report.bindings = resolve_bindings(identity, bindings);
  report.digits = digits;
  report.residual = BigFloat::zero(kErrBits);
  try {
    identity.check(report.bindings);
    if (identity.terminating_param) check_terminating_range(identity, report.bindings);
    if (identity.limit) {
      verify_limit(identity, report);
    } else {
      verify_series(identity, report);
    }
  } catch (const ConvergenceError& e) {
    report.status = Status::ConvergenceError;
    report.message = e.what();
  } catch (const DomainError& e) {
    report.status = Status::DomainError;
    report.message = e.what();
  } catch (const InstanceError& e) {
    report.status = Status::DomainError;
    report.message = e.what();
  }
  if (!report.message.empty() && !report.bindings.empty()) {
    report.message += " [" + format_bindings(report.bindings) + "]";
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

VerificationReport verify(std::string_view id, const Bindings& bindings, long digits) {
  const Identity* identity = find_identity(id);
  if (identity == nullptr) throw std::invalid_argument("unknown identity '" + std::string(id) + "'");
  return verify(*identity, bindings, digits);
}

std::vector<VerificationReport> sweep(const Identity& identity, const std::string& param,
                                      const std::vector<Rational>& values, long digits) {
  return run_jobs(sweep_jobs(identity, param, values), digits, true);
}

std::vector<VerificationReport> sweep_serial(const Identity& identity, const std::string& param,
                                             const std::vector<Rational>& values, long digits) {
  return run_jobs(sweep_jobs(identity, param, values), digits, false);
}

std::vector<VerificationReport> verify_all(long digits) {
  return run_jobs(all_jobs(), digits, true);
}

std::vector<VerificationReport> verify_all_serial(long digits) {
  return run_jobs(all_jobs(), digits, false);
}

std::vector<LimitPoint> limit_sequence(const LimitSpec& spec, long digits) {
  std::vector<LimitPoint> out;
  for (int side : {-1, 1}) {
    for (int m = spec.first_m; m <= spec.last_m; ++m) {
      LimitPoint p;
      p.m = m;
      p.side = side;
      const Rational offset = Rational(side) / pow(Rational(10), m);
      const Bindings b = {{spec.symbol, Rational(spec.point + offset)}};
      p.value = evaluate_closed_form(spec.function, b, digits);
      const Approx target = to_approx(spec.value, p.value.precision());
      p.error = abs_difference(p.value, target);
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace hgv
