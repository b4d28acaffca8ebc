#include "hgv/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <sstream>

#include "hgv/special.hpp"

namespace hgv {

namespace {

constexpr Precision kBoundPrec = 64;
constexpr long kMaxTerms = 2'000'000;
constexpr int kWindow = 4;

// ---------------------------------------------------------------------------
// Scalar helpers for Rational and Dual<Rational>

using DualQ = Dual<Rational>;

Rational seed(const Rational& q, bool, const Rational*) { return q; }
DualQ seed(const Rational& q, bool active, const DualQ*) {
  return DualQ(q, Rational(active ? 1 : 0));
}

bool fixed_root(const Rational&) { return true; }
bool fixed_root(const DualQ& d) { return sgn(d.der) == 0; }

std::array<const Rational*, 1> components(const Rational& q) { return {&q}; }
std::array<const Rational*, 2> components(const DualQ& d) { return {&d.val, &d.der}; }

template <class T>
constexpr std::size_t component_count() {
  return std::is_same_v<T, Rational> ? 1 : 2;
}

BigFloat abs_bound_up(const Rational& q) {
  return from_rational(abs(q), kBoundPrec, MPFR_RNDU);
}

BigFloat abs_bound_down(const Rational& q) {
  return from_rational(abs(q), kBoundPrec, MPFR_RNDD);
}

// ---------------------------------------------------------------------------
// Binding

template <class T>
struct LinearFactor {
  long slope = 1;  // factor value at k is slope*k + offset
  T offset;

  T at(long k) const { return make_scalar<T>(Rational(slope * k)) + offset; }
  Rational root() const { return Rational(-value_part(offset) / Rational(slope)); }
};

template <class T>
struct Bound {
  const TermSpec* spec = nullptr;
  SymbolTable<T> symbols;
  T base;
  std::vector<LinearFactor<T>> num;
  std::vector<LinearFactor<T>> den;
};

template <class T>
Env<T> param_env(const Bound<T>& b) {
  Env<T> env;
  env.symbols = &b.symbols;
  return env;
}

template <class T>
Bound<T> bind_spec(const TermSpec& spec, const Bindings& bindings, const std::string* wrt) {
  for (const auto& s : spec.free_symbols()) {
    if (bindings.find(s) == bindings.end()) throw InstanceError("unbound symbol '" + s + "'");
  }
  Bound<T> b;
  b.spec = &spec;
  for (const auto& [name, value] : bindings) {
    b.symbols.emplace_back(name,
                           seed(value, wrt != nullptr && *wrt == name, static_cast<const T*>(nullptr)));
  }
  if (spec.base.depends_on_index()) throw InstanceError("series base depends on k");
  Env<T> env = param_env(b);
  b.base = eval(spec.base, env);

  auto push = [](std::vector<LinearFactor<T>>& dst, long slope, const T& offset, int times) {
    for (int t = 0; t < times; ++t) dst.push_back({slope, offset});
  };
  for (const auto& f : spec.pochhammers) {
    if (f.param.depends_on_index()) throw InstanceError("Pochhammer parameter depends on k");
    const T p = eval(f.param, env);
    auto& dst = f.power > 0 ? b.num : b.den;
    for (unsigned j = 0; j < f.step; ++j) {
      push(dst, f.step, p + make_scalar<T>(Rational(j)), std::abs(f.power));
    }
  }
  for (const auto& f : spec.binomials) {
    if (f.bottom > f.top) throw InstanceError("binomial C(ak, bk) needs a >= b");
    auto& up = f.power > 0 ? b.num : b.den;
    auto& down = f.power > 0 ? b.den : b.num;
    const int times = std::abs(f.power);
    for (unsigned j = 1; j <= f.top; ++j) push(up, f.top, make_scalar<T>(Rational(j)), times);
    for (unsigned j = 1; j <= f.bottom; ++j) push(down, f.bottom, make_scalar<T>(Rational(j)), times);
    const unsigned rest = f.top - f.bottom;
    for (unsigned j = 1; j <= rest; ++j) push(down, rest, make_scalar<T>(Rational(j)), times);
  }
  return b;
}

// Smallest k >= 0 at which the factor vanishes, if any.
template <class T>
std::optional<long> first_zero(const LinearFactor<T>& f) {
  Rational r = f.root();
  if (!is_integer(r) || sgn(r) < 0 || !r.get_num().fits_slong_p()) return std::nullopt;
  return r.get_num().get_si();
}

template <class T>
std::optional<long> termination_of(const Bound<T>& b) {
  std::optional<long> out;
  // In dual mode a root that moves with the parameter does not truncate the
  // derivative series.
  for (const auto& f : b.num) {
    if (!fixed_root(f.offset)) continue;
    if (auto z = first_zero(f)) out = out ? std::min(*out, *z) : *z;
  }
  if (is_zero_scalar(b.base)) out = 0;
  return out;
}

// Throws on a denominator factor vanishing at some k < limit (the ratio
// t_{k+1}/t_k would be infinite).
template <class T>
void check_poles(const Bound<T>& b, std::optional<long> limit) {
  for (const auto& f : b.den) {
    if (auto z = first_zero(f)) {
      if (!limit || *z < *limit) {
        throw InstanceError("denominator factor vanishes at k = " + std::to_string(*z + 1));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Incremental term generation

template <class T>
class TermStream {
 public:
  explicit TermStream(const Bound<T>& b) : b_(b), hyper_(make_scalar<T>(Rational(1))) {
    for (const auto* node : b.spec->weight.inner_sums()) {
      inner_.emplace_back(node, make_scalar<T>(Rational(0)));
    }
  }

  long index() const { return k_; }

  T term() const {
    if (is_zero_scalar(hyper_)) return hyper_;
    Env<T> env;
    env.symbols = &b_.symbols;
    env.index = k_;
    env.inner = &inner_;
    return hyper_ * eval(b_.spec->weight, env);
  }

  void advance() {
    if (!is_zero_scalar(hyper_)) {
      T num = b_.base;
      for (const auto& f : b_.num) num = num * f.at(k_);
      T den = make_scalar<T>(Rational(1));
      for (const auto& f : b_.den) den = den * f.at(k_);
      if (is_zero_scalar(num)) {
        hyper_ = make_scalar<T>(Rational(0));
      } else {
        hyper_ = hyper_ * sdiv(num, den);
      }
    }
    Env<T> env;
    env.symbols = &b_.symbols;
    for (auto& [node, value] : inner_) {
      const long lo = static_cast<long>(node->step) * k_ + 1;
      const long hi = static_cast<long>(node->step) * (k_ + 1);
      for (long i = lo; i <= hi; ++i) {
        env.inner_index = i;
        value = value + eval(node->kids[0], env);
      }
    }
    ++k_;
  }

 private:
  const Bound<T>& b_;
  long k_ = 0;
  T hyper_;
  InnerValues<T> inner_;
};

template <class T>
T sum_first_terms(const Bound<T>& b, long last) {
  TermStream<T> stream(b);
  T sum = make_scalar<T>(Rational(0));
  for (long k = 0; k <= last; ++k) {
    sum = sum + stream.term();
    if (k < last) stream.advance();
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Ratio bounds

template <class T>
Rational asymptotic_ratio(const Bound<T>& b) {
  if (b.num.size() > b.den.size()) {
    throw ConvergenceError("term ratio grows without bound (divergent series)");
  }
  if (b.num.size() < b.den.size()) return Rational(0);
  Rational out = abs(value_part(b.base));
  for (const auto& f : b.num) out *= f.slope;
  for (const auto& f : b.den) out /= f.slope;
  return out;
}

// Upper bound of |h_{k+1}/h_k| over all k >= K, valid once K exceeds every
// factor root (each paired quotient is then monotone in k).
template <class T>
BigFloat ratio_sup(const Bound<T>& b, long K) {
  BigFloat out = abs_bound_up(value_part(b.base));
  for (std::size_t i = 0; i < b.den.size(); ++i) {
    const Rational d = value_part(b.den[i].at(K));
    if (i < b.num.size()) {
      const Rational n = value_part(b.num[i].at(K));
      BigFloat at_k = div_up(abs_bound_up(n), abs_bound_down(d));
      Rational slopes(b.num[i].slope, b.den[i].slope);
      slopes.canonicalize();
      BigFloat lim = from_rational(slopes, kBoundPrec, MPFR_RNDU);
      out = mul_up(out, max(at_k, lim));
    } else {
      out = div_up(out, abs_bound_down(d));
    }
  }
  return out;
}

BigFloat growth_factor(long K, int degree) {
  BigFloat g(kBoundPrec);
  mpfr_set_ui(g.get(), 1, MPFR_RNDN);
  mpfr_div_si(g.get(), g.get(), K, MPFR_RNDU);
  mpfr_add_ui(g.get(), g.get(), 1, MPFR_RNDU);
  mpfr_pow_si(g.get(), g.get(), degree, MPFR_RNDU);
  return g;
}

template <class T>
long roots_clear_index(const Bound<T>& b) {
  Rational top(0);
  for (const auto* list : {&b.num, &b.den}) {
    for (const auto& f : *list) top = std::max(top, f.root());
  }
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), top.get_num_mpz_t(), top.get_den_mpz_t());
  if (!fl.fits_slong_p()) throw ConvergenceError("factor roots too large");
  return std::max(1L, fl.get_si() + 1);
}

template <class T>
BigFloat inflated_ratio(const Bound<T>& b, long K, int degree) {
  return mul_up(ratio_sup(b, K), growth_factor(K, degree));
}

template <class T>
RatioInfo analyse(const Bound<T>& b, int degree) {
  RatioInfo info;
  info.limit = asymptotic_ratio(b);
  if (info.limit >= 1) {
    throw ConvergenceError("asymptotic term ratio " + to_fraction_string(info.limit) +
                           " is not below 1");
  }
  const BigFloat one = BigFloat::pow2(0);
  long K = roots_clear_index(b);
  while (!(inflated_ratio(b, K, degree) < one)) {
    if (K > kMaxTerms) throw ConvergenceError("no geometric ratio bound below 1 found");
    K *= 2;
  }
  info.start = K;
  return info;
}

template <class T>
int weight_degree(const TermSpec& spec) {
  // One more power in dual mode: derivatives of the hypergeometric part carry
  // harmonic-like factors.
  return spec.weight.k_degree() + 1 + (std::is_same_v<T, Rational> ? 0 : 1);
}

// ---------------------------------------------------------------------------
// Summation drivers

template <class T>
struct GenericSum {
  T value;
  long terms_used = 0;
  std::array<BigFloat, component_count<T>()> tails;
  bool exact = false;
};

template <class T>
GenericSum<T> sum_generic(const TermSpec& spec, const Bindings& bindings, long digits,
                          const std::string* wrt) {
  const Bound<T> b = bind_spec<T>(spec, bindings, wrt);
  GenericSum<T> out;
  for (auto& t : out.tails) t = BigFloat::zero(kBoundPrec);

  if (auto last = termination_of(b)) {
    check_poles(b, *last);
    out.value = sum_first_terms(b, *last);
    out.terms_used = *last + 1;
    out.exact = true;
    return out;
  }
  check_poles(b, std::nullopt);

  const int degree = weight_degree<T>(spec);
  const RatioInfo info = analyse(b, degree);
  const BigFloat one = BigFloat::pow2(0);
  BigFloat half_budget = BigFloat::ten_pow_neg_down(digits);
  mpfr_div_2ui(half_budget.get(), half_budget.get(), 1, MPFR_RNDD);

  constexpr std::size_t C = component_count<T>();
  std::array<std::deque<BigFloat>, C> recent;
  TermStream<T> stream(b);
  T sum = make_scalar<T>(Rational(0));
  for (long k = 0;; ++k) {
    if (k > kMaxTerms) throw ConvergenceError("term limit exceeded");
    const T t = stream.term();
    sum = sum + t;
    const auto comps = components(t);
    for (std::size_t c = 0; c < C; ++c) {
      recent[c].push_front(abs_bound_up(*comps[c]));
      if (recent[c].size() > kWindow) recent[c].pop_back();
    }
    if (k >= info.start + kWindow - 1) {
      BigFloat r = inflated_ratio(b, k, degree);
      if (r < one) {
        BigFloat factor = div_up(r, sub_down(one, r));
        bool done = true;
        std::array<BigFloat, C> tails;
        for (std::size_t c = 0; c < C; ++c) {
          // Project the recent terms forward; absorbs isolated zeros of W.
          BigFloat envelope = BigFloat::zero(kBoundPrec);
          BigFloat decay = BigFloat::pow2(0, kBoundPrec);
          for (const auto& m : recent[c]) {
            envelope = max(envelope, mul_up(m, decay));
            decay = mul_up(decay, r);
          }
          tails[c] = mul_up(envelope, factor);
          if (half_budget < tails[c]) done = false;
        }
        if (done) {
          out.value = sum;
          out.terms_used = k + 1;
          out.tails = tails;
          return out;
        }
      }
    }
    stream.advance();
  }
}

Approx finish(const Rational& value, const BigFloat& tail, long digits) {
  // Enough bits that rounding the exact sum stays well inside the budget.
  long mag = 0;
  if (sgn(value) != 0) {
    BigFloat v = from_rational(value, kBoundPrec, MPFR_RNDN);
    mag = std::max(0L, v.exponent());
  }
  Approx out = to_approx(value, working_precision(digits) + static_cast<Precision>(mag) + 8);
  out.abs_err = add_up(out.abs_err, tail);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::set<std::string> TermSpec::free_symbols() const {
  std::set<std::string> out = base.free_symbols();
  for (const auto& f : pochhammers) {
    auto s = f.param.free_symbols();
    out.insert(s.begin(), s.end());
  }
  auto w = weight.free_symbols();
  out.insert(w.begin(), w.end());
  return out;
}

std::string TermSpec::to_string() const {
  std::ostringstream os;
  os << "(" << base.to_string() << ")^k";
  for (const auto& f : pochhammers) {
    os << " * (" << f.param.to_string() << ")_{" << f.step << "k}^" << f.power;
  }
  for (const auto& f : binomials) {
    os << " * C(" << f.top << "k," << f.bottom << "k)^" << f.power;
  }
  os << " * [" << weight.to_string() << "]";
  return os.str();
}

Rational term(const TermSpec& spec, long k, const Bindings& bindings) {
  if (k < 0) throw InstanceError("negative term index");
  SymbolTable<Rational> symbols(bindings.begin(), bindings.end());
  for (const auto& s : spec.free_symbols()) {
    if (bindings.find(s) == bindings.end()) throw InstanceError("unbound symbol '" + s + "'");
  }
  Rational h = pow(eval_params(spec.base, symbols), k);
  if (sgn(h) == 0) return h;
  for (const auto& f : spec.pochhammers) {
    Rational p = pochhammer(eval_params(f.param, symbols), f.step * static_cast<unsigned long>(k));
    h = f.power > 0 ? Rational(h * pow(p, f.power)) : checked_div(h, pow(p, -f.power));
  }
  for (const auto& f : spec.binomials) {
    Rational c(binomial(f.top * static_cast<unsigned long>(k), f.bottom * static_cast<unsigned long>(k)));
    h = f.power > 0 ? Rational(h * pow(c, f.power)) : checked_div(h, pow(c, -f.power));
  }
  if (sgn(h) == 0) return h;
  Env<Rational> env;
  env.symbols = &symbols;
  env.index = k;
  return h * eval(spec.weight, env);
}

std::optional<long> termination_index(const TermSpec& spec, const Bindings& bindings) {
  return termination_of(bind_spec<Rational>(spec, bindings, nullptr));
}

ExactSum sum_terminating(const TermSpec& spec, const Bindings& bindings) {
  const Bound<Rational> b = bind_spec<Rational>(spec, bindings, nullptr);
  auto last = termination_of(b);
  if (!last) {
    throw ConvergenceError("series does not terminate; use sum_to_digits");
  }
  check_poles(b, *last);
  return {sum_first_terms(b, *last), *last + 1};
}

RatioInfo ratio_info(const TermSpec& spec, const Bindings& bindings) {
  const Bound<Rational> b = bind_spec<Rational>(spec, bindings, nullptr);
  return analyse(b, weight_degree<Rational>(spec));
}

SumResult sum_to_digits(const TermSpec& spec, const Bindings& bindings, long digits) {
  GenericSum<Rational> s = sum_generic<Rational>(spec, bindings, digits, nullptr);
  SumResult out;
  out.value = finish(s.value, s.tails[0], digits);
  out.terms_used = s.terms_used;
  out.tail_bound = s.tails[0];
  out.partial = s.value;
  out.exact = s.exact;
  return out;
}

SumResult derivative_series(const TermSpec& spec, const Bindings& bindings,
                            const std::string& wrt, long digits) {
  SumResult out;
  const auto symbols = spec.free_symbols();
  if (symbols.find(wrt) == symbols.end()) {
    out.value = to_approx(Rational(0), working_precision(digits));
    out.tail_bound = BigFloat::zero(kBoundPrec);
    out.partial = 0;
    out.exact = true;
    return out;
  }
  GenericSum<DualQ> s = sum_generic<DualQ>(spec, bindings, digits, &wrt);
  out.value = finish(s.value.der, s.tails[1], digits);
  out.terms_used = s.terms_used;
  out.tail_bound = s.tails[1];
  out.partial = s.value.der;
  out.exact = s.exact;
  return out;
}

Rational brute_force_sum(const TermSpec& spec, const Bindings& bindings, long last) {
  Rational sum(0);
  for (long k = 0; k <= last; ++k) sum += term(spec, k, bindings);
  return sum;
}

}  // namespace hgv
