#include <algorithm>

#include "hgv/registry.hpp"

namespace hgv {

namespace {

using CF = ClosedForm;

const Expr k = Expr::index();
const Expr i = Expr::inner_index();

Expr sym(const char* name) { return Expr::symbol(name); }

/// H_{m k}^(order) (classical, offset 0).
Expr H(unsigned m, unsigned order = 1) { return Expr::harmonic(order, 0, m); }

PochhammerFactor P(Expr p, int power = 1, unsigned step = 1) {
  return {std::move(p), step, power};
}

TermSpec binomial_series(Expr base, std::vector<BinomialFactor> binomials, Expr weight = 1) {
  TermSpec s;
  s.base = std::move(base);
  s.binomials = std::move(binomials);
  s.weight = std::move(weight);
  return s;
}

TermSpec pochhammer_series(Expr base, std::vector<PochhammerFactor> factors, Expr weight = 1) {
  TermSpec s;
  s.base = std::move(base);
  s.pochhammers = std::move(factors);
  s.weight = std::move(weight);
  return s;
}

const Rational& get(const Bindings& b, const std::string& name) {
  auto it = b.find(name);
  if (it == b.end()) throw InstanceError("unbound parameter '" + name + "'");
  return it->second;
}

void require_abs_above(const Bindings& b, const std::string& name, long bound) {
  if (abs(get(b, name)) <= bound) {
    throw ConvergenceError("|" + name + "| must exceed " + std::to_string(bound));
  }
}

void require_abs_below_one(const Bindings& b, const std::string& name) {
  if (abs(get(b, name)) >= 1) throw ConvergenceError("|" + name + "| must be below 1");
}

void require_not_half_integer(const Bindings& b, const std::string& name) {
  if (is_integer(Rational(get(b, name) - Rational(1, 2)))) {
    throw DomainError(name + " - 1/2 must not be an integer");
  }
}

void require_not_integer(const Bindings& b, const std::string& name) {
  if (is_integer(get(b, name))) throw DomainError(name + " must not be an integer");
}

void require_nonpositive_integer(const Bindings& b, const std::string& name) {
  const Rational& v = get(b, name);
  if (!is_integer(v) || sgn(v) > 0) {
    throw DomainError("terminating instances only: " + name + " must be a nonpositive integer");
  }
}

void no_check(const Bindings&) {}

// Shared pieces ---------------------------------------------------------------

std::vector<BinomialFactor> b2b3() { return {{2, 1, 1}, {3, 1, 1}}; }
std::vector<BinomialFactor> b2b4() { return {{2, 1, 1}, {4, 2, 1}}; }
std::vector<BinomialFactor> b3b6() { return {{3, 1, 1}, {6, 3, 1}}; }
std::vector<BinomialFactor> b2sq() { return {{2, 1, 2}}; }
std::vector<BinomialFactor> b2pow5() { return {{2, 1, 5}}; }

Expr weight_23() { return 3 * H(3) - H(1); }
Expr weight_24() { return 2 * H(4) - H(2); }
Expr weight_22() { return 2 * H(2) - H(1); }
Expr weight_36() { return 6 * H(6) - 3 * H(3) - 2 * H(2) + H(1); }
Expr weight_second_order() { return H(2, 2) - q(1, 4) * H(1, 2); }

/// Gamma(1/4)^2 / (pi sqrt(pi)).
CF gamma_quarter_sq_over_pi32() {
  return pow(CF::gamma_quarter(), 2) / (CF::pi() * CF::sqrt_pi());
}

/// Gamma(3/4)^2 / (pi sqrt(pi)) with Gamma(3/4) = pi sqrt(2) / Gamma(1/4).
CF gamma_three_quarter_sq_over_pi32() {
  CF g34 = CF::pi() * CF::sqrt(2) / CF::gamma_quarter();
  return pow(g34, 2) / (CF::pi() * CF::sqrt_pi());
}

/// (1 - 2d) tan(d pi) / pi
CF tan_form(const Expr& d) { return (1 - 2 * d) * CF::tan_pi(d) / CF::pi(); }

/// sec^2(d pi) - (2/pi) tan(d pi) / (1 - 2d)
CF sec_tan_form(const Expr& d) {
  return pow(CF::cos_pi(d), -2) - 2 * CF::tan_pi(d) / (CF::pi() * (1 - 2 * d));
}

/// Gamma(b/2) Gamma((1+b)/2) / (Gamma((a+b)/2) Gamma((1-a+b)/2))
CF bailey_ratio(const Expr& a, const Expr& b) {
  return CF::gamma(b / 2) * CF::gamma((1 + b) / 2) /
         (CF::gamma((a + b) / 2) * CF::gamma((1 - a + b) / 2));
}

/// sum_{i=1}^{step k} 1/((x+i)(y+i))
Expr paired_inner(const Expr& x, const Expr& y, unsigned step = 1) {
  return Expr::inner_sum(step, 1 / ((x + i) * (y + i)));
}

/// Terminating very-well-poised evaluation
/// (1+a)_n (1+a-b-c)_{n+1} / ((1+a-b)_n (1+a-c)_n) with n = -d.
CF well_poised_rhs(const Expr& a, const Expr& b, const Expr& c, const Expr& d) {
  const Expr n = -d;
  return CF(Expr::pochhammer(1 + a, n) * Expr::pochhammer(1 + a - b - c, n + 1) /
            (Expr::pochhammer(1 + a - b, n) * Expr::pochhammer(1 + a - c, n)));
}

/// sum (a+2k) (b)_k (c)_k (d)_k (e)_k / ((1+a-b)_k (1+a-c)_k (1+a-d)_k (1+a-e)_k)
TermSpec well_poised_series(const Expr& a, const Expr& b, const Expr& c, const Expr& d,
                            const Expr& e) {
  return pochhammer_series(1,
                           {P(b), P(c), P(d), P(e), P(1 + a - b, -1), P(1 + a - c, -1),
                            P(1 + a - d, -1), P(1 + a - e, -1)},
                           a + 2 * k);
}

std::vector<ParamSpec> free_params(std::initializer_list<const char*> names,
                                   const std::string& constraint = "rational, avoiding poles") {
  std::vector<ParamSpec> out;
  for (const char* n : names) out.push_back({n, constraint});
  return out;
}

// Catalog entries -------------------------------------------------------------

Identity log_binomial_pair(const char* id, const char* anchor, long base, bool cubic, CF factor) {
  Identity e;
  e.id = id;
  e.anchor = anchor;
  e.kind = IdentityKind::SeriesEqSeries;
  const Expr z = q(1, base);
  const auto binomials = cubic ? b2b3() : b2b4();
  e.lhs = binomial_series(z, binomials, cubic ? weight_23() : weight_24());
  e.rhs = {{std::move(factor), binomial_series(z, binomials)}};
  e.check = no_check;
  e.samples = {{}};
  return e;
}

Identity parametric(const char* id, const char* anchor, long threshold,
                    std::vector<BinomialFactor> binomials, Expr weight, Rational half) {
  Identity e;
  e.id = id;
  e.anchor = anchor;
  e.kind = IdentityKind::SeriesEqSeries;
  const Expr x = sym("x");
  e.lhs = binomial_series(1 / x, binomials, std::move(weight));
  e.rhs = {{half * CF::log(x / (x - threshold)), binomial_series(1 / x, binomials)}};
  e.params = {{"x", "|x| > " + std::to_string(threshold)}};
  e.check = [threshold](const Bindings& b) { require_abs_above(b, "x", threshold); };
  return e;
}

std::vector<Identity> build_catalog() {
  std::vector<Identity> out;
  const Expr x = sym("x");
  const Expr a = sym("a");
  const Expr b = sym("b");
  const Expr c = sym("c");
  const Expr d = sym("d");
  const Expr e = sym("e");

  // Binomial-harmonic series with logarithmic factors.
  out.push_back(log_binomial_pair("thm1.1-a", "log(8/9) series with C(2k,k)C(3k,k)/(-216)^k", -216, true,
                           CF::log(q(8, 9))));
  out.push_back(log_binomial_pair("thm1.1-b", "(1/2)log(3/4) series with C(2k,k)C(4k,2k)/(-192)^k", -192,
                           false, q(1, 2) * CF::log(q(3, 4))));
  out.push_back(log_binomial_pair("thm1.1-c", "(1/2)log(63/64) series with C(2k,k)C(4k,2k)/(-4032)^k",
                           -4032, false, q(1, 2) * CF::log(q(63, 64))));
  out.push_back(log_binomial_pair("thm1.1-d", "(log 3) series with C(2k,k)C(4k,2k)/72^k", 72, false,
                           CF::log(3)));
  out.push_back(log_binomial_pair("thm1.1-e", "(1/2)log(9/8) series with C(2k,k)C(4k,2k)/576^k", 576,
                           false, q(1, 2) * CF::log(q(9, 8))));

  {
    Identity t;
    t.id = "thm1.2";
    t.anchor = "C(2k,k)^2/32^k {H_2k^(2) - H_k^(2)/4} = Gamma(1/4)^2 (pi^2-8G)/(32 pi sqrt(pi))";
    t.lhs = binomial_series(q(1, 32), b2sq(), weight_second_order());
    t.rhs = {{gamma_quarter_sq_over_pi32() * (pow(CF::pi(), 2) - 8 * CF::catalan()) / 32, {}}};
    t.alt_rhs = gamma_quarter_sq_over_pi32() * CF::polygamma(1, q(3, 4)) / 32;
    t.check = no_check;
    t.samples = {{}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "mathematica-2f1";
    t.anchor = "sum C(2k,k)^2/32^k = Gamma(1/4)^2/(2 pi sqrt(pi))";
    t.lhs = binomial_series(q(1, 32), b2sq());
    t.rhs = {{gamma_quarter_sq_over_pi32() / 2, {}}};
    t.check = no_check;
    t.samples = {{}};
    out.push_back(std::move(t));
  }

  // Guillera-type series and their harmonic companions.
  const Expr g_poly_a = 20 * k * k + 8 * k + 1;
  const Expr g_poly_b = 820 * k * k + 180 * k + 13;
  {
    Identity t;
    t.id = "thm1.3-a";
    t.anchor = "C(2k,k)^5/(-2^12)^k {(20k^2+8k+1)[8H_2k^(2)-3H_k^(2)]+4} = 8/3";
    t.lhs = binomial_series(q(-1, 4096), b2pow5(), g_poly_a * (8 * H(2, 2) - 3 * H(1, 2)) + 4);
    t.rhs = {{q(8, 3), {}}};
    t.check = no_check;
    t.samples = {{}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "thm1.3-b";
    t.anchor = "C(2k,k)^5/(-2^20)^k {(820k^2+180k+13)[11H_2k^(2)-3H_k^(2)]+43} = 128/3";
    t.lhs = binomial_series(q(-1, 1L << 20), b2pow5(),
                            g_poly_b * (11 * H(2, 2) - 3 * H(1, 2)) + 43);
    t.rhs = {{q(128, 3), {}}};
    t.check = no_check;
    t.samples = {{}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "guillera-a";
    t.anchor = "sum (20k^2+8k+1) C(2k,k)^5/(-2^12)^k = 8/pi^2";
    t.lhs = binomial_series(q(-1, 4096), b2pow5(), g_poly_a);
    t.rhs = {{8 / pow(CF::pi(), 2), {}}};
    t.check = no_check;
    t.samples = {{}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "guillera-b";
    t.anchor = "sum (820k^2+180k+13) C(2k,k)^5/(-2^20)^k = 128/pi^2";
    t.lhs = binomial_series(q(-1, 1L << 20), b2pow5(), g_poly_b);
    t.rhs = {{128 / pow(CF::pi(), 2), {}}};
    t.check = no_check;
    t.samples = {{}};
    out.push_back(std::move(t));
  }

  // Parametric families in x.
  {
    auto t = parametric("thm2-o", "C(2k,k)^2/x^k (2H_2k - H_k), factor (1/2)log(x/(x-16))", 16,
                        b2sq(), weight_22(), Rational(1, 2));
    t.samples = {{{"x", -32}}, {{"x", 32}}};
    out.push_back(std::move(t));
  }
  {
    auto t = parametric("thm2-p", "C(2k,k)C(3k,k)/x^k (3H_3k - H_k), factor log(x/(x-27))", 27,
                        b2b3(), weight_23(), Rational(1));
    t.samples = {{{"x", -216}}, {{"x", 54}}};
    out.push_back(std::move(t));
  }
  {
    auto t = parametric("thm2-q", "C(2k,k)C(4k,2k)/x^k (2H_4k - H_2k), factor (1/2)log(x/(x-64))",
                        64, b2b4(), weight_24(), Rational(1, 2));
    t.samples = {{{"x", -192}}, {{"x", -4032}}, {{"x", 72}}, {{"x", 576}}};
    out.push_back(std::move(t));
  }
  {
    auto t = parametric("thm2-r",
                        "C(3k,k)C(6k,3k)/x^k (6H_6k - 3H_3k - 2H_2k + H_k), factor log(x/(x-432))",
                        432, b3b6(), weight_36(), Rational(1));
    t.samples = {{{"x", -864}}, {{"x", 864}}};
    out.push_back(std::move(t));
  }

  // Euler's transformation and its derivative forms.
  {
    Identity t;
    t.id = "euler-transform";
    t.anchor = "2F1(a,b;c;x) = (1-x)^(c-a-b) 2F1(c-a,c-b;c;x)";
    t.kind = IdentityKind::SeriesEqSeries;
    t.lhs = pochhammer_series(x, {P(a), P(b), P(1, -1), P(c, -1)});
    t.rhs = {{CF::rat_pow(1 - x, c - a - b),
              pochhammer_series(x, {P(c - a), P(c - b), P(1, -1), P(c, -1)})}};
    t.params = free_params({"a", "b", "c"});
    t.params.push_back({"x", "|x| < 1"});
    t.check = [](const Bindings& bb) { require_abs_below_one(bb, "x"); };
    t.samples = {{{"a", Rational(1, 3)}, {"b", Rational(1, 4)}, {"c", 2}, {"x", Rational(1, 5)}},
                 {{"a", Rational(-2, 3)}, {"b", Rational(5, 7)}, {"c", Rational(3, 2)},
                  {"x", Rational(-1, 2)}}};
    out.push_back(std::move(t));
  }
  const std::vector<PochhammerFactor> ab_factors = {P(a), P(b), P(1, -1), P(a + b, -1)};
  {
    Identity t;
    t.id = "wei-s";
    t.anchor = "c = a+b case of the a-derivative of Euler's transformation";
    t.kind = IdentityKind::SeriesEqSeries;
    t.lhs = pochhammer_series(x, ab_factors, Expr::harmonic(1, a - 1));
    t.rhs = {{-CF::log(1 - x), pochhammer_series(x, ab_factors)},
             {-1, pochhammer_series(x, ab_factors, Expr::harmonic(1, b - 1))}};
    t.params = free_params({"a", "b"}, "not nonpositive integers, a+b likewise");
    t.params.push_back({"x", "|x| < 1"});
    t.check = [](const Bindings& bb) { require_abs_below_one(bb, "x"); };
    t.samples = {{{"a", Rational(1, 3)}, {"b", Rational(1, 5)}, {"x", Rational(1, 7)}},
                 {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}, {"x", Rational(-1, 3)}}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "wei-t";
    t.anchor = "x -> 1/x form: (a)_k(b)_k/((1)_k(a+b)_k) (H_k(a-1)+H_k(b-1))/x^k";
    t.kind = IdentityKind::SeriesEqSeries;
    t.lhs = pochhammer_series(1 / x, ab_factors,
                              Expr::harmonic(1, a - 1) + Expr::harmonic(1, b - 1));
    t.rhs = {{CF::log(x / (x - 1)), pochhammer_series(1 / x, ab_factors)}};
    t.params = free_params({"a", "b"}, "not nonpositive integers, a+b likewise");
    t.params.push_back({"x", "|x| > 1"});
    t.check = [](const Bindings& bb) { require_abs_above(bb, "x", 1); };
    t.samples = {{{"a", Rational(1, 3)}, {"b", Rational(1, 5)}, {"x", 7}},
                 {{"a", Rational(1, 4)}, {"b", Rational(3, 4)}, {"x", Rational(-5, 2)}}};
    out.push_back(std::move(t));
  }

  // Bailey's 2F1(1/2) summation and derivatives.
  const std::vector<PochhammerFactor> bailey_factors = {P(a), P(1 - a), P(1, -1), P(b, -1)};
  {
    Identity t;
    t.id = "bailey-2f1";
    t.anchor = "2F1(a,1-a;b;1/2) = Gamma(b/2)Gamma((1+b)/2)/(Gamma((a+b)/2)Gamma((1-a+b)/2))";
    t.lhs = pochhammer_series(q(1, 2), bailey_factors);
    t.rhs = {{bailey_ratio(a, b), {}}};
    t.params = {{"a", "rational"}, {"b", "b not a nonpositive integer"}};
    t.check = no_check;
    t.samples = {{{"a", Rational(1, 3)}, {"b", 2}}, {{"a", Rational(1, 4)}, {"b", 3}},
                 {{"a", Rational(2, 5)}, {"b", Rational(1, 2)}}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "bailey-b";
    t.anchor = "(psi((1-a+b)/2) - psi((a+b)/2))/(1-2a) form of the a-derivative";
    t.lhs = pochhammer_series(q(1, 2), bailey_factors, 2 * paired_inner(a - 1, -a));
    t.rhs = {{bailey_ratio(a, b) *
                  (CF::polygamma(0, (1 - a + b) / 2) - CF::polygamma(0, (a + b) / 2)) / (1 - 2 * a),
              {}}};
    t.params = {{"a", "not an integer, a != 1/2"}, {"b", "b not a nonpositive integer"}};
    t.check = [](const Bindings& bb) {
      require_not_integer(bb, "a");
      if (get(bb, "a") == Rational(1, 2)) throw DomainError("a = 1/2 is the removable limit");
    };
    t.samples = {{{"a", Rational(1, 3)}, {"b", 2}}, {{"a", Rational(1, 4)}, {"b", 3}}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "bailey-c";
    t.anchor = "a -> 1/2 limit: Gamma(b/2)Gamma((1+b)/2)/(16 Gamma((1+2b)/4)^2) psi'((1+2b)/4)";
    t.lhs = pochhammer_series(q(1, 2), {P(q(1, 2), 2), P(1, -1), P(b, -1)}, weight_second_order());
    t.rhs = {{CF::gamma(b / 2) * CF::gamma((1 + b) / 2) /
                  (16 * pow(CF::gamma((1 + 2 * b) / 4), 2)) * CF::polygamma(1, (1 + 2 * b) / 4),
              {}}};
    t.params = {{"b", "b not a nonpositive integer"}};
    t.check = no_check;
    t.samples = {{{"b", 1}}, {{"b", 2}}, {{"b", 3}}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "thm3.2";
    t.anchor =
        "C(2k,k)^2/(32^k (1+k)) {H_2k^(2) - H_k^(2)/4} = Gamma(3/4)^2 (pi^2+8G-16)/(4 pi sqrt(pi))";
    t.lhs = binomial_series(q(1, 32), b2sq(), weight_second_order() / (1 + k));
    t.rhs = {{gamma_three_quarter_sq_over_pi32() * (pow(CF::pi(), 2) + 8 * CF::catalan() - 16) / 4,
              {}}};
    t.alt_rhs = gamma_three_quarter_sq_over_pi32() * CF::polygamma(1, q(5, 4)) / 4;
    t.check = no_check;
    t.samples = {{}};
    out.push_back(std::move(t));
  }

  // Terminating very-well-poised summations and transformations.
  {
    Identity t;
    t.id = "dougall-5f4";
    t.anchor = "Dougall's 5F4 summation, terminating in b = -n";
    t.kind = IdentityKind::SeriesEqClosed;
    t.lhs = pochhammer_series(1, {P(a), P(1 + a / 2), P(b), P(c), P(d), P(1, -1), P(a / 2, -1),
                                  P(1 + a - b, -1), P(1 + a - c, -1), P(1 + a - d, -1)});
    const Expr n = -b;
    t.rhs = {{CF(Expr::pochhammer(1 + a, n) * Expr::pochhammer(1 + a - c - d, n) /
                 (Expr::pochhammer(1 + a - c, n) * Expr::pochhammer(1 + a - d, n))),
              {}}};
    t.params = free_params({"a", "c", "d"});
    t.params.insert(t.params.begin() + 1, {"b", "nonpositive integer"});
    t.terminating_param = "b";
    t.check = [](const Bindings& bb) { require_nonpositive_integer(bb, "b"); };
    t.samples = {{{"a", Rational(1, 2)}, {"b", -3}, {"c", Rational(1, 3)}, {"d", Rational(1, 5)}},
                 {{"a", Rational(1, 2)}, {"b", -2}, {"c", Rational(1, 3)}, {"d", Rational(1, 5)}}};
    out.push_back(std::move(t));
  }
  const Expr s5 = 1 + 2 * a - b - c - d - e;
  {
    Identity t;
    t.id = "chu-thm9";
    t.anchor = "transformation with alpha_k(a,b,c,d,e), terminating in c = -n";
    t.kind = IdentityKind::SeriesEqSeries;
    const Expr alpha = (1 + 2 * a - b - c - d + 2 * k) * (a - e + k) / (s5 + k) +
                       (1 + a - b - c + k) * (1 + a - b - d + k) * (e + k) /
                           ((1 + a - b + 2 * k) * (s5 + k));
    t.lhs = pochhammer_series(-1,
                              {P(c), P(d), P(e), P(1 + a - b - c), P(1 + a - b - d),
                               P(1 + a - b - e), P(1 + a - c, -1), P(1 + a - d, -1),
                               P(1 + a - e, -1), P(s5, -1), P(1 + a - b, -1, 2)},
                              alpha);
    t.rhs = {{1, well_poised_series(a, b, c, d, e)}};
    t.params = free_params({"a", "b", "d", "e"});
    t.params.insert(t.params.begin() + 2, {"c", "nonpositive integer"});
    t.terminating_param = "c";
    t.check = [](const Bindings& bb) { require_nonpositive_integer(bb, "c"); };
    t.samples = {{{"a", Rational(7, 3)}, {"b", Rational(1, 2)}, {"c", -3},
                  {"d", Rational(2, 5)}, {"e", Rational(3, 7)}}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "chu-thm9-beta";
    t.anchor = "e = a case with beta_k(a,b,c,d), terminating in d = -n";
    const Expr beta = k * (1 + 2 * a - b - c - d + 2 * k) / a +
                      (a + k) * (1 + a - b - c + k) * (1 + a - b - d + k) / (a * (1 + a - b + 2 * k));
    t.lhs = pochhammer_series(-1,
                              {P(a), P(c), P(d), P(1 - b), P(1 + a - b - c), P(1 + a - b - d),
                               P(1, -1), P(1 + a - c, -1), P(1 + a - d, -1),
                               P(2 + a - b - c - d, -1), P(1 + a - b, -1, 2)},
                              beta);
    t.rhs = {{well_poised_rhs(a, b, c, d), {}}};
    t.params = free_params({"a", "b", "c"});
    t.params.push_back({"d", "nonpositive integer"});
    t.terminating_param = "d";
    t.check = [](const Bindings& bb) { require_nonpositive_integer(bb, "d"); };
    t.samples = {{{"a", Rational(5, 3)}, {"b", Rational(1, 4)}, {"c", Rational(2, 7)}, {"d", -3}}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "chu-thm32";
    t.anchor = "transformation with lambda_k(a,b,c,d,e), terminating in c = -n";
    t.kind = IdentityKind::SeriesEqSeries;
    const Expr lambda =
        (1 + 2 * a - b - c - d + 3 * k) * (a - e + 2 * k) / (s5 + 2 * k) +
        (e + k) * (1 + a - b - c + k) / ((1 + a - b + 2 * k) * (1 + a - d + 2 * k)) *
            (1 + a - b - d + k) * (1 + a - c - d + k) * (2 + 2 * a - b - d - e + 3 * k) /
            ((s5 + 2 * k) * (1 + s5 + 2 * k)) +
        (c + k) * (e + k) * (1 + a - b - c + k) * (1 + a - b - d + k) /
            ((1 + a - b + 2 * k) * (1 + a - c + 2 * k) * (1 + a - d + 2 * k) *
             (1 + a - e + 2 * k)) *
            (1 + a - b - e + k) * (1 + a - c - d + k) * (1 + a - d - e + k) /
            ((s5 + 2 * k) * (1 + s5 + 2 * k));
    t.lhs = pochhammer_series(
        -1,
        {P(b), P(c), P(d), P(e), P(1 + a - b - c), P(1 + a - b - d), P(1 + a - b - e),
         P(1 + a - c - d), P(1 + a - c - e), P(1 + a - d - e), P(1 + a - b, -1, 2),
         P(1 + a - c, -1, 2), P(1 + a - d, -1, 2), P(1 + a - e, -1, 2), P(s5, -1, 2)},
        lambda);
    t.rhs = {{1, well_poised_series(a, b, c, d, e)}};
    t.params = free_params({"a", "b", "d", "e"});
    t.params.insert(t.params.begin() + 2, {"c", "nonpositive integer"});
    t.terminating_param = "c";
    t.check = [](const Bindings& bb) { require_nonpositive_integer(bb, "c"); };
    t.samples = {{{"a", Rational(7, 3)}, {"b", Rational(1, 2)}, {"c", -3},
                  {"d", Rational(2, 5)}, {"e", Rational(3, 7)}}};
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "chu-thm32-theta";
    t.anchor = "e = a case with theta_k(a,b,c,d), terminating in d = -n";
    const Expr theta =
        2 * k * (1 + 2 * a - b - c - d + 3 * k) / a +
        (a + k) * (1 + a - b - c + k) / (a * (1 + a - b + 2 * k)) * (1 + a - b - d + k) *
            (1 + a - c - d + k) * (2 + a - b - d + 3 * k) /
            ((1 + a - d + 2 * k) * (2 + a - b - c - d + 2 * k)) +
        (a + k) * (c + k) * (1 - b + k) * (1 - d + k) /
            (a * (1 + 2 * k) * (1 + a - b + 2 * k) * (1 + a - c + 2 * k)) *
            (1 + a - b - c + k) * (1 + a - b - d + k) * (1 + a - c - d + k) /
            ((1 + a - d + 2 * k) * (2 + a - b - c - d + 2 * k));
    t.lhs = pochhammer_series(
        -1,
        {P(a), P(b), P(c), P(d), P(1 - b), P(1 - c), P(1 - d), P(1 + a - b - c), P(1 + a - b - d),
         P(1 + a - c - d), P(1, -1, 2), P(1 + a - b, -1, 2), P(1 + a - c, -1, 2),
         P(1 + a - d, -1, 2), P(2 + a - b - c - d, -1, 2)},
        theta);
    t.rhs = {{well_poised_rhs(a, b, c, d), {}}};
    t.params = free_params({"a", "b", "c"});
    t.params.push_back({"d", "nonpositive integer"});
    t.terminating_param = "d";
    t.check = [](const Bindings& bb) { require_nonpositive_integer(bb, "d"); };
    t.samples = {{{"a", Rational(5, 3)}, {"b", Rational(1, 4)}, {"c", Rational(2, 7)}, {"d", -3}}};
    out.push_back(std::move(t));
  }

  // Specializations in d.
  const std::vector<PochhammerFactor> hb_factors = {P(q(1, 2)),   P(d, 2),         P(1 - d, 2),
                                                    P(1, -3),     P(q(1, 2) + d, -1),
                                                    P(q(3, 2) - d, -1)};
  const std::vector<Bindings> d_samples = {{{"d", Rational(1, 3)}}, {{"d", Rational(1, 4)}},
                                           {{"d", Rational(1, 5)}}, {{"d", Rational(1, 6)}},
                                           {{"d", Rational(2, 5)}}};
  const auto d_check = [](const Bindings& bb) {
    require_not_integer(bb, "d");
    require_not_half_integer(bb, "d");
  };
  const Expr eq_b_poly = d - d * d + 2 * k + 5 * k * k;
  {
    Identity t;
    t.id = "eq-b";
    t.anchor = "(-1/4)^k (1/2)_k(d)_k^2(1-d)_k^2/((1)_k^3(1/2+d)_k(3/2-d)_k) (d-d^2+2k+5k^2)";
    t.lhs = pochhammer_series(q(-1, 4), hb_factors, eq_b_poly);
    t.rhs = {{tan_form(d), {}}};
    t.params = {{"d", "d and d-1/2 not integers"}};
    t.check = d_check;
    t.samples = d_samples;
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "eq-c";
    t.anchor = "d-derivative of eq-b divided by (1-2d): sec^2(d pi) - (2/pi) tan(d pi)/(1-2d)";
    t.lhs = pochhammer_series(
        q(-1, 4), hb_factors,
        eq_b_poly * (2 * paired_inner(d - 1, -d) - paired_inner(d - q(1, 2), q(1, 2) - d)) + 1);
    t.rhs = {{sec_tan_form(d), {}}};
    t.params = {{"d", "d and d-1/2 not integers"}};
    t.check = d_check;
    t.samples = d_samples;
    out.push_back(std::move(t));
  }
  const std::vector<PochhammerFactor> hbb_factors = {
      P(q(1, 2), 4),          P(d, 3),        P(1 - d, 3), P(1, -3, 2), P(q(1, 2) + d, -1, 2),
      P(q(3, 2) - d, -1, 2)};
  const Expr omega = 2 * k * (1 + 6 * k) +
                     (d + k) * (1 - d + k) * (2 - d + 3 * k) / (3 - 2 * d + 4 * k) +
                     (d + k) * pow(1 - d + k, 3) / ((1 + 2 * d + 4 * k) * (3 - 2 * d + 4 * k));
  const std::vector<Bindings> dd_samples = {{{"d", Rational(1, 3)}}, {{"d", Rational(1, 4)}}};
  {
    Identity t;
    t.id = "eq-bb";
    t.anchor = "(-1)^k (1/2)_k^4(d)_k^3(1-d)_k^3/((1)_2k^3(1/2+d)_2k(3/2-d)_2k) Omega_k(d)";
    t.lhs = pochhammer_series(-1, hbb_factors, omega);
    t.rhs = {{tan_form(d), {}}};
    t.params = {{"d", "d and d-1/2 not integers"}};
    t.check = d_check;
    t.samples = dd_samples;
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "eq-cc";
    t.anchor = "d-derivative of eq-bb divided by (1-2d)";
    t.lhs = pochhammer_series(
        -1, hbb_factors,
        omega * (3 * paired_inner(d - 1, -d) - paired_inner(d - q(1, 2), q(1, 2) - d, 2)) +
            Expr::derivative(omega, "d") / (1 - 2 * d));
    t.rhs = {{sec_tan_form(d), {}}};
    t.params = {{"d", "d and d-1/2 not integers"}};
    t.check = d_check;
    t.samples = dd_samples;
    out.push_back(std::move(t));
  }
  {
    Identity t;
    t.id = "lhopital-rule";
    t.anchor = "lim_{d->1/2} sec^2(d pi) - (2/pi) tan(d pi)/(1-2d) = 2/3";
    t.kind = IdentityKind::Limit;
    t.limit = LimitSpec{sec_tan_form(d), "d", Rational(1, 2), Rational(2, 3), 3, 8};
    t.check = no_check;
    t.samples = {{}};
    out.push_back(std::move(t));
  }

  std::sort(out.begin(), out.end(),
            [](const Identity& l, const Identity& r) { return l.id < r.id; });
  return out;
}

}  // namespace

std::string to_string(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::SeriesEqClosed: return "series_eq_closed";
    case IdentityKind::SeriesEqSeries: return "series_eq_series";
    case IdentityKind::Limit: return "limit";
  }
  return "?";
}

std::set<std::string> Identity::free_symbols() const {
  std::set<std::string> out;
  if (limit) return out;
  out = lhs.free_symbols();
  for (const auto& t : rhs) {
    auto f = t.factor.free_symbols();
    out.insert(f.begin(), f.end());
    if (t.series) {
      auto s = t.series->free_symbols();
      out.insert(s.begin(), s.end());
    }
  }
  if (alt_rhs) {
    auto f = alt_rhs->free_symbols();
    out.insert(f.begin(), f.end());
  }
  return out;
}

std::string Identity::constraints() const {
  if (params.empty()) return "-";
  std::string out;
  for (const auto& p : params) {
    if (!out.empty()) out += "; ";
    out += p.symbol + ": " + p.constraint;
  }
  return out;
}

const std::vector<Identity>& catalog() {
  static const std::vector<Identity> entries = build_catalog();
  return entries;
}

const Identity* find_identity(std::string_view id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

}  // namespace hgv
