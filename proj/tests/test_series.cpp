#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgv/registry.hpp"
#include "hgv/series.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace hgv;
using testing::agrees;
using testing::random_in;
using testing::uniform;

namespace {

const Expr k = Expr::index();
using P = PochhammerFactor;

const TermSpec& lhs_of(const char* id) {
  const Identity* found = find_identity(id);
  REQUIRE(found != nullptr);
  return found->lhs;
}

TermSpec poch(Expr base, std::vector<PochhammerFactor> f, Expr weight = 1) {
  TermSpec s;
  s.base = std::move(base);
  s.pochhammers = std::move(f);
  s.weight = std::move(weight);
  return s;
}

Rational dougall_closed(const Rational& a, long n, const Rational& c, const Rational& d) {
  return pochhammer(Rational(1 + a), n) * pochhammer(Rational(1 + a - c - d), n) /
         (pochhammer(Rational(1 + a - c), n) * pochhammer(Rational(1 + a - d), n));
}

}  // namespace

TEST_CASE("term examples") {
  const TermSpec& w = lhs_of("thm1.2");
  CHECK(term(w, 0, {}) == 0);
  CHECK(term(w, 1, {}) == Rational(1, 8));
  CHECK(term(lhs_of("guillera-a"), 0, {}) == 1);
  CHECK(term(lhs_of("guillera-a"), 1, {}) == Rational(-29, 128));
  CHECK_THROWS_AS(term(lhs_of("thm2-o"), 1, {}), InstanceError);
}

TEST_CASE("term agrees with the incremental sum") {
  const Bindings b = {{"x", -216}};
  const TermSpec& s = lhs_of("thm2-p");
  Rational acc = 0;
  for (long j = 0; j < 30; ++j) acc += term(s, j, b);
  CHECK(brute_force_sum(s, b, 29) == acc);
}

TEST_CASE("terminating sums") {
  const Rational a(1, 2), c(1, 3), d(1, 5);
  const Bindings b = {{"a", a}, {"b", -2}, {"c", c}, {"d", d}};
  const TermSpec& s = lhs_of("dougall-5f4");
  REQUIRE(termination_index(s, b) == 2);
  const ExactSum e = sum_terminating(s, b);
  CHECK(e.value == dougall_closed(a, 2, c, d));
  CHECK(e.terms_used == 3);

  // Hand-rolled brute force of the three terms.
  Rational hand = 0;
  for (unsigned long j = 0; j <= 2; ++j) {
    hand += (a + 2 * j) / a * pochhammer(a, j) * pochhammer(Rational(-2), j) * pochhammer(c, j) *
            pochhammer(d, j) /
            (pochhammer(Rational(1), j) * pochhammer(Rational(1 + a + 2), j) *
             pochhammer(Rational(1 + a - c), j) * pochhammer(Rational(1 + a - d), j));
  }
  CHECK(hand == e.value);

  const TermSpec zero = poch(Rational(3, 7), {P{0}, P{Rational(1, 2), 1, -1}}, k + 5);
  CHECK(termination_index(zero, {}) == 0);
  CHECK(sum_terminating(zero, {}).value == 5);

  CHECK_THROWS_AS(sum_terminating(lhs_of("thm2-o"), {{"x", 32}}), ConvergenceError);
}

TEST_CASE("Chu transformation with c = -3 holds exactly") {
  const Identity& id = *find_identity("chu-thm9");
  for (int t = 0; t < 10; ++t) {
    Bindings b = {{"a", random_in(1, 5, 7)}, {"b", random_in(0, 1, 7)}, {"c", -3},
                  {"d", random_in(0, 1, 7)}, {"e", random_in(0, 1, 7)}};
    const Rational lhs = sum_terminating(id.lhs, b).value;
    const Rational rhs = sum_terminating(*id.rhs.front().series, b).value;
    CHECK(lhs == rhs);
    CHECK(lhs == brute_force_sum(id.lhs, b, 3));
  }
}

TEST_CASE("convergence rates") {
  const RatioInfo r = ratio_info(lhs_of("thm2-o"), {{"x", 32}});
  CHECK(r.limit == Rational(1, 2));
  const SumResult s = sum_to_digits(lhs_of("thm2-o"), {{"x", 32}}, 30);
  CHECK(s.value.within_digits(30));
  CHECK_THROWS_AS(sum_to_digits(lhs_of("thm2-o"), {{"x", 8}}, 30), ConvergenceError);
  CHECK_THROWS_AS(ratio_info(lhs_of("thm2-o"), {{"x", 16}}), ConvergenceError);

  const Bindings d = {{"d", Rational(1, 3)}};
  CHECK(ratio_info(lhs_of("eq-bb"), d).limit == Rational(1, 1024));
  const SumResult bb = sum_to_digits(lhs_of("eq-bb"), d, 30);
  CHECK(bb.terms_used < 40);
  CHECK(bb.value.within_digits(30));
}

TEST_CASE("sum against an independent oracle") {
  // sum (1/2)^k (1)_k/(2)_k = sum (1/2)^k/(k+1) = 2 log 2
  const TermSpec s = poch(q(1, 2), {P{1}, P{2, 1, -1}});
  const SumResult r = sum_to_digits(s, {}, 60);
  CHECK(r.value.within_digits(60));
  CHECK(agrees(r.value, oracle::kTwoLog2, 60));
  CHECK(to_rational(r.tail_bound) > 0);
  CHECK_FALSE(r.exact);
}

TEST_CASE("derivative series") {
  const Identity& euler = *find_identity("euler-transform");
  const Bindings b = euler.samples.front();
  const SumResult der = derivative_series(euler.lhs, b, "a", 20);
  const Rational h = Rational(1, 10000000000L);
  Bindings up = b, down = b;
  up["a"] += h;
  down["a"] -= h;
  const Approx fu = sum_to_digits(euler.lhs, up, 30).value;
  const Approx fd = sum_to_digits(euler.lhs, down, 30).value;
  const Approx fd_quot = (fu - fd) * Rational(1 / (2 * h));
  CHECK(abs_difference(der.value, fd_quot) <= BigFloat::ten_pow_neg_up(9));

  const SumResult none = derivative_series(euler.lhs, b, "zz", 20);
  CHECK(none.value.value.is_zero());
  CHECK(none.value.is_exact());

  // d/da sum (a)_k z^k/(1)_k at a = 1 equals sum H_k z^k
  const Expr a = Expr::symbol("a");
  const TermSpec geo = poch(q(1, 2), {P{a}, P{1, 1, -1}});
  const TermSpec harm = poch(q(1, 2), {}, Expr::harmonic(1, 0));
  const SumResult dg = derivative_series(geo, {{"a", 1}}, "a", 40);
  const SumResult hs = sum_to_digits(harm, {}, 40);
  CHECK(testing::agree_to(dg.value, hs.value, 40));
  CHECK(agrees(hs.value, oracle::kTwoLog2, 40));
}

TEST_CASE("sum_terminating matches brute force on 200 random instances") {
  const Expr a = Expr::symbol("a"), b = Expr::symbol("b"), c = Expr::symbol("c");
  const std::vector<TermSpec> shapes = {
      poch(Expr::symbol("z"), {P{a}, P{b}, P{1, 1, -1}, P{c, 1, -1}}),
      poch(Expr::symbol("z"), {P{a}, P{b, 2}, P{1, 1, -1}, P{c, 1, -1}}, k + b),
      poch(Expr::symbol("z"), {P{a}, P{b}, P{1, 1, -1}, P{c, 1, -2}}, Expr::harmonic(1, b)),
      poch(Expr::symbol("z"), {P{a}, P{1, 1, -1}}, Expr::harmonic(2, c, 2) - k * k)};
  for (int t = 0; t < 200; ++t) {
    const TermSpec& s = shapes[t % shapes.size()];
    const long n = uniform(0, 12);
    const Bindings bind = {{"a", -n}, {"b", random_in(0, 4, 9)}, {"c", random_in(0, 4, 9)},
                           {"z", testing::random_rational(9, 9)}};
    const ExactSum e = sum_terminating(s, bind);
    CHECK(e.value == brute_force_sum(s, bind, n));
  }
}

TEST_CASE("re-evaluation with more digits stays inside the first enclosure") {
  struct Family {
    const char* id;
    std::function<Bindings()> draw;
  };
  const std::vector<Family> families = {
      {"thm2-o", [] { return Bindings{{"x", random_in(17, 400, 5) * (uniform(0, 1) ? 1 : -1)}}; }},
      {"thm2-q", [] { return Bindings{{"x", random_in(65, 900, 7) * (uniform(0, 1) ? 1 : -1)}}; }},
      {"thm2-r", [] { return Bindings{{"x", random_in(433, 3000, 3) * (uniform(0, 1) ? 1 : -1)}}; }},
      {"euler-transform",
       [] {
         return Bindings{{"a", random_in(0, 3, 7)}, {"b", random_in(0, 3, 7)},
                         {"c", random_in(1, 4, 5)}, {"x", random_in(-1, 1, 6)}};
       }},
      {"eq-b", [] { return Bindings{{"d", random_in(0, 1, 9) / 2 + Rational(1, 100)}}; }},
  };
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    const Family& f = families[t % families.size()];
    const Bindings b = f.draw();
    const long digits = uniform(10, 30);
    SumResult first;
    try {
      first = sum_to_digits(lhs_of(f.id), b, digits);
    } catch (const InstanceError&) {
      continue;
    }
    const SumResult second = sum_to_digits(lhs_of(f.id), b, digits + 10);
    CHECK(abs_difference(first.value, second.value) <=
          add_up(first.value.abs_err, second.value.abs_err));
    CHECK(first.value.within_digits(digits));
    ++checked;
  }
  CHECK(checked > 450);
}

TEST_CASE("tail bounds dominate the true tail") {
  const std::vector<std::pair<const char*, std::function<Bindings()>>> families = {
      {"thm2-q", [] { return Bindings{{"x", random_in(300, 5000, 3) * (uniform(0, 1) ? 1 : -1)}}; }},
      {"thm1.2", [] { return Bindings{}; }},
      {"guillera-a", [] { return Bindings{}; }},
      {"eq-bb", [] { return Bindings{{"d", random_in(0, 1, 7) / 2 + Rational(1, 50)}}; }},
  };
  for (int t = 0; t < 100; ++t) {
    const auto& [id, draw] = families[t % families.size()];
    const Bindings b = draw();
    const SumResult r = sum_to_digits(lhs_of(id), b, uniform(8, 20));
    REQUIRE(r.terms_used > 0);
    const Rational extended = brute_force_sum(lhs_of(id), b, 10 * r.terms_used);
    const Rational tail = abs(Rational(extended - r.partial));
    CHECK(tail <= to_rational(r.tail_bound));
  }
}
