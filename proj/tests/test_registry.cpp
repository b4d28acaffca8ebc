#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "hgv/registry.hpp"
#include "hgv/report.hpp"
#include "support.hpp"

using namespace hgv;
using testing::close;

namespace {

const Identity& get(const char* id) {
  const Identity* found = find_identity(id);
  REQUIRE(found != nullptr);
  return *found;
}

void same_terms(const TermSpec& a, const Bindings& ba, const TermSpec& b, const Bindings& bb) {
  for (long j = 0; j < 100; ++j) {
    if (term(a, j, ba) != term(b, j, bb)) {
      FAIL("terms differ at k = " << j);
      return;
    }
  }
}

Approx rhs_value(const Identity& id, const Bindings& b, long digits) {
  REQUIRE(id.rhs.size() == 1);
  REQUIRE_FALSE(id.rhs.front().series);
  return evaluate_closed_form(id.rhs.front().factor, b, digits);
}

}  // namespace

TEST_CASE("catalog contents") {
  const auto& all = catalog();
  CHECK(all.size() >= 25);
  for (const char* id : {"thm1.1-a", "thm1.1-b", "thm1.1-c", "thm1.1-d", "thm1.1-e", "thm1.2",
                         "thm1.3-a", "thm1.3-b", "guillera-a", "guillera-b", "thm2-o", "thm2-p",
                         "thm2-q", "thm2-r", "dougall-5f4", "chu-thm9", "chu-thm32", "eq-b", "eq-c",
                         "eq-bb", "eq-cc", "bailey-b", "bailey-c", "thm3.2", "lhopital-rule"}) {
    CHECK_MESSAGE(find_identity(id) != nullptr, id);
  }
  CHECK(find_identity("nope") == nullptr);
  CHECK(std::is_sorted(all.begin(), all.end(),
                       [](const Identity& l, const Identity& r) { return l.id < r.id; }));
  std::set<std::string> ids;
  for (const auto& id : all) ids.insert(id.id);
  CHECK(ids.size() == all.size());
}

TEST_CASE("declared parameters are exactly the free symbols") {
  for (const auto& id : catalog()) {
    std::set<std::string> declared;
    for (const auto& p : id.params) declared.insert(p.symbol);
    CHECK_MESSAGE(declared == id.free_symbols(), id.id);
    CHECK_MESSAGE(!id.samples.empty(), id.id);
    if (id.terminating_param) CHECK(declared.count(*id.terminating_param) == 1);
  }
}

TEST_CASE("parametric families specialize to the fixed series") {
  const Identity& q2 = get("thm2-q");
  const std::vector<std::pair<long, const char*>> picks = {
      {-192, "thm1.1-b"}, {-4032, "thm1.1-c"}, {72, "thm1.1-d"}, {576, "thm1.1-e"}};
  for (const auto& [x, fixed] : picks) {
    const Bindings b = {{"x", x}};
    same_terms(q2.lhs, b, get(fixed).lhs, {});
    same_terms(*q2.rhs.front().series, b, *get(fixed).rhs.front().series, {});
    CHECK(close(evaluate_closed_form(q2.rhs.front().factor, b, 40),
                evaluate_closed_form(get(fixed).rhs.front().factor, {}, 40), 40));
  }
  same_terms(get("thm2-p").lhs, {{"x", -216}}, get("thm1.1-a").lhs, {});
  same_terms(get("bailey-c").lhs, {{"b", 1}}, get("thm1.2").lhs, {});
  same_terms(get("bailey-c").lhs, {{"b", 2}}, get("thm3.2").lhs, {});
}

TEST_CASE("bailey-c at b = 1, 2 reproduces the fixed closed forms") {
  const long d = 40;
  CHECK(close(rhs_value(get("bailey-c"), {{"b", 1}}, d), rhs_value(get("thm1.2"), {}, d), d));
  CHECK(close(rhs_value(get("bailey-c"), {{"b", 2}}, d), rhs_value(get("thm3.2"), {}, d), d));
}

TEST_CASE("closed form evaluation") {
  const Approx l = evaluate_closed_form(ClosedForm::log(q(8, 9)), {}, 40);
  CHECK(l.value.sign() < 0);
  const Approx diff = evaluate_closed_form(ClosedForm::log(8), {}, 40) -
                      evaluate_closed_form(ClosedForm::log(9), {}, 40);
  CHECK(close(l, diff, 40));

  const ClosedForm pi = ClosedForm::pi();
  CHECK(close(evaluate_closed_form(pow(pi, 2) - 8 * ClosedForm::catalan(), {}, 40),
              polygamma(1, Rational(1, 4) * 3, 40), 39));

  const Expr d = Expr::symbol("d");
  const ClosedForm tan_form = (1 - 2 * d) * ClosedForm::tan_pi(d) / pi;
  const Approx direct =
      elem(ElemFn::TanPi, Rational(1, 3), 40) * Rational(1, 3) / constant(ConstantName::pi(), 40);
  CHECK(close(evaluate_closed_form(tan_form, {{"d", Rational(1, 3)}}, 40), direct, 39));

  CHECK_FALSE(get("thm1.2").alt_rhs->uses(ConstantKind::Catalan));
  CHECK_FALSE(get("thm3.2").alt_rhs->uses(ConstantKind::Catalan));
  CHECK(get("thm1.2").rhs.front().factor.uses(ConstantKind::Catalan));
}

TEST_CASE("verify examples") {
  const VerificationReport a = verify("thm1.1-a", {}, 30);
  CHECK(a.status == Status::Ok);
  CHECK(a.residual <= BigFloat::ten_pow_neg_down(30));
  CHECK(a.terms_used > 0);

  const VerificationReport c = verify("thm2-q", {{"x", 8}}, 30);
  CHECK(c.status == Status::ConvergenceError);
  CHECK_FALSE(c.message.empty());

  const VerificationReport dg =
      verify("dougall-5f4", {{"a", Rational(1, 2)}, {"b", -3}, {"c", Rational(1, 3)}, {"d", Rational(1, 5)}}, 30);
  CHECK(dg.status == Status::Ok);
  CHECK(dg.exact);
  CHECK(dg.residual.is_zero());

  CHECK(verify("eq-b", {{"d", Rational(1, 2)}}, 20).status == Status::DomainError);
  CHECK(verify("dougall-5f4", {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}, {"c", Rational(1, 3)},
                               {"d", Rational(1, 5)}}, 20)
            .status == Status::DomainError);
  CHECK_THROWS_AS(verify("nope", {}, 20), std::invalid_argument);
  CHECK_THROWS_AS(verify("thm2-q", {{"y", 3}}, 20), std::invalid_argument);
  CHECK_THROWS_AS(verify("euler-transform", {{"a", 1}}, 20), std::invalid_argument);
}

TEST_CASE("terminating instances with a pole before the terminating index are rejected") {
  // (a/2)_k vanishes at k = 2 while (1 + a/2)_k truncates the sum at k = 1.
  const Bindings masked = {{"a", -2}, {"b", -5}, {"c", Rational(5, 6)}, {"d", Rational(-5, 3)}};
  CHECK(verify("dougall-5f4", masked, 30).status == Status::DomainError);
  CHECK(verify("dougall-5f4", {{"a", 0}, {"b", -4}, {"c", -2}, {"d", -4}}, 30).status ==
        Status::DomainError);
  // An extra numerator zero with no denominator pole is fine.
  CHECK(verify("dougall-5f4", {{"a", Rational(1, 2)}, {"b", -5}, {"c", -2}, {"d", Rational(1, 5)}}, 30)
            .status == Status::Ok);
}

TEST_CASE("alternate right-hand sides are checked") {
  for (const char* id : {"thm1.2", "thm3.2"}) {
    const VerificationReport r = verify(id, {}, 40);
    CHECK(r.status == Status::Ok);
    REQUIRE(r.alt_residual);
    CHECK(*r.alt_residual <= BigFloat::ten_pow_neg_down(40));
  }
}

TEST_CASE("the (1-a)_k reading of the x -> 1/x form fails numerically") {
  const Identity& t = get("wei-t");
  const Bindings b = {{"a", Rational(1, 3)}, {"b", Rational(1, 5)}, {"x", 7}};
  CHECK(verify(t, b, 45).status == Status::Ok);

  const Expr a = Expr::symbol("a"), b_sym = Expr::symbol("b"), x = Expr::symbol("x");
  TermSpec alt_rhs = *t.rhs.front().series;
  alt_rhs.pochhammers = {{a, 1, 1}, {1 - a, 1, 1}, {1, 1, -1}, {a + b_sym, 1, -1}};
  const Approx lhs = sum_to_digits(t.lhs, b, 30).value;
  const Approx rhs = evaluate_closed_form(ClosedForm::log(x / (x - 1)), b, 30) *
                     sum_to_digits(alt_rhs, b, 30).value;
  CHECK(abs_difference(lhs, rhs) > BigFloat::ten_pow_neg_down(5));
}

TEST_CASE("sweeps") {
  const Identity& q2 = get("thm2-q");
  const auto r = sweep(q2, "x", {-192, -4032, 72, 576}, 30);
  REQUIRE(r.size() == 4);
  for (const auto& rep : r) CHECK(rep.status == Status::Ok);

  CHECK(sweep(get("thm2-p"), "x", {-216}, 30).front().status == Status::Ok);

  const auto slow = sweep(get("thm2-o"), "x", {17}, 30);
  CHECK(slow.front().status == Status::Ok);
  CHECK(slow.front().terms_used > 1000);

  const auto mixed = sweep(q2, "x", {-192, 8, 72}, 30);
  CHECK(mixed[0].status == Status::Ok);
  CHECK(mixed[1].status == Status::ConvergenceError);
  CHECK(mixed[2].status == Status::Ok);

  CHECK_THROWS_AS(sweep(q2, "y", {1}, 30), std::invalid_argument);
}

TEST_CASE("ok at d digits stays ok at d - 5") {
  for (const auto& id : catalog()) {
    if (id.limit) continue;
    const Bindings& b = id.samples.front();
    const VerificationReport hi = verify(id, b, 30);
    if (hi.status != Status::Ok) continue;
    CHECK_MESSAGE(verify(id, b, 25).status == Status::Ok, id.id);
  }
}

TEST_CASE("d-families") {
  for (const char* id : {"eq-b", "eq-c"}) {
    for (const Rational& d : {Rational(1, 3), Rational(1, 4), Rational(1, 5), Rational(1, 6), Rational(2, 5)}) {
      CHECK_MESSAGE(verify(id, {{"d", d}}, 30).status == Status::Ok, id);
    }
  }
  for (const char* id : {"eq-bb", "eq-cc"}) {
    for (const Rational& d : {Rational(1, 3), Rational(1, 4)}) {
      CHECK_MESSAGE(verify(id, {{"d", d}}, 25).status == Status::Ok, id);
    }
  }
}

TEST_CASE("limit probes approach the limit") {
  const LimitSpec& spec = *get("lhopital-rule").limit;
  const auto points = limit_sequence(spec, 20);
  REQUIRE(points.size() == 12);
  for (std::size_t j = 1; j < points.size(); ++j) {
    if (points[j].side != points[j - 1].side) continue;
    CHECK(points[j].error < points[j - 1].error);
  }
  const VerificationReport r = verify("lhopital-rule", {}, 30);
  CHECK(r.status == Status::Ok);
  CHECK(r.digits == 8);
}

TEST_CASE("verify-all in parallel matches the serial run") {
  const auto par = verify_all(30);
  const auto ser = verify_all_serial(30);
  REQUIRE(par.size() == ser.size());
  for (std::size_t j = 0; j < par.size(); ++j) {
    CHECK(par[j].id == ser[j].id);
    CHECK(par[j].bindings == ser[j].bindings);
    CHECK_MESSAGE(par[j].status == Status::Ok, par[j].id);
    CHECK(par[j].status == ser[j].status);
    CHECK(par[j].lhs.value.to_fixed(30) == ser[j].lhs.value.to_fixed(30));
  }
}

TEST_CASE("JSON records round-trip") {
  for (const auto& rep : verify_all(20)) {
    const ReportRecord rec = make_record(rep);
    const std::string text = nlohmann::json(rec).dump();
    CHECK(nlohmann::json::parse(text).get<ReportRecord>() == rec);
    CHECK(parse_status(rec.status) == rep.status);
  }
  const ReportRecord c = make_record(supercongruence_record(2, 11));
  CHECK(nlohmann::json::parse(nlohmann::json(c).dump()).get<ReportRecord>() == c);
  CHECK(c.id == "supercongruence-2");
  CHECK(c.status == "holds");
}

TEST_CASE("registry export") {
  const nlohmann::json j = export_registry();
  REQUIRE(j.is_array());
  CHECK(j.size() == catalog().size());
  CHECK(j[0]["id"] == catalog().front().id);
  bool has_thm12 = false;
  for (const auto& e : j) has_thm12 = has_thm12 || e["id"] == "thm1.2";
  CHECK(has_thm12);
}
