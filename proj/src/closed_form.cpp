#include <functional>
#include <sstream>

#include "hgv/registry.hpp"

namespace hgv {

ClosedForm ClosedForm::make(Node n) { return ClosedForm(std::make_shared<const Node>(std::move(n))); }

ClosedForm::ClosedForm(Expr lit) {
  Node n;
  n.op = Op::Lit;
  n.lit = std::move(lit);
  node_ = std::make_shared<const Node>(std::move(n));
}

ClosedForm ClosedForm::constant(ConstantKind kind, Expr arg, Expr arg2, unsigned order) {
  Node n;
  n.op = Op::Const;
  n.kind = kind;
  n.arg = std::move(arg);
  n.arg2 = std::move(arg2);
  n.order = order;
  return make(std::move(n));
}

namespace {

ClosedForm::Node binary(ClosedForm::Op op, ClosedForm a, ClosedForm b) {
  ClosedForm::Node n;
  n.op = op;
  n.kids = {std::move(a), std::move(b)};
  return n;
}

SymbolTable<Rational> table(const Bindings& b) { return {b.begin(), b.end()}; }

ConstantName bind_constant(const ClosedForm::Node& n, const SymbolTable<Rational>& symbols) {
  ConstantName c;
  c.kind = n.kind;
  c.arg = eval_params(n.arg, symbols);
  c.arg2 = eval_params(n.arg2, symbols);
  c.order = n.order;
  return c;
}

}  // namespace

ClosedForm operator+(ClosedForm a, ClosedForm b) {
  return ClosedForm::make(binary(ClosedForm::Op::Add, std::move(a), std::move(b)));
}
ClosedForm operator-(ClosedForm a, ClosedForm b) {
  return ClosedForm::make(binary(ClosedForm::Op::Sub, std::move(a), std::move(b)));
}
ClosedForm operator*(ClosedForm a, ClosedForm b) {
  return ClosedForm::make(binary(ClosedForm::Op::Mul, std::move(a), std::move(b)));
}
ClosedForm operator/(ClosedForm a, ClosedForm b) {
  return ClosedForm::make(binary(ClosedForm::Op::Div, std::move(a), std::move(b)));
}
ClosedForm operator-(ClosedForm a) {
  ClosedForm::Node n;
  n.op = ClosedForm::Op::Neg;
  n.kids.push_back(std::move(a));
  return ClosedForm::make(std::move(n));
}
ClosedForm pow(ClosedForm a, long e) {
  ClosedForm::Node n;
  n.op = ClosedForm::Op::Pow;
  n.exponent = e;
  n.kids.push_back(std::move(a));
  return ClosedForm::make(std::move(n));
}

std::set<std::string> ClosedForm::free_symbols() const {
  std::set<std::string> out;
  std::function<void(const ClosedForm&)> walk = [&](const ClosedForm& f) {
    const Node& n = f.node();
    for (const Expr* e : {&n.lit, &n.arg, &n.arg2}) {
      auto s = e->free_symbols();
      out.insert(s.begin(), s.end());
    }
    for (const auto& kid : n.kids) walk(kid);
  };
  walk(*this);
  return out;
}

bool ClosedForm::uses(ConstantKind kind) const {
  const Node& n = node();
  if (n.op == Op::Const && n.kind == kind) return true;
  for (const auto& kid : n.kids) {
    if (kid.uses(kind)) return true;
  }
  return false;
}

std::optional<Rational> ClosedForm::try_exact(const Bindings& bindings) const {
  const Node& n = node();
  const auto symbols = table(bindings);
  switch (n.op) {
    case Op::Lit:
      return eval_params(n.lit, symbols);
    case Op::Const: {
      const ConstantName c = bind_constant(n, symbols);
      c.check_domain();
      if (c.kind == ConstantKind::Log && c.arg == 1) return Rational(0);
      return std::nullopt;
    }
    case Op::Neg: {
      auto v = n.kids[0].try_exact(bindings);
      if (!v) return std::nullopt;
      return Rational(-*v);
    }
    case Op::Pow: {
      auto v = n.kids[0].try_exact(bindings);
      if (!v) return std::nullopt;
      if (n.exponent < 0 && sgn(*v) == 0) throw DomainError("zero to a negative power");
      return pow(*v, n.exponent);
    }
    default:
      break;
  }
  auto a = n.kids[0].try_exact(bindings);
  auto b = n.kids[1].try_exact(bindings);
  if (!a || !b) return std::nullopt;
  switch (n.op) {
    case Op::Add: return Rational(*a + *b);
    case Op::Sub: return Rational(*a - *b);
    case Op::Mul: return Rational(*a * *b);
    case Op::Div:
      if (sgn(*b) == 0) throw DomainError("division by zero in closed form");
      return Rational(*a / *b);
    default: break;
  }
  return std::nullopt;
}

Approx ClosedForm::eval_prec(const Bindings& bindings, Precision prec) const {
  const Node& n = node();
  switch (n.op) {
    case Op::Lit:
      return to_approx(eval_params(n.lit, table(bindings)), prec);
    case Op::Const:
      return constant_prec(bind_constant(n, table(bindings)), prec);
    case Op::Neg:
      return -n.kids[0].eval_prec(bindings, prec);
    case Op::Pow:
      return pow_int(n.kids[0].eval_prec(bindings, prec), n.exponent);
    default:
      break;
  }
  const Approx a = n.kids[0].eval_prec(bindings, prec);
  const Approx b = n.kids[1].eval_prec(bindings, prec);
  switch (n.op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return a / b;
    default: break;
  }
  throw std::logic_error("unknown ClosedForm op");
}

std::string ClosedForm::to_string() const {
  const Node& n = node();
  auto paren = [](const ClosedForm& f) { return "(" + f.to_string() + ")"; };
  switch (n.op) {
    case Op::Lit:
      return n.lit.to_string();
    case Op::Const: {
      switch (n.kind) {
        case ConstantKind::Pi: return "pi";
        case ConstantKind::Catalan: return "G";
        case ConstantKind::GammaQuarter: return "Gamma(1/4)";
        case ConstantKind::SqrtPi: return "sqrt(pi)";
        case ConstantKind::Sqrt: return "sqrt(" + n.arg.to_string() + ")";
        case ConstantKind::Log: return "log(" + n.arg.to_string() + ")";
        case ConstantKind::Gamma: return "Gamma(" + n.arg.to_string() + ")";
        case ConstantKind::Polygamma:
          return "psi^(" + std::to_string(n.order) + ")(" + n.arg.to_string() + ")";
        case ConstantKind::SinPi: return "sin(pi*" + n.arg.to_string() + ")";
        case ConstantKind::CosPi: return "cos(pi*" + n.arg.to_string() + ")";
        case ConstantKind::TanPi: return "tan(pi*" + n.arg.to_string() + ")";
        case ConstantKind::RatPow:
          return "(" + n.arg.to_string() + ")^(" + n.arg2.to_string() + ")";
      }
      return "?";
    }
    case Op::Add: return paren(n.kids[0]) + "+" + paren(n.kids[1]);
    case Op::Sub: return paren(n.kids[0]) + "-" + paren(n.kids[1]);
    case Op::Mul: return paren(n.kids[0]) + "*" + paren(n.kids[1]);
    case Op::Div: return paren(n.kids[0]) + "/" + paren(n.kids[1]);
    case Op::Neg: return "-" + paren(n.kids[0]);
    case Op::Pow: return paren(n.kids[0]) + "^" + std::to_string(n.exponent);
  }
  return "?";
}

Approx evaluate_closed_form(const ClosedForm& form, const Bindings& bindings, long digits) {
  if (auto exact = form.try_exact(bindings)) {
    return evaluate_to_digits(digits, [&](Precision p) { return to_approx(*exact, p); });
  }
  return evaluate_to_digits(digits, [&](Precision p) { return form.eval_prec(bindings, p); });
}

}  // namespace hgv
