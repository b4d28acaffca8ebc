#include "hgv/expr.hpp"

#include <algorithm>
#include <functional>

namespace hgv {

Expr Expr::make_node(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr::Expr(long v) : Expr(Rational(v)) {}

Expr::Expr(Rational v) {
  Node n;
  n.op = Op::Const;
  n.value = std::move(v);
  node_ = std::make_shared<const Node>(std::move(n));
}

Expr Expr::symbol(std::string name) {
  Node n;
  n.op = Op::Symbol;
  n.name = std::move(name);
  return make_node(std::move(n));
}

Expr Expr::index() {
  Node n;
  n.op = Op::Index;
  return make_node(std::move(n));
}

Expr Expr::inner_index() {
  Node n;
  n.op = Op::InnerIndex;
  return make_node(std::move(n));
}

Expr Expr::inner_sum(unsigned step, Expr summand) {
  Node n;
  n.op = Op::InnerSum;
  n.step = step;
  n.kids.push_back(std::move(summand));
  return make_node(std::move(n));
}

Expr Expr::harmonic(unsigned order, Expr offset, unsigned step) {
  return inner_sum(step, pow(std::move(offset) + inner_index(), -static_cast<long>(order)));
}

Expr Expr::pochhammer(Expr x, Expr len) {
  Node n;
  n.op = Op::Pochhammer;
  n.kids = {std::move(x), std::move(len)};
  return make_node(std::move(n));
}

Expr Expr::derivative(Expr e, std::string symbol) {
  Node n;
  n.op = Op::Derivative;
  n.name = std::move(symbol);
  n.kids.push_back(std::move(e));
  return make_node(std::move(n));
}

namespace {

Expr binary(Expr::Op op, Expr a, Expr b) {
  Expr::Node n;
  n.op = op;
  n.kids = {std::move(a), std::move(b)};
  return Expr::make_node(std::move(n));
}

}  // namespace

Expr operator+(Expr a, Expr b) { return binary(Expr::Op::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return binary(Expr::Op::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return binary(Expr::Op::Mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return binary(Expr::Op::Div, std::move(a), std::move(b)); }

Expr operator-(Expr a) {
  Expr::Node n;
  n.op = Expr::Op::Neg;
  n.kids.push_back(std::move(a));
  return Expr::make_node(std::move(n));
}

Expr pow(Expr a, long e) {
  Expr::Node n;
  n.op = Expr::Op::Pow;
  n.exponent = e;
  n.kids.push_back(std::move(a));
  return Expr::make_node(std::move(n));
}

std::set<std::string> Expr::free_symbols() const {
  std::set<std::string> out;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    if (e.node().op == Op::Symbol) out.insert(e.node().name);
    for (const auto& kid : e.node().kids) walk(kid);
  };
  walk(*this);
  return out;
}

bool Expr::depends_on_index() const {
  const Node& n = node();
  if (n.op == Op::Index || n.op == Op::InnerSum) return true;
  return std::any_of(n.kids.begin(), n.kids.end(),
                     [](const Expr& k) { return k.depends_on_index(); });
}

int Expr::k_degree() const {
  const Node& n = node();
  switch (n.op) {
    case Op::Const:
    case Op::Symbol:
    case Op::InnerIndex:
    case Op::Pochhammer:
      return 0;
    case Op::Index:
    case Op::InnerSum:
      return 1;
    case Op::Derivative:
    case Op::Neg:
      return n.kids[0].k_degree();
    case Op::Add:
    case Op::Sub:
      return std::max(n.kids[0].k_degree(), n.kids[1].k_degree());
    case Op::Mul:
      return n.kids[0].k_degree() + n.kids[1].k_degree();
    case Op::Div:
      return std::max(0, n.kids[0].k_degree() - n.kids[1].k_degree());
    case Op::Pow:
      return n.exponent > 0 ? static_cast<int>(n.exponent) * n.kids[0].k_degree() : 0;
  }
  return 0;
}

std::vector<const Expr::Node*> Expr::inner_sums() const {
  std::vector<const Node*> out;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    if (e.node().op == Op::InnerSum) {
      if (std::find(out.begin(), out.end(), e.id()) == out.end()) out.push_back(e.id());
      return;
    }
    // Derivative subtrees are evaluated directly; their inner sums are not cached.
    if (e.node().op == Op::Derivative) return;
    for (const auto& kid : e.node().kids) walk(kid);
  };
  walk(*this);
  return out;
}

std::string Expr::to_string() const {
  const Node& n = node();
  auto paren = [](const Expr& e) { return "(" + e.to_string() + ")"; };
  switch (n.op) {
    case Op::Const: return n.value.get_str();
    case Op::Symbol: return n.name;
    case Op::Index: return "k";
    case Op::InnerIndex: return "i";
    case Op::InnerSum:
      return "sum[i=1.." + (n.step == 1 ? std::string("k") : std::to_string(n.step) + "k") +
             "]" + paren(n.kids[0]);
    case Op::Pochhammer: return paren(n.kids[0]) + "_" + paren(n.kids[1]);
    case Op::Derivative: return "D_" + n.name + paren(n.kids[0]);
    case Op::Add: return paren(n.kids[0]) + "+" + paren(n.kids[1]);
    case Op::Sub: return paren(n.kids[0]) + "-" + paren(n.kids[1]);
    case Op::Mul: return paren(n.kids[0]) + "*" + paren(n.kids[1]);
    case Op::Div: return paren(n.kids[0]) + "/" + paren(n.kids[1]);
    case Op::Neg: return "-" + paren(n.kids[0]);
    case Op::Pow: return paren(n.kids[0]) + "^" + std::to_string(n.exponent);
  }
  return "?";
}

Rational eval_params(const Expr& e, const SymbolTable<Rational>& symbols) {
  if (e.depends_on_index()) throw InstanceError("parameter expression depends on k");
  Env<Rational> env;
  env.symbols = &symbols;
  return eval(e, env);
}

}  // namespace hgv
