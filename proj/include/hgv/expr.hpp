#pragma once

// Immutable expression trees over the summation index k, an inner index i,
// named parameters, and inner sums sum_{i=1}^{m k} f(i).
//
// Series weights (polynomial prefactors, the rational weight functions of
// the Chu transformations, harmonic-number combinations) are all Exprs.
// Evaluation is exact, over Rational or Dual<...> scalars.

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hgv/dual.hpp"

namespace hgv {

class Expr {
 public:
  enum class Op {
    Const,
    Symbol,
    Index,       // k
    InnerIndex,  // i, inside an inner-sum summand
    InnerSum,    // sum_{i=1}^{step*k} kids[0]
    Pochhammer,  // (kids[0])_{kids[1]}, kids[1] a nonnegative integer
    Derivative,  // d/d(name) kids[0]
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Pow,  // kids[0]^exponent
  };

  struct Node {
    Op op = Op::Const;
    Rational value;
    std::string name;
    unsigned step = 1;
    long exponent = 1;
    std::vector<Expr> kids;
  };

  Expr(long v);  // NOLINT(google-explicit-constructor)
  Expr(int v) : Expr(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Expr(Rational v);  // NOLINT(google-explicit-constructor)

  static Expr symbol(std::string name);
  static Expr index();
  static Expr inner_index();
  static Expr inner_sum(unsigned step, Expr summand);
  /// H_{step k}^(order)(offset) = sum_{i=1}^{step k} 1/(offset+i)^order.
  static Expr harmonic(unsigned order, Expr offset, unsigned step = 1);
  static Expr pochhammer(Expr x, Expr n);
  static Expr derivative(Expr e, std::string symbol);
  static Expr make_node(Node n);

  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator/(Expr a, Expr b);
  friend Expr operator-(Expr a);
  friend Expr pow(Expr a, long n);

  const Node& node() const { return *node_; }
  const Node* id() const { return node_.get(); }

  std::set<std::string> free_symbols() const;
  bool depends_on_index() const;
  /// Structural growth degree in k: index = 1, inner sums = 1 (they grow at
  /// most logarithmically), products add, quotients subtract, floored at 0.
  int k_degree() const;
  /// All distinct inner-sum nodes, in first-appearance order.
  std::vector<const Node*> inner_sums() const;
  std::string to_string() const;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Shorthand for p/q literals.
inline Expr q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return Expr(r);
}

template <class T>
using SymbolTable = std::vector<std::pair<std::string, T>>;

/// Values of the inner sums at the current k, keyed by node identity.
template <class T>
using InnerValues = std::vector<std::pair<const Expr::Node*, T>>;

template <class T>
struct Env {
  const SymbolTable<T>* symbols = nullptr;
  long index = 0;
  long inner_index = 0;
  /// Incrementally maintained inner sums; when null they are summed directly.
  const InnerValues<T>* inner = nullptr;
};

namespace detail {

template <class T>
const T& lookup(const SymbolTable<T>& table, const std::string& name) {
  for (const auto& [n, v] : table) {
    if (n == name) return v;
  }
  throw InstanceError("unbound symbol '" + name + "'");
}

template <class T, int Depth>
T eval_impl(const Expr& e, const Env<T>& env);

template <class T, int Depth>
T eval_inner_sum_direct(const Expr::Node& n, const Env<T>& env) {
  T sum = make_scalar<T>(Rational(0));
  Env<T> sub = env;
  sub.inner = nullptr;
  const long upper = static_cast<long>(n.step) * env.index;
  for (long i = 1; i <= upper; ++i) {
    sub.inner_index = i;
    sum = sum + eval_impl<T, Depth>(n.kids[0], sub);
  }
  return sum;
}

template <class T, int Depth>
T eval_impl(const Expr& e, const Env<T>& env) {
  const Expr::Node& n = e.node();
  switch (n.op) {
    case Expr::Op::Const:
      return make_scalar<T>(n.value);
    case Expr::Op::Symbol:
      if (env.symbols == nullptr) throw InstanceError("unbound symbol '" + n.name + "'");
      return lookup(*env.symbols, n.name);
    case Expr::Op::Index:
      return make_scalar<T>(Rational(env.index));
    case Expr::Op::InnerIndex:
      return make_scalar<T>(Rational(env.inner_index));
    case Expr::Op::InnerSum:
      if (env.inner != nullptr) {
        for (const auto& [node, v] : *env.inner) {
          if (node == e.id()) return v;
        }
      }
      return eval_inner_sum_direct<T, Depth>(n, env);
    case Expr::Op::Pochhammer: {
      T x = eval_impl<T, Depth>(n.kids[0], env);
      T m = eval_impl<T, Depth>(n.kids[1], env);
      const Rational& mv = value_part(m);
      if (!is_integer(mv) || sgn(mv) < 0 || !mv.get_num().fits_slong_p()) {
        throw InstanceError("Pochhammer length must be a nonnegative integer");
      }
      T out = make_scalar<T>(Rational(1));
      const T one = make_scalar<T>(Rational(1));
      for (long j = 0; j < mv.get_num().get_si(); ++j) {
        out = out * x;
        x = x + one;
      }
      return out;
    }
    case Expr::Op::Derivative: {
      if constexpr (Depth >= 2) {
        throw InstanceError("derivatives nested too deeply");
      } else {
        using D = Dual<T>;
        SymbolTable<D> lifted;
        if (env.symbols != nullptr) {
          for (const auto& [name, v] : *env.symbols) {
            lifted.emplace_back(name, D(v, make_scalar<T>(Rational(name == n.name ? 1 : 0))));
          }
        }
        Env<D> sub;
        sub.symbols = &lifted;
        sub.index = env.index;
        sub.inner_index = env.inner_index;
        return eval_impl<D, Depth + 1>(n.kids[0], sub).der;
      }
    }
    case Expr::Op::Add:
      return eval_impl<T, Depth>(n.kids[0], env) + eval_impl<T, Depth>(n.kids[1], env);
    case Expr::Op::Sub:
      return eval_impl<T, Depth>(n.kids[0], env) - eval_impl<T, Depth>(n.kids[1], env);
    case Expr::Op::Mul:
      return eval_impl<T, Depth>(n.kids[0], env) * eval_impl<T, Depth>(n.kids[1], env);
    case Expr::Op::Div:
      return sdiv(eval_impl<T, Depth>(n.kids[0], env), eval_impl<T, Depth>(n.kids[1], env));
    case Expr::Op::Neg:
      return -eval_impl<T, Depth>(n.kids[0], env);
    case Expr::Op::Pow:
      return spow(eval_impl<T, Depth>(n.kids[0], env), n.exponent);
  }
  throw std::logic_error("unknown Expr op");
}

}  // namespace detail

template <class T>
T eval(const Expr& e, const Env<T>& env) {
  return detail::eval_impl<T, 0>(e, env);
}

/// Evaluates a parameter-only expression (no k) under exact bindings.
Rational eval_params(const Expr& e, const SymbolTable<Rational>& symbols);

}  // namespace hgv
