#include <cctype>
#include <cstring>

#include "bubbles/certificates.hpp"

namespace bubbles {

enum class Op { Rat, Pi, Var, Add, Sub, Mul, Div, Sqrt };

struct ExprNode {
  Op op = Op::Rat;
  std::int64_t num = 0, den = 1;
  Expr a, b;
};

Expr rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("DomainError", "rational with zero denominator");
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Rat;
  n->num = num;
  n->den = den;
  return n;
}

Expr dec(const char* decimal) {
  // parse [-]digits[.digits] into an exact rational
  const char* p = decimal;
  bool neg = false;
  if (*p == '-') { neg = true; ++p; }
  std::int64_t num = 0, den = 1;
  bool frac = false;
  for (; *p; ++p) {
    if (*p == '.') {
      if (frac) throw Error("BadDecimal", decimal);
      frac = true;
      continue;
    }
    if (!std::isdigit((unsigned char)*p)) throw Error("BadDecimal", decimal);
    num = num * 10 + (*p - '0');
    if (frac) den *= 10;
    if (num < 0 || den < 0) throw Error("BadDecimal", "decimal literal overflow");
  }
  return rat(neg ? -num : num, den);
}

namespace {
Expr binary(Op op, Expr a, Expr b) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
}  // namespace

Expr pi_expr() {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Pi;
  return n;
}

Expr var_x() {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Var;
  return n;
}

Expr operator+(Expr a, Expr b) { return binary(Op::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return binary(Op::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return binary(Op::Mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return binary(Op::Div, std::move(a), std::move(b)); }
Expr sqrt(Expr a) { return binary(Op::Sqrt, std::move(a), nullptr); }

namespace {

template <class F>
Iv<F> eval_iv(const ExprNode* e, const Iv<F>* x) {
  switch (e->op) {
    case Op::Rat: return rational_interval<F>(e->num, e->den);
    case Op::Pi: return pi_interval<F>();
    case Op::Var:
      if (!x) throw Error("FreeVariable", "expression has a free variable");
      return *x;
    case Op::Add: return eval_iv(e->a.get(), x) + eval_iv(e->b.get(), x);
    case Op::Sub: return eval_iv(e->a.get(), x) - eval_iv(e->b.get(), x);
    case Op::Mul: return eval_iv(e->a.get(), x) * eval_iv(e->b.get(), x);
    case Op::Div: return eval_iv(e->a.get(), x) / eval_iv(e->b.get(), x);
    case Op::Sqrt: return sqrt(eval_iv(e->a.get(), x));
  }
  throw Error("InternalError", "bad expression node");
}

template <class F>
Taylor<F> eval_taylor(const ExprNode* e, const Taylor<F>& x) {
  switch (e->op) {
    case Op::Rat: return Taylor<F>::constant(rational_interval<F>(e->num, e->den));
    case Op::Pi: return Taylor<F>::constant(pi_interval<F>());
    case Op::Var: return x;
    case Op::Add: return eval_taylor(e->a.get(), x) + eval_taylor(e->b.get(), x);
    case Op::Sub: return eval_taylor(e->a.get(), x) - eval_taylor(e->b.get(), x);
    case Op::Mul: return eval_taylor(e->a.get(), x) * eval_taylor(e->b.get(), x);
    case Op::Div: return eval_taylor(e->a.get(), x) / eval_taylor(e->b.get(), x);
    case Op::Sqrt: return sqrt(eval_taylor(e->a.get(), x));
  }
  throw Error("InternalError", "bad expression node");
}

}  // namespace

Iv<double> eval_enclosure(const Expr& e) { return eval_iv<double>(e.get(), nullptr); }
Iv<double> eval_enclosure(const Expr& e, Iv<double> x) { return eval_iv<double>(e.get(), &x); }
Iv<long double> eval_enclosure_ext(const Expr& e) {
  return eval_iv<long double>(e.get(), nullptr);
}
Iv<long double> eval_enclosure_ext(const Expr& e, Iv<long double> x) {
  return eval_iv<long double>(e.get(), &x);
}

Taylor<double> eval_taylor_d(const Expr& e, const Taylor<double>& x) {
  return eval_taylor<double>(e.get(), x);
}
Taylor<long double> eval_taylor_l(const Expr& e, const Taylor<long double>& x) {
  return eval_taylor<long double>(e.get(), x);
}

}  // namespace bubbles
