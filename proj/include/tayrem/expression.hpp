#pragma once

#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tayrem/errors.hpp"

namespace tayrem {

enum class Op {
    Constant,
    Variable,
    Negate,
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable node of an expression tree in the single variable x.
// Constant stores its payload in value. Pow stores its base in lhs and its
// (always constant) exponent in value. Unary ops use lhs only.
class Expr {
public:
    Op op = Op::Constant;
    double value = 0.0;
    ExprPtr lhs;
    ExprPtr rhs;
};

ExprPtr make_const(double v);
ExprPtr make_var();

// Building combinators. Constant subtrees collapse at build time and the
// identities 0+e, e+0, e-0, 0-e, 0*e, 1*e, e/1, e^0, e^1 are eliminated.
ExprPtr do_neg(ExprPtr e);
ExprPtr do_add(ExprPtr a, ExprPtr b);
ExprPtr do_sub(ExprPtr a, ExprPtr b);
ExprPtr do_mul(ExprPtr a, ExprPtr b);
ExprPtr do_div(ExprPtr a, ExprPtr b);
ExprPtr do_pow(ExprPtr base, double exponent);
ExprPtr do_fn(Op op, ExprPtr arg);  // Sin, Cos, Exp, Ln, Sqrt

// Grammar: + - * / ^ with standard precedence (power binds tighter than
// unary minus; power is right-associative, everything else left), numeric
// literals with optional fraction and exponent, parentheses, identifiers
// x, sin, cos, exp, ln, sqrt. Whitespace is ignored.
ExprPtr parse_expression(std::string_view text);

ExprPtr differentiate(const ExprPtr& e);

double evaluate(const ExprPtr& e, double x);

// Extended-precision evaluation used where double rounding is too coarse
// (the near-x0 residual in rootfind cancels to ~(x_z-x0)^3).
long double evaluate_ld(const ExprPtr& e, long double x);

// Canonical printing: minimal parentheses, shortest round-trip numerals.
// parse_expression(to_string(e)) evaluates identically to e.
std::string to_string(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// A function together with its symbolic derivatives through max_order.
struct DerivativeBundle {
    ExprPtr function;
    std::vector<ExprPtr> derivatives;  // derivatives[k-1] is the k-th derivative
    int max_order = 0;
    double domain_lo = -std::numeric_limits<double>::infinity();
    double domain_hi = std::numeric_limits<double>::infinity();

    const ExprPtr& order(int k) const;  // k = 0 gives the function itself
    double eval(int k, double x) const;
};

DerivativeBundle make_bundle(
    ExprPtr f, int max_order,
    double domain_lo = -std::numeric_limits<double>::infinity(),
    double domain_hi = std::numeric_limits<double>::infinity());

}  // namespace tayrem
