#include "tayrem/expression.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstdio>

namespace tayrem {

namespace {

ExprPtr node(Op op, double value, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->value = value;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

bool is_const(const ExprPtr& e) { return e->op == Op::Constant; }

bool is_const(const ExprPtr& e, double v) {
    return e->op == Op::Constant && e->value == v;
}

std::string format_x(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

ExprPtr make_const(double v) { return node(Op::Constant, v, nullptr, nullptr); }

ExprPtr make_var() { return node(Op::Variable, 0.0, nullptr, nullptr); }

ExprPtr do_neg(ExprPtr e) {
    if (is_const(e)) return make_const(-e->value);
    if (e->op == Op::Negate) return e->lhs;
    return node(Op::Negate, 0.0, std::move(e), nullptr);
}

ExprPtr do_add(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return make_const(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return node(Op::Add, 0.0, std::move(a), std::move(b));
}

ExprPtr do_sub(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return make_const(a->value - b->value);
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return do_neg(std::move(b));
    return node(Op::Sub, 0.0, std::move(a), std::move(b));
}

ExprPtr do_mul(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return make_const(a->value * b->value);
    if (is_const(b)) std::swap(a, b);  // keep constants on the left
    if (is_const(a)) {
        if (a->value == 0.0) return make_const(0.0);
        if (a->value == 1.0) return b;
        // c1*(c2*e) -> (c1 c2)*e, so derivative chains print as 6*x, not 3*(2*x)
        if (b->op == Op::Mul && is_const(b->lhs))
            return do_mul(make_const(a->value * b->lhs->value), b->rhs);
    }
    return node(Op::Mul, 0.0, std::move(a), std::move(b));
}

ExprPtr do_div(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b) && b->value != 0.0)
        return make_const(a->value / b->value);
    if (is_const(b, 1.0)) return a;
    return node(Op::Div, 0.0, std::move(a), std::move(b));
}

ExprPtr do_pow(ExprPtr base, double exponent) {
    if (exponent == 0.0) return make_const(1.0);
    if (exponent == 1.0) return base;
    if (is_const(base)) {
        double v = std::pow(base->value, exponent);
        if (std::isfinite(v)) return make_const(v);
    }
    return node(Op::Pow, exponent, std::move(base), nullptr);
}

ExprPtr do_fn(Op op, ExprPtr arg) {
    if (is_const(arg)) {
        double v = arg->value;
        double r;
        switch (op) {
            case Op::Sin: r = std::sin(v); break;
            case Op::Cos: r = std::cos(v); break;
            case Op::Exp: r = std::exp(v); break;
            case Op::Ln: r = v > 0.0 ? std::log(v) : std::nan(""); break;
            case Op::Sqrt: r = v >= 0.0 ? std::sqrt(v) : std::nan(""); break;
            default: throw std::invalid_argument("do_fn expects a unary function op");
        }
        if (std::isfinite(r)) return make_const(r);
    }
    switch (op) {
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Ln:
        case Op::Sqrt:
            return node(op, 0.0, std::move(arg), nullptr);
        default:
            throw std::invalid_argument("do_fn expects a unary function op");
    }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    ExprPtr parse_sum() {
        ExprPtr e = parse_product();
        for (;;) {
            if (accept('+')) {
                e = do_add(std::move(e), parse_product());
            } else if (accept('-')) {
                e = do_sub(std::move(e), parse_product());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_product() {
        ExprPtr e = parse_unary();
        for (;;) {
            if (accept('*')) {
                e = do_mul(std::move(e), parse_unary());
            } else if (accept('/')) {
                e = do_div(std::move(e), parse_unary());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_unary() {
        if (accept('-')) return do_neg(parse_unary());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        skip_ws();
        if (accept('^')) {
            std::size_t exp_pos = pos;
            ExprPtr exponent = parse_unary();  // right-associative, signs allowed
            if (exponent->op != Op::Constant)
                throw SyntaxError("exponent must be constant", exp_pos);
            return do_pow(std::move(base), exponent->value);
        }
        return base;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) throw SyntaxError("expected operand", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            ExprPtr e = parse_sum();
            if (!accept(')')) throw SyntaxError("expected ')'", pos);
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') return parse_number();
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_')
            return parse_identifier();
        throw SyntaxError("expected operand", pos);
    }

    ExprPtr parse_number() {
        // strtod needs a terminated buffer; copy the candidate slice.
        std::string buf(text.substr(pos, 64));
        const char* begin = buf.c_str();
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw SyntaxError("malformed number", pos);
        pos += static_cast<std::size_t>(end - begin);
        return make_const(v);
    }

    ExprPtr parse_identifier() {
        std::size_t start = pos;
        while (pos < text.size() &&
               ((text[pos] >= 'a' && text[pos] <= 'z') ||
                (text[pos] >= 'A' && text[pos] <= 'Z') ||
                (text[pos] >= '0' && text[pos] <= '9') || text[pos] == '_'))
            ++pos;
        std::string name(text.substr(start, pos - start));
        if (name == "x") return make_var();
        Op op;
        if (name == "sin") op = Op::Sin;
        else if (name == "cos") op = Op::Cos;
        else if (name == "exp") op = Op::Exp;
        else if (name == "ln") op = Op::Ln;
        else if (name == "sqrt") op = Op::Sqrt;
        else throw SyntaxError("unknown identifier '" + name + "'", start);
        if (!accept('(')) throw SyntaxError("expected '(' after '" + name + "'", pos);
        ExprPtr arg = parse_sum();
        if (!accept(')')) throw SyntaxError("expected ')'", pos);
        return do_fn(op, std::move(arg));
    }
};

}  // namespace

ExprPtr parse_expression(std::string_view text) {
    Parser p{text};
    if (p.at_end()) throw SyntaxError("empty expression", 0);
    ExprPtr e = p.parse_sum();
    if (!p.at_end()) throw SyntaxError("unexpected input", p.pos);
    return e;
}

// ---------------------------------------------------------------------------
// Differentiation

ExprPtr differentiate(const ExprPtr& e) {
    if (!e) throw std::invalid_argument("differentiate: null expression");
    switch (e->op) {
        case Op::Constant:
            return make_const(0.0);
        case Op::Variable:
            return make_const(1.0);
        case Op::Negate:
            return do_neg(differentiate(e->lhs));
        case Op::Sin:
            return do_mul(do_fn(Op::Cos, e->lhs), differentiate(e->lhs));
        case Op::Cos:
            return do_neg(do_mul(do_fn(Op::Sin, e->lhs), differentiate(e->lhs)));
        case Op::Exp:
            return do_mul(e, differentiate(e->lhs));
        case Op::Ln:
            return do_div(differentiate(e->lhs), e->lhs);
        case Op::Sqrt:
            return do_div(differentiate(e->lhs), do_mul(make_const(2.0), e));
        case Op::Add:
            return do_add(differentiate(e->lhs), differentiate(e->rhs));
        case Op::Sub:
            return do_sub(differentiate(e->lhs), differentiate(e->rhs));
        case Op::Mul:
            return do_add(do_mul(differentiate(e->lhs), e->rhs),
                          do_mul(e->lhs, differentiate(e->rhs)));
        case Op::Div:
            return do_div(do_sub(do_mul(differentiate(e->lhs), e->rhs),
                                 do_mul(e->lhs, differentiate(e->rhs))),
                          do_mul(e->rhs, e->rhs));
        case Op::Pow:
            return do_mul(do_mul(make_const(e->value), do_pow(e->lhs, e->value - 1.0)),
                          differentiate(e->lhs));
    }
    throw std::logic_error("differentiate: unhandled op");
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

template <typename T>
T eval_impl(const Expr& e, T x) {
    switch (e.op) {
        case Op::Constant:
            return static_cast<T>(e.value);
        case Op::Variable:
            return x;
        case Op::Negate:
            return -eval_impl(*e.lhs, x);
        case Op::Sin:
            return std::sin(eval_impl(*e.lhs, x));
        case Op::Cos:
            return std::cos(eval_impl(*e.lhs, x));
        case Op::Exp:
            return std::exp(eval_impl(*e.lhs, x));
        case Op::Ln: {
            T v = eval_impl(*e.lhs, x);
            if (!(v > 0))
                throw DomainError("ln of non-positive value at x = " +
                                  format_x(static_cast<double>(x)));
            return std::log(v);
        }
        case Op::Sqrt: {
            T v = eval_impl(*e.lhs, x);
            if (v < 0)
                throw DomainError("sqrt of negative value at x = " +
                                  format_x(static_cast<double>(x)));
            return std::sqrt(v);
        }
        case Op::Add:
            return eval_impl(*e.lhs, x) + eval_impl(*e.rhs, x);
        case Op::Sub:
            return eval_impl(*e.lhs, x) - eval_impl(*e.rhs, x);
        case Op::Mul:
            return eval_impl(*e.lhs, x) * eval_impl(*e.rhs, x);
        case Op::Div: {
            T num = eval_impl(*e.lhs, x);
            T den = eval_impl(*e.rhs, x);
            if (den == 0)
                throw DomainError("division by zero at x = " +
                                  format_x(static_cast<double>(x)));
            return num / den;
        }
        case Op::Pow: {
            T base = eval_impl(*e.lhs, x);
            double c = e.value;
            if (base < 0 && c != std::floor(c))
                throw DomainError("negative base with non-integer exponent at x = " +
                                  format_x(static_cast<double>(x)));
            if (base == 0 && c < 0)
                throw DomainError("zero base with negative exponent at x = " +
                                  format_x(static_cast<double>(x)));
            return std::pow(base, static_cast<T>(c));
        }
    }
    throw std::logic_error("evaluate: unhandled op");
}

}  // namespace

double evaluate(const ExprPtr& e, double x) {
    if (!e) throw std::invalid_argument("evaluate: null expression");
    double r = eval_impl<double>(*e, x);
    if (!std::isfinite(r))
        throw DomainError("evaluation produced a non-finite value at x = " + format_x(x));
    return r;
}

long double evaluate_ld(const ExprPtr& e, long double x) {
    if (!e) throw std::invalid_argument("evaluate: null expression");
    long double r = eval_impl<long double>(*e, x);
    if (!std::isfinite(r))
        throw DomainError("evaluation produced a non-finite value at x = " +
                          format_x(static_cast<double>(x)));
    return r;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels: Add/Sub 1, Mul/Div 2, unary minus 3, Pow 4, atoms 5.
int precedence(const Expr& e) {
    switch (e.op) {
        case Op::Add:
        case Op::Sub:
            return 1;
        case Op::Mul:
        case Op::Div:
            return 2;
        case Op::Negate:
            return 3;
        case Op::Pow:
            return 4;
        case Op::Constant:
            return e.value < 0 ? 3 : 5;
        default:
            return 5;
    }
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void print(const Expr& e, int parent_prec, bool right_side, std::string& out);

void print_child(const Expr& child, int prec, bool right_side, std::string& out) {
    int cp = precedence(child);
    bool parens = cp < prec || (cp == prec && right_side);
    // A leading minus inside * / ^ would rebind; value stays the same, but
    // parenthesize so the printed tree re-parses with the same shape.
    if (cp == 3 && prec >= 2) parens = true;
    if (parens) out += '(';
    print(child, 0, false, out);
    if (parens) out += ')';
}

void print(const Expr& e, int, bool, std::string& out) {
    switch (e.op) {
        case Op::Constant:
            out += format_number(e.value);
            return;
        case Op::Variable:
            out += 'x';
            return;
        case Op::Negate:
            out += '-';
            print_child(*e.lhs, 3, false, out);
            return;
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Ln:
        case Op::Sqrt: {
            const char* name = e.op == Op::Sin   ? "sin"
                               : e.op == Op::Cos ? "cos"
                               : e.op == Op::Exp ? "exp"
                               : e.op == Op::Ln  ? "ln"
                                                 : "sqrt";
            out += name;
            out += '(';
            print(*e.lhs, 0, false, out);
            out += ')';
            return;
        }
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            int prec = (e.op == Op::Add || e.op == Op::Sub) ? 1 : 2;
            char sym = e.op == Op::Add   ? '+'
                       : e.op == Op::Sub ? '-'
                       : e.op == Op::Mul ? '*'
                                         : '/';
            print_child(*e.lhs, prec, false, out);
            out += sym;
            print_child(*e.rhs, prec, true, out);
            return;
        }
        case Op::Pow:
            print_child(*e.lhs, 5, false, out);  // a^b^c parses right-assoc; force parens on compound bases
            out += '^';
            out += format_number(e.value);
            return;
    }
}

}  // namespace

std::string to_string(const ExprPtr& e) {
    if (!e) throw std::invalid_argument("to_string: null expression");
    std::string out;
    print(*e, 0, false, out);
    return out;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->op != b->op || a->value != b->value) return false;
    return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

// ---------------------------------------------------------------------------
// Derivative bundles

const ExprPtr& DerivativeBundle::order(int k) const {
    if (k == 0) return function;
    if (k < 0 || k > max_order)
        throw std::invalid_argument("derivative order out of range: " + std::to_string(k));
    return derivatives[static_cast<std::size_t>(k - 1)];
}

double DerivativeBundle::eval(int k, double x) const { return evaluate(order(k), x); }

DerivativeBundle make_bundle(ExprPtr f, int max_order, double domain_lo, double domain_hi) {
    if (!f) throw std::invalid_argument("make_bundle: null expression");
    if (max_order < 6) throw std::invalid_argument("make_bundle: max_order must be at least 6");
    DerivativeBundle b;
    b.function = std::move(f);
    b.max_order = max_order;
    b.domain_lo = domain_lo;
    b.domain_hi = domain_hi;
    b.derivatives.reserve(static_cast<std::size_t>(max_order));
    ExprPtr cur = b.function;
    for (int k = 1; k <= max_order; ++k) {
        cur = differentiate(cur);
        b.derivatives.push_back(cur);
    }
    return b;
}

}  // namespace tayrem
