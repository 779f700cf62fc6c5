#include "haarlane/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace haarlane {

ExprPtr Expr::constant(double value) {
    auto e = std::make_shared<Expr>();
    e->kind_ = Kind::Constant;
    e->value_ = value;
    return e;
}

ExprPtr Expr::variable(Var var) {
    auto e = std::make_shared<Expr>();
    e->kind_ = Kind::Variable;
    e->var_ = var;
    return e;
}

ExprPtr Expr::unary(UnaryOp op, ExprPtr operand) {
    auto e = std::make_shared<Expr>();
    e->kind_ = Kind::Unary;
    e->unary_op_ = op;
    e->lhs_ = std::move(operand);
    return e;
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind_ = Kind::Binary;
    e->binary_op_ = op;
    e->lhs_ = std::move(lhs);
    e->rhs_ = std::move(rhs);
    return e;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr run() {
        skip_space();
        if (pos_ >= src_.size()) throw ParseError("empty input", 0);
        ExprPtr e = parse_expr();
        skip_space();
        if (pos_ < src_.size()) {
            throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_space();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            if (consume('+')) {
                e = Expr::binary(Expr::BinaryOp::Add, e, parse_term());
            } else if (consume('-')) {
                e = Expr::binary(Expr::BinaryOp::Sub, e, parse_term());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            if (consume('*')) {
                e = Expr::binary(Expr::BinaryOp::Mul, e, parse_factor());
            } else if (consume('/')) {
                e = Expr::binary(Expr::BinaryOp::Div, e, parse_factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_factor() {
        if (consume('-')) {
            return Expr::unary(Expr::UnaryOp::Negate, parse_factor());
        }
        ExprPtr base = parse_atom();
        if (consume('^')) {
            return Expr::binary(Expr::BinaryOp::Pow, base, parse_factor());
        }
        return base;
    }

    ExprPtr parse_atom() {
        const char c = peek();
        if (c == '\0') throw ParseError("unexpected end of input", pos_);
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            if (!consume(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_ + 1;
            if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-')) ++mark;
            if (mark < src_.size() && std::isdigit(static_cast<unsigned char>(src_[mark]))) {
                pos_ = mark;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        if (text == ".") throw ParseError("malformed number", start);
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0') throw ParseError("malformed number", start);
        return Expr::constant(value);
    }

    ExprPtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "t") return Expr::variable(Var::T);
        if (name == "y") return Expr::variable(Var::Y);
        if (name == "z") return Expr::variable(Var::Z);

        Expr::UnaryOp op;
        if (name == "exp") {
            op = Expr::UnaryOp::Exp;
        } else if (name == "log") {
            op = Expr::UnaryOp::Log;
        } else if (name == "sqrt") {
            op = Expr::UnaryOp::Sqrt;
        } else {
            throw ParseError("unknown identifier '" + std::string(name) + "'", start);
        }
        if (!consume('(')) throw ParseError("expected '(' after function name", pos_);
        ExprPtr arg = parse_expr();
        if (!consume(')')) throw ParseError("expected ')'", pos_);
        return Expr::unary(op, arg);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view source) { return Parser(source).run(); }

// ---------------------------------------------------------------------------
// evaluation

namespace {

[[noreturn]] void eval_fail(const char* message, const ExprPtr& node) {
    throw EvalError(message, to_string(node));
}

double check_finite(double value, const ExprPtr& node) {
    if (!std::isfinite(value)) eval_fail("non-finite result", node);
    return value;
}

bool is_integer_constant(const ExprPtr& e, long long& out) {
    if (e->kind() != Expr::Kind::Constant) return false;
    const double v = e->value();
    if (v != std::nearbyint(v) || std::fabs(v) > 64.0) return false;
    out = static_cast<long long>(v);
    return true;
}

double eval_node(const ExprPtr& e, const EvalPoint& p);

double eval_pow(const ExprPtr& node, const EvalPoint& p) {
    const double base = eval_node(node->lhs(), p);
    // integer literal exponents use repeated multiplication, valid for any base
    long long n = 0;
    if (is_integer_constant(node->rhs(), n)) {
        double acc = 1.0;
        const bool neg = n < 0;
        for (long long c = 0; c < std::llabs(n); ++c) acc *= base;
        if (neg) {
            if (acc == 0.0) eval_fail("zero raised to a negative power", node);
            acc = 1.0 / acc;
        }
        return check_finite(acc, node);
    }
    const double exponent = eval_node(node->rhs(), p);
    if (base > 0.0) return check_finite(std::exp(exponent * std::log(base)), node);
    if (base == 0.0) {
        if (exponent > 0.0) return 0.0;
        if (exponent == 0.0) return 1.0;
        eval_fail("zero raised to a negative power", node);
    }
    // negative base: only integer-valued exponents stay real
    if (exponent == std::nearbyint(exponent)) return check_finite(std::pow(base, exponent), node);
    eval_fail("negative base with non-integer exponent", node);
}

double eval_node(const ExprPtr& e, const EvalPoint& p) {
    switch (e->kind()) {
        case Expr::Kind::Constant:
            return e->value();
        case Expr::Kind::Variable:
            return p.get(e->var());
        case Expr::Kind::Unary: {
            const double v = eval_node(e->operand(), p);
            switch (e->unary_op()) {
                case Expr::UnaryOp::Negate: return -v;
                case Expr::UnaryOp::Exp: return check_finite(std::exp(v), e);
                case Expr::UnaryOp::Log:
                    if (v <= 0.0) eval_fail("log of a non-positive value", e);
                    return std::log(v);
                case Expr::UnaryOp::Sqrt:
                    if (v < 0.0) eval_fail("sqrt of a negative value", e);
                    return std::sqrt(v);
            }
            break;
        }
        case Expr::Kind::Binary: {
            if (e->binary_op() == Expr::BinaryOp::Pow) return eval_pow(e, p);
            const double a = eval_node(e->lhs(), p);
            const double b = eval_node(e->rhs(), p);
            switch (e->binary_op()) {
                case Expr::BinaryOp::Add: return check_finite(a + b, e);
                case Expr::BinaryOp::Sub: return check_finite(a - b, e);
                case Expr::BinaryOp::Mul: return check_finite(a * b, e);
                case Expr::BinaryOp::Div:
                    if (b == 0.0) eval_fail("division by zero", e);
                    return check_finite(a / b, e);
                case Expr::BinaryOp::Pow: break;
            }
            break;
        }
    }
    throw std::logic_error("corrupt expression node");
}

}  // namespace

double eval(const ExprPtr& e, const EvalPoint& p) { return eval_node(e, p); }

// ---------------------------------------------------------------------------
// differentiation

namespace {

bool is_const(const ExprPtr& e, double v) {
    return e->kind() == Expr::Kind::Constant && e->value() == v;
}

ExprPtr fold_add(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    if (a->kind() == Expr::Kind::Constant && b->kind() == Expr::Kind::Constant)
        return Expr::constant(a->value() + b->value());
    return Expr::binary(Expr::BinaryOp::Add, std::move(a), std::move(b));
}

ExprPtr fold_sub(ExprPtr a, ExprPtr b) {
    if (is_const(b, 0.0)) return a;
    if (a->kind() == Expr::Kind::Constant && b->kind() == Expr::Kind::Constant)
        return Expr::constant(a->value() - b->value());
    if (is_const(a, 0.0)) return Expr::unary(Expr::UnaryOp::Negate, std::move(b));
    return Expr::binary(Expr::BinaryOp::Sub, std::move(a), std::move(b));
}

ExprPtr fold_mul(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (a->kind() == Expr::Kind::Constant && b->kind() == Expr::Kind::Constant)
        return Expr::constant(a->value() * b->value());
    return Expr::binary(Expr::BinaryOp::Mul, std::move(a), std::move(b));
}

ExprPtr fold_div(ExprPtr a, ExprPtr b) {
    if (is_const(a, 0.0) && !is_const(b, 0.0)) return Expr::constant(0.0);
    if (is_const(b, 1.0)) return a;
    return Expr::binary(Expr::BinaryOp::Div, std::move(a), std::move(b));
}

ExprPtr fold_pow(ExprPtr base, ExprPtr exponent) {
    if (is_const(exponent, 1.0)) return base;
    if (is_const(exponent, 0.0)) return Expr::constant(1.0);
    return Expr::binary(Expr::BinaryOp::Pow, std::move(base), std::move(exponent));
}

ExprPtr diff(const ExprPtr& e, Var var) {
    switch (e->kind()) {
        case Expr::Kind::Constant:
            return Expr::constant(0.0);
        case Expr::Kind::Variable:
            return Expr::constant(e->var() == var ? 1.0 : 0.0);
        case Expr::Kind::Unary: {
            ExprPtr du = diff(e->operand(), var);
            switch (e->unary_op()) {
                case Expr::UnaryOp::Negate:
                    if (is_const(du, 0.0)) return du;
                    return Expr::unary(Expr::UnaryOp::Negate, std::move(du));
                case Expr::UnaryOp::Exp:
                    return fold_mul(Expr::unary(Expr::UnaryOp::Exp, e->operand()), std::move(du));
                case Expr::UnaryOp::Log:
                    return fold_div(std::move(du), e->operand());
                case Expr::UnaryOp::Sqrt:
                    return fold_div(std::move(du),
                                    fold_mul(Expr::constant(2.0),
                                             Expr::unary(Expr::UnaryOp::Sqrt, e->operand())));
            }
            break;
        }
        case Expr::Kind::Binary: {
            const ExprPtr& u = e->lhs();
            const ExprPtr& v = e->rhs();
            switch (e->binary_op()) {
                case Expr::BinaryOp::Add:
                    return fold_add(diff(u, var), diff(v, var));
                case Expr::BinaryOp::Sub:
                    return fold_sub(diff(u, var), diff(v, var));
                case Expr::BinaryOp::Mul:
                    return fold_add(fold_mul(diff(u, var), v), fold_mul(u, diff(v, var)));
                case Expr::BinaryOp::Div:
                    return fold_div(fold_sub(fold_mul(diff(u, var), v), fold_mul(u, diff(v, var))),
                                    fold_pow(v, Expr::constant(2.0)));
                case Expr::BinaryOp::Pow: {
                    if (!depends_on(v, var)) {
                        // d(u^c) = c u^(c-1) u'
                        ExprPtr shifted = fold_sub(v, Expr::constant(1.0));
                        return fold_mul(fold_mul(v, fold_pow(u, std::move(shifted))),
                                        diff(u, var));
                    }
                    // d(u^v) = u^v (v' log u + v u'/u)
                    ExprPtr term1 = fold_mul(diff(v, var), Expr::unary(Expr::UnaryOp::Log, u));
                    ExprPtr term2 = fold_div(fold_mul(v, diff(u, var)), u);
                    return fold_mul(Expr::binary(Expr::BinaryOp::Pow, u, v),
                                    fold_add(std::move(term1), std::move(term2)));
                }
            }
            break;
        }
    }
    throw std::logic_error("corrupt expression node");
}

}  // namespace

ExprPtr differentiate(const ExprPtr& e, Var var) { return diff(e, var); }

bool depends_on(const ExprPtr& e, Var var) {
    switch (e->kind()) {
        case Expr::Kind::Constant: return false;
        case Expr::Kind::Variable: return e->var() == var;
        case Expr::Kind::Unary: return depends_on(e->operand(), var);
        case Expr::Kind::Binary: return depends_on(e->lhs(), var) || depends_on(e->rhs(), var);
    }
    return false;
}

// ---------------------------------------------------------------------------
// printing

namespace {

void print_node(const ExprPtr& e, std::string& out) {
    switch (e->kind()) {
        case Expr::Kind::Constant: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e->value());
            // negative literals need parens so that e.g. (-1)^2 reparses intact
            if (e->value() < 0.0) {
                out += '(';
                out += buf;
                out += ')';
            } else {
                out += buf;
            }
            return;
        }
        case Expr::Kind::Variable:
            out += (e->var() == Var::T ? 't' : e->var() == Var::Y ? 'y' : 'z');
            return;
        case Expr::Kind::Unary:
            switch (e->unary_op()) {
                case Expr::UnaryOp::Negate: out += "(-"; break;
                case Expr::UnaryOp::Exp: out += "exp("; break;
                case Expr::UnaryOp::Log: out += "log("; break;
                case Expr::UnaryOp::Sqrt: out += "sqrt("; break;
            }
            print_node(e->operand(), out);
            out += ')';
            return;
        case Expr::Kind::Binary: {
            char op = '+';
            switch (e->binary_op()) {
                case Expr::BinaryOp::Add: op = '+'; break;
                case Expr::BinaryOp::Sub: op = '-'; break;
                case Expr::BinaryOp::Mul: op = '*'; break;
                case Expr::BinaryOp::Div: op = '/'; break;
                case Expr::BinaryOp::Pow: op = '^'; break;
            }
            out += '(';
            print_node(e->lhs(), out);
            out += op;
            print_node(e->rhs(), out);
            out += ')';
            return;
        }
    }
}

}  // namespace

std::string to_string(const ExprPtr& e) {
    std::string out;
    print_node(e, out);
    return out;
}

double eval_constant(std::string_view source) {
    ExprPtr e = parse(source);
    for (Var v : {Var::T, Var::Y, Var::Z}) {
        if (depends_on(e, v)) {
            throw ParseError("expected a constant expression, found variable", 0);
        }
    }
    return eval(e, EvalPoint{});
}

}  // namespace haarlane
