#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace haarlane {

enum class Var { T, Y, Z };

struct EvalPoint {
    double t = 0.0;
    double y = 0.0;
    double z = 0.0;

    double get(Var v) const {
        switch (v) {
            case Var::T: return t;
            case Var::Y: return y;
            default: return z;
        }
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Raised when evaluation leaves the real domain (log/sqrt of a negative,
/// division by zero, non-finite intermediate). Carries the offending
/// subexpression in printed form.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& message, std::string subexpression)
        : std::runtime_error(message + " in '" + subexpression + "'"),
          subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const { return subexpression_; }

private:
    std::string subexpression_;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable AST over constants, the variables t/y/z, unary negate/exp/log/sqrt
/// and binary + - * / ^.
class Expr {
public:
    enum class Kind { Constant, Variable, Unary, Binary };
    enum class UnaryOp { Negate, Exp, Log, Sqrt };
    enum class BinaryOp { Add, Sub, Mul, Div, Pow };

    static ExprPtr constant(double value);
    static ExprPtr variable(Var var);
    static ExprPtr unary(UnaryOp op, ExprPtr operand);
    static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

    Kind kind() const { return kind_; }
    double value() const { return value_; }
    Var var() const { return var_; }
    UnaryOp unary_op() const { return unary_op_; }
    BinaryOp binary_op() const { return binary_op_; }
    const ExprPtr& lhs() const { return lhs_; }
    const ExprPtr& rhs() const { return rhs_; }
    const ExprPtr& operand() const { return lhs_; }

private:
    Kind kind_ = Kind::Constant;
    double value_ = 0.0;
    Var var_ = Var::T;
    UnaryOp unary_op_ = UnaryOp::Negate;
    BinaryOp binary_op_ = BinaryOp::Add;
    ExprPtr lhs_, rhs_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' factor)?
///   atom   := number | 't' | 'y' | 'z' | func '(' expr ')' | '(' expr ')'
///   func   := exp | log | sqrt
/// '^' is right-associative; unary minus binds looser than '^'.
ExprPtr parse(std::string_view source);

double eval(const ExprPtr& e, const EvalPoint& p);

/// Structural partial derivative with constant folding of literal zeros/ones.
ExprPtr differentiate(const ExprPtr& e, Var var);

/// Fully parenthesized form; parse(to_string(e)) evaluates identically to e.
std::string to_string(const ExprPtr& e);

bool depends_on(const ExprPtr& e, Var var);

/// Parses and evaluates a constant arithmetic expression (no t/y/z allowed).
double eval_constant(std::string_view source);

}  // namespace haarlane
