#pragma once

// Small arithmetic language for user-defined coefficients and sources.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | name | name '(' expr ')' | '(' expr ')'
//
// Names: x, y, t, u, beta, pi, e. Functions: sin, cos, exp, log, sqrt, gamma.

#include <memory>
#include <string>
#include <string_view>

namespace fracrom {

struct ExpressionVars {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
    double u = 0.0;
    double beta = 0.0;
};

class Expression {
public:
    struct Node;

    /// Throws std::invalid_argument with the offending position on syntax errors.
    static Expression parse(std::string_view text);

    double operator()(const ExpressionVars& v) const;

    /// Symbolic derivative with respect to u.
    Expression derivative_u() const;
    bool depends_on_u() const;

    std::string to_string() const;
    const std::string& source() const noexcept { return source_; }

private:
    explicit Expression(std::shared_ptr<const Node> root, std::string source);

    std::shared_ptr<const Node> root_;
    std::string source_;
};

}  // namespace fracrom
