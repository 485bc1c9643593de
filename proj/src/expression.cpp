#include "fracrom/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fracrom {

struct Expression::Node {
    enum class Kind { constant, var, add, sub, mul, div, pow, neg, call };
    enum class Var { x, y, t, u, beta };
    enum class Fn { sin, cos, exp, log, sqrt, gamma };

    Kind kind = Kind::constant;
    double value = 0.0;
    Var var = Var::x;
    Fn fn = Fn::sin;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

Node make(Node::Kind k) {
    Node n;
    n.kind = k;
    return n;
}

NodePtr constant(double v) {
    Node n = make(Node::Kind::constant);
    n.value = v;
    return std::make_shared<const Node>(std::move(n));
}

bool is_const(const NodePtr& n, double v) { return n->kind == Node::Kind::constant && n->value == v; }

NodePtr binary(Node::Kind k, NodePtr a, NodePtr b) {
    // Light folding keeps derivatives readable and cheap.
    if (a->kind == Node::Kind::constant && b->kind == Node::Kind::constant) {
        switch (k) {
            case Node::Kind::add: return constant(a->value + b->value);
            case Node::Kind::sub: return constant(a->value - b->value);
            case Node::Kind::mul: return constant(a->value * b->value);
            default: break;
        }
    }
    switch (k) {
        case Node::Kind::add:
            if (is_const(a, 0)) return b;
            if (is_const(b, 0)) return a;
            break;
        case Node::Kind::sub:
            if (is_const(b, 0)) return a;
            break;
        case Node::Kind::mul:
            if (is_const(a, 0) || is_const(b, 0)) return constant(0.0);
            if (is_const(a, 1)) return b;
            if (is_const(b, 1)) return a;
            break;
        case Node::Kind::div:
            if (is_const(a, 0)) return constant(0.0);
            if (is_const(b, 1)) return a;
            break;
        case Node::Kind::pow:
            if (is_const(b, 1)) return a;
            if (is_const(b, 0)) return constant(1.0);
            break;
        default: break;
    }
    Node n = make(k);
    n.a = std::move(a);
    n.b = std::move(b);
    return std::make_shared<const Node>(std::move(n));
}

NodePtr neg(NodePtr a) {
    if (a->kind == Node::Kind::constant) return constant(-a->value);
    Node n = make(Node::Kind::neg);
    n.a = std::move(a);
    return std::make_shared<const Node>(std::move(n));
}

NodePtr call(Node::Fn fn, NodePtr a) {
    Node n = make(Node::Kind::call);
    n.fn = fn;
    n.a = std::move(a);
    return std::make_shared<const Node>(std::move(n));
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    NodePtr parse() {
        auto e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("expression: " + msg + " at position " + std::to_string(pos_) +
                                    " in \"" + std::string(s_) + "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        auto lhs = term();
        while (true) {
            if (eat('+')) lhs = binary(Node::Kind::add, lhs, term());
            else if (eat('-')) lhs = binary(Node::Kind::sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        auto lhs = unary();
        while (true) {
            if (eat('*')) lhs = binary(Node::Kind::mul, lhs, unary());
            else if (eat('/')) lhs = binary(Node::Kind::div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (eat('-')) return neg(unary());
        if (eat('+')) return unary();
        return power();
    }

    NodePtr power() {
        auto base = primary();
        if (eat('^')) return binary(Node::Kind::pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (eat('(')) {
            auto e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
        fail(std::string("unexpected '") + c + "'");
    }

    NodePtr number() {
        double v = 0.0;
        const char* first = s_.data() + pos_;
        const char* last = s_.data() + s_.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc()) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return constant(v);
    }

    NodePtr name() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view id = s_.substr(start, pos_ - start);
        skip();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            static const std::pair<std::string_view, Node::Fn> fns[] = {
                {"sin", Node::Fn::sin},   {"cos", Node::Fn::cos},   {"exp", Node::Fn::exp},
                {"log", Node::Fn::log},   {"sqrt", Node::Fn::sqrt}, {"gamma", Node::Fn::gamma},
            };
            for (const auto& [fname, fn] : fns) {
                if (id == fname) {
                    eat('(');
                    auto arg = expr();
                    if (!eat(')')) fail("expected ')' after function argument");
                    return call(fn, arg);
                }
            }
            pos_ = start;
            fail("unknown function '" + std::string(id) + "'");
        }
        if (id == "pi") return constant(std::numbers::pi);
        if (id == "e") return constant(std::numbers::e);
        static const std::pair<std::string_view, Node::Var> vars[] = {
            {"x", Node::Var::x}, {"y", Node::Var::y}, {"t", Node::Var::t},
            {"u", Node::Var::u}, {"beta", Node::Var::beta},
        };
        for (const auto& [vname, var] : vars) {
            if (id == vname) {
                Node n = make(Node::Kind::var);
                n.var = var;
                return std::make_shared<const Node>(std::move(n));
            }
        }
        pos_ = start;
        fail("unknown name '" + std::string(id) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

double eval(const Node& n, const ExpressionVars& v) {
    switch (n.kind) {
        case Node::Kind::constant: return n.value;
        case Node::Kind::var:
            switch (n.var) {
                case Node::Var::x: return v.x;
                case Node::Var::y: return v.y;
                case Node::Var::t: return v.t;
                case Node::Var::u: return v.u;
                case Node::Var::beta: return v.beta;
            }
            break;
        case Node::Kind::add: return eval(*n.a, v) + eval(*n.b, v);
        case Node::Kind::sub: return eval(*n.a, v) - eval(*n.b, v);
        case Node::Kind::mul: return eval(*n.a, v) * eval(*n.b, v);
        case Node::Kind::div: return eval(*n.a, v) / eval(*n.b, v);
        case Node::Kind::pow: return std::pow(eval(*n.a, v), eval(*n.b, v));
        case Node::Kind::neg: return -eval(*n.a, v);
        case Node::Kind::call: {
            const double a = eval(*n.a, v);
            switch (n.fn) {
                case Node::Fn::sin: return std::sin(a);
                case Node::Fn::cos: return std::cos(a);
                case Node::Fn::exp: return std::exp(a);
                case Node::Fn::log: return std::log(a);
                case Node::Fn::sqrt: return std::sqrt(a);
                case Node::Fn::gamma: return std::tgamma(a);
            }
            break;
        }
    }
    return 0.0;
}

bool has_u(const Node& n) {
    if (n.kind == Node::Kind::var) return n.var == Node::Var::u;
    if (n.kind == Node::Kind::constant) return false;
    return (n.a && has_u(*n.a)) || (n.b && has_u(*n.b));
}

NodePtr diff(const NodePtr& p) {
    const Node& n = *p;
    if (!has_u(n)) return constant(0.0);
    using K = Node::Kind;
    switch (n.kind) {
        case K::constant: return constant(0.0);
        case K::var: return constant(1.0);
        case K::add: return binary(K::add, diff(n.a), diff(n.b));
        case K::sub: return binary(K::sub, diff(n.a), diff(n.b));
        case K::neg: return neg(diff(n.a));
        case K::mul:
            return binary(K::add, binary(K::mul, diff(n.a), n.b), binary(K::mul, n.a, diff(n.b)));
        case K::div:
            return binary(K::div,
                          binary(K::sub, binary(K::mul, diff(n.a), n.b), binary(K::mul, n.a, diff(n.b))),
                          binary(K::pow, n.b, constant(2.0)));
        case K::pow:
            if (!has_u(*n.b)) {
                // b a^(b-1) a'
                return binary(K::mul, binary(K::mul, n.b, binary(K::pow, n.a, binary(K::sub, n.b, constant(1.0)))),
                              diff(n.a));
            }
            // a^b (b' log a + b a' / a)
            return binary(K::mul, p,
                          binary(K::add, binary(K::mul, diff(n.b), call(Node::Fn::log, n.a)),
                                 binary(K::div, binary(K::mul, n.b, diff(n.a)), n.a)));
        case K::call: {
            const NodePtr da = diff(n.a);
            switch (n.fn) {
                case Node::Fn::sin: return binary(K::mul, call(Node::Fn::cos, n.a), da);
                case Node::Fn::cos: return neg(binary(K::mul, call(Node::Fn::sin, n.a), da));
                case Node::Fn::exp: return binary(K::mul, p, da);
                case Node::Fn::log: return binary(K::div, da, n.a);
                case Node::Fn::sqrt: return binary(K::div, da, binary(K::mul, constant(2.0), p));
                case Node::Fn::gamma:
                    throw std::invalid_argument("expression: cannot differentiate gamma() of the state u");
            }
            break;
        }
    }
    return constant(0.0);
}

std::string print(const Node& n) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::constant: {
            char buf[32];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
            (void)ec;
            return std::string(buf, ptr);
        }
        case K::var: {
            static const char* names[] = {"x", "y", "t", "u", "beta"};
            return names[static_cast<int>(n.var)];
        }
        case K::add: return "(" + print(*n.a) + " + " + print(*n.b) + ")";
        case K::sub: return "(" + print(*n.a) + " - " + print(*n.b) + ")";
        case K::mul: return "(" + print(*n.a) + " * " + print(*n.b) + ")";
        case K::div: return "(" + print(*n.a) + " / " + print(*n.b) + ")";
        case K::pow: return "(" + print(*n.a) + " ^ " + print(*n.b) + ")";
        case K::neg: return "(-" + print(*n.a) + ")";
        case K::call: {
            static const char* names[] = {"sin", "cos", "exp", "log", "sqrt", "gamma"};
            return std::string(names[static_cast<int>(n.fn)]) + "(" + print(*n.a) + ")";
        }
    }
    return "?";
}

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

Expression Expression::parse(std::string_view text) {
    return Expression(Parser(text).parse(), std::string(text));
}

double Expression::operator()(const ExpressionVars& v) const { return eval(*root_, v); }

Expression Expression::derivative_u() const {
    auto d = diff(root_);
    auto text = print(*d);
    return Expression(std::move(d), std::move(text));
}

bool Expression::depends_on_u() const { return has_u(*root_); }

std::string Expression::to_string() const { return print(*root_); }

}  // namespace fracrom
