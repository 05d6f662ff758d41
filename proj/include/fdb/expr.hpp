#pragma once

// Parser and evaluator for vector-valued expressions. Components are scalar
// ASTs separated by ';'; evaluation is generic over the coefficient algebra
// (plain double or MultiDual).
//
// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := atom ("^" integer)?
//   atom   := number | ident | primitive "(" expr ")" | "(" expr ")"
// Primitives: exp, ln, sin, cos, sqrt. Variables are prefix + 1-based index.

#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "fdb/errors.hpp"
#include "fdb/multidual.hpp"

namespace fdb {

enum class NodeKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Call };

struct ExprNode {
    NodeKind kind;
    double value = 0;    // Constant
    int var_index = 0;   // Variable, 1-based
    int exponent = 0;    // Pow
    Primitive prim = Primitive::Exp;  // Call
    int left = -1;
    int right = -1;
};

// One scalar component: a flat node arena with value semantics.
struct Expr {
    std::vector<ExprNode> nodes;
    int root = -1;
};

struct ExprFunction {
    int input_dim = 0;
    std::string prefix;
    std::vector<Expr> components;

    int output_dim() const { return static_cast<int>(components.size()); }
};

namespace detail {

class Parser {
public:
    Parser(const std::string& src, std::string prefix)
        : src_(src), prefix_(std::move(prefix)) {}

    Expr parse_component() {
        expr_ = Expr{};
        skip_ws();
        if (peek() == ';' || at_end())
            throw parse_error("empty component", pos_);
        expr_.root = parse_expr();
        skip_ws();
        return std::move(expr_);
    }

    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return at_end() ? '\0' : src_[pos_]; }
    std::size_t pos() const { return pos_; }
    void advance() { ++pos_; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    int max_var_index() const { return max_var_; }

private:
    int add_node(ExprNode n) {
        expr_.nodes.push_back(n);
        return static_cast<int>(expr_.nodes.size()) - 1;
    }

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            advance();
            int rhs = parse_term();
            ExprNode n{c == '+' ? NodeKind::Add : NodeKind::Sub};
            n.left = lhs;
            n.right = rhs;
            lhs = add_node(n);
        }
    }

    int parse_term() {
        int lhs = parse_factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/') return lhs;
            advance();
            int rhs = parse_factor();
            ExprNode n{c == '*' ? NodeKind::Mul : NodeKind::Div};
            n.left = lhs;
            n.right = rhs;
            lhs = add_node(n);
        }
    }

    int parse_factor() {
        int base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            advance();
            skip_ws();
            std::size_t start = pos_;
            std::string digits;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                digits += peek();
                advance();
            }
            if (digits.empty()) throw parse_error("expected non-negative integer exponent", start);
            ExprNode n{NodeKind::Pow};
            n.left = base;
            n.exponent = std::stoi(digits);
            return add_node(n);
        }
        return base;
    }

    int parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            advance();
            int inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        throw parse_error(at_end() ? "unexpected end of input"
                                   : std::string("unexpected character '") + c + "'",
                          pos_);
    }

    int parse_number() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        if (peek() == '.') {
            advance();
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            advance();
            if (peek() == '+' || peek() == '-') advance();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw parse_error("malformed exponent in number literal", pos_);
            while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        ExprNode n{NodeKind::Constant};
        n.value = std::stod(src_.substr(start, pos_ - start));
        return add_node(n);
    }

    int parse_ident() {
        std::size_t start = pos_;
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek()))) {
            name += peek();
            advance();
        }
        static const struct { const char* name; Primitive prim; } kPrims[] = {
            {"exp", Primitive::Exp}, {"ln", Primitive::Ln},   {"sin", Primitive::Sin},
            {"cos", Primitive::Cos}, {"sqrt", Primitive::Sqrt}};
        for (const auto& p : kPrims) {
            if (name == p.name) {
                expect('(');
                int arg = parse_expr();
                expect(')');
                ExprNode n{NodeKind::Call};
                n.prim = p.prim;
                n.left = arg;
                return add_node(n);
            }
        }
        // variable: prefix + 1-based index
        std::size_t split = 0;
        while (split < name.size() && std::isalpha(static_cast<unsigned char>(name[split]))) ++split;
        std::string word = name.substr(0, split);
        std::string digits = name.substr(split);
        if (digits.empty())
            throw parse_error("unknown identifier '" + name + "'", start);
        if (word != prefix_)
            throw parse_error("variable '" + name + "' does not use expected prefix '" + prefix_ +
                                  "'",
                              start);
        int idx = std::stoi(digits);
        if (idx < 1) throw parse_error("variable index must be >= 1 in '" + name + "'", start);
        max_var_ = std::max(max_var_, idx);
        ExprNode n{NodeKind::Variable};
        n.var_index = idx;
        return add_node(n);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c)
            throw parse_error(std::string("expected '") + c + "'", pos_);
        advance();
    }

    const std::string& src_;
    std::string prefix_;
    std::size_t pos_ = 0;
    Expr expr_;
    int max_var_ = 0;
};

}  // namespace detail

// input_dim is the highest variable index referenced across all components.
inline ExprFunction parse_function(const std::string& source, const std::string& expected_prefix) {
    detail::Parser parser(source, expected_prefix);
    ExprFunction fun;
    fun.prefix = expected_prefix;
    for (;;) {
        fun.components.push_back(parser.parse_component());
        parser.skip_ws();
        if (parser.at_end()) break;
        if (parser.peek() != ';')
            throw parse_error(std::string("unexpected character '") + parser.peek() + "'",
                              parser.pos());
        parser.advance();
    }
    fun.input_dim = parser.max_var_index();
    return fun;
}

namespace detail {

// Algebra adapters: the evaluator is generic over double and scalar MultiDual.
inline double alg_constant(double c, const double&) { return c; }
inline MultiDual alg_constant(double c, const MultiDual& proto) {
    return MultiDual::constant(proto.width(), c);
}

inline double alg_div(double a, double b) {
    if (b == 0.0) throw domain_error("division: divisor is zero");
    return a / b;
}
inline MultiDual alg_div(const MultiDual& a, const MultiDual& b) { return md_div(a, b); }

inline double alg_pow(double a, int e) {
    double r = 1;
    for (int i = 0; i < e; ++i) r *= a;
    return r;
}
inline MultiDual alg_pow(const MultiDual& a, int e) { return md_pow(a, e); }

inline double alg_call(Primitive p, double a) {
    // same domain checks as the dual path
    return primitive_derivative(p, 0, a, 0);
}
inline MultiDual alg_call(Primitive p, const MultiDual& a) { return md_apply_univariate(p, a); }

template <class T>
T eval_node(const Expr& e, int idx, const std::vector<T>& inputs, const T& proto) {
    const ExprNode& n = e.nodes[static_cast<std::size_t>(idx)];
    switch (n.kind) {
        case NodeKind::Constant:
            return alg_constant(n.value, proto);
        case NodeKind::Variable:
            return inputs[static_cast<std::size_t>(n.var_index - 1)];
        case NodeKind::Add:
            return eval_node(e, n.left, inputs, proto) + eval_node(e, n.right, inputs, proto);
        case NodeKind::Sub:
            return eval_node(e, n.left, inputs, proto) - eval_node(e, n.right, inputs, proto);
        case NodeKind::Mul:
            return eval_node(e, n.left, inputs, proto) * eval_node(e, n.right, inputs, proto);
        case NodeKind::Div:
            return alg_div(eval_node(e, n.left, inputs, proto),
                           eval_node(e, n.right, inputs, proto));
        case NodeKind::Pow:
            return alg_pow(eval_node(e, n.left, inputs, proto), n.exponent);
        case NodeKind::Call:
            return alg_call(n.prim, eval_node(e, n.left, inputs, proto));
    }
    throw error("eval: corrupt AST");
}

inline void print_node(const Expr& e, int idx, std::string& out) {
    const ExprNode& n = e.nodes[static_cast<std::size_t>(idx)];
    switch (n.kind) {
        case NodeKind::Constant: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            break;
        }
        case NodeKind::Variable:
            out += "@" + std::to_string(n.var_index);  // prefix filled by caller
            break;
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div: {
            const char* op = n.kind == NodeKind::Add   ? "+"
                             : n.kind == NodeKind::Sub ? "-"
                             : n.kind == NodeKind::Mul ? "*"
                                                       : "/";
            out += '(';
            print_node(e, n.left, out);
            out += op;
            print_node(e, n.right, out);
            out += ')';
            break;
        }
        case NodeKind::Pow:
            out += '(';
            print_node(e, n.left, out);
            out += ")^" + std::to_string(n.exponent);
            break;
        case NodeKind::Call:
            out += primitive_name(n.prim);
            out += '(';
            print_node(e, n.left, out);
            out += ')';
            break;
    }
}

}  // namespace detail

template <class T>
std::vector<T> eval_function(const ExprFunction& fun, const std::vector<T>& inputs) {
    if (static_cast<int>(inputs.size()) != fun.input_dim)
        throw contract_error("eval_function: got " + std::to_string(inputs.size()) +
                             " inputs, function has input_dim " + std::to_string(fun.input_dim));
    const T proto = inputs.empty() ? T{} : inputs.front();
    std::vector<T> out;
    out.reserve(fun.components.size());
    for (const Expr& comp : fun.components)
        out.push_back(detail::eval_node(comp, comp.root, inputs, proto));
    return out;
}

// Parenthesized source form; parses back to an identical AST.
inline std::string print_function(const ExprFunction& fun) {
    std::string out;
    for (std::size_t i = 0; i < fun.components.size(); ++i) {
        if (i) out += ';';
        std::string comp;
        detail::print_node(fun.components[i], fun.components[i].root, comp);
        // substitute the variable placeholder with the prefix
        std::string fixed;
        for (std::size_t j = 0; j < comp.size(); ++j) {
            if (comp[j] == '@')
                fixed += fun.prefix;
            else
                fixed += comp[j];
        }
        out += fixed;
    }
    return out;
}

}  // namespace fdb
