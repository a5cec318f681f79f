// Copyright 2026 The fvie Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FVIE_EXPR_HPP
#define FVIE_EXPR_HPP

// Arithmetic expressions over the variables r, v and mu.
//
// Grammar (whitespace-insensitive):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 'r' | 'v' | 'mu' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | log | abs | sqrt
//
// so "-2^2" is -4 and "2^3^2" is 512.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <fvie/error.hpp>

namespace fvie
{

enum class Var { r, v, mu };

enum class Func { sin, cos, exp, log, abs, sqrt };

inline constexpr std::string_view var_name(Var x) noexcept
{
    switch (x) {
        case Var::r:
            return "r";
        case Var::v:
            return "v";
        case Var::mu:
            return "mu";
    }
    return "?";
}

inline constexpr std::string_view func_name(Func f) noexcept
{
    switch (f) {
        case Func::sin:
            return "sin";
        case Func::cos:
            return "cos";
        case Func::exp:
            return "exp";
        case Func::log:
            return "log";
        case Func::abs:
            return "abs";
        case Func::sqrt:
            return "sqrt";
    }
    return "?";
}

// Values for the free variables; unset entries are unbound.
struct Bindings {
    std::optional<double> r;
    std::optional<double> v;
    std::optional<double> mu;

    [[nodiscard]] std::optional<double> get(Var x) const noexcept
    {
        switch (x) {
            case Var::r:
                return r;
            case Var::v:
                return v;
            case Var::mu:
                return mu;
        }
        return std::nullopt;
    }
};

namespace detail
{

struct ExprNode {
    enum class Kind { number, variable, negate, binary, call };

    Kind kind;
    std::size_t offset;
    double value = 0;
    Var var = Var::r;
    Func func = Func::sin;
    char op = 0;
    std::unique_ptr<const ExprNode> lhs{};
    std::unique_ptr<const ExprNode> rhs{};
};

using NodePtr = std::unique_ptr<const ExprNode>;

class ExprParser
{
public:
    explicit ExprParser(std::string_view src) : m_src(src) {}

    NodePtr parse()
    {
        auto e = expr();
        skip_ws();
        if (m_pos != m_src.size()) {
            throw ParseError(std::string("unexpected '") + m_src[m_pos] + "'", m_pos);
        }
        return e;
    }

private:
    void skip_ws()
    {
        while (m_pos < m_src.size() && std::isspace(static_cast<unsigned char>(m_src[m_pos]))) {
            ++m_pos;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (m_pos < m_src.size() && m_src[m_pos] == c) {
            ++m_pos;
            return true;
        }
        return false;
    }

    static NodePtr binary(char op, std::size_t off, NodePtr a, NodePtr b)
    {
        auto n = std::make_unique<ExprNode>(ExprNode{ExprNode::Kind::binary, off});
        n->op = op;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    NodePtr expr()
    {
        auto lhs = term();
        while (true) {
            skip_ws();
            const auto off = m_pos;
            if (accept('+')) {
                lhs = binary('+', off, std::move(lhs), term());
            } else if (accept('-')) {
                lhs = binary('-', off, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term()
    {
        auto lhs = unary();
        while (true) {
            skip_ws();
            const auto off = m_pos;
            if (accept('*')) {
                lhs = binary('*', off, std::move(lhs), unary());
            } else if (accept('/')) {
                lhs = binary('/', off, std::move(lhs), unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary()
    {
        skip_ws();
        const auto off = m_pos;
        if (accept('-')) {
            auto n = std::make_unique<ExprNode>(ExprNode{ExprNode::Kind::negate, off});
            n->lhs = unary();
            return n;
        }
        return power();
    }

    NodePtr power()
    {
        auto base = primary();
        skip_ws();
        const auto off = m_pos;
        if (accept('^')) {
            return binary('^', off, std::move(base), unary());
        }
        return base;
    }

    NodePtr primary()
    {
        skip_ws();
        const auto off = m_pos;
        if (m_pos >= m_src.size()) {
            throw ParseError("unexpected end of expression", m_pos);
        }
        const char c = m_src[m_pos];
        if (c == '(') {
            ++m_pos;
            auto e = expr();
            if (!accept(')')) {
                throw ParseError("expected ')'", m_pos);
            }
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = m_pos;
            while (end < m_src.size()
                   && (std::isalnum(static_cast<unsigned char>(m_src[end])) || m_src[end] == '_')) {
                ++end;
            }
            const auto name = m_src.substr(m_pos, end - m_pos);
            m_pos = end;
            return identifier(name, off);
        }
        throw ParseError(std::string("unexpected '") + c + "'", m_pos);
    }

    NodePtr number()
    {
        const auto off = m_pos;
        // Scan the literal by hand so that from_chars sees a bounded token.
        std::size_t end = m_pos;
        while (end < m_src.size() && std::isdigit(static_cast<unsigned char>(m_src[end]))) {
            ++end;
        }
        if (end < m_src.size() && m_src[end] == '.') {
            ++end;
            while (end < m_src.size() && std::isdigit(static_cast<unsigned char>(m_src[end]))) {
                ++end;
            }
        }
        if (end < m_src.size() && (m_src[end] == 'e' || m_src[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < m_src.size() && (m_src[e] == '+' || m_src[e] == '-')) {
                ++e;
            }
            if (e < m_src.size() && std::isdigit(static_cast<unsigned char>(m_src[e]))) {
                while (e < m_src.size() && std::isdigit(static_cast<unsigned char>(m_src[e]))) {
                    ++e;
                }
                end = e;
            }
        }
        double val = 0;
        const auto *first = m_src.data() + off;
        const auto *last = m_src.data() + end;
        const auto res = std::from_chars(first, last, val);
        if (res.ec != std::errc{} || res.ptr != last) {
            throw ParseError("malformed number", off);
        }
        m_pos = end;
        auto n = std::make_unique<ExprNode>(ExprNode{ExprNode::Kind::number, off});
        n->value = val;
        return n;
    }

    NodePtr identifier(std::string_view name, std::size_t off)
    {
        constexpr std::array vars{Var::r, Var::v, Var::mu};
        for (auto x : vars) {
            if (name == var_name(x)) {
                skip_ws();
                if (m_pos < m_src.size() && m_src[m_pos] == '(') {
                    throw ParseError("wrong arity: variable '" + std::string(name) + "' is not a function", off);
                }
                auto n = std::make_unique<ExprNode>(ExprNode{ExprNode::Kind::variable, off});
                n->var = x;
                return n;
            }
        }
        constexpr std::array funcs{Func::sin, Func::cos, Func::exp, Func::log, Func::abs, Func::sqrt};
        for (auto f : funcs) {
            if (name == func_name(f)) {
                if (!accept('(')) {
                    throw ParseError("wrong arity: function '" + std::string(name) + "' takes 1 argument", off);
                }
                skip_ws();
                if (m_pos < m_src.size() && m_src[m_pos] == ')') {
                    throw ParseError("wrong arity: function '" + std::string(name) + "' takes 1 argument", off);
                }
                auto n = std::make_unique<ExprNode>(ExprNode{ExprNode::Kind::call, off});
                n->func = f;
                n->lhs = expr();
                skip_ws();
                if (m_pos < m_src.size() && m_src[m_pos] == ',') {
                    throw ParseError("wrong arity: function '" + std::string(name) + "' takes 1 argument", off);
                }
                if (!accept(')')) {
                    throw ParseError("expected ')'", m_pos);
                }
                return n;
            }
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", off);
    }

    std::string_view m_src;
    std::size_t m_pos = 0;
};

inline double eval_node(const ExprNode &n, const Bindings &b)
{
    double out = 0;
    switch (n.kind) {
        case ExprNode::Kind::number:
            return n.value;
        case ExprNode::Kind::variable: {
            const auto x = b.get(n.var);
            if (!x) {
                throw EvalError("unbound variable '" + std::string(var_name(n.var)) + "'", n.offset);
            }
            return *x;
        }
        case ExprNode::Kind::negate:
            return -eval_node(*n.lhs, b);
        case ExprNode::Kind::binary: {
            const double a = eval_node(*n.lhs, b);
            const double c = eval_node(*n.rhs, b);
            switch (n.op) {
                case '+':
                    out = a + c;
                    break;
                case '-':
                    out = a - c;
                    break;
                case '*':
                    out = a * c;
                    break;
                case '/':
                    if (c == 0) {
                        throw EvalError("domain error: division by zero", n.offset);
                    }
                    out = a / c;
                    break;
                case '^':
                    if (a < 0 && c != std::floor(c)) {
                        throw EvalError("domain error: negative base with non-integer exponent", n.offset);
                    }
                    if (a == 0 && c < 0) {
                        throw EvalError("domain error: zero base with negative exponent", n.offset);
                    }
                    out = std::pow(a, c);
                    break;
                default:
                    break;
            }
            break;
        }
        case ExprNode::Kind::call: {
            const double a = eval_node(*n.lhs, b);
            switch (n.func) {
                case Func::sin:
                    out = std::sin(a);
                    break;
                case Func::cos:
                    out = std::cos(a);
                    break;
                case Func::exp:
                    out = std::exp(a);
                    break;
                case Func::log:
                    if (!(a > 0)) {
                        throw EvalError("domain error: log of non-positive value", n.offset);
                    }
                    out = std::log(a);
                    break;
                case Func::abs:
                    out = std::abs(a);
                    break;
                case Func::sqrt:
                    if (a < 0) {
                        throw EvalError("domain error: sqrt of negative value", n.offset);
                    }
                    out = std::sqrt(a);
                    break;
            }
            break;
        }
    }
    if (!std::isfinite(out)) {
        throw EvalError("domain error: non-finite result", n.offset);
    }
    return out;
}

inline std::string format_literal(double x)
{
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

inline void print_node(const ExprNode &n, std::string &out)
{
    switch (n.kind) {
        case ExprNode::Kind::number:
            out += format_literal(n.value);
            return;
        case ExprNode::Kind::variable:
            out += var_name(n.var);
            return;
        case ExprNode::Kind::negate:
            out += "(-";
            print_node(*n.lhs, out);
            out += ')';
            return;
        case ExprNode::Kind::binary:
            out += '(';
            print_node(*n.lhs, out);
            out += ' ';
            out += n.op;
            out += ' ';
            print_node(*n.rhs, out);
            out += ')';
            return;
        case ExprNode::Kind::call:
            out += func_name(n.func);
            out += '(';
            print_node(*n.lhs, out);
            out += ')';
            return;
    }
}

inline bool node_uses(const ExprNode &n, Var x)
{
    if (n.kind == ExprNode::Kind::variable) {
        return n.var == x;
    }
    return (n.lhs && node_uses(*n.lhs, x)) || (n.rhs && node_uses(*n.rhs, x));
}

} // namespace detail

// A parsed expression. Immutable and cheap to copy.
class Expr
{
public:
    static Expr parse(std::string_view src)
    {
        detail::ExprParser p(src);
        auto root = p.parse();
        return Expr(std::string(src), std::shared_ptr<const detail::ExprNode>(std::move(root)));
    }

    [[nodiscard]] double eval(const Bindings &b) const
    {
        return detail::eval_node(*m_root, b);
    }

    [[nodiscard]] double operator()(const Bindings &b) const
    {
        return eval(b);
    }

    [[nodiscard]] bool uses(Var x) const
    {
        return detail::node_uses(*m_root, x);
    }

    // Source text as given to parse().
    [[nodiscard]] const std::string &source() const noexcept
    {
        return m_source;
    }

    // Fully parenthesised form; parse(to_string()) evaluates identically.
    [[nodiscard]] std::string to_string() const
    {
        std::string out;
        detail::print_node(*m_root, out);
        return out;
    }

private:
    Expr(std::string src, std::shared_ptr<const detail::ExprNode> root)
        : m_source(std::move(src)), m_root(std::move(root))
    {
    }

    std::string m_source;
    std::shared_ptr<const detail::ExprNode> m_root;
};

inline Expr parse(std::string_view src)
{
    return Expr::parse(src);
}

inline double eval(const Expr &e, const Bindings &b)
{
    return e.eval(b);
}

} // namespace fvie

#endif // FVIE_EXPR_HPP
