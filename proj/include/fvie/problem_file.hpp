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

#ifndef FVIE_PROBLEM_FILE_HPP
#define FVIE_PROBLEM_FILE_HPP

// Line-oriented problem files:
//
//   # comment
//   interval <z1> <z2>
//   piece <t> kernel "<expr in r, v>" [theta "<expr in v>"]
//   forcing lower "<expr in v, mu>" upper "<expr in v, mu>"
//   nonlinearity identity | power <odd k> | table <x0> <y0> <x1> <y1> ...
//   lipschitz <L>
//   exact lower "<expr in v, mu>" upper "<expr in v, mu>"     (optional)
//   product sign-aware | branchwise                           (optional)
//
// interval, forcing and lipschitz appear exactly once; pieces are numbered
// 1..m' without gaps and every piece but the last needs a theta.

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fvie/error.hpp>
#include <fvie/expr.hpp>
#include <fvie/problem.hpp>

namespace fvie
{

namespace detail
{

struct Token {
    std::string text;
    bool quoted;
};

inline std::vector<Token> tokenize_line(std::string_view line, std::size_t lineno)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else if (c == '#') {
            break;
        } else if (c == '"') {
            const auto end = line.find('"', i + 1);
            if (end == std::string_view::npos) {
                throw ProblemFileError("unterminated quoted expression", lineno);
            }
            out.push_back({std::string(line.substr(i + 1, end - i - 1)), true});
            i = end + 1;
        } else {
            std::size_t end = i;
            while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r' && line[end] != '#'
                   && line[end] != '"') {
                ++end;
            }
            out.push_back({std::string(line.substr(i, end - i)), false});
            i = end;
        }
    }
    return out;
}

inline double to_number(const Token &tok, std::size_t lineno, std::string_view what)
{
    double x = 0;
    const auto *first = tok.text.data();
    const auto *last = first + tok.text.size();
    const auto res = std::from_chars(first, last, x);
    if (tok.quoted || res.ec != std::errc{} || res.ptr != last) {
        throw ProblemFileError(std::string(what) + ": expected a number, got '" + tok.text + "'", lineno);
    }
    return x;
}

inline Expr to_expr(const Token &tok, std::size_t lineno, std::string_view what, std::initializer_list<Var> allowed)
{
    if (!tok.quoted) {
        throw ProblemFileError(std::string(what) + ": expression must be quoted", lineno);
    }
    try {
        auto e = Expr::parse(tok.text);
        for (auto x : {Var::r, Var::v, Var::mu}) {
            bool ok = false;
            for (auto a : allowed) {
                ok = ok || a == x;
            }
            if (!ok && e.uses(x)) {
                throw ProblemFileError(std::string(what) + ": variable '" + std::string(var_name(x))
                                           + "' is not allowed here",
                                       lineno);
            }
        }
        return e;
    } catch (const ParseError &e) {
        throw ProblemFileError(std::string(what) + ": " + e.what(), lineno);
    }
}

inline void expect_keyword(const std::vector<Token> &toks, std::size_t i, std::string_view kw, std::size_t lineno)
{
    if (i >= toks.size() || toks[i].quoted || toks[i].text != kw) {
        throw ProblemFileError("expected '" + std::string(kw) + "'", lineno);
    }
}

inline void expect_count(const std::vector<Token> &toks, std::size_t n, std::size_t lineno)
{
    if (toks.size() != n) {
        throw ProblemFileError(toks.front().text + ": expected " + std::to_string(n - 1) + " arguments, got "
                                   + std::to_string(toks.size() - 1),
                               lineno);
    }
}

} // namespace detail

inline ProblemSpec parse_problem(std::string_view text)
{
    using detail::expect_count;
    using detail::expect_keyword;
    using detail::to_expr;
    using detail::to_number;

    ProblemSpec spec;
    std::map<std::string, std::size_t> seen; // section -> line
    std::map<long, std::pair<KernelPiece, std::size_t>> pieces;
    std::size_t lineno = 0;

    const auto once = [&](const std::string &section) {
        if (seen.count(section) != 0) {
            throw ProblemFileError("duplicate section: " + section, lineno);
        }
        seen[section] = lineno;
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++lineno;

        const auto toks = detail::tokenize_line(line, lineno);
        if (toks.empty()) {
            continue;
        }
        const auto &head = toks[0].text;
        if (toks[0].quoted) {
            throw ProblemFileError("expected a section keyword", lineno);
        }

        if (head == "interval") {
            once(head);
            expect_count(toks, 3, lineno);
            spec.z1 = to_number(toks[1], lineno, "interval");
            spec.z2 = to_number(toks[2], lineno, "interval");
            if (!(spec.z1 < spec.z2)) {
                throw ProblemFileError("interval: need z1 < z2", lineno);
            }
        } else if (head == "piece") {
            if (toks.size() != 4 && toks.size() != 6) {
                throw ProblemFileError("piece: expected 'piece <t> kernel \"...\" [theta \"...\"]'", lineno);
            }
            const double t = to_number(toks[1], lineno, "piece");
            if (t < 1 || t != static_cast<double>(static_cast<long>(t))) {
                throw ProblemFileError("piece: index must be a positive integer", lineno);
            }
            const auto idx = static_cast<long>(t);
            if (pieces.count(idx) != 0) {
                throw ProblemFileError("duplicate piece " + std::to_string(idx), lineno);
            }
            expect_keyword(toks, 2, "kernel", lineno);
            KernelPiece piece{to_expr(toks[3], lineno, "kernel", {Var::r, Var::v}), std::nullopt};
            if (toks.size() == 6) {
                expect_keyword(toks, 4, "theta", lineno);
                piece.upper_curve = to_expr(toks[5], lineno, "theta", {Var::v});
            }
            pieces.emplace(idx, std::make_pair(std::move(piece), lineno));
        } else if (head == "forcing" || head == "exact") {
            once(head);
            expect_count(toks, 5, lineno);
            expect_keyword(toks, 1, "lower", lineno);
            expect_keyword(toks, 3, "upper", lineno);
            auto lo = to_expr(toks[2], lineno, head, {Var::v, Var::mu});
            auto up = to_expr(toks[4], lineno, head, {Var::v, Var::mu});
            if (head == "forcing") {
                spec.forcing_lower = std::move(lo);
                spec.forcing_upper = std::move(up);
            } else {
                spec.exact_lower = std::move(lo);
                spec.exact_upper = std::move(up);
            }
        } else if (head == "nonlinearity") {
            once(head);
            if (toks.size() < 2) {
                throw ProblemFileError("nonlinearity: expected identity, power <k> or table ...", lineno);
            }
            try {
                if (toks[1].text == "identity") {
                    expect_count(toks, 2, lineno);
                    spec.nonlinearity = Nonlinearity::identity();
                } else if (toks[1].text == "power") {
                    expect_count(toks, 3, lineno);
                    const double k = to_number(toks[2], lineno, "power");
                    if (k != static_cast<double>(static_cast<int>(k))) {
                        throw ProblemFileError("power: exponent must be an integer", lineno);
                    }
                    spec.nonlinearity = Nonlinearity::power(static_cast<int>(k));
                } else if (toks[1].text == "table") {
                    if (toks.size() % 2 != 0) {
                        throw ProblemFileError("table: expected pairs of numbers", lineno);
                    }
                    std::vector<double> xs, ys;
                    for (std::size_t i = 2; i + 1 < toks.size(); i += 2) {
                        xs.push_back(to_number(toks[i], lineno, "table"));
                        ys.push_back(to_number(toks[i + 1], lineno, "table"));
                    }
                    spec.nonlinearity = Nonlinearity::table(std::move(xs), std::move(ys));
                } else {
                    throw ProblemFileError("nonlinearity: unknown kind '" + toks[1].text + "'", lineno);
                }
            } catch (const ProblemError &e) {
                throw ProblemFileError(e.what(), lineno);
            }
        } else if (head == "lipschitz") {
            once(head);
            expect_count(toks, 2, lineno);
            spec.lipschitz = to_number(toks[1], lineno, "lipschitz");
            if (!(spec.lipschitz > 0)) {
                throw ProblemFileError("lipschitz: constant must be positive", lineno);
            }
        } else if (head == "product") {
            once(head);
            expect_count(toks, 2, lineno);
            if (toks[1].text == "sign-aware") {
                spec.product = KernelProduct::sign_aware;
            } else if (toks[1].text == "branchwise") {
                spec.product = KernelProduct::branchwise;
            } else {
                throw ProblemFileError("product: expected sign-aware or branchwise", lineno);
            }
        } else {
            throw ProblemFileError("unknown section '" + head + "'", lineno);
        }
    }

    for (const char *required : {"interval", "forcing", "lipschitz"}) {
        if (seen.count(required) == 0) {
            throw ProblemFileError(std::string("missing section: ") + required, lineno);
        }
    }
    if (pieces.empty()) {
        throw ProblemFileError("missing section: piece", lineno);
    }
    long expected = 1;
    for (auto &[idx, entry] : pieces) {
        if (idx != expected) {
            throw ProblemFileError("pieces must be numbered 1..m' contiguously; missing piece "
                                       + std::to_string(expected),
                                   entry.second);
        }
        ++expected;
    }
    const auto count = pieces.size();
    for (auto &[idx, entry] : pieces) {
        if (static_cast<std::size_t>(idx) < count && !entry.first.upper_curve) {
            throw ProblemFileError("piece " + std::to_string(idx) + ": theta is required for every piece but the last",
                                   entry.second);
        }
        spec.pieces.push_back(std::move(entry.first));
    }

    try {
        spec.check();
    } catch (const ProblemError &e) {
        throw ProblemFileError(e.what(), lineno);
    }
    return spec;
}

inline ProblemSpec load_problem(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ProblemFileError("cannot read " + path.string(), 0);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

} // namespace fvie

#endif // FVIE_PROBLEM_FILE_HPP
