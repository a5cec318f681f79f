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

#ifndef FVIE_PROBLEM_HPP
#define FVIE_PROBLEM_HPP

// Problem definition for
//
//   Z(v) = Y(v) + sum_t int_{theta_{t-1}(v)}^{theta_t(v)} K_t(r, v) . G(Z(r)) dr
//
// on [z1, z2] with z1 = theta_0(v) <= theta_1(v) <= ... <= theta_m'(v) = v.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <fvie/error.hpp>
#include <fvie/expr.hpp>
#include <fvie/fuzzy_number.hpp>
#include <fvie/grid_function.hpp>

namespace fvie
{

// Non-decreasing real map G applied branchwise to fuzzy values.
class Nonlinearity
{
public:
    struct Identity {
    };
    struct OddPower {
        int k;
    };
    // Piecewise-linear through (xs[i], ys[i]), constant outside [xs.front(), xs.back()].
    struct Table {
        std::vector<double> xs;
        std::vector<double> ys;
    };

    Nonlinearity() = default;

    static Nonlinearity identity()
    {
        return Nonlinearity(Identity{});
    }

    static Nonlinearity power(int k)
    {
        if (k < 1 || k % 2 == 0) {
            throw ProblemError("power nonlinearity needs an odd exponent k >= 1, got " + std::to_string(k));
        }
        return Nonlinearity(OddPower{k});
    }

    static Nonlinearity table(std::vector<double> xs, std::vector<double> ys)
    {
        if (xs.size() < 2 || xs.size() != ys.size()) {
            throw ProblemError("table nonlinearity needs at least 2 (x, y) pairs");
        }
        for (std::size_t i = 1; i < xs.size(); ++i) {
            if (!(xs[i] > xs[i - 1])) {
                throw ProblemError("table nonlinearity: x values not strictly increasing at entry " + std::to_string(i));
            }
            if (ys[i] < ys[i - 1]) {
                throw ProblemError("table nonlinearity: y values decrease at entry " + std::to_string(i));
            }
        }
        return Nonlinearity(Table{std::move(xs), std::move(ys)});
    }

    double operator()(double x) const
    {
        if (std::holds_alternative<Identity>(m_map)) {
            return x;
        }
        if (const auto *p = std::get_if<OddPower>(&m_map)) {
            double y = x;
            for (int i = 1; i < p->k; ++i) {
                y *= x;
            }
            return y;
        }
        const auto &t = std::get<Table>(m_map);
        if (x <= t.xs.front()) {
            return t.ys.front();
        }
        if (x >= t.xs.back()) {
            return t.ys.back();
        }
        const auto it = std::upper_bound(t.xs.begin(), t.xs.end(), x);
        const auto i = static_cast<std::size_t>(it - t.xs.begin()) - 1;
        const double s = (x - t.xs[i]) / (t.xs[i + 1] - t.xs[i]);
        return t.ys[i] + s * (t.ys[i + 1] - t.ys[i]);
    }

    FuzzyNumber operator()(const FuzzyNumber &p) const
    {
        return apply_monotone(*this, p);
    }

    [[nodiscard]] bool is_identity() const noexcept
    {
        return std::holds_alternative<Identity>(m_map);
    }

    [[nodiscard]] std::string describe() const
    {
        if (is_identity()) {
            return "identity";
        }
        if (const auto *p = std::get_if<OddPower>(&m_map)) {
            return "power " + std::to_string(p->k);
        }
        return "table (" + std::to_string(std::get<Table>(m_map).xs.size()) + " points)";
    }

private:
    explicit Nonlinearity(std::variant<Identity, OddPower, Table> m) : m_map(std::move(m)) {}

    std::variant<Identity, OddPower, Table> m_map;
};

// How a crisp kernel value multiplies a fuzzy integrand sample.
//
// sign_aware: the scalar multiple of fuzzy arithmetic; a negative kernel
//   value swaps the branches.
// branchwise: lower*K and upper*K with no swap, i.e. each branch solves its
//   own crisp equation. Identical to sign_aware wherever K >= 0.
enum class KernelProduct { sign_aware, branchwise };

struct KernelPiece {
    Expr kernel;                     // K_t(r, v)
    std::optional<Expr> upper_curve; // theta_t(v); implicit v for the last piece
};

struct ProblemSpec {
    double z1 = 0;
    double z2 = 1;
    std::vector<KernelPiece> pieces;
    Expr forcing_lower = Expr::parse("0");
    Expr forcing_upper = Expr::parse("0");
    Nonlinearity nonlinearity = Nonlinearity::identity();
    double lipschitz = 1;
    std::optional<Expr> exact_lower;
    std::optional<Expr> exact_upper;
    KernelProduct product = KernelProduct::sign_aware;

    [[nodiscard]] std::size_t piece_count() const noexcept
    {
        return pieces.size();
    }

    // Structural invariants; throws ProblemError.
    void check() const
    {
        if (!std::isfinite(z1) || !std::isfinite(z2) || !(z1 < z2)) {
            throw ProblemError("interval needs finite z1 < z2");
        }
        if (pieces.empty()) {
            throw ProblemError("at least one kernel piece is required");
        }
        if (!(lipschitz > 0) || !std::isfinite(lipschitz)) {
            throw ProblemError("lipschitz constant must be positive");
        }
        for (std::size_t t = 0; t < pieces.size(); ++t) {
            const auto label = "piece " + std::to_string(t + 1);
            if (pieces[t].kernel.uses(Var::mu)) {
                throw ProblemError(label + ": kernel may only use r and v");
            }
            if (pieces[t].upper_curve) {
                if (pieces[t].upper_curve->uses(Var::r) || pieces[t].upper_curve->uses(Var::mu)) {
                    throw ProblemError(label + ": theta may only use v");
                }
            } else if (t + 1 != pieces.size()) {
                throw ProblemError(label + ": theta is required for every piece but the last");
            }
        }
        if (forcing_lower.uses(Var::r) || forcing_upper.uses(Var::r)) {
            throw ProblemError("forcing may only use v and mu");
        }
        if (exact_lower.has_value() != exact_upper.has_value()) {
            throw ProblemError("exact solution needs both lower and upper branches");
        }
        if (exact_lower && (exact_lower->uses(Var::r) || exact_upper->uses(Var::r))) {
            throw ProblemError("exact solution may only use v and mu");
        }
    }
};

// theta_t(v) for t = 0..m'; theta_0 = z1 and theta_m' = v unless the last
// piece carries an explicit curve.
inline double curve_value(const ProblemSpec &spec, std::size_t t, double v)
{
    if (t == 0) {
        return spec.z1;
    }
    const auto &c = spec.pieces.at(t - 1).upper_curve;
    if (!c) {
        return v;
    }
    return c->eval(Bindings{.r = std::nullopt, .v = v, .mu = std::nullopt});
}

// K_t(r, v), t 1-based.
inline double kernel_value(const ProblemSpec &spec, std::size_t t, double r, double v)
{
    return spec.pieces.at(t - 1).kernel.eval(Bindings{.r = r, .v = v, .mu = std::nullopt});
}

// M_t: max |K_t(r, v)| over grid nodes with r <= v.
inline double kernel_max(const ProblemSpec &spec, std::size_t t, const SpaceGrid &grid)
{
    if (t < 1 || t > spec.piece_count()) {
        throw ProblemError("kernel piece index out of range: " + std::to_string(t));
    }
    double m = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            m = std::max(m, std::abs(kernel_value(spec, t, grid.node(i), grid.node(j))));
        }
    }
    return m;
}

struct OrderingViolation {
    std::size_t node;
    double v;
    std::size_t piece; // theta_{piece-1}(v) > theta_piece(v), or theta_m'(v) != v
    std::string message;
};

namespace detail
{

inline std::vector<OrderingViolation> curve_violations(const ProblemSpec &spec, const SpaceGrid &grid)
{
    std::vector<OrderingViolation> out;
    const auto mp = spec.piece_count();
    const double slack = 1e-12 * std::max(1.0, std::abs(spec.z2 - spec.z1));
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double v = grid.node(j);
        double prev = spec.z1;
        for (std::size_t t = 1; t <= mp; ++t) {
            const double cur = curve_value(spec, t, v);
            if (cur < prev - slack || (t < mp && cur > v + slack)) {
                std::ostringstream msg;
                msg << "curve ordering violated at v=" << v << " (node " << j << "): theta_" << t - 1 << " = " << prev
                    << ", theta_" << t << " = " << cur << ", v = " << v;
                out.push_back({j, v, t, msg.str()});
            }
            prev = cur;
        }
        const double last = curve_value(spec, mp, v);
        if (std::abs(last - v) > slack) {
            std::ostringstream msg;
            msg << "last curve theta_" << mp << " must equal v; at v=" << v << " (node " << j << ") it is " << last;
            out.push_back({j, v, mp, msg.str()});
        }
    }
    return out;
}

inline std::vector<double> kernel_maxima(const ProblemSpec &spec, const SpaceGrid &grid)
{
    std::vector<double> m;
    for (std::size_t t = 1; t <= spec.piece_count(); ++t) {
        m.push_back(kernel_max(spec, t, grid));
    }
    return m;
}

inline double contraction_from(const ProblemSpec &spec, const SpaceGrid &grid, const std::vector<double> &m)
{
    double c = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double v = grid.node(j);
        double s = 0;
        for (std::size_t t = 1; t <= spec.piece_count(); ++t) {
            s += m[t - 1] * spec.lipschitz * (curve_value(spec, t, v) - curve_value(spec, t - 1, v));
        }
        c = std::max(c, s);
    }
    return c;
}

} // namespace detail

// c = max over nodes v of sum_t M_t L (theta_t(v) - theta_{t-1}(v)).
// Throws ProblemError on the first curve ordering violation.
inline double contraction_constant(const ProblemSpec &spec, const SpaceGrid &grid)
{
    const auto bad = detail::curve_violations(spec, grid);
    if (!bad.empty()) {
        throw ProblemError(bad.front().message);
    }
    return detail::contraction_from(spec, grid, detail::kernel_maxima(spec, grid));
}

// Per-piece constants C_t = M_t L (z2 - z1).
inline std::vector<double> piece_constants(const ProblemSpec &spec, const SpaceGrid &grid)
{
    std::vector<double> c;
    for (std::size_t t = 1; t <= spec.piece_count(); ++t) {
        c.push_back(kernel_max(spec, t, grid) * spec.lipschitz * (spec.z2 - spec.z1));
    }
    return c;
}

// Samples lower/upper expressions in (v, mu) on the grid. Throws ProblemError
// naming the first node where they do not form a valid fuzzy number.
inline FuzzyGridFunction sample_branches(const Expr &lower, const Expr &upper, const SpaceGrid &grid,
                                         const MuGrid &mu, const std::string &what)
{
    std::vector<FuzzyNumber> vals;
    vals.reserve(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double v = grid.node(j);
        std::vector<double> lo(mu.size()), up(mu.size());
        for (std::size_t k = 0; k < mu.size(); ++k) {
            const Bindings b{.r = std::nullopt, .v = v, .mu = mu[k]};
            lo[k] = lower.eval(b);
            up[k] = upper.eval(b);
        }
        try {
            vals.emplace_back(mu, std::move(lo), std::move(up));
        } catch (const FuzzyError &e) {
            std::ostringstream msg;
            msg << what << " is not a valid fuzzy number at v=" << v << " (node " << j << "): " << e.what();
            throw ProblemError(msg.str());
        }
    }
    return FuzzyGridFunction(grid, std::move(vals));
}

inline FuzzyGridFunction sample_forcing(const ProblemSpec &spec, const SpaceGrid &grid, const MuGrid &mu)
{
    return sample_branches(spec.forcing_lower, spec.forcing_upper, grid, mu, "forcing");
}

inline std::optional<FuzzyGridFunction> sample_exact(const ProblemSpec &spec, const SpaceGrid &grid,
                                                     const MuGrid &mu)
{
    if (!spec.exact_lower) {
        return std::nullopt;
    }
    return sample_branches(*spec.exact_lower, *spec.exact_upper, grid, mu, "exact solution");
}

struct KernelSign {
    std::size_t piece;
    double min_value;
    double max_value;
};

struct ValidationReport {
    std::vector<OrderingViolation> ordering_violations;
    std::vector<KernelSign> kernel_signs;
    std::vector<std::string> warnings;
    std::vector<std::string> errors; // evaluation or forcing failures
    std::vector<double> kernel_maxima; // M_t
    std::vector<double> piece_constants; // C_t
    std::optional<double> c;             // absent when ordering or evaluation failed

    [[nodiscard]] bool ordering_ok() const noexcept
    {
        return ordering_violations.empty();
    }
    [[nodiscard]] bool contraction() const noexcept
    {
        return c.has_value() && *c < 1;
    }
    // Existence condition holds and nothing failed; warnings allowed.
    [[nodiscard]] bool ok() const noexcept
    {
        return ordering_ok() && errors.empty() && contraction();
    }
};

// Grid-level checks of the existence hypotheses. Never throws on problem
// content; everything lands in the report.
inline ValidationReport validate(const ProblemSpec &spec, const SpaceGrid &grid,
                                 const MuGrid &mu = MuGrid::uniform(11))
{
    ValidationReport rep;
    try {
        spec.check();
    } catch (const ProblemError &e) {
        rep.errors.emplace_back(e.what());
        return rep;
    }

    try {
        rep.ordering_violations = detail::curve_violations(spec, grid);
    } catch (const EvalError &e) {
        rep.errors.push_back(std::string("curve evaluation failed: ") + e.what());
    }

    bool kernels_ok = true;
    for (std::size_t t = 1; t <= spec.piece_count(); ++t) {
        KernelSign s{t, 0, 0};
        bool first = true;
        try {
            for (std::size_t j = 0; j < grid.size(); ++j) {
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    const double k = kernel_value(spec, t, grid.node(i), grid.node(j));
                    s.min_value = first ? k : std::min(s.min_value, k);
                    s.max_value = first ? k : std::max(s.max_value, k);
                    first = false;
                }
            }
        } catch (const EvalError &e) {
            rep.errors.push_back("kernel piece " + std::to_string(t) + " evaluation failed: " + e.what());
            kernels_ok = false;
            continue;
        }
        rep.kernel_signs.push_back(s);
        if (s.min_value < 0) {
            std::ostringstream msg;
            if (s.max_value > 0) {
                msg << "kernel piece " << t << " changes sign";
            } else {
                msg << "kernel piece " << t << " is non-positive";
            }
            msg << " (range [" << s.min_value << ", " << s.max_value << "])";
            rep.warnings.push_back(msg.str());
        }
    }

    try {
        (void)sample_forcing(spec, grid, mu);
    } catch (const Error &e) {
        rep.errors.emplace_back(e.what());
    }

    if (kernels_ok) {
        rep.kernel_maxima = detail::kernel_maxima(spec, grid);
        for (double m : rep.kernel_maxima) {
            rep.piece_constants.push_back(m * spec.lipschitz * (spec.z2 - spec.z1));
        }
        if (rep.ordering_violations.empty()) {
            try {
                rep.c = detail::contraction_from(spec, grid, rep.kernel_maxima);
            } catch (const EvalError &e) {
                rep.errors.push_back(std::string("curve evaluation failed: ") + e.what());
            }
        }
    }
    return rep;
}

} // namespace fvie

#endif // FVIE_PROBLEM_HPP
