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

#ifndef FVIE_GRID_FUNCTION_HPP
#define FVIE_GRID_FUNCTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fvie/error.hpp>
#include <fvie/fuzzy_number.hpp>

namespace fvie
{

// Uniform grid z1 = v_0 < v_1 < ... < v_n = z2 with spacing h = (z2 - z1) / n.
class SpaceGrid
{
public:
    SpaceGrid(double z1, double z2, std::size_t n) : m_z1(z1), m_z2(z2), m_n(n)
    {
        if (!std::isfinite(z1) || !std::isfinite(z2) || !(z1 < z2)) {
            throw GridError("space grid needs finite z1 < z2");
        }
        if (n < 1) {
            throw GridError("space grid needs n >= 1");
        }
        m_h = (z2 - z1) / static_cast<double>(n);
    }

    [[nodiscard]] double z1() const noexcept
    {
        return m_z1;
    }
    [[nodiscard]] double z2() const noexcept
    {
        return m_z2;
    }
    // Number of panels; there are n + 1 nodes.
    [[nodiscard]] std::size_t n() const noexcept
    {
        return m_n;
    }
    [[nodiscard]] std::size_t size() const noexcept
    {
        return m_n + 1;
    }
    [[nodiscard]] double h() const noexcept
    {
        return m_h;
    }
    [[nodiscard]] double node(std::size_t i) const noexcept
    {
        return i == m_n ? m_z2 : m_z1 + static_cast<double>(i) * m_h;
    }

    // Largest node-index offset k with k*h <= delta (small relative slack).
    [[nodiscard]] std::size_t steps_within(double delta) const noexcept
    {
        const double k = std::floor(delta / m_h + 1e-9);
        return k >= static_cast<double>(m_n) ? m_n : static_cast<std::size_t>(k);
    }

    friend bool operator==(const SpaceGrid &a, const SpaceGrid &b)
    {
        return a.m_z1 == b.m_z1 && a.m_z2 == b.m_z2 && a.m_n == b.m_n;
    }

private:
    double m_z1;
    double m_z2;
    std::size_t m_n;
    double m_h;
};

// Inclusive range of node indices.
struct NodeRange {
    std::size_t first;
    std::size_t last;
};

// A fuzzy number attached to every node of a SpaceGrid; all values share one
// MuGrid.
class FuzzyGridFunction
{
public:
    FuzzyGridFunction(SpaceGrid grid, std::vector<FuzzyNumber> values)
        : m_grid(std::move(grid)), m_values(std::move(values))
    {
        if (m_values.size() != m_grid.size()) {
            throw GridError("grid function has " + std::to_string(m_values.size()) + " values for "
                            + std::to_string(m_grid.size()) + " nodes");
        }
        for (std::size_t i = 1; i < m_values.size(); ++i) {
            if (!(m_values[i].mu_grid() == m_values[0].mu_grid())) {
                throw GridError("grid function mixes mu-grids at node " + std::to_string(i));
            }
        }
    }

    // Samples lower(v, mu) / upper(v, mu) at every node and level.
    template <typename Lower, typename Upper>
    static FuzzyGridFunction sample(const SpaceGrid &grid, const MuGrid &mu, Lower &&lower, Upper &&upper)
    {
        std::vector<FuzzyNumber> vals;
        vals.reserve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double v = grid.node(i);
            std::vector<double> lo(mu.size()), up(mu.size());
            for (std::size_t k = 0; k < mu.size(); ++k) {
                lo[k] = lower(v, mu[k]);
                up[k] = upper(v, mu[k]);
            }
            vals.emplace_back(mu, std::move(lo), std::move(up));
        }
        return FuzzyGridFunction(grid, std::move(vals));
    }

    [[nodiscard]] const SpaceGrid &grid() const noexcept
    {
        return m_grid;
    }
    [[nodiscard]] const MuGrid &mu_grid() const noexcept
    {
        return m_values.front().mu_grid();
    }
    [[nodiscard]] std::size_t size() const noexcept
    {
        return m_values.size();
    }
    [[nodiscard]] const FuzzyNumber &operator[](std::size_t i) const
    {
        return m_values[i];
    }
    [[nodiscard]] const std::vector<FuzzyNumber> &values() const noexcept
    {
        return m_values;
    }

private:
    SpaceGrid m_grid;
    std::vector<FuzzyNumber> m_values;
};

namespace detail
{

// A quadrature abscissa x located on the grid: the value there is
// (1 - frac) * f[left] + frac * f[left + 1], or exactly f[left] when
// frac == 0.
struct CutSample {
    double x;
    std::size_t left;
    double frac;
};

inline CutSample locate(const SpaceGrid &grid, double x)
{
    const double s = (x - grid.z1()) / grid.h();
    const double snapped = std::round(s);
    if (std::abs(s - snapped) <= 1e-12 * std::max(1.0, std::abs(s))) {
        const auto i = static_cast<std::size_t>(std::clamp(snapped, 0.0, static_cast<double>(grid.n())));
        return {grid.node(i), i, 0.0};
    }
    auto i = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, static_cast<double>(grid.n() - 1)));
    const double frac = std::clamp((x - grid.node(i)) / grid.h(), 0.0, 1.0);
    return {x, i, frac};
}

// Abscissae of the composite trapezoid over [a, b]: a, every node strictly
// inside, b. Requires a < b.
inline std::vector<CutSample> cut_samples(const SpaceGrid &grid, double a, double b)
{
    std::vector<CutSample> out;
    const auto ca = locate(grid, a);
    const auto cb = locate(grid, b);
    out.push_back(ca);
    const std::size_t first = ca.left + 1;
    const std::size_t last = (cb.frac == 0.0) ? cb.left : cb.left + 1;
    for (std::size_t i = first; i < last; ++i) {
        out.push_back({grid.node(i), i, 0.0});
    }
    if (cb.x > ca.x) {
        out.push_back(cb);
    }
    return out;
}

template <typename NodeValue>
double value_at(const CutSample &s, NodeValue &&f)
{
    if (s.frac == 0.0) {
        return f(s.left);
    }
    return (1.0 - s.frac) * f(s.left) + s.frac * f(s.left + 1);
}

// Crisp composite trapezoid of node values f(i) over [a, b], summed panel by
// panel in ascending order: acc += 0.5 * dx * (f_s + f_{s+1}).
template <typename NodeValue>
double trapezoid(const SpaceGrid &grid, double a, double b, NodeValue &&f)
{
    if (a == b) {
        return 0.0;
    }
    const auto pts = cut_samples(grid, a, b);
    double acc = 0.0;
    double prev = value_at(pts[0], f);
    for (std::size_t s = 1; s < pts.size(); ++s) {
        const double cur = value_at(pts[s], f);
        acc += 0.5 * (pts[s].x - pts[s - 1].x) * (prev + cur);
        prev = cur;
    }
    return acc;
}

inline void check_limits(const SpaceGrid &grid, double a, double b)
{
    if (a > b) {
        throw GridError("integration limits reversed: a > b");
    }
    const double slack = 1e-12 * (grid.z2() - grid.z1());
    if (a < grid.z1() - slack || b > grid.z2() + slack) {
        throw GridError("integration limits outside [z1, z2]");
    }
}

inline FuzzyNumber interpolate(const FuzzyGridFunction &f, const CutSample &s)
{
    if (s.frac == 0.0) {
        return f[s.left];
    }
    return fuzzy_add(scalar_mul(1.0 - s.frac, f[s.left]), scalar_mul(s.frac, f[s.left + 1]));
}

} // namespace detail

// Largest distance between values at nodes no more than delta apart,
// restricted to the optional node range.
inline double modulus_of_continuity(const FuzzyGridFunction &f, double delta,
                                    std::optional<NodeRange> sub = std::nullopt)
{
    if (!(delta >= 0)) {
        throw GridError("modulus of continuity needs delta >= 0");
    }
    const NodeRange r = sub.value_or(NodeRange{0, f.size() - 1});
    if (r.first > r.last || r.last >= f.size()) {
        throw GridError("empty node range for modulus of continuity");
    }
    const auto k = f.grid().steps_within(delta);
    double w = 0;
    for (std::size_t i = r.first; i <= r.last; ++i) {
        const auto jmax = std::min(r.last, i + k);
        for (std::size_t j = i + 1; j <= jmax; ++j) {
            w = std::max(w, distance(f[i], f[j]));
        }
    }
    return w;
}

// Fuzzy Riemann integral over [a, b] by the composite trapezoid rule on the
// grid. Limits between nodes use linearly interpolated branch values. Each
// branch at each level is integrated with detail::trapezoid, so the result is
// exactly the branchwise crisp trapezoid.
inline FuzzyNumber fuzzy_trapezoid(const FuzzyGridFunction &f, double a, double b)
{
    detail::check_limits(f.grid(), a, b);
    const auto &mu = f.mu_grid();
    std::vector<double> lo(mu.size()), up(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) {
        lo[k] = detail::trapezoid(f.grid(), a, b, [&](std::size_t i) { return f[i].lower(k); });
        up[k] = detail::trapezoid(f.grid(), a, b, [&](std::size_t i) { return f[i].upper(k); });
    }
    return FuzzyNumber(mu, std::move(lo), std::move(up));
}

// One-panel trapezoid error bound (b - a)/2 * w(F, (b - a)/2) with w taken
// over the samples of F in [a, b] (interpolated at non-node limits). F should
// resolve [a, b] finely: a grid with no interior nodes reports w = 0.
//
// NOTE: the constant is exceeded by up to a factor 4/3 when [a, b] straddles
// an extremum of a smooth branch, and approaches 2 for plateau-shaped
// integrands; (b - a) * w(F, (b - a)/2) always dominates.
inline double trapezoid_error_bound(const FuzzyGridFunction &f, double a, double b)
{
    detail::check_limits(f.grid(), a, b);
    if (!(a < b)) {
        throw GridError("trapezoid error bound needs a < b");
    }
    const auto pts = detail::cut_samples(f.grid(), a, b);
    std::vector<FuzzyNumber> vals;
    vals.reserve(pts.size());
    for (const auto &p : pts) {
        vals.push_back(detail::interpolate(f, p));
    }
    const double delta = 0.5 * (b - a);
    const double slack = 1e-9 * f.grid().h();
    double w = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size() && pts[j].x - pts[i].x <= delta + slack; ++j) {
            w = std::max(w, distance(vals[i], vals[j]));
        }
    }
    return delta * w;
}

// Discrete D*: the largest node-wise distance.
inline double sup_distance(const FuzzyGridFunction &f, const FuzzyGridFunction &g)
{
    if (!(f.grid() == g.grid())) {
        throw GridError("sup_distance: grid mismatch");
    }
    if (!(f.mu_grid() == g.mu_grid())) {
        throw GridError("sup_distance: mu-grid mismatch");
    }
    double d = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        d = std::max(d, distance(f[i], g[i]));
    }
    return d;
}

// Largest node-wise norm.
inline double sup_norm(const FuzzyGridFunction &f)
{
    double d = 0;
    for (const auto &x : f.values()) {
        d = std::max(d, fuzzy_norm(x));
    }
    return d;
}

} // namespace fvie

#endif // FVIE_GRID_FUNCTION_HPP
