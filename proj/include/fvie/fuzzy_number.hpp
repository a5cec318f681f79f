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

#ifndef FVIE_FUZZY_NUMBER_HPP
#define FVIE_FUZZY_NUMBER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <fvie/error.hpp>

namespace fvie
{

// Absolute slack used when validating branch monotonicity and ordering.
inline constexpr double validation_tolerance = 1e-12;

// Ordered membership levels 0 = mu_0 < mu_1 < ... < mu_{M-1} = 1.
//
// The level values are shared between copies, so comparing two grids built
// from the same origin is a pointer comparison.
class MuGrid
{
public:
    explicit MuGrid(std::vector<double> levels)
    {
        if (levels.size() < 2) {
            throw FuzzyError("mu-grid needs at least 2 levels, got " + std::to_string(levels.size()));
        }
        if (levels.front() != 0.0 || levels.back() != 1.0) {
            throw FuzzyError("mu-grid must start at 0 and end at 1");
        }
        for (std::size_t i = 1; i < levels.size(); ++i) {
            if (!(levels[i] > levels[i - 1])) {
                throw FuzzyError("mu-grid not strictly increasing at level " + std::to_string(i));
            }
        }
        m_levels = std::make_shared<const std::vector<double>>(std::move(levels));
    }

    // M equispaced levels i/(M-1).
    static MuGrid uniform(std::size_t m)
    {
        if (m < 2) {
            throw FuzzyError("mu-grid needs at least 2 levels, got " + std::to_string(m));
        }
        std::vector<double> lv(m);
        for (std::size_t i = 0; i < m; ++i) {
            lv[i] = static_cast<double>(i) / static_cast<double>(m - 1);
        }
        lv.back() = 1.0;
        return MuGrid(std::move(lv));
    }

    [[nodiscard]] std::size_t size() const noexcept
    {
        return m_levels->size();
    }
    [[nodiscard]] double operator[](std::size_t i) const
    {
        return (*m_levels)[i];
    }
    [[nodiscard]] std::span<const double> levels() const noexcept
    {
        return *m_levels;
    }

    friend bool operator==(const MuGrid &a, const MuGrid &b)
    {
        return a.m_levels == b.m_levels || *a.m_levels == *b.m_levels;
    }

private:
    std::shared_ptr<const std::vector<double>> m_levels;
};

// A fuzzy number in parametric form, sampled on a MuGrid: lower[i] and
// upper[i] are the branch values at level mu_i.
//
// Invariants (checked on construction, slack validation_tolerance):
// lower non-decreasing in mu, upper non-increasing in mu, lower <= upper.
class FuzzyNumber
{
public:
    FuzzyNumber(MuGrid grid, std::vector<double> lower, std::vector<double> upper)
        : m_grid(std::move(grid)), m_lower(std::move(lower)), m_upper(std::move(upper))
    {
        validate();
    }

    static FuzzyNumber crisp(const MuGrid &grid, double x)
    {
        return FuzzyNumber(grid, std::vector<double>(grid.size(), x), std::vector<double>(grid.size(), x),
                           unchecked{});
    }

    static FuzzyNumber zero(const MuGrid &grid)
    {
        return crisp(grid, 0.0);
    }

    [[nodiscard]] const MuGrid &mu_grid() const noexcept
    {
        return m_grid;
    }
    [[nodiscard]] std::size_t levels() const noexcept
    {
        return m_lower.size();
    }
    [[nodiscard]] std::span<const double> lower() const noexcept
    {
        return m_lower;
    }
    [[nodiscard]] std::span<const double> upper() const noexcept
    {
        return m_upper;
    }
    [[nodiscard]] double lower(std::size_t i) const
    {
        return m_lower[i];
    }
    [[nodiscard]] double upper(std::size_t i) const
    {
        return m_upper[i];
    }
    [[nodiscard]] bool is_crisp() const
    {
        return m_lower == m_upper && std::all_of(m_lower.begin(), m_lower.end(),
                                                 [&](double x) { return x == m_lower.front(); });
    }

    // Exact levelwise equality.
    friend bool operator==(const FuzzyNumber &a, const FuzzyNumber &b)
    {
        return a.m_grid == b.m_grid && a.m_lower == b.m_lower && a.m_upper == b.m_upper;
    }

private:
    struct unchecked {
    };

    FuzzyNumber(MuGrid grid, std::vector<double> lower, std::vector<double> upper, unchecked)
        : m_grid(std::move(grid)), m_lower(std::move(lower)), m_upper(std::move(upper))
    {
    }

    void validate() const
    {
        const auto m = m_grid.size();
        if (m_lower.size() != m || m_upper.size() != m) {
            throw FuzzyError("branch length mismatch: mu-grid has " + std::to_string(m) + " levels, lower has "
                             + std::to_string(m_lower.size()) + ", upper has " + std::to_string(m_upper.size()));
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (!std::isfinite(m_lower[i]) || !std::isfinite(m_upper[i])) {
                throw FuzzyError("non-finite branch value at level " + std::to_string(i));
            }
        }
        for (std::size_t i = 1; i < m; ++i) {
            if (m_lower[i] < m_lower[i - 1] - validation_tolerance) {
                throw FuzzyError("lower branch not non-decreasing at level " + std::to_string(i));
            }
            if (m_upper[i] > m_upper[i - 1] + validation_tolerance) {
                throw FuzzyError("upper branch not non-increasing at level " + std::to_string(i));
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (m_lower[i] > m_upper[i] + validation_tolerance) {
                throw FuzzyError("lower branch exceeds upper branch at level " + std::to_string(i));
            }
        }
    }

    MuGrid m_grid;
    std::vector<double> m_lower;
    std::vector<double> m_upper;
};

inline FuzzyNumber make_fuzzy(const MuGrid &grid, std::vector<double> lower, std::vector<double> upper)
{
    return FuzzyNumber(grid, std::move(lower), std::move(upper));
}

namespace detail
{

inline void require_same_grid(const FuzzyNumber &p, const FuzzyNumber &q, const char *op)
{
    if (!(p.mu_grid() == q.mu_grid())) {
        throw FuzzyError(std::string(op) + ": mu-grid mismatch");
    }
}

} // namespace detail

// Levelwise sum.
inline FuzzyNumber fuzzy_add(const FuzzyNumber &p, const FuzzyNumber &q)
{
    detail::require_same_grid(p, q, "fuzzy_add");
    const auto m = p.levels();
    std::vector<double> lo(m), up(m);
    for (std::size_t i = 0; i < m; ++i) {
        lo[i] = p.lower(i) + q.lower(i);
        up[i] = p.upper(i) + q.upper(i);
    }
    return FuzzyNumber(p.mu_grid(), std::move(lo), std::move(up));
}

// Scalar multiple; a negative factor swaps the branches.
inline FuzzyNumber scalar_mul(double gamma, const FuzzyNumber &p)
{
    const auto m = p.levels();
    std::vector<double> lo(m), up(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (gamma >= 0) {
            lo[i] = gamma * p.lower(i);
            up[i] = gamma * p.upper(i);
        } else {
            lo[i] = gamma * p.upper(i);
            up[i] = gamma * p.lower(i);
        }
    }
    return FuzzyNumber(p.mu_grid(), std::move(lo), std::move(up));
}

inline FuzzyNumber operator+(const FuzzyNumber &p, const FuzzyNumber &q)
{
    return fuzzy_add(p, q);
}

inline FuzzyNumber operator*(double gamma, const FuzzyNumber &p)
{
    return scalar_mul(gamma, p);
}

// Supremum metric, with the sup over mu replaced by the max over the grid.
inline double distance(const FuzzyNumber &p, const FuzzyNumber &q)
{
    detail::require_same_grid(p, q, "distance");
    double d = 0;
    for (std::size_t i = 0; i < p.levels(); ++i) {
        d = std::max({d, std::abs(p.lower(i) - q.lower(i)), std::abs(p.upper(i) - q.upper(i))});
    }
    return d;
}

inline double fuzzy_norm(const FuzzyNumber &p)
{
    double d = 0;
    for (std::size_t i = 0; i < p.levels(); ++i) {
        d = std::max({d, std::abs(p.lower(i)), std::abs(p.upper(i))});
    }
    return d;
}

// Applies a non-decreasing real map to both branches levelwise.
//
// Monotonicity of g on [min lower, max upper] is the caller's contract; it
// is spot-checked on a uniform sample of that range, and the result is
// validated as a fuzzy number.
template <typename Map>
FuzzyNumber apply_monotone(Map &&g, const FuzzyNumber &p)
{
    const auto m = p.levels();
    std::vector<double> lo(m), up(m);
    for (std::size_t i = 0; i < m; ++i) {
        lo[i] = g(p.lower(i));
        up[i] = g(p.upper(i));
        if (!std::isfinite(lo[i]) || !std::isfinite(up[i])) {
            throw FuzzyError("map produced a non-finite value at level " + std::to_string(i));
        }
    }

    const double a = p.lower(0);
    const double b = p.upper(0);
    if (b > a) {
        constexpr int samples = 16;
        double prev = g(a);
        for (int k = 1; k <= samples; ++k) {
            const double x = (k == samples) ? b : a + (b - a) * k / samples;
            const double gx = g(x);
            if (gx < prev - validation_tolerance) {
                throw FuzzyError("non-monotone map on support");
            }
            prev = gx;
        }
    }

    try {
        return FuzzyNumber(p.mu_grid(), std::move(lo), std::move(up));
    } catch (const FuzzyError &) {
        throw FuzzyError("non-monotone map on support");
    }
}

} // namespace fvie

#endif // FVIE_FUZZY_NUMBER_HPP
