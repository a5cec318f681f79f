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

#ifndef FVIE_BOUNDS_HPP
#define FVIE_BOUNDS_HPP

// A-posteriori error estimate for the discrete successive approximations:
//
//   D*(F, y_m) <= sum_t C_t / (2 (1 - C_t)) w_[theta_{t-1}, theta_t](Y, h)
//              +  sum_t C_t^{m+1} L1 / (L (1 - C_t))
//              +  sum_t (C_t^2 + 2 C_t) / (2 L M_t (1 - C_t)) (L1 w_s(K_t, h) + L2 w_t(K_t, h))
//
// with C_t = M_t L (z2 - z1) < 1 for every piece.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <fvie/csv.hpp>
#include <fvie/error.hpp>
#include <fvie/grid_function.hpp>
#include <fvie/problem.hpp>
#include <fvie/report.hpp>

namespace fvie
{

// Partial modulus in the first kernel argument: max over grid v and grid
// pairs x, y with |x - y| <= delta of |K(x, v) - K(y, v)|.
inline double partial_modulus_s(const KernelPiece &piece, double delta, const SpaceGrid &grid)
{
    if (!(delta >= 0)) {
        throw GridError("partial modulus needs delta >= 0");
    }
    const auto k = grid.steps_within(delta);
    double w = 0;
    std::vector<double> row(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            row[i] = piece.kernel.eval(Bindings{.r = grid.node(i), .v = grid.node(j), .mu = std::nullopt});
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (std::size_t d = 1; d <= k && i + d < grid.size(); ++d) {
                w = std::max(w, std::abs(row[i] - row[i + d]));
            }
        }
    }
    return w;
}

// Partial modulus in the second kernel argument.
inline double partial_modulus_t(const KernelPiece &piece, double delta, const SpaceGrid &grid)
{
    if (!(delta >= 0)) {
        throw GridError("partial modulus needs delta >= 0");
    }
    const auto k = grid.steps_within(delta);
    double w = 0;
    std::vector<double> col(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            col[j] = piece.kernel.eval(Bindings{.r = grid.node(i), .v = grid.node(j), .mu = std::nullopt});
        }
        for (std::size_t j = 0; j < grid.size(); ++j) {
            for (std::size_t d = 1; d <= k && j + d < grid.size(); ++d) {
                w = std::max(w, std::abs(col[j] - col[j + d]));
            }
        }
    }
    return w;
}

struct PieceBound {
    std::size_t piece = 0;
    double kernel_max = 0;   // M_t
    double c = 0;            // C_t
    double omega_forcing = 0;
    double omega_s = 0;
    double omega_t = 0;
    double term1 = 0;        // forcing-modulus term
    double term2 = 0;        // iteration-tail term
    double term3 = 0;        // kernel-moduli term
};

struct BoundBreakdown {
    std::vector<PieceBound> pieces;
    double term1 = 0;
    double term2 = 0;
    double term3 = 0;
    // Sum of the three terms; +inf when the hypothesis fails.
    double total = std::numeric_limits<double>::infinity();
    double l1 = 0;
    double l2 = 0;
    std::size_t m = 0;
    double h = 0;
    bool valid = false;      // every C_t < 1
    std::string message;
};

namespace detail
{

// Node range covering [min_v theta_{t-1}(v), max_v theta_t(v)].
inline NodeRange piece_span(const ProblemSpec &spec, std::size_t t, const SpaceGrid &grid)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.size(); ++j) {
        lo = std::min(lo, curve_value(spec, t - 1, grid.node(j)));
        hi = std::max(hi, curve_value(spec, t, grid.node(j)));
    }
    const double n = static_cast<double>(grid.n());
    const double a = std::clamp(std::floor((lo - grid.z1()) / grid.h() + 1e-9), 0.0, n);
    const double b = std::clamp(std::ceil((hi - grid.z1()) / grid.h() - 1e-9), 0.0, n);
    return {static_cast<std::size_t>(a), static_cast<std::size_t>(std::max(a, b))};
}

} // namespace detail

// Assembles the a-posteriori bound for iterate m (default: the report's last
// iterate) with h the grid spacing.
//
// L1 = max_{0 <= i <= m-1} sup ||G(y_i)|| and L2 = max_{0 <= i <= m-2} of the
// same quantity over the computed iterates (0 when m = 1). The forcing modulus
// for piece t is taken over [min_v theta_{t-1}(v), max_v theta_t(v)].
inline BoundBreakdown theorem6_bound(const ProblemSpec &spec, const SolverReport &report, const SpaceGrid &grid,
                                     std::optional<std::size_t> m_opt = std::nullopt)
{
    const std::size_t m = m_opt.value_or(report.iterations_used);
    if (m < 1 || m > report.iterations_used || report.g_norms.size() < m) {
        throw SolverError("bound requested for iterate " + std::to_string(m) + " but the report has "
                          + std::to_string(report.iterations_used));
    }

    BoundBreakdown out;
    out.m = m;
    out.h = grid.h();
    const double len = spec.z2 - spec.z1;
    const double lip = spec.lipschitz;

    for (std::size_t t = 1; t <= spec.piece_count(); ++t) {
        PieceBound p;
        p.piece = t;
        p.kernel_max = kernel_max(spec, t, grid);
        p.c = p.kernel_max * lip * len;
        out.pieces.push_back(p);
    }
    const auto worst = std::max_element(out.pieces.begin(), out.pieces.end(),
                                         [](const PieceBound &a, const PieceBound &b) { return a.c < b.c; });
    if (worst->c >= 1) {
        out.message = "hypothesis violated: C_" + std::to_string(worst->piece) + " = " + format_double(worst->c) + " >= 1";
        return out;
    }

    out.valid = true;
    out.l1 = *std::max_element(report.g_norms.begin(), report.g_norms.begin() + static_cast<std::ptrdiff_t>(m));
    out.l2 = m >= 2 ? *std::max_element(report.g_norms.begin(),
                                        report.g_norms.begin() + static_cast<std::ptrdiff_t>(m - 1))
                    : 0.0;

    const auto forcing = sample_forcing(spec, grid, report.solution.mu_grid());
    for (auto &p : out.pieces) {
        const auto &piece = spec.pieces[p.piece - 1];
        p.omega_forcing = modulus_of_continuity(forcing, grid.h(), detail::piece_span(spec, p.piece, grid));
        p.omega_s = partial_modulus_s(piece, grid.h(), grid);
        p.omega_t = partial_modulus_t(piece, grid.h(), grid);

        const double one_minus = 1.0 - p.c;
        p.term1 = p.c / (2.0 * one_minus) * p.omega_forcing;
        p.term2 = std::pow(p.c, static_cast<double>(m + 1)) * out.l1 / (lip * one_minus);
        // (C^2 + 2C) / (2 L M) = len (C + 2) / 2, which stays finite for M = 0.
        p.term3 = len * (p.c + 2.0) / (2.0 * one_minus) * (out.l1 * p.omega_s + out.l2 * p.omega_t);

        out.term1 += p.term1;
        out.term2 += p.term2;
        out.term3 += p.term3;
    }
    out.total = out.term1 + out.term2 + out.term3;
    return out;
}

} // namespace fvie

#endif // FVIE_BOUNDS_HPP
