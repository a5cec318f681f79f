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

#ifndef FVIE_SOLVER_HPP
#define FVIE_SOLVER_HPP

// Successive approximations y_0 = Y, y_m = A y_{m-1}, where the integral
// operator A is discretised with the composite trapezoid rule on each
// [theta_{t-1}(v_j), theta_t(v_j)]. Integration limits between nodes use
// linearly interpolated values of G(y).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <fvie/bounds.hpp>
#include <fvie/error.hpp>
#include <fvie/grid_function.hpp>
#include <fvie/problem.hpp>
#include <fvie/report.hpp>

namespace fvie
{

namespace detail
{

// Runs body(i) for i in [0, count) on up to `threads` workers, each on a
// contiguous block. Rethrows the first exception by block order.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body &&body)
{
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(threads, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = count * w / workers;
            const std::size_t end = count * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) {
                        body(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

// The discrete operator for one (problem, grid, mu-grid) triple. Kernel values
// at every quadrature abscissa are evaluated once on construction.
class DiscreteOperator
{
public:
    DiscreteOperator(const ProblemSpec &spec, FuzzyGridFunction forcing, unsigned threads = 1)
        : m_forcing(std::move(forcing)), m_nonlinearity(spec.nonlinearity), m_product(spec.product),
          m_threads(threads)
    {
        const auto &grid = m_forcing.grid();
        const auto bad = curve_violations(spec, grid);
        if (!bad.empty()) {
            throw ProblemError(bad.front().message);
        }
        m_nodes.resize(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double v = grid.node(j);
            auto &node = m_nodes[j];
            for (std::size_t t = 1; t <= spec.piece_count(); ++t) {
                const double a = curve_value(spec, t - 1, v);
                const double b = std::max(a, curve_value(spec, t, v));
                Segment seg;
                if (b > a) {
                    for (const auto &s : cut_samples(grid, a, b)) {
                        seg.samples.push_back({s.x, s.left, s.frac, kernel_value(spec, t, s.x, v)});
                    }
                }
                node.push_back(std::move(seg));
            }
        }
    }

    [[nodiscard]] const FuzzyGridFunction &forcing() const noexcept
    {
        return m_forcing;
    }

    // A y. When g_norm is given it receives sup_v ||G(y(v))||.
    FuzzyGridFunction apply(const FuzzyGridFunction &y, double *g_norm = nullptr) const
    {
        const auto &grid = m_forcing.grid();
        if (!(y.grid() == grid) || !(y.mu_grid() == m_forcing.mu_grid())) {
            throw GridError("operator applied to a function on a different grid");
        }
        const auto levels = y.mu_grid().size();

        // G(y) at the nodes, flattened [node][level].
        std::vector<double> glo(grid.size() * levels), ghi(grid.size() * levels);
        double gn = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            FuzzyNumber gi = [&] {
                try {
                    return m_nonlinearity(y[i]);
                } catch (const FuzzyError &e) {
                    std::ostringstream msg;
                    msg << "nonlinearity failed at v=" << grid.node(i) << " (node " << i << "): " << e.what();
                    throw SolverError(msg.str());
                }
            }();
            gn = std::max(gn, fuzzy_norm(gi));
            std::copy(gi.lower().begin(), gi.lower().end(), glo.begin() + static_cast<std::ptrdiff_t>(i * levels));
            std::copy(gi.upper().begin(), gi.upper().end(), ghi.begin() + static_cast<std::ptrdiff_t>(i * levels));
        }
        if (g_norm != nullptr) {
            *g_norm = gn;
        }

        std::vector<std::optional<FuzzyNumber>> out(grid.size());
        parallel_for(grid.size(), m_threads, [&](std::size_t j) { out[j] = node_value(j, glo, ghi, levels); });

        std::vector<FuzzyNumber> vals;
        vals.reserve(out.size());
        for (auto &v : out) {
            vals.push_back(std::move(*v));
        }
        return FuzzyGridFunction(grid, std::move(vals));
    }

private:
    struct Sample {
        double x;
        std::size_t left;
        double frac;
        double kernel;
    };
    struct Segment {
        std::vector<Sample> samples;
    };

    FuzzyNumber node_value(std::size_t j, const std::vector<double> &glo, const std::vector<double> &ghi,
                           std::size_t levels) const
    {
        std::vector<double> acc_lo(levels, 0.0), acc_hi(levels, 0.0);
        std::vector<double> seg_lo(levels), seg_hi(levels);
        std::vector<double> prev_lo(levels), prev_hi(levels), cur_lo(levels), cur_hi(levels);

        // K(x) . G(y(x)) at one abscissa, per level.
        const auto product = [&](const Sample &s, std::vector<double> &lo, std::vector<double> &hi) {
            for (std::size_t k = 0; k < levels; ++k) {
                const auto a = s.left * levels + k;
                double gl = glo[a];
                double gu = ghi[a];
                if (s.frac != 0.0) {
                    gl = (1.0 - s.frac) * gl + s.frac * glo[a + levels];
                    gu = (1.0 - s.frac) * gu + s.frac * ghi[a + levels];
                }
                if (s.kernel >= 0 || m_product == KernelProduct::branchwise) {
                    lo[k] = s.kernel * gl;
                    hi[k] = s.kernel * gu;
                } else {
                    lo[k] = s.kernel * gu;
                    hi[k] = s.kernel * gl;
                }
            }
        };

        for (const auto &seg : m_nodes[j]) {
            if (seg.samples.size() < 2) {
                continue;
            }
            std::fill(seg_lo.begin(), seg_lo.end(), 0.0);
            std::fill(seg_hi.begin(), seg_hi.end(), 0.0);
            product(seg.samples[0], prev_lo, prev_hi);
            for (std::size_t s = 1; s < seg.samples.size(); ++s) {
                product(seg.samples[s], cur_lo, cur_hi);
                const double w = 0.5 * (seg.samples[s].x - seg.samples[s - 1].x);
                for (std::size_t k = 0; k < levels; ++k) {
                    seg_lo[k] += w * (prev_lo[k] + cur_lo[k]);
                    seg_hi[k] += w * (prev_hi[k] + cur_hi[k]);
                }
                std::swap(prev_lo, cur_lo);
                std::swap(prev_hi, cur_hi);
            }
            for (std::size_t k = 0; k < levels; ++k) {
                acc_lo[k] += seg_lo[k];
                acc_hi[k] += seg_hi[k];
            }
        }

        const auto &yj = m_forcing[j];
        for (std::size_t k = 0; k < levels; ++k) {
            acc_lo[k] = yj.lower(k) + acc_lo[k];
            acc_hi[k] = yj.upper(k) + acc_hi[k];
        }
        try {
            return FuzzyNumber(yj.mu_grid(), std::move(acc_lo), std::move(acc_hi));
        } catch (const FuzzyError &e) {
            std::ostringstream msg;
            msg << "iterate is not a valid fuzzy number at v=" << m_forcing.grid().node(j) << " (node " << j
                << "): " << e.what();
            throw SolverError(msg.str());
        }
    }

    FuzzyGridFunction m_forcing;
    Nonlinearity m_nonlinearity;
    KernelProduct m_product;
    unsigned m_threads;
    std::vector<std::vector<Segment>> m_nodes; // [node][piece]
};

} // namespace detail

// Operator A applied once to y, on y's grid and mu-grid.
inline FuzzyGridFunction apply_operator(const ProblemSpec &spec, const FuzzyGridFunction &y)
{
    spec.check();
    detail::DiscreteOperator op(spec, sample_forcing(spec, y.grid(), y.mu_grid()));
    return op.apply(y);
}

// Fixed-point defect D*(y, A y).
inline double residual(const ProblemSpec &spec, const FuzzyGridFunction &y)
{
    return sup_distance(y, apply_operator(spec, y));
}

// c^{m+1} / (L (1 - c)) * M0.
inline double apriori_bound(double c, double lipschitz, double m0, std::size_t m)
{
    if (!(c >= 0) || c >= 1) {
        throw SolverError("no contraction: a-priori bound needs 0 <= c < 1, got c = " + std::to_string(c));
    }
    if (!(lipschitz > 0) || !(m0 >= 0)) {
        throw SolverError("a-priori bound needs L > 0 and M0 >= 0");
    }
    return std::pow(c, static_cast<double>(m + 1)) / (lipschitz * (1.0 - c)) * m0;
}

inline SolverReport solve(const ProblemSpec &spec, const SolverConfig &config = {})
{
    spec.check();
    config.check();
    const SpaceGrid grid(spec.z1, spec.z2, config.n);
    const auto mu = MuGrid::uniform(config.mu_levels);

    detail::DiscreteOperator op(spec, sample_forcing(spec, grid, mu), config.threads);
    const double c = contraction_constant(spec, grid);
    const auto &forcing = op.forcing();
    const double tol = config.tol.value_or(1e-10 * (1.0 + sup_norm(forcing)));

    std::vector<double> steps;
    std::vector<double> g_norms;
    std::vector<FuzzyGridFunction> history;
    if (config.keep_history) {
        history.push_back(forcing);
    }

    FuzzyGridFunction y = forcing;
    for (std::size_t m = 1; m <= config.m_max; ++m) {
        double gn = 0;
        auto next = op.apply(y, &gn);
        g_norms.push_back(gn);
        const double d = sup_distance(next, y);
        steps.push_back(d);
        y = std::move(next);
        if (config.keep_history) {
            history.push_back(y);
        }
        if (d < tol) {
            break;
        }
    }

    double gn = 0;
    const auto ay = op.apply(y, &gn);
    g_norms.push_back(gn);

    SolverReport rep{.solution = y};
    rep.iterations_used = steps.size();
    rep.step_distances = std::move(steps);
    rep.residual = sup_distance(y, ay);
    rep.c = c;
    rep.lipschitz = spec.lipschitz;
    rep.tol = tol;
    rep.g_norms = std::move(g_norms);
    rep.history = std::move(history);
    if (rep.contraction()) {
        for (std::size_t m = 1; m <= rep.iterations_used; ++m) {
            rep.apriori_bounds.push_back(apriori_bound(c, spec.lipschitz, rep.m0(), m));
        }
    }
    const auto b = theorem6_bound(spec, rep, grid);
    if (b.valid) {
        rep.aposteriori_bound = b.total;
    }
    return rep;
}

} // namespace fvie

#endif // FVIE_SOLVER_HPP
