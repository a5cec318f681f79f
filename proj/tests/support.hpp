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


#ifndef FVIE_TESTS_SUPPORT_HPP
#define FVIE_TESTS_SUPPORT_HPP

// Random generators for property tests. Every generator takes the engine by
// reference so that a test seeds once and replays deterministically.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <fvie/fvie.hpp>

namespace fvie::testing
{

using Rng = std::mt19937_64;

inline double uniform(Rng &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_int(Rng &rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double normal(Rng &rng)
{
    return std::normal_distribution<double>(0.0, 1.0)(rng);
}

// Random mu-grid: 0, sorted interior draws, 1.
inline MuGrid random_mu_grid(Rng &rng, std::size_t levels)
{
    std::vector<double> mu{0.0};
    std::vector<double> inner;
    for (std::size_t i = 0; i + 2 < levels; ++i) {
        inner.push_back(uniform(rng, 0.0, 1.0));
    }
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    mu.insert(mu.end(), inner.begin(), inner.end());
    mu.push_back(1.0);
    return MuGrid(mu);
}

// Core [a, b] at mu = 1 with a <= b; branches widen towards mu = 0 by
// non-negative random increments. Occasionally crisp.
inline FuzzyNumber random_fuzzy(Rng &rng, const MuGrid &mu, double scale = 5.0)
{
    const auto m = mu.size();
    std::vector<double> lo(m), up(m);
    const double centre = uniform(rng, -scale, scale);
    const bool crisp = uniform(rng, 0.0, 1.0) < 0.05;
    const double core = crisp ? 0.0 : uniform(rng, 0.0, scale / 4);
    lo[m - 1] = centre - core;
    up[m - 1] = centre + core;
    for (std::size_t i = m - 1; i-- > 0;) {
        lo[i] = lo[i + 1] - (crisp ? 0.0 : uniform(rng, 0.0, scale / 4));
        up[i] = up[i + 1] + (crisp ? 0.0 : uniform(rng, 0.0, scale / 4));
    }
    return FuzzyNumber(mu, std::move(lo), std::move(up));
}

// Smooth random fuzzy function on the grid: a random trigonometric centre with
// a non-negative spread, lower = c - (1 - mu) s and upper = c + (1 - mu) s.
struct SmoothFuzzyFn {
    double a[3];
    double w[3];
    double phi[3];
    double s0;
    double s1;
    double sw;

    [[nodiscard]] double centre(double v) const
    {
        double c = 0;
        for (int k = 0; k < 3; ++k) {
            c += a[k] * std::sin(w[k] * v + phi[k]);
        }
        return c;
    }
    [[nodiscard]] double spread(double v) const
    {
        return s0 + s1 * (1.0 + std::sin(sw * v));
    }
    [[nodiscard]] double lower(double v, double mu) const
    {
        return centre(v) - (1.0 - mu) * spread(v);
    }
    [[nodiscard]] double upper(double v, double mu) const
    {
        return centre(v) + (1.0 - mu) * spread(v);
    }
};

inline SmoothFuzzyFn random_smooth_fn(Rng &rng)
{
    SmoothFuzzyFn f{};
    for (int k = 0; k < 3; ++k) {
        f.a[k] = normal(rng);
        f.w[k] = uniform(rng, 0.5, 8.0);
        f.phi[k] = uniform(rng, 0.0, 2.0 * M_PI);
    }
    f.s0 = uniform(rng, 0.0, 0.5);
    f.s1 = uniform(rng, 0.0, 0.5);
    f.sw = uniform(rng, 0.5, 8.0);
    return f;
}

inline FuzzyGridFunction sample_smooth(const SmoothFuzzyFn &f, const SpaceGrid &grid, const MuGrid &mu)
{
    return FuzzyGridFunction::sample(
        grid, mu, [&](double v, double m) { return f.lower(v, m); }, [&](double v, double m) { return f.upper(v, m); });
}

// Arbitrary valid fuzzy values at every node, no continuity.
inline FuzzyGridFunction random_grid_function(Rng &rng, const SpaceGrid &grid, const MuGrid &mu)
{
    std::vector<FuzzyNumber> vals;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        vals.push_back(random_fuzzy(rng, mu));
    }
    return FuzzyGridFunction(grid, std::move(vals));
}

// Crisp composite trapezoid of node values y over [a, b] on the uniform grid
// z1 + i h, with linear interpolation at limits that fall between nodes.
// Written independently of the library but with the same panel order, so
// results are comparable bit for bit.
inline double reference_trapezoid(const std::vector<double> &y, double z1, double z2, double a, double b)
{
    const std::size_t n = y.size() - 1;
    const double h = (z2 - z1) / static_cast<double>(n);
    const auto node = [&](std::size_t i) { return i == n ? z2 : z1 + static_cast<double>(i) * h; };
    const auto at = [&](double x) {
        const double s = (x - z1) / h;
        const double r = std::round(s);
        if (std::abs(s - r) <= 1e-12 * std::max(1.0, std::abs(s))) {
            return y[static_cast<std::size_t>(r)];
        }
        const auto i = std::min(static_cast<std::size_t>(std::floor(s)), n - 1);
        const double t = (x - node(i)) / h;
        return (1.0 - t) * y[i] + t * y[i + 1];
    };
    if (a == b) {
        return 0.0;
    }
    std::vector<double> xs{a};
    for (std::size_t i = 0; i <= n; ++i) {
        if (node(i) > a && node(i) < b && std::abs((node(i) - a) / h) > 1e-12 && std::abs((b - node(i)) / h) > 1e-12) {
            xs.push_back(node(i));
        }
    }
    xs.push_back(b);
    double acc = 0.0;
    double prev = at(xs[0]);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double cur = at(xs[i]);
        acc += 0.5 * (xs[i] - xs[i - 1]) * (prev + cur);
        prev = cur;
    }
    return acc;
}

// Scalar Picard iteration for a crisp piecewise Volterra equation
// y(v) = y0(v) + sum_t int_{theta_{t-1}(v)}^{theta_t(v)} k_t(r, v) y(r) dr,
// with the same trapezoid and cut-point treatment as the fuzzy solver.
inline std::vector<double> scalar_picard(double z1, double z2, std::size_t n, std::size_t iters,
                                         const std::function<double(double)> &y0,
                                         const std::vector<std::function<double(double, double)>> &k,
                                         const std::vector<std::function<double(double)>> &theta)
{
    const double h = (z2 - z1) / static_cast<double>(n);
    std::vector<double> v(n + 1), forcing(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        v[i] = (i == n) ? z2 : z1 + static_cast<double>(i) * h;
        forcing[i] = y0(v[i]);
    }
    auto y = forcing;
    for (std::size_t it = 0; it < iters; ++it) {
        std::vector<double> next(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            double total = 0;
            double a = z1;
            for (std::size_t t = 0; t < k.size(); ++t) {
                const double b = std::max(a, theta[t](v[j]));
                if (b > a) {
                    // K at the abscissa times the interpolated iterate.
                    const auto ky = [&](double x) {
                        const double s = (x - z1) / h;
                        const double r = std::round(s);
                        double yx;
                        if (std::abs(s - r) <= 1e-12 * std::max(1.0, std::abs(s))) {
                            yx = y[static_cast<std::size_t>(r)];
                            x = v[static_cast<std::size_t>(r)];
                        } else {
                            const auto i = std::min(static_cast<std::size_t>(std::floor(s)), n - 1);
                            const double u = (x - v[i]) / h;
                            yx = (1.0 - u) * y[i] + u * y[i + 1];
                        }
                        return std::make_pair(x, k[t](x, v[j]) * yx);
                    };
                    std::vector<double> xs{a};
                    for (std::size_t i = 0; i <= n; ++i) {
                        if (v[i] > a + 1e-12 * h && v[i] < b - 1e-12 * h) {
                            xs.push_back(v[i]);
                        }
                    }
                    xs.push_back(b);
                    auto [x0, f0] = ky(xs[0]);
                    for (std::size_t s = 1; s < xs.size(); ++s) {
                        const auto [x1, f1] = ky(xs[s]);
                        total += 0.5 * (x1 - x0) * (f0 + f1);
                        x0 = x1;
                        f0 = f1;
                    }
                }
                a = b;
            }
            next[j] = forcing[j] + total;
        }
        y = std::move(next);
    }
    return y;
}

inline std::string problem_path(const std::string &name)
{
    return std::string(FVIE_PROBLEMS_DIR) + "/" + name;
}

} // namespace fvie::testing

#endif // FVIE_TESTS_SUPPORT_HPP
