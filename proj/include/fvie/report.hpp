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

#ifndef FVIE_REPORT_HPP
#define FVIE_REPORT_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <fvie/error.hpp>
#include <fvie/grid_function.hpp>

namespace fvie
{

struct SolverConfig {
    std::size_t n = 128;         // panels on [z1, z2]
    std::size_t m_max = 20;      // iteration cap
    std::optional<double> tol;   // stop when D*(y_m, y_{m-1}) < tol; default 1e-10 * (1 + sup ||Y||)
    std::size_t mu_levels = 11;  // uniform mu-grid size
    bool keep_history = false;   // keep y_0..y_m in the report
    unsigned threads = 0;        // node-parallel workers; 0 = hardware concurrency

    void check() const
    {
        if (n < 1) {
            throw SolverError("solver config: n must be >= 1");
        }
        if (m_max < 1) {
            throw SolverError("solver config: m_max must be >= 1");
        }
        if (tol && !(*tol >= 0)) {
            throw SolverError("solver config: tol must be >= 0");
        }
        if (mu_levels < 2) {
            throw SolverError("solver config: at least 2 mu-levels are required");
        }
    }
};

struct SolverReport {
    FuzzyGridFunction solution;          // y_m at the last iteration
    std::size_t iterations_used = 0;     // m
    std::vector<double> step_distances{};  // D*(y_i, y_{i-1}), i = 1..m
    double residual = 0;                 // D*(y_m, A y_m)
    double c = 0;                        // contraction constant
    double lipschitz = 1;
    double tol = 0;                      // threshold actually used
    std::vector<double> g_norms{};         // sup_v ||G(y_i(v))||, i = 0..m
    std::vector<double> apriori_bounds{};  // bound for i = 1..m; empty when c >= 1
    std::optional<double> aposteriori_bound{};
    std::vector<FuzzyGridFunction> history{};

    [[nodiscard]] bool contraction() const noexcept
    {
        return c < 1;
    }

    // M0 = sup_v ||G(Y(v))||.
    [[nodiscard]] double m0() const
    {
        return g_norms.front();
    }

    // D*(y_i, A y_i) for i = 1..m. For i < m this is the next step distance.
    [[nodiscard]] std::vector<double> iterate_residuals() const
    {
        std::vector<double> out;
        for (std::size_t i = 1; i < step_distances.size(); ++i) {
            out.push_back(step_distances[i]);
        }
        out.push_back(residual);
        return out;
    }
};

} // namespace fvie

#endif // FVIE_REPORT_HPP
