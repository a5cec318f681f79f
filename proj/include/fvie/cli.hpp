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


#ifndef FVIE_CLI_HPP
#define FVIE_CLI_HPP

// Command implementations behind tools/fvie. Each returns the process exit
// code: 0 success, 1 validation failed, 2 unreadable or malformed problem
// file, 3 solver error, 4 a-posteriori hypothesis violated.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fvie/bounds.hpp>
#include <fvie/csv.hpp>
#include <fvie/error.hpp>
#include <fvie/problem.hpp>
#include <fvie/problem_file.hpp>
#include <fvie/solver.hpp>

namespace fvie::cli
{

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid = 1,
    exit_parse = 2,
    exit_solver = 3,
    exit_hypothesis = 4,
};

struct ValidateOptions {
    std::filesystem::path problem;
    std::size_t n = 128;
};

struct SolveOptions {
    std::filesystem::path problem;
    std::size_t n = 128;
    std::size_t mu_levels = 11;
    std::size_t iters = 20;
    std::optional<double> tol;
    std::filesystem::path out = ".";
    unsigned threads = 0;
};

struct BoundOptions {
    std::filesystem::path problem;
    std::size_t n = 128;
    std::size_t mu_levels = 11;
    std::size_t iters = 20;
    unsigned threads = 0;
};

namespace detail
{

inline std::optional<ProblemSpec> load(const std::filesystem::path &path, std::ostream &err)
{
    try {
        return load_problem(path);
    } catch (const ProblemFileError &e) {
        err << path.string() << ": " << e.what() << '\n';
        return std::nullopt;
    }
}

inline SolverConfig config_for(std::size_t n, std::size_t mu_levels, std::size_t iters, std::optional<double> tol,
                               unsigned threads)
{
    SolverConfig cfg;
    cfg.n = n;
    cfg.mu_levels = mu_levels;
    cfg.m_max = iters;
    cfg.tol = tol;
    cfg.threads = threads;
    return cfg;
}

inline void write_constants(std::ostream &out, const std::vector<double> &m, const std::vector<double> &c)
{
    out << "piece,M_t,C_t\n";
    for (std::size_t t = 0; t < m.size(); ++t) {
        out << t + 1 << ',' << format_double(m[t]) << ',' << format_double(c[t]) << '\n';
    }
}

// All-or-nothing write: every file goes to a temporary first and is renamed
// only after all temporaries are complete.
inline void write_files(const std::filesystem::path &dir,
                        const std::vector<std::pair<std::string, std::string>> &files)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::pair<fs::path, fs::path>> staged;
    try {
        for (const auto &[name, body] : files) {
            const auto tmp = dir / ("." + name + ".tmp");
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            staged.emplace_back(tmp, dir / name);
            f.write(body.data(), static_cast<std::streamsize>(body.size()));
            f.close();
            if (!f) {
                throw Error("cannot write " + tmp.string());
            }
        }
        for (const auto &[tmp, dest] : staged) {
            fs::rename(tmp, dest);
        }
    } catch (...) {
        std::error_code ec;
        for (const auto &[tmp, dest] : staged) {
            fs::remove(tmp, ec);
        }
        throw;
    }
}

} // namespace detail

inline int cmd_validate(const ValidateOptions &opt, std::ostream &out, std::ostream &err)
{
    const auto spec = detail::load(opt.problem, err);
    if (!spec) {
        return exit_parse;
    }
    const SpaceGrid grid(spec->z1, spec->z2, opt.n);
    const auto rep = validate(*spec, grid);

    out << "problem: " << opt.problem.string() << '\n';
    out << "interval: [" << format_double(spec->z1) << ", " << format_double(spec->z2) << "], pieces: "
        << spec->piece_count() << ", grid n = " << opt.n << '\n';
    if (rep.ordering_ok()) {
        out << "curve chain: ok\n";
    } else {
        out << "curve chain: " << rep.ordering_violations.size() << " violation(s)\n";
        for (const auto &v : rep.ordering_violations) {
            out << "  " << v.message << '\n';
        }
    }
    for (const auto &s : rep.kernel_signs) {
        out << "kernel " << s.piece << ": range [" << format_double(s.min_value) << ", "
            << format_double(s.max_value) << "]\n";
    }
    for (const auto &w : rep.warnings) {
        out << "warning: " << w << '\n';
    }
    for (const auto &e : rep.errors) {
        out << "error: " << e << '\n';
    }
    if (!rep.kernel_maxima.empty()) {
        detail::write_constants(out, rep.kernel_maxima, rep.piece_constants);
    }
    if (rep.c) {
        out << "c = " << format_double(*rep.c) << (rep.contraction() ? " (< 1, contraction)\n" : " (>= 1, no contraction)\n");
    } else {
        out << "c = unavailable\n";
    }
    out << (rep.ok() ? "valid\n" : "invalid\n");
    return rep.ok() ? exit_ok : exit_invalid;
}

inline int cmd_solve(const SolveOptions &opt, std::ostream &out, std::ostream &err)
{
    const auto spec = detail::load(opt.problem, err);
    if (!spec) {
        return exit_parse;
    }
    try {
        const auto cfg = detail::config_for(opt.n, opt.mu_levels, opt.iters, opt.tol, opt.threads);
        const auto rep = solve(*spec, cfg);
        const auto &y = rep.solution;

        std::vector<std::pair<std::string, std::string>> files;
        files.emplace_back("solution.csv", grid_function_csv(y));

        std::string iter_csv;
        append_csv_row(iter_csv, {"m", "step_distance", "apriori_bound", "residual"});
        const auto res = rep.iterate_residuals();
        for (std::size_t i = 0; i < rep.iterations_used; ++i) {
            const auto apriori = rep.apriori_bounds.empty() ? std::string() : format_double(rep.apriori_bounds[i]);
            append_csv_row(iter_csv, {std::to_string(i + 1), format_double(rep.step_distances[i]), apriori,
                                      format_double(res[i])});
        }
        files.emplace_back("iterates.csv", std::move(iter_csv));

        std::optional<double> max_err;
        if (const auto exact = sample_exact(*spec, y.grid(), y.mu_grid())) {
            std::string err_csv;
            append_csv_row(err_csv, {"v", "mu", "abs_err_lower", "abs_err_upper"});
            double e = 0;
            for (std::size_t j = 0; j < y.size(); ++j) {
                const auto v = format_double(y.grid().node(j));
                for (std::size_t k = 0; k < y.mu_grid().size(); ++k) {
                    const double el = std::abs(y[j].lower(k) - (*exact)[j].lower(k));
                    const double eu = std::abs(y[j].upper(k) - (*exact)[j].upper(k));
                    e = std::max({e, el, eu});
                    append_csv_row(err_csv, {v, format_double(y.mu_grid()[k]), format_double(el), format_double(eu)});
                }
            }
            max_err = e;
            files.emplace_back("error.csv", std::move(err_csv));
        }

        std::ostringstream txt;
        txt << "problem: " << opt.problem.filename().string() << '\n';
        txt << "n: " << opt.n << "\nmu_levels: " << opt.mu_levels << "\nm_max: " << opt.iters << '\n';
        txt << "tol: " << format_double(rep.tol) << '\n';
        txt << "iterations: " << rep.iterations_used << '\n';
        txt << "c: " << format_double(rep.c) << (rep.contraction() ? "\n" : " (no contraction; a-priori bound omitted)\n");
        txt << "M0: " << format_double(rep.m0()) << '\n';
        txt << "final step distance: " << format_double(rep.step_distances.back()) << '\n';
        txt << "residual: " << format_double(rep.residual) << '\n';
        if (!rep.apriori_bounds.empty()) {
            txt << "apriori bound: " << format_double(rep.apriori_bounds.back()) << '\n';
        }
        if (rep.aposteriori_bound) {
            txt << "aposteriori bound: " << format_double(*rep.aposteriori_bound) << '\n';
        } else {
            txt << "aposteriori bound: not available (some C_t >= 1)\n";
        }
        if (max_err) {
            txt << "max abs error vs exact: " << format_double(*max_err) << '\n';
        }
        files.emplace_back("report.txt", txt.str());

        detail::write_files(opt.out, files);
        out << txt.str();
        return exit_ok;
    } catch (const ProblemFileError &e) {
        err << "error: " << e.what() << '\n';
        return exit_parse;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_solver;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_solver;
    }
}

inline int cmd_bound(const BoundOptions &opt, std::ostream &out, std::ostream &err)
{
    const auto spec = detail::load(opt.problem, err);
    if (!spec) {
        return exit_parse;
    }
    try {
        const auto cfg = detail::config_for(opt.n, opt.mu_levels, opt.iters, std::nullopt, opt.threads);
        const auto rep = solve(*spec, cfg);
        const SpaceGrid grid(spec->z1, spec->z2, opt.n);

        out << "problem: " << opt.problem.string() << '\n';
        out << "n: " << opt.n << ", h = " << format_double(grid.h()) << ", iterations: " << rep.iterations_used
            << '\n';
        out << "c = " << format_double(rep.c) << ", L = " << format_double(spec->lipschitz) << ", M0 = "
            << format_double(rep.m0()) << '\n';
        if (rep.contraction()) {
            out << "a-priori bounds\nm,bound\n";
            for (std::size_t m = 0; m < rep.apriori_bounds.size(); ++m) {
                out << m + 1 << ',' << format_double(rep.apriori_bounds[m]) << '\n';
            }
        } else {
            out << "a-priori bound not available: c >= 1\n";
        }

        const auto b = theorem6_bound(*spec, rep, grid);
        out << "a-posteriori bound at m = " << b.m << '\n';
        out << "piece,M_t,C_t,omega_Y,omega_s,omega_t,term1,term2,term3\n";
        for (const auto &p : b.pieces) {
            out << p.piece << ',' << format_double(p.kernel_max) << ',' << format_double(p.c);
            if (b.valid) {
                out << ',' << format_double(p.omega_forcing) << ',' << format_double(p.omega_s) << ','
                    << format_double(p.omega_t) << ',' << format_double(p.term1) << ',' << format_double(p.term2)
                    << ',' << format_double(p.term3);
            } else {
                out << ",,,,,,";
            }
            out << '\n';
        }
        if (const auto exact = sample_exact(*spec, grid, rep.solution.mu_grid())) {
            out << "measured error: " << format_double(sup_distance(*exact, rep.solution)) << '\n';
        }
        if (!b.valid) {
            out << b.message << "; a-posteriori bound not computed\n";
            return exit_hypothesis;
        }
        out << "L1 = " << format_double(b.l1) << ", L2 = " << format_double(b.l2) << '\n';
        out << "term1 = " << format_double(b.term1) << ", term2 = " << format_double(b.term2)
            << ", term3 = " << format_double(b.term3) << '\n';
        out << "total = " << format_double(b.total) << '\n';
        return exit_ok;
    } catch (const ProblemFileError &e) {
        err << "error: " << e.what() << '\n';
        return exit_parse;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_solver;
    }
}

} // namespace fvie::cli

#endif // FVIE_CLI_HPP
