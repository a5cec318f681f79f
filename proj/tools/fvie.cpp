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


#include <iostream>

#include <CLI11.hpp>

#include <fvie/cli.hpp>

int main(int argc, char **argv)
{
    CLI::App app{"fvie: successive approximations for fuzzy Volterra integral equations"};
    app.require_subcommand(1);

    fvie::cli::ValidateOptions vopt;
    auto *validate = app.add_subcommand("validate", "check the existence hypotheses of a problem file");
    validate->add_option("problem", vopt.problem, "problem file")->required();
    validate->add_option("--n", vopt.n, "grid panels")->check(CLI::PositiveNumber);

    fvie::cli::SolveOptions sopt;
    double tol = -1;
    auto *solve = app.add_subcommand("solve", "run the iteration and write CSV output");
    solve->add_option("problem", sopt.problem, "problem file")->required();
    solve->add_option("--n", sopt.n, "grid panels")->check(CLI::PositiveNumber);
    solve->add_option("--mu-levels", sopt.mu_levels, "uniform mu-levels")->check(CLI::Range(2, 100000));
    solve->add_option("--iters", sopt.iters, "maximum iterations")->check(CLI::PositiveNumber);
    auto *tol_opt = solve->add_option("--tol", tol, "stop when the step distance drops below this")
                        ->check(CLI::NonNegativeNumber);
    solve->add_option("--out", sopt.out, "output directory");
    solve->add_option("--threads", sopt.threads, "worker threads, 0 = all cores");

    fvie::cli::BoundOptions bopt;
    auto *bound = app.add_subcommand("bound", "print a-priori and a-posteriori error bounds");
    bound->add_option("problem", bopt.problem, "problem file")->required();
    bound->add_option("--n", bopt.n, "grid panels")->check(CLI::PositiveNumber);
    bound->add_option("--mu-levels", bopt.mu_levels, "uniform mu-levels")->check(CLI::Range(2, 100000));
    bound->add_option("--iters", bopt.iters, "maximum iterations")->check(CLI::PositiveNumber);
    bound->add_option("--threads", bopt.threads, "worker threads, 0 = all cores");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) {
        return fvie::cli::cmd_validate(vopt, std::cout, std::cerr);
    }
    if (solve->parsed()) {
        if (tol_opt->count() > 0) {
            sopt.tol = tol;
        }
        return fvie::cli::cmd_solve(sopt, std::cout, std::cerr);
    }
    return fvie::cli::cmd_bound(bopt, std::cout, std::cerr);
}
