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


#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support.hpp"

#include <fvie/cli.hpp>

namespace
{

using namespace fvie;
using fvie::testing::problem_path;
namespace fs = std::filesystem;

class Cli : public ::testing::Test
{
protected:
    void SetUp() override
    {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("fvie_cli_") + info->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override
    {
        fs::remove_all(dir);
    }

    fs::path write(const std::string &name, const std::string &text) const
    {
        const auto p = dir / name;
        std::ofstream(p) << text;
        return p;
    }

    static std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    static std::vector<std::vector<std::string>> csv(const fs::path &p)
    {
        std::vector<std::vector<std::string>> rows;
        std::istringstream in(slurp(p));
        std::string line;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::string cell;
            std::istringstream ls(line);
            while (std::getline(ls, cell, ',')) {
                cells.push_back(cell);
            }
            if (!line.empty() && line.back() == ',') {
                cells.emplace_back();
            }
            rows.push_back(cells);
        }
        return rows;
    }

    cli::SolveOptions solve_opts(const std::string &problem, const fs::path &out) const
    {
        cli::SolveOptions o;
        o.problem = problem_path(problem);
        o.out = out;
        o.threads = 1;
        return o;
    }

    fs::path dir;
    std::ostringstream out;
    std::ostringstream err;
};

TEST(Csv, FormatDouble)
{
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(-2.5), "-2.5");
    EXPECT_EQ(format_double(1e-20), "9.9999999999999995e-21");
    EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
    EXPECT_EQ(std::stod(format_double(0.7)), 0.7);
}

TEST_F(Cli, ValidateExitCodes)
{
    cli::ValidateOptions o;
    o.problem = problem_path("example1_short.prob");
    EXPECT_EQ(cli::cmd_validate(o, out, err), 0);
    EXPECT_NE(out.str().find("c = 0.33000000000000002 (< 1, contraction)"), std::string::npos);
    EXPECT_NE(out.str().find("curve chain: ok"), std::string::npos);
    EXPECT_NE(out.str().find("piece,M_t,C_t\n1,1.3,0.39000000000000001\n"), std::string::npos);

    o.problem = problem_path("example1.prob");
    EXPECT_EQ(cli::cmd_validate(o, out, err), 1);

    o.problem = problem_path("example2.prob");
    out.str("");
    EXPECT_EQ(cli::cmd_validate(o, out, err), 1);
    EXPECT_NE(out.str().find("warning: kernel piece 3 changes sign"), std::string::npos);

    o.problem = write("dup.prob", "interval 0 1\ninterval 0 2\n");
    EXPECT_EQ(cli::cmd_validate(o, out, err), 2);
    EXPECT_NE(err.str().find("line 2: duplicate section: interval"), std::string::npos);

    o.problem = dir / "missing.prob";
    EXPECT_EQ(cli::cmd_validate(o, out, err), 2);
}

TEST_F(Cli, ValidateOrderingViolation)
{
    cli::ValidateOptions o;
    o.problem = write("bad.prob", "interval 0 0.2\npiece 1 kernel \"1\" theta \"2*v\"\npiece 2 kernel \"1\"\n"
                                  "forcing lower \"0\" upper \"0\"\nlipschitz 1\n");
    EXPECT_EQ(cli::cmd_validate(o, out, err), 1);
    EXPECT_NE(out.str().find("curve ordering violated"), std::string::npos);
}

TEST_F(Cli, SolveZeroKernelWritesForcing)
{
    const auto o = solve_opts("zero_kernel.prob", dir / "zk");
    ASSERT_EQ(cli::cmd_solve(o, out, err), 0) << err.str();
    const auto rows = csv(dir / "zk" / "solution.csv");
    ASSERT_EQ(rows.front(), (std::vector<std::string>{"v", "mu", "lower", "upper"}));
    ASSERT_EQ(rows.size(), 1 + 129u * 11u);
    const auto spec = load_problem(o.problem);
    const auto f = sample_forcing(spec, SpaceGrid(0, 1, 128), MuGrid::uniform(11));
    for (std::size_t j = 0; j < f.size(); ++j) {
        for (std::size_t k = 0; k < 11; ++k) {
            const auto &row = rows[1 + j * 11 + k];
            EXPECT_EQ(row[2], format_double(f[j].lower(k)));
            EXPECT_EQ(row[3], format_double(f[j].upper(k)));
        }
    }
    EXPECT_FALSE(fs::exists(dir / "zk" / "error.csv"));
    const auto it = csv(dir / "zk" / "iterates.csv");
    ASSERT_EQ(it.size(), 2u);
    EXPECT_EQ(it[1], (std::vector<std::string>{"1", "0", "0", "0"}));
}

TEST_F(Cli, SolveExampleOne)
{
    auto o = solve_opts("example1.prob", dir / "ex1");
    o.tol = 0.0;
    ASSERT_EQ(cli::cmd_solve(o, out, err), 0) << err.str();
    const auto rows = csv(dir / "ex1" / "error.csv");
    ASSERT_EQ(rows.front(), (std::vector<std::string>{"v", "mu", "abs_err_lower", "abs_err_upper"}));
    double worst = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        worst = std::max({worst, std::stod(rows[i][2]), std::stod(rows[i][3])});
    }
    EXPECT_LT(worst, 5e-2);
    const auto it = csv(dir / "ex1" / "iterates.csv");
    ASSERT_EQ(it.size(), 21u);
    EXPECT_EQ(it[0], (std::vector<std::string>{"m", "step_distance", "apriori_bound", "residual"}));
    // c >= 1: the a-priori column stays empty.
    EXPECT_EQ(it[5][2], "");
    EXPECT_NE(slurp(dir / "ex1" / "report.txt").find("no contraction"), std::string::npos);
}

TEST_F(Cli, SolveExampleTwoAtHalf)
{
    auto o = solve_opts("example2.prob", dir / "ex2");
    o.mu_levels = 3;
    o.tol = 0.0;
    ASSERT_EQ(cli::cmd_solve(o, out, err), 0) << err.str();
    const auto rows = csv(dir / "ex2" / "error.csv");
    EXPECT_EQ(rows[2][1], "0.5");
    const auto it = csv(dir / "ex2" / "iterates.csv");
    EXPECT_EQ(it.size(), 21u);
}

TEST_F(Cli, SolveIsByteReproducible)
{
    auto a = solve_opts("example2.prob", dir / "a");
    auto b = solve_opts("example2.prob", dir / "b");
    a.threads = 1;
    b.threads = 4;
    ASSERT_EQ(cli::cmd_solve(a, out, err), 0);
    ASSERT_EQ(cli::cmd_solve(b, out, err), 0);
    for (const char *f : {"solution.csv", "iterates.csv", "error.csv", "report.txt"}) {
        EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
    }
}

TEST_F(Cli, SolveFailureWritesNothing)
{
    cli::SolveOptions o;
    o.problem = write("neg.prob", "interval 0 1\npiece 1 kernel \"-50\"\nforcing lower \"mu-1\" upper \"1-mu\"\n"
                                  "lipschitz 1\nproduct branchwise\n");
    o.out = dir / "neg";
    EXPECT_EQ(cli::cmd_solve(o, out, err), 3);
    EXPECT_NE(err.str().find("iterate is not a valid fuzzy number"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir / "neg"));

    o.problem = write("dom.prob", "interval 0 1\npiece 1 kernel \"log(v - r)\"\nforcing lower \"0\" upper \"0\"\n"
                                  "lipschitz 1\n");
    EXPECT_EQ(cli::cmd_solve(o, out, err), 3);
    o.problem = dir / "none.prob";
    EXPECT_EQ(cli::cmd_solve(o, out, err), 2);
    EXPECT_FALSE(fs::exists(dir / "neg"));
}

TEST_F(Cli, BoundZeroKernel)
{
    cli::BoundOptions o;
    o.problem = problem_path("zero_kernel.prob");
    o.threads = 1;
    EXPECT_EQ(cli::cmd_bound(o, out, err), 0);
    EXPECT_NE(out.str().find("1,0\n"), std::string::npos);
    EXPECT_NE(out.str().find("total = 0\n"), std::string::npos);
}

TEST_F(Cli, BoundFlagsHypothesis)
{
    cli::BoundOptions o;
    o.problem = problem_path("example1.prob");
    o.threads = 1;
    EXPECT_EQ(cli::cmd_bound(o, out, err), 4);
    EXPECT_NE(out.str().find("1,2,2,"), std::string::npos);
    EXPECT_NE(out.str().find("2,1,1,"), std::string::npos);
    EXPECT_NE(out.str().find("hypothesis violated: C_1 = 2 >= 1"), std::string::npos);
    EXPECT_EQ(out.str().find("total ="), std::string::npos);
    EXPECT_NE(out.str().find("a-priori bound not available"), std::string::npos);
}

TEST_F(Cli, BoundShortInterval)
{
    cli::BoundOptions o;
    o.problem = problem_path("example1_short.prob");
    o.threads = 1;
    ASSERT_EQ(cli::cmd_bound(o, out, err), 0);
    const auto text = out.str();
    const auto grab = [&](const std::string &key) {
        const auto p = text.find(key);
        EXPECT_NE(p, std::string::npos) << key;
        return std::stod(text.substr(p + key.size()));
    };
    EXPECT_GE(grab("total = "), grab("measured error: "));
}

} // namespace
