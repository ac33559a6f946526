// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#include "boxball/io.hpp"

namespace
{
struct Run
{
    int code = -1;
    std::string out;
};

Run run(std::string const& args, std::string const& env = {})
{
    std::string const cmd = env + (env.empty() ? "" : " ") + BOXBALL_CLI_PATH + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0)
    {
        r.out.append(buf, n);
    }
    int const status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(std::filesystem::path const& p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::filesystem::path scratch(std::string const& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("boxball_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir / name;
}
}  // namespace

TEST_CASE("help for every subcommand")
{
    CHECK(run("--help").code == 0);
    for (auto const* sub :
         {"simulate", "pushtasep", "partition", "reflect", "scertify", "decompose", "srbm", "experiment"})
    {
        auto const r = run(std::string(sub) + " --help");
        CHECK_MESSAGE(r.code == 0, sub);
    }
}

TEST_CASE("exit codes")
{
    CHECK(run("simulate --bogus 1").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("simulate --eps 1.5 --d 2 --steps 3").code == 3);
    CHECK(run("simulate --init 3,2 --steps 3").code == 3);
    CHECK(run("partition --d 13").code == 3);
}

TEST_CASE("partition")
{
    auto const r = run("partition --d 3 --capacity inf");
    REQUIRE(r.code == 0);
    auto const j = nlohmann::json::parse(r.out);
    CHECK(j["k"] == 4);
    CHECK(j["cells"].size() == 4);
}

TEST_CASE("simulate reproduces the deterministic display")
{
    auto const r = run("simulate --eps 0 --capacity inf --init 1,2,4,6,7,8,11,13,16 --steps 3");
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    auto const t = boxball::read_csv(is);
    REQUIRE(t.rows.size() == 4);
    std::vector<std::vector<std::string>> const expected{{"1", "2", "4", "6", "7", "8", "11", "13", "16"},
                                                         {"3", "5", "9", "10", "12", "14", "15", "17", "18"},
                                                         {"4", "6", "11", "13", "16", "19", "20", "21", "22"},
                                                         {"5", "7", "12", "14", "17", "23", "24", "25", "26"}};
    for (std::size_t row = 0; row < 4; ++row)
    {
        for (std::size_t i = 0; i < 9; ++i)
        {
            CHECK(t.rows[row][t.column("pos_" + std::to_string(i + 1))] == expected[row][i]);
        }
    }
}

TEST_CASE("scertify")
{
    auto const r = run("scertify --d 3 --eps 0.5 --capacity inf");
    CHECK(r.code == 0);
    auto const j = nlohmann::json::parse(r.out);
    CHECK(j["verified"] == true);
}

TEST_CASE("simulate then decompose")
{
    auto const traj = scratch("traj.csv");
    auto const trace = scratch("trace.csv");
    REQUIRE(run("simulate --eps 1/3 --capacity 2 --d 4 --steps 500 --seed 5 --out " + traj.string()).code == 0);
    REQUIRE(run("decompose --in " + traj.string() + " --out " + trace.string()).code == 0);

    std::ifstream ts(traj);
    auto const path = boxball::read_csv(ts);
    std::ifstream rs(trace);
    auto const dec = boxball::read_csv(rs);
    CHECK(dec.comment("identity_holds") == "true");
    REQUIRE(dec.rows.size() == path.rows.size());
    for (std::size_t t = 0; t < path.rows.size(); ++t)
    {
        for (int i = 1; i < 4; ++i)
        {
            long const gap = std::stol(path.rows[t][path.column("pos_" + std::to_string(i + 1))])
                             - std::stol(path.rows[t][path.column("pos_" + std::to_string(i))]) - 1;
            CHECK(std::stol(dec.rows[t][dec.column("W_" + std::to_string(i))]) == gap);
        }
    }
}

TEST_CASE("experiment output does not depend on the thread count")
{
    auto const cfg = scratch("cfg.json");
    {
        std::ofstream os(cfg);
        os << R"({"name":"boundary_time","epsilon":0.5,"capacity":"inf","d":2,"n":[200,400],"trials":40,"seed":3})";
    }
    auto const a = scratch("a.csv");
    auto const b = scratch("b.csv");
    auto const ra = run("experiment --config " + cfg.string() + " --out " + a.string(), "BOXBALL_THREADS=1");
    auto const rb = run("experiment --config " + cfg.string() + " --out " + b.string(), "BOXBALL_THREADS=3");
    CHECK(ra.code == rb.code);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}
