// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file acceptance.cpp
//! Acceptance suite. `acceptance <name>` runs one criterion, `acceptance`
//! runs them all. Each criterion prints its checks and then one
//! "PASS <name>" or "FAIL <name>" line.
//---------------------------------------------------------------------------//
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "boxball/bbs.hpp"
#include "boxball/experiments.hpp"
#include "boxball/gaps.hpp"
#include "boxball/io.hpp"
#include "boxball/parallel.hpp"
#include "boxball/pushtasep.hpp"
#include "boxball/reflection.hpp"
#include "boxball/rng.hpp"
#include "boxball/skorokhod.hpp"
#include "boxball/srbm.hpp"

using namespace boxball;

namespace
{
//---------------------------------------------------------------------------//
// Pinned tolerances and sizes
//---------------------------------------------------------------------------//
constexpr double kRegressionBudgetSec = 1e-3;
constexpr double kIdentityBudgetSec = 30.0;
constexpr double kDecompositionBudgetSec = 60.0;
constexpr double kExactBudgetSec = 10.0;
constexpr double kDpBudgetSec = 60.0;

constexpr double kLocalTimeLo = 0.9;
constexpr double kLocalTimeHi = 1.1;
constexpr double kSlopeLo = 0.45;
constexpr double kSlopeHi = 0.55;
constexpr double kBallRelTol = 0.15;
constexpr double kBallZ = 3.0;
constexpr double kDpSe = 3.0;
constexpr double kHalfNormalKs = 0.03;
constexpr double kCrossPushKs = 0.05;
constexpr double kCrossSrbmKs = 0.06;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

class Checks
{
  public:
    void check(bool ok, std::string const& what)
    {
        std::cout << "  [" << (ok ? "ok" : "FAILED") << "] " << what << '\n';
        all_ &= ok;
    }
    void note(std::string const& what) { std::cout << "  [info] " << what << '\n'; }
    bool passed() const { return all_; }

  private:
    bool all_ = true;
};

std::string num(double x)
{
    std::ostringstream os;
    os.precision(5);
    os << x;
    return os.str();
}

std::vector<Rational> rational_eps_grid()
{
    return {Rational(0), Rational(1, 10), Rational(1, 5), Rational(1, 4), Rational(1, 3), Rational(1, 2),
            Rational(2, 3), Rational(3, 4), Rational(4, 5), Rational(9, 10), Rational(1)};
}

std::string report_line(EstimateReport const& r)
{
    std::string s = r.label + " = " + num(r.estimate);
    if (r.standard_error > 0)
        s += " (SE " + num(r.standard_error) + ")";
    if (r.predicted)
        s += ", predicted " + num(*r.predicted);
    s += ", band [" + num(r.lower) + ", " + num(r.upper) + "]";
    return s;
}

//---------------------------------------------------------------------------//
// Criteria
//---------------------------------------------------------------------------//

void regression(Checks& c)
{
    std::vector<BallConfig> const expected{BallConfig({1, 2, 4, 6, 7, 8, 11, 13, 16}),
                                           BallConfig({3, 5, 9, 10, 12, 14, 15, 17, 18}),
                                           BallConfig({4, 6, 11, 13, 16, 19, 20, 21, 22}),
                                           BallConfig({5, 7, 12, 14, 17, 23, 24, 25, 26})};
    RngStream rng(0, 0);
    auto const start = Clock::now();
    auto const traj = sbbs_trajectory(expected[0], {0.0, Capacity::unbounded(), 9}, 3, rng);
    double const elapsed = seconds_since(start);
    c.check(traj == expected, "four display rows reproduced exactly");
    c.check(elapsed < kRegressionBudgetSec, "elapsed " + num(elapsed * 1e3) + " ms < 1 ms");
}

void d2_identity(Checks& c)
{
    constexpr long kSeeds = 100;
    constexpr long kSteps = 100000;
    auto const start = Clock::now();
    std::vector<Capacity> const caps{Capacity::finite(1), Capacity::finite(2), Capacity::unbounded()};
    for (double eps : {0.2, 0.5, 0.8})
    {
        for (auto cap : caps)
        {
            auto const bad = parallel_map(kSeeds, resolve_threads(0), [&](long seed) -> long {
                RngStream rng(static_cast<std::uint64_t>(seed), 0);
                BernoulliThreshold const success(1.0 - eps);
                std::int64_t pos[2] = {0, 1};
                std::uint8_t eta[2];
                long x = 0;
                long min_x = 0;
                for (long t = 1; t <= kSteps; ++t)
                {
                    draw_coins_into(eta, success, rng);
                    x += static_cast<long>(eta[1]) - static_cast<long>(eta[0]);
                    min_x = std::min(min_x, x);
                    advance_in_place(pos, eta, cap);
                    if (pos[1] - pos[0] - 1 != x - min_x)
                        return t;
                }
                return 0;
            });
            long failures = 0;
            for (long b : bad)
                failures += b != 0;
            c.check(failures == 0, "eps=" + num(eps) + " c=" + cap.to_string() + ": W = X - min X on all "
                                       + std::to_string(kSeeds) + " seeds");
        }
    }
    double const elapsed = seconds_since(start);
    c.check(elapsed < kIdentityBudgetSec, "elapsed " + num(elapsed) + " s < 30 s");
}

void exact_decomposition(Checks& c)
{
    constexpr long kSteps = 10000;
    auto const start = Clock::now();
    for (int d : {3, 4, 5})
    {
        for (auto cap : {Capacity::finite(1), Capacity::finite(2), Capacity::unbounded()})
        {
            Rational const eps(1, 3);
            auto const part = build_partition(d, cap);
            auto const r = reflection_matrix(part, eps);
            RngStream rng(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(std::min(cap.limit(), 99)));
            auto const path = sbbs_path(BallConfig::block(d), {to_double(eps), cap, d}, kSteps, rng);
            auto const trace = decompose_trajectory(path, part, r);

            int const m = d - 1;
            int const k = part.k();
            bool identity = trace.steps.size() == path.states.size();
            bool pushes = true;
            auto const w0 = project(path.states[0]);
            std::vector<long> x(w0.w.begin(), w0.w.end());
            for (std::size_t t = 0; identity && t < trace.steps.size(); ++t)
            {
                auto const& s = trace.steps[t];
                auto const w = project(path.states[t]);
                if (t > 0)
                {
                    auto const dx = bulk_increment(path.coins[t - 1]);
                    for (int i = 0; i < m; ++i)
                        x[static_cast<std::size_t>(i)] += dx[static_cast<std::size_t>(i)];
                }
                if (s.w != w.w || s.x != x)
                {
                    identity = false;
                    break;
                }
                // W = X + R Y + alpha in exact arithmetic
                for (int i = 0; i < m; ++i)
                {
                    auto const ui = static_cast<std::size_t>(i);
                    Rational rhs = x[ui] + s.alpha[ui];
                    for (int j = 0; j < k; ++j)
                        rhs += r(ui, static_cast<std::size_t>(j)) * s.y[static_cast<std::size_t>(j)];
                    if (rhs != w.w[ui])
                        identity = false;
                }
                if (t + 1 < trace.steps.size())
                {
                    int const cell = part.locate(w);
                    int active = 0;
                    for (int j = 0; j < k; ++j)
                    {
                        auto const uj = static_cast<std::size_t>(j);
                        long const dy = trace.steps[t + 1].y[uj] - s.y[uj];
                        if (dy != 0 && dy != 1)
                            pushes = false;
                        if (dy == 1)
                        {
                            ++active;
                            if (j != cell)
                                pushes = false;
                        }
                    }
                    if (active != (cell >= 0 ? 1 : 0))
                        pushes = false;
                }
            }
            std::string const tag = "d=" + std::to_string(d) + " c=" + cap.to_string();
            c.check(identity, tag + ": W = X + RY + alpha exactly at all " + std::to_string(kSteps + 1) + " times");
            c.check(pushes, tag + ": Y increments in {0,1}, one active cell per boundary step");
        }
    }
    double const elapsed = seconds_since(start);
    c.check(elapsed < kDecompositionBudgetSec, "elapsed " + num(elapsed) + " s < 60 s");
}

void reflection_vectors(Checks& c)
{
    auto const start = Clock::now();
    for (int d = 2; d <= 5; ++d)
    {
        for (auto cap : {Capacity::finite(1), Capacity::finite(2), Capacity::unbounded()})
        {
            auto const part = build_partition(d, cap);
            bool ok = true;
            for (auto const& e : rational_eps_grid())
            {
                for (int j = 1; j <= d - 1; ++j)
                    ok &= empirical_reflection(part, j - 1, e) == analytic_principal_reflection(j, e, cap, d);
            }
            c.check(ok, "d=" + std::to_string(d) + " c=" + cap.to_string() + ": principal cells match on the grid");
        }
    }
    for (auto cap : {Capacity::finite(3), Capacity::unbounded()})
    {
        auto const part = build_partition(3, cap);
        bool ok = part.k() == 4;
        for (auto const& e : rational_eps_grid())
        {
            Rational const q = 1 - e;
            ok &= empirical_reflection(part, 2, e) == RationalVector{e * q * (3 - 2 * e), e * q * e};
            ok &= empirical_reflection(part, 3, e) == RationalVector{q * (1 - e + e * e), -q * (1 - e + e * e)};
        }
        c.check(ok, "d=3 c=" + cap.to_string() + ": R_3 and R_4 exact");
    }
    double const elapsed = seconds_since(start);
    c.check(elapsed < kExactBudgetSec, "elapsed " + num(elapsed) + " s < 10 s");
}

void matrices(Checks& c)
{
    auto const start = Clock::now();
    for (int d = 2; d <= 5; ++d)
    {
        for (auto cap : {Capacity::finite(1), Capacity::finite(2), Capacity::unbounded()})
        {
            auto const part = build_partition(d, cap);
            bool ok = true;
            for (auto const& e : rational_eps_grid())
            {
                auto const r = reflection_matrix(part, e);
                auto const hat = standard_matrices(d, e, cap).hat_r;
                for (int i = 0; i < d - 1; ++i)
                {
                    for (int j = 0; j < d - 1; ++j)
                    {
                        auto const ui = static_cast<std::size_t>(i);
                        auto const uj = static_cast<std::size_t>(j);
                        ok &= r(ui, uj) == (1 - e) * hat(ui, uj);
                    }
                }
            }
            c.check(ok, "d=" + std::to_string(d) + " c=" + cap.to_string() + ": first d-1 columns of R = (1-eps) hatR");
        }
    }
    for (int d : {3, 4})
    {
        for (auto cap : {Capacity::finite(1), Capacity::unbounded()})
        {
            auto const part = build_partition(d, cap);
            auto const f = degenerate_map(part);
            bool ok = true;
            for (int i = 1; i <= 9; ++i)
            {
                Rational const e(i, 10);
                auto const r = reflection_matrix(part, e);
                auto const cert = weakly_completely_s(r, f);
                ok &= cert.holds && verify_certificate(r, f, cert);
            }
            c.check(ok, "d=" + std::to_string(d) + " c=" + cap.to_string() + ": weakly completely-S certified on eps grid");
        }
    }
    for (int d = 2; d <= 5; ++d)
    {
        auto const part = build_pushtasep_partition(d);
        auto const r = reflection_matrix(part, Rational(0));
        auto const f = degenerate_map(part);
        auto const cert = weakly_completely_s(r, f);
        c.check(cert.holds && verify_certificate(r, f, cert),
                "PushTASEP d=" + std::to_string(d) + ": weakly completely-S certified");
    }
    double const elapsed = seconds_since(start);
    c.check(elapsed < kExactBudgetSec, "elapsed " + num(elapsed) + " s < 10 s");
}

ExperimentConfig base(std::string name, long trials, std::vector<long> n, std::uint64_t seed)
{
    ExperimentConfig cfg;
    cfg.name = std::move(name);
    cfg.trials = trials;
    cfg.n = std::move(n);
    cfg.seed = seed;
    return cfg;
}

void gate(Checks& c, ExperimentResult const& res, std::string const& label, std::string const& prefix = {})
{
    auto const& r = res.estimate(label);
    c.check(r.pass, prefix + report_line(r));
}

void local_time(Checks& c)
{
    auto cfg = base("boundary_time", 200, {1000000}, 101);
    cfg.epsilon = "0.5";
    auto const res = run_experiment(cfg);
    auto const& pub = res.estimate("local_time_ratio_published");
    c.check(pub.estimate >= kLocalTimeLo && pub.estimate <= kLocalTimeHi,
            "d=2: " + report_line(pub) + " (ratio to sqrt(2 eps^3 (1-eps)^3 n / pi))");
    c.note("d=2: " + report_line(res.estimate("local_time_ratio_corrected")) + " (ratio to sqrt(4n / (pi eps (1-eps))))");

    auto cfg3 = base("boundary_time", 400, {10000, 40000, 160000}, 102);
    cfg3.d = 3;
    cfg3.epsilon = "0.5";
    auto const res3 = run_experiment(cfg3);
    auto const& slope = res3.estimate("loglog_slope");
    c.check(slope.estimate >= kSlopeLo && slope.estimate <= kSlopeHi, "d=3: " + report_line(slope));
}

void ball_positions(Checks& c)
{
    for (auto cap : {Capacity::unbounded(), Capacity::finite(1)})
    {
        auto cfg = base("ball_positions", 1000, {1000000}, 201);
        cfg.epsilon = "0.5";
        cfg.capacity = cap;
        auto const res = run_experiment(cfg);
        std::string const tag = "c=" + cap.to_string() + ": ";
        auto const& b2 = res.estimate("ball2_coefficient");
        c.check(b2.predicted && std::abs(b2.estimate / *b2.predicted - 1.0) <= kBallRelTol, tag + report_line(b2));
        auto const& z = res.estimate("ball1_zscore");
        c.check(std::abs(z.estimate) < kBallZ, tag + report_line(z));
        for (auto const& r : res.estimates)
        {
            if (r.label.find("corrected") != std::string::npos)
                c.note(tag + report_line(r) + (r.pass ? " [in band]" : " [out of band]"));
        }
    }
}

void dp_oracle(Checks& c)
{
    auto const start = Clock::now();
    auto cfg = base("dp_boundary_time", 4000, {100, 1000, 10000}, 301);
    cfg.epsilons = {"0.2", "0.5", "0.8"};
    auto const res = run_experiment(cfg);
    for (auto const& r : res.estimates)
    {
        if (r.label.rfind("dp_vs_mc", 0) == 0)
        {
            bool const ok = r.predicted && std::abs(r.estimate - *r.predicted) <= kDpSe * r.standard_error;
            c.check(ok, report_line(r));
        }
    }
    double const elapsed = seconds_since(start);
    c.check(elapsed < kDpBudgetSec, "elapsed " + num(elapsed) + " s < 60 s");
}

void diffusive_d2(Checks& c)
{
    auto cfg = base("diffusive_limit", 10000, {10000}, 401);
    cfg.mode = "half_normal";
    cfg.epsilon = "0.5";
    auto const res = run_experiment(cfg);
    auto const& ks = res.estimate("ks_half_normal");
    c.check(ks.estimate < kHalfNormalKs, report_line(ks));
    c.note(report_line(res.estimate("ks_half_normal_unit_variance")));
}

void cross_model(Checks& c)
{
    auto push = base("diffusive_limit", 5000, {10000}, 501);
    push.mode = "cross_pushtasep";
    push.d = 3;
    push.epsilon = "0.5";
    push.capacity = Capacity::finite(1);
    auto const res = run_experiment(push);
    for (auto const& r : res.estimates)
    {
        if (r.label.rfind("ks_coord", 0) == 0)
            c.check(r.estimate < kCrossPushKs, "SBBS c=1 vs PushTASEP: " + report_line(r));
    }

    auto srbm = base("diffusive_limit", 5000, {10000}, 502);
    srbm.mode = "cross_srbm";
    srbm.d = 3;
    srbm.epsilon = "0.5";
    srbm.horizon = 1.0;
    srbm.dt = 1e-4;
    auto const res2 = run_experiment(srbm);
    for (auto const& r : res2.estimates)
    {
        if (r.label.rfind("ks_coord", 0) == 0)
            c.check(r.estimate < kCrossSrbmKs, "SBBS c=inf vs SRBM: " + report_line(r));
    }
}

void srbm_solver(Checks& c)
{
    constexpr long kSteps = 100000;
    double const dt = 1e-3;
    for (int m = 1; m <= 3; ++m)
    {
        auto const e = Rational(1, 3);
        auto const mats = standard_matrices(m + 1, e, Capacity::unbounded());
        SrbmSpec spec;
        spec.drift = Eigen::VectorXd::Constant(m, -0.2);
        spec.initial = Eigen::VectorXd::Zero(m);
        spec.covariance.resize(m, m);
        spec.reflection.resize(m, m);
        for (int i = 0; i < m; ++i)
        {
            for (int j = 0; j < m; ++j)
            {
                auto const ui = static_cast<std::size_t>(i);
                auto const uj = static_cast<std::size_t>(j);
                spec.covariance(i, j) = to_double(e * mats.sigma_pt(ui, uj));
                spec.reflection(i, j) = to_double(mats.hat_r(ui, uj));
            }
        }
        RngStream rng(601, static_cast<std::uint64_t>(m));
        auto const path = srbm_euler(spec, kSteps * dt, dt, rng);
        bool nonneg = path.w.size() == static_cast<std::size_t>(kSteps + 1);
        bool comp = true;
        long pushes = 0;
        for (std::size_t t = 0; t < path.w.size(); ++t)
        {
            for (int i = 0; i < m; ++i)
            {
                auto const ui = static_cast<std::size_t>(i);
                nonneg &= path.w[t][ui] >= 0.0;
                if (t > 0)
                {
                    double const dy = path.y[t][ui] - path.y[t - 1][ui];
                    nonneg &= dy >= 0.0;
                    if (dy > 0.0)
                    {
                        ++pushes;
                        comp &= path.w[t][ui] == 0.0;
                    }
                }
            }
        }
        std::string const tag = "m=" + std::to_string(m) + ": ";
        c.check(nonneg, tag + "W >= 0 and Y nondecreasing over " + std::to_string(kSteps) + " steps");
        c.check(comp && pushes > 0, tag + "dY_i > 0 only where W_i = 0 (" + std::to_string(pushes) + " pushes)");

        // direct LCP solves: w = z + R y, w >= 0, y >= 0, w_i y_i = 0
        RngStream zr(602, static_cast<std::uint64_t>(m));
        bool lcp = true;
        for (long s = 0; s < kSteps; ++s)
        {
            Eigen::VectorXd z(m);
            for (int i = 0; i < m; ++i)
                z(i) = zr.normal();
            auto const sol = solve_lcp(z, spec.reflection);
            Eigen::VectorXd const resid = z + spec.reflection * sol.y - sol.w;
            lcp &= resid.cwiseAbs().maxCoeff() <= 1e-12;
            for (int i = 0; i < m; ++i)
                lcp &= sol.w(i) >= 0.0 && sol.y(i) >= 0.0 && sol.w(i) * sol.y(i) == 0.0;
        }
        c.check(lcp, tag + std::to_string(kSteps) + " direct LCP solves complementary");
    }

    SrbmSpec one;
    one.drift = Eigen::VectorXd::Zero(1);
    one.initial = Eigen::VectorXd::Zero(1);
    one.covariance = Eigen::MatrixXd::Constant(1, 1, 0.7);
    one.reflection = Eigen::MatrixXd::Identity(1, 1);
    RngStream a(603, 0);
    RngStream b(603, 0);
    auto const pa = srbm_euler(one, kSteps * dt, dt, a);
    auto const pb = reflected_bm_1d(0.7, kSteps * dt, dt, b);
    bool same = pa.w.size() == pb.w.size();
    for (std::size_t t = 0; same && t < pa.w.size(); ++t)
        same = std::memcmp(pa.w[t].data(), pb.w[t].data(), sizeof(double)) == 0;
    c.check(same, "m=1 path bitwise equal to the reflected 1-d walk on shared noise");
}

void soliton_conservation(Checks& c)
{
    RngStream rng(701, 0);
    bool ok = true;
    bool agree = true;
    for (int trial = 0; trial < 100; ++trial)
    {
        int const d = 1 + static_cast<int>(rng.below(20));
        std::vector<int> gaps;
        for (int i = 0; i + 1 < d; ++i)
            gaps.push_back(rng.below(3) == 0 ? static_cast<int>(rng.below(6)) : 0);
        auto state = BallConfig::from_gaps(gaps, 0);
        auto const census = soliton_census_ts(state);
        CoinVector const coins{std::vector<std::uint8_t>(static_cast<std::size_t>(d), 1)};
        for (int t = 0; t < 20; ++t)
        {
            state = advance(state, Capacity::unbounded(), coins);
            ok &= soliton_census_ts(state) == census;
        }
        // long after the solitons separate, they are the runs
        for (int t = 0; t < 2000; ++t)
            state = advance(state, Capacity::unbounded(), coins);
        agree &= run_soliton_census(state) == census;
    }
    c.check(ok, "census invariant over 100 configs x 20 steps");
    c.check(agree, "pairing census equals the run lengths after 2000 more steps");
}

//---------------------------------------------------------------------------//
// Reproducibility through the CLI
//---------------------------------------------------------------------------//

int run_cli(std::string const& args, std::string const& env)
{
    std::string const cmd = env + " " + BOXBALL_CLI_PATH + " " + args + " >/dev/null 2>&1";
    int const status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(std::filesystem::path const& p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void reproducibility(Checks& c)
{
    auto const dir = std::filesystem::temp_directory_path() / ("boxball_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    std::vector<std::pair<std::string, std::string>> const configs{
        {"boundary_time", R"({"name":"boundary_time","d":3,"n":[1000,4000],"trials":200,"seed":11})"},
        {"ball_positions", R"({"name":"ball_positions","capacity":"1","n":5000,"trials":200,"seed":12})"},
        {"pushtasep_boundary", R"({"name":"pushtasep_boundary","d":3,"n":[100,400],"trials":200,"seed":13})"},
        {"diffusive_limit/half_normal",
         R"({"name":"diffusive_limit","mode":"half_normal","n":500,"trials":1000,"seed":14})"},
        {"diffusive_limit/cross_pushtasep",
         R"({"name":"diffusive_limit","mode":"cross_pushtasep","d":3,"capacity":"1","n":300,"trials":1000,"seed":15})"},
        {"diffusive_limit/cross_srbm",
         R"({"name":"diffusive_limit","mode":"cross_srbm","d":3,"n":300,"dt":0.001,"trials":1000,"seed":16})"},
        {"dp_boundary_time", R"({"name":"dp_boundary_time","epsilons":["0.2","0.5"],"n":[100,1000],"trials":300,"seed":17})"},
        {"sbbs_as_pushtasep",
         R"({"name":"sbbs_as_pushtasep","d":3,"capacity":"1","epsilons":["0.9","0.99"],"horizon":10,"trials":300,"seed":18})"},
        {"lazy_walk_local_time", R"({"name":"lazy_walk_local_time","n":[1000,4000],"trials":200,"seed":19})"},
        {"oscillation_fit", R"({"name":"oscillation_fit","d":3,"n":2000,"trials":40,"seed":20})"},
    };
    std::set<std::string> covered;
    for (std::size_t i = 0; i < configs.size(); ++i)
    {
        auto const& [label, json] = configs[i];
        covered.insert(nlohmann::json::parse(json)["name"].get<std::string>());
        auto const cfg = dir / ("config_" + std::to_string(i) + ".json");
        std::ofstream(cfg) << json;
        std::vector<std::string> outputs;
        for (int threads : {1, 2, 5})
        {
            auto const out = dir / ("out_" + std::to_string(i) + "_" + std::to_string(threads) + ".csv");
            int const code = run_cli("experiment --config " + cfg.string() + " --out " + out.string(),
                                     "BOXBALL_THREADS=" + std::to_string(threads));
            outputs.push_back(code == 0 || code == 1 ? slurp(out) : std::string());
        }
        bool const ok = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
        c.check(ok, label + ": CSV byte-identical for BOXBALL_THREADS in {1, 2, 5} (" + std::to_string(outputs[0].size())
                        + " bytes)");
    }
    auto const names = experiment_names();
    c.check(covered == std::set<std::string>(names.begin(), names.end()), "every experiment covered");
    std::filesystem::remove_all(dir);
}

//---------------------------------------------------------------------------//
}  // namespace

int main(int argc, char** argv)
{
    std::vector<std::pair<std::string, std::function<void(Checks&)>>> const criteria{
        {"regression", regression},
        {"d2_identity", d2_identity},
        {"exact_decomposition", exact_decomposition},
        {"reflection_vectors", reflection_vectors},
        {"matrices", matrices},
        {"local_time", local_time},
        {"ball_positions", ball_positions},
        {"dp_oracle", dp_oracle},
        {"diffusive_d2", diffusive_d2},
        {"cross_model", cross_model},
        {"srbm_solver", srbm_solver},
        {"soliton_conservation", soliton_conservation},
        {"reproducibility", reproducibility},
    };
    std::set<std::string> selected(argv + 1, argv + argc);
    for (auto const& name : selected)
    {
        bool known = false;
        for (auto const& [n, f] : criteria)
            known |= n == name;
        if (!known)
        {
            std::cerr << "unknown criterion '" << name << "'\n";
            return 2;
        }
    }

    int failed = 0;
    for (auto const& [name, fn] : criteria)
    {
        if (!selected.empty() && !selected.count(name))
            continue;
        std::cout << "== " << name << '\n';
        Checks checks;
        auto const start = Clock::now();
        try
        {
            fn(checks);
        }
        catch (std::exception const& e)
        {
            checks.check(false, std::string("exception: ") + e.what());
        }
        std::cout << (checks.passed() ? "PASS " : "FAIL ") << name << " (" << num(seconds_since(start)) << " s)\n"
                  << std::flush;
        failed += !checks.passed();
    }
    return failed == 0 ? 0 : 1;
}
