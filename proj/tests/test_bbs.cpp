// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "boxball/bbs.hpp"

using namespace boxball;

namespace
{
BallConfig const kDisplay0({1, 2, 4, 6, 7, 8, 11, 13, 16});
BallConfig const kDisplay1({3, 5, 9, 10, 12, 14, 15, 17, 18});
BallConfig const kDisplay2({4, 6, 11, 13, 16, 19, 20, 21, 22});
BallConfig const kDisplay3({5, 7, 12, 14, 17, 23, 24, 25, 26});

CoinVector ones(int d)
{
    return CoinVector{std::vector<std::uint8_t>(static_cast<std::size_t>(d), 1)};
}

// Random strictly increasing configuration with gaps in [0, max_gap]
BallConfig random_config(RngStream& rng, int d, int max_gap, std::int64_t start_max = 5)
{
    std::vector<std::int64_t> p{static_cast<std::int64_t>(rng.below(static_cast<std::uint32_t>(start_max + 1)))};
    for (int i = 1; i < d; ++i)
    {
        p.push_back(p.back() + 1 + rng.below(static_cast<std::uint32_t>(max_gap + 1)));
    }
    return BallConfig(std::move(p));
}

CoinVector random_coins(RngStream& rng, int d)
{
    CoinVector c;
    for (int i = 0; i < d; ++i)
    {
        c.eta.push_back(static_cast<std::uint8_t>(rng.below(2)));
    }
    return c;
}

Capacity random_capacity(RngStream& rng, int d)
{
    auto const pick = rng.below(static_cast<std::uint32_t>(d + 1));
    return pick == 0 ? Capacity::unbounded() : Capacity::finite(static_cast<int>(pick));
}
}  // namespace

TEST_CASE("capacity parsing")
{
    CHECK(Capacity::parse("inf").is_unbounded());
    CHECK(Capacity::parse("3").limit() == 3);
    CHECK_THROWS_AS(Capacity::parse("0"), ValidationError);
    CHECK_THROWS_AS(Capacity::parse("2x"), ValidationError);
    CHECK(Capacity::unbounded().to_string() == "inf");
}

TEST_CASE("configuration validation")
{
    CHECK_THROWS_AS(BallConfig({2, 2}), ValidationError);
    CHECK_THROWS_AS(BallConfig({3, 1}), ValidationError);
    CHECK_THROWS_AS(BallConfig({-1, 4}), ValidationError);
    CHECK_THROWS_AS(BallConfig(std::vector<std::int64_t>{}), ValidationError);
    int const gaps[] = {0, 2};
    CHECK(BallConfig::from_gaps(gaps, 3) == BallConfig({3, 4, 7}));
    DynamicsParams bad{1.5, Capacity::unbounded(), 2};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("draw_coins extremes")
{
    RngStream rng(11, 0);
    for (int i = 0; i < 100; ++i)
    {
        CHECK(draw_coins({0.0, Capacity::unbounded(), 3}, rng).eta == std::vector<std::uint8_t>{1, 1, 1});
        CHECK(draw_coins({1.0, Capacity::unbounded(), 3}, rng).eta == std::vector<std::uint8_t>{0, 0, 0});
    }
}

TEST_CASE("draw_coins mean")
{
    RngStream rng(12, 0);
    DynamicsParams params{0.5, Capacity::unbounded(), 1};
    long sum = 0;
    int const n = 1000000;
    for (int i = 0; i < n; ++i)
    {
        sum += draw_coins(params, rng).eta[0];
    }
    CHECK(std::abs(double(sum) / n - 0.5) < 3 * (0.5 / 1000));
}

TEST_CASE("carrier sweep examples")
{
    CHECK(carrier_sweep(kDisplay0, Capacity::unbounded(), ones(9)).next == kDisplay1);

    CoinVector none{std::vector<std::uint8_t>(9, 0)};
    for (auto c : {Capacity::finite(1), Capacity::finite(3), Capacity::unbounded()})
    {
        CHECK(carrier_sweep(kDisplay0, c, none).next == kDisplay0);
    }

    CHECK(carrier_sweep(BallConfig({1, 2}), Capacity::finite(1), ones(2)).next == BallConfig({2, 3}));
}

TEST_CASE("carrier trace records loads and events")
{
    auto const r = carrier_sweep(BallConfig({1, 2}), Capacity::finite(1), ones(2));
    CHECK(r.trace.gamma == std::vector<int>{0, 0, 1, 1, 0});
    REQUIRE(r.trace.events.size() == 3);
    CHECK(r.trace.events[0].action == CarrierAction::pickup);
    CHECK(r.trace.events[1].action == CarrierAction::skip_full);
    CHECK(r.trace.events[2].action == CarrierAction::drop);
    CHECK(r.trace.events[2].site == 3);
}

TEST_CASE("trajectory reproduces the deterministic display")
{
    RngStream rng(1, 0);
    auto const traj = sbbs_trajectory(kDisplay0, {0.0, Capacity::unbounded(), 9}, 3, rng);
    REQUIRE(traj.size() == 4);
    CHECK(traj[0] == kDisplay0);
    CHECK(traj[1] == kDisplay1);
    CHECK(traj[2] == kDisplay2);
    CHECK(traj[3] == kDisplay3);

    auto const single = sbbs_trajectory(kDisplay0, {0.3, Capacity::unbounded(), 9}, 0, rng);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == kDisplay0);
}

TEST_CASE("single ball is a Bernoulli walk")
{
    for (double eps : {0.2, 0.7})
    {
        long const n = 100000;
        double sum = 0;
        for (int trial = 0; trial < 100; ++trial)
        {
            RngStream rng(99, static_cast<std::uint64_t>(trial));
            std::vector<std::int64_t> pos{0};
            std::vector<std::uint8_t> eta(1);
            BernoulliThreshold const success(1.0 - eps);
            for (long t = 0; t < n; ++t)
            {
                draw_coins_into(eta, success, rng);
                advance_in_place(pos, eta, Capacity::unbounded());
            }
            sum += static_cast<double>(pos[0]);
        }
        double const mean = sum / 100;
        CHECK(std::abs(mean - (1 - eps) * n) < 3 * std::sqrt(eps * (1 - eps) * n));
    }
}

TEST_CASE("property: sweep invariants over random inputs")
{
    RngStream rng(2024, 1);
    for (int iter = 0; iter < 2000; ++iter)
    {
        int const d = 1 + static_cast<int>(rng.below(10));
        auto const config = random_config(rng, d, 4);
        auto const coins = random_coins(rng, d);
        auto const cap = random_capacity(rng, d);
        auto const r = carrier_sweep(config, cap, coins);

        // ball count and strict order (the BallConfig constructor enforces order)
        REQUIRE(r.next.size() == d);
        // carrier feasibility
        REQUIRE(r.trace.gamma.front() == 0);
        REQUIRE(r.trace.gamma.back() == 0);
        for (std::size_t i = 1; i < r.trace.gamma.size(); ++i)
        {
            REQUIRE(r.trace.gamma[i] >= 0);
            REQUIRE(r.trace.gamma[i] <= cap.limit());
            REQUIRE(std::abs(r.trace.gamma[i] - r.trace.gamma[i - 1]) <= 1);
        }
        // balls never move left
        for (int i = 0; i < d; ++i)
        {
            REQUIRE(r.next[i] >= config[i]);
        }
        // fast path agrees
        REQUIRE(advance(config, cap, coins) == r.next);
        // translation equivariance
        auto const s = static_cast<std::int64_t>(rng.below(50));
        REQUIRE(carrier_sweep(config.shifted(s), cap, coins).next == r.next.shifted(s));
        // capacity >= d behaves as unbounded
        REQUIRE(advance(config, Capacity::finite(d), coins) == advance(config, Capacity::unbounded(), coins));
        // eps = 1 freeze
        REQUIRE(advance(config, cap, CoinVector{std::vector<std::uint8_t>(static_cast<std::size_t>(d), 0)}) == config);
    }
}

TEST_CASE("trajectories are deterministic in seed and stream")
{
    DynamicsParams params{0.4, Capacity::finite(2), 5};
    RngStream a(77, 3), b(77, 3);
    auto const pa = sbbs_path(BallConfig::block(5), params, 200, a);
    auto const pb = sbbs_path(BallConfig::block(5), params, 200, b);
    CHECK(pa.states == pb.states);
    CHECK(pa.coins == pb.coins);
}

TEST_CASE("soliton census examples")
{
    CHECK(soliton_census_ts(BallConfig({0, 1, 2})) == std::vector<int>{3});
    CHECK(soliton_census_ts(BallConfig({0, 1, 4})) == std::vector<int>{2, 1});
    CHECK(soliton_census_ts(kDisplay0) == soliton_census_ts(kDisplay3));
    CHECK(soliton_census_ts(kDisplay0) == std::vector<int>{4, 1, 1, 1, 1, 1});

    CHECK(run_soliton_census(BallConfig({0, 1, 2, 5, 6})) == std::vector<int>{3, 2});
    CHECK(run_soliton_census(BallConfig({0, 2, 4})) == std::vector<int>{1, 1, 1});
    CHECK(run_soliton_census(BallConfig({7})) == std::vector<int>{1});
}

TEST_CASE("property: soliton census is conserved by the deterministic dynamics")
{
    RngStream rng(31337, 0);
    for (int iter = 0; iter < 100; ++iter)
    {
        int const d = 1 + static_cast<int>(rng.below(20));
        auto config = random_config(rng, d, 3);
        auto const census = soliton_census_ts(config);
        int total = 0;
        for (int k : census)
        {
            total += k;
        }
        REQUIRE(total == d);
        for (int t = 0; t < 20; ++t)
        {
            config = advance(config, Capacity::unbounded(), ones(d));
            REQUIRE(soliton_census_ts(config) == census);
        }
    }
}
