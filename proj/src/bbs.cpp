// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/bbs.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

namespace boxball
{
//---------------------------------------------------------------------------//
Capacity Capacity::finite(int limit)
{
    if (limit < 1)
    {
        throw ValidationError("carrier capacity must be at least 1");
    }
    return Capacity(limit);
}

Capacity Capacity::parse(std::string_view text)
{
    if (text == "inf" || text == "infinity" || text == "unbounded" || text == "Unbounded")
    {
        return unbounded();
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
    {
        throw ValidationError("capacity must be a positive integer or 'inf', got '" + std::string(text) + "'");
    }
    return finite(value);
}

std::string Capacity::to_string() const
{
    return is_unbounded() ? std::string("inf") : std::to_string(limit_);
}

void DynamicsParams::validate() const
{
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
    {
        throw ValidationError("epsilon must lie in [0, 1]");
    }
    if (d < 1)
    {
        throw ValidationError("ball count d must be at least 1");
    }
}

//---------------------------------------------------------------------------//
BallConfig::BallConfig(std::vector<std::int64_t> positions) : positions_(std::move(positions))
{
    if (positions_.empty())
    {
        throw ValidationError("a configuration needs at least one ball");
    }
    if (positions_.front() < 0)
    {
        throw ValidationError("ball positions must be nonnegative");
    }
    for (std::size_t i = 1; i < positions_.size(); ++i)
    {
        if (positions_[i] <= positions_[i - 1])
        {
            throw ValidationError("ball positions must be strictly increasing");
        }
    }
}

BallConfig BallConfig::block(int d, std::int64_t start)
{
    std::vector<std::int64_t> p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
    {
        p[static_cast<std::size_t>(i)] = start + i;
    }
    return BallConfig(std::move(p));
}

BallConfig BallConfig::from_gaps(std::span<int const> gaps, std::int64_t start)
{
    std::vector<std::int64_t> p{start};
    for (int g : gaps)
    {
        if (g < 0)
        {
            throw ValidationError("gaps must be nonnegative");
        }
        p.push_back(p.back() + g + 1);
    }
    return BallConfig(std::move(p));
}

BallConfig BallConfig::shifted(std::int64_t offset) const
{
    auto p = positions_;
    for (auto& x : p)
    {
        x += offset;
    }
    return BallConfig(std::move(p));
}

//---------------------------------------------------------------------------//
void draw_coins_into(std::span<std::uint8_t> eta, BernoulliThreshold success, RngStream& rng)
{
    for (auto& e : eta)
    {
        e = success(rng.next_u32()) ? 1 : 0;
    }
}

CoinVector draw_coins(DynamicsParams const& params, RngStream& rng)
{
    params.validate();
    CoinVector coins;
    coins.eta.resize(static_cast<std::size_t>(params.d));
    draw_coins_into(coins.eta, BernoulliThreshold(1.0 - params.epsilon), rng);
    return coins;
}

//---------------------------------------------------------------------------//
SweepResult carrier_sweep(BallConfig const& config, Capacity capacity, CoinVector const& coins)
{
    if (coins.size() != config.size())
    {
        throw DimensionError("coin vector length must equal the ball count");
    }
    int const d = config.size();
    SweepResult result;
    auto& trace = result.trace;
    trace.gamma.push_back(0);

    std::vector<std::int64_t> next;
    next.reserve(static_cast<std::size_t>(d));
    int ball = 0;
    int load = 0;
    for (std::int64_t site = 0; ball < d || load > 0; ++site)
    {
        bool const occupied = ball < d && config[ball] == site;
        if (occupied)
        {
            bool const attempt = coins.eta[static_cast<std::size_t>(ball)] != 0;
            if (attempt && !capacity.full(load))
            {
                ++load;
                trace.events.push_back({site, CarrierAction::pickup});
            }
            else
            {
                next.push_back(site);
                trace.events.push_back({site, attempt ? CarrierAction::skip_full : CarrierAction::skip_failed});
            }
            ++ball;
        }
        else if (load > 0)
        {
            --load;
            next.push_back(site);
            trace.events.push_back({site, CarrierAction::drop});
        }
        trace.gamma.push_back(load);
    }
    result.next = BallConfig(std::move(next));
    return result;
}

void advance_in_place(std::span<std::int64_t> pos, std::span<std::uint8_t const> eta, Capacity capacity)
{
    std::size_t const d = pos.size();
    int load = 0;
    std::size_t out = 0;
    std::int64_t prev = -1;
    for (std::size_t i = 0; i < d; ++i)
    {
        std::int64_t const here = pos[i];
        if (load > 0)
        {
            // drop into the empty sites between the previous ball and this one
            std::int64_t const room = here - prev - 1;
            std::int64_t const k = std::min<std::int64_t>(load, room);
            for (std::int64_t s = 1; s <= k; ++s)
            {
                pos[out++] = prev + s;
            }
            load -= static_cast<int>(k);
        }
        if (eta[i] != 0 && !capacity.full(load))
        {
            ++load;
        }
        else
        {
            pos[out++] = here;
        }
        prev = here;
    }
    for (int s = 1; s <= load; ++s)
    {
        pos[out++] = prev + s;
    }
}

BallConfig advance(BallConfig const& config, Capacity capacity, CoinVector const& coins)
{
    if (coins.size() != config.size())
    {
        throw DimensionError("coin vector length must equal the ball count");
    }
    std::vector<std::int64_t> p(config.positions().begin(), config.positions().end());
    advance_in_place(p, coins.eta, capacity);
    return BallConfig(std::move(p));
}

std::vector<BallConfig> sbbs_trajectory(BallConfig const& init, DynamicsParams const& params, long steps, RngStream& rng)
{
    return sbbs_path(init, params, steps, rng).states;
}

SbbsPath sbbs_path(BallConfig const& init, DynamicsParams const& params, long steps, RngStream& rng)
{
    params.validate();
    if (init.size() != params.d)
    {
        throw DimensionError("initial configuration does not have d balls");
    }
    if (steps < 0)
    {
        throw ValidationError("step count must be nonnegative");
    }
    SbbsPath path;
    path.states.reserve(static_cast<std::size_t>(steps) + 1);
    path.coins.reserve(static_cast<std::size_t>(steps));
    path.states.push_back(init);
    for (long t = 0; t < steps; ++t)
    {
        CoinVector coins = draw_coins(params, rng);
        path.states.push_back(advance(path.states.back(), params.capacity, coins));
        path.coins.push_back(std::move(coins));
    }
    return path;
}

//---------------------------------------------------------------------------//
std::vector<int> soliton_census_ts(BallConfig const& config)
{
    int const d = config.size();
    std::int64_t const first = config[0];
    std::int64_t const last = config[d - 1];
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(last - first + 1 + d + 1), 0);
    for (auto p : config.positions())
    {
        bits[static_cast<std::size_t>(p - first)] = 1;
    }

    // Each pass deletes every adjacent "10" pair; the r-th pass removes as
    // many pairs as there are solitons of size >= r.
    std::vector<int> at_least;
    std::vector<std::uint8_t> rest;
    while (true)
    {
        rest.clear();
        int removed = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
        {
            if (bits[i] == 1 && i + 1 < bits.size() && bits[i + 1] == 0)
            {
                ++removed;
                ++i;
            }
            else
            {
                rest.push_back(bits[i]);
            }
        }
        if (removed == 0)
        {
            break;
        }
        at_least.push_back(removed);
        bits.swap(rest);
    }

    std::vector<int> sizes;
    for (std::size_t r = 0; r < at_least.size(); ++r)
    {
        int const next = r + 1 < at_least.size() ? at_least[r + 1] : 0;
        sizes.insert(sizes.end(), static_cast<std::size_t>(at_least[r] - next), static_cast<int>(r + 1));
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

std::vector<int> run_soliton_census(BallConfig const& config)
{
    std::vector<int> runs;
    int run = 1;
    for (int i = 1; i < config.size(); ++i)
    {
        if (config[i] == config[i - 1] + 1)
        {
            ++run;
        }
        else
        {
            runs.push_back(run);
            run = 1;
        }
    }
    runs.push_back(run);
    std::sort(runs.begin(), runs.end(), std::greater<>());
    return runs;
}

}  // namespace boxball
