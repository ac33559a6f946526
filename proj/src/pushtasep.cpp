// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/pushtasep.hpp"

namespace boxball
{
void push_in_place(std::span<std::int64_t> pos, std::size_t index)
{
    ++pos[index];
    for (std::size_t j = index + 1; j < pos.size() && pos[j] == pos[j - 1]; ++j)
    {
        ++pos[j];
    }
}

PushTasepState push_move(PushTasepState const& state, int particle)
{
    int const d = state.positions.size();
    if (particle < 1 || particle > d)
    {
        throw ValidationError("particle index out of range");
    }
    std::vector<std::int64_t> p(state.positions.positions().begin(), state.positions.positions().end());
    push_in_place(p, static_cast<std::size_t>(particle - 1));
    return {BallConfig(std::move(p)), state.clock};
}

PushTasepPath pushtasep_trajectory(PushTasepState const& init, double horizon, RngStream& rng)
{
    if (!(horizon >= 0.0))
    {
        throw ValidationError("horizon must be nonnegative");
    }
    int const d = init.positions.size();
    PushTasepPath path;
    path.states.push_back(init);
    double t = init.clock;
    double const end = init.clock + horizon;
    while (true)
    {
        t += rng.exponential(static_cast<double>(d));
        if (t > end)
        {
            break;
        }
        int const particle = static_cast<int>(rng.below(static_cast<std::uint32_t>(d))) + 1;
        path.events.push_back({t, particle});
        PushTasepState next = push_move(path.states.back(), particle);
        next.clock = t;
        path.states.push_back(std::move(next));
    }
    return path;
}

PushTasepPath pushtasep_jump_chain(BallConfig const& init, long jumps, RngStream& rng)
{
    if (jumps < 0)
    {
        throw ValidationError("jump count must be nonnegative");
    }
    int const d = init.size();
    PushTasepPath path;
    path.states.push_back({init, 0.0});
    for (long k = 0; k < jumps; ++k)
    {
        int const particle = static_cast<int>(rng.below(static_cast<std::uint32_t>(d))) + 1;
        path.events.push_back({static_cast<double>(k + 1), particle});
        PushTasepState next = push_move(path.states.back(), particle);
        next.clock = static_cast<double>(k + 1);
        path.states.push_back(std::move(next));
    }
    return path;
}

}  // namespace boxball
