// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/skorokhod.hpp"

#include <algorithm>

namespace boxball
{
namespace
{
void check_dimensions(BoundaryPartition const& partition, RationalMatrix const& r, int d)
{
    if (partition.d() != d)
    {
        throw DimensionError("partition ball count does not match the trajectory");
    }
    if (r.rows() != static_cast<std::size_t>(d - 1) || r.cols() != static_cast<std::size_t>(partition.k()))
    {
        throw DimensionError("reflection matrix must be (d-1) x k for the partition");
    }
}

template<class BulkFn>
SkorokhodTrace decompose(std::span<GapVector const> gaps, std::size_t nsteps, BulkFn&& bulk, BoundaryPartition const& partition, RationalMatrix const& r)
{
    std::size_t const m = r.rows();
    SkorokhodTrace trace;
    trace.d = partition.d();
    trace.k = partition.k();
    trace.steps.reserve(nsteps + 1);

    SkorokhodStep cur;
    cur.w = gaps[0].w;
    cur.x.assign(cur.w.begin(), cur.w.end());
    cur.y.assign(static_cast<std::size_t>(trace.k), 0);
    cur.alpha.assign(m, Rational(0));
    cur.cell = partition.locate(gaps[0]);
    for (std::size_t t = 0; t < nsteps; ++t)
    {
        SkorokhodStep next;
        next.w = gaps[t + 1].w;
        if (next.w.size() != m)
        {
            throw DimensionError("gap vectors change length along the trajectory");
        }
        Increment const dx = bulk(t);
        next.x = cur.x;
        next.y = cur.y;
        next.alpha = cur.alpha;
        for (std::size_t i = 0; i < m; ++i)
        {
            next.x[i] += dx[i];
        }
        if (cur.cell >= 0)
        {
            auto const j = static_cast<std::size_t>(cur.cell);
            ++next.y[j];
            for (std::size_t i = 0; i < m; ++i)
            {
                next.alpha[i] += (next.w[i] - cur.w[i] - dx[i]) - r(i, j);
            }
        }
        else
        {
            for (std::size_t i = 0; i < m; ++i)
            {
                next.alpha[i] += next.w[i] - cur.w[i] - dx[i];
            }
        }
        next.cell = partition.locate(gaps[t + 1]);
        trace.steps.push_back(std::move(cur));
        cur = std::move(next);
    }
    trace.steps.push_back(std::move(cur));
    return trace;
}

}  // namespace

//---------------------------------------------------------------------------//
SkorokhodTrace decompose_gaps(std::span<GapVector const> gaps, std::span<CoinVector const> coins, BoundaryPartition const& partition, RationalMatrix const& r)
{
    if (gaps.empty())
    {
        throw ValidationError("empty trajectory");
    }
    if (coins.size() + 1 != gaps.size())
    {
        throw DimensionError("need exactly one coin vector per step");
    }
    if (partition.model() != GapModel::sbbs)
    {
        throw ValidationError("SBBS decomposition needs an SBBS partition");
    }
    check_dimensions(partition, r, gaps[0].size() + 1);
    return decompose(
        gaps, coins.size(),
        [&](std::size_t t) {
            if (coins[t].size() != partition.d())
            {
                throw DimensionError("coin vector length must equal the ball count");
            }
            return bulk_increment(coins[t]);
        },
        partition, r);
}

SkorokhodTrace decompose_trajectory(SbbsPath const& path, BoundaryPartition const& partition, RationalMatrix const& r)
{
    std::vector<GapVector> gaps;
    gaps.reserve(path.states.size());
    for (auto const& s : path.states)
    {
        gaps.push_back(project(s));
    }
    return decompose_gaps(gaps, path.coins, partition, r);
}

SkorokhodTrace pushtasep_jump_decomposition(PushTasepPath const& path, BoundaryPartition const& partition, RationalMatrix const& r)
{
    if (path.states.empty())
    {
        throw ValidationError("empty trajectory");
    }
    if (partition.model() != GapModel::pushtasep_jump)
    {
        throw ValidationError("PushTASEP decomposition needs a PushTASEP partition");
    }
    int const d = path.states.front().positions.size();
    check_dimensions(partition, r, d);
    std::vector<GapVector> gaps;
    gaps.reserve(path.states.size());
    for (auto const& s : path.states)
    {
        gaps.push_back(project(s.positions));
    }
    return decompose(
        gaps, path.events.size(), [&](std::size_t t) { return push_bulk_increment(d, path.events[t].particle); },
        partition, r);
}

long verify_trace(SkorokhodTrace const& trace, RationalMatrix const& r)
{
    std::size_t const m = r.rows();
    for (std::size_t t = 0; t < trace.steps.size(); ++t)
    {
        auto const& s = trace.steps[t];
        for (std::size_t i = 0; i < m; ++i)
        {
            Rational ry = 0;
            for (std::size_t j = 0; j < s.y.size(); ++j)
            {
                if (s.y[j] != 0)
                {
                    ry += r(i, j) * s.y[j];
                }
            }
            if (Rational(s.w[i]) != s.x[i] + ry + s.alpha[i])
            {
                return static_cast<long>(t);
            }
        }
        if (t > 0)
        {
            auto const& prev = trace.steps[t - 1];
            long moved = 0;
            for (std::size_t j = 0; j < s.y.size(); ++j)
            {
                long const dy = s.y[j] - prev.y[j];
                if (dy < 0 || dy > 1 || (dy == 1 && static_cast<int>(j) != prev.cell))
                {
                    return static_cast<long>(t);
                }
                moved += dy;
            }
            if (moved != (prev.cell >= 0 ? 1 : 0))
            {
                return static_cast<long>(t);
            }
            if (prev.cell < 0)
            {
                for (std::size_t i = 0; i < m; ++i)
                {
                    if (s.alpha[i] != prev.alpha[i])
                    {
                        return static_cast<long>(t);
                    }
                }
            }
        }
    }
    return -1;
}

long boundary_local_time(std::span<GapVector const> gaps)
{
    return static_cast<long>(std::count_if(gaps.begin(), gaps.end(), [](GapVector const& g) { return g.on_boundary(); }));
}

long boundary_local_time(std::span<BallConfig const> states)
{
    long n = 0;
    for (auto const& s : states)
    {
        n += project(s).on_boundary() ? 1 : 0;
    }
    return n;
}

}  // namespace boxball
