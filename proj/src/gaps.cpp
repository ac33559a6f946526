// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/gaps.hpp"

#include <algorithm>
#include <map>

namespace boxball
{
namespace
{
//---------------------------------------------------------------------------//
std::vector<std::int64_t> positions_from_gaps(std::vector<int> const& w)
{
    std::vector<std::int64_t> p{0};
    for (int g : w)
    {
        p.push_back(p.back() + g + 1);
    }
    return p;
}

Increment sweep_increment(std::vector<int> const& w, std::vector<std::int64_t> const& base, std::vector<std::uint8_t> const& eta, Capacity capacity)
{
    auto p = base;
    advance_in_place(p, eta, capacity);
    Increment dw(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
    {
        dw[i] = static_cast<int>(p[i + 1] - p[i] - 1) - w[i];
    }
    return dw;
}

//! Iterate over all points of [0, clamp]^m in mixed-radix order
template<class F>
void for_each_box_point(int m, int clamp, F&& visit)
{
    std::vector<int> y(static_cast<std::size_t>(m), 0);
    int index = 0;
    while (true)
    {
        visit(index, y);
        ++index;
        int i = 0;
        for (; i < m; ++i)
        {
            if (++y[static_cast<std::size_t>(i)] <= clamp)
            {
                break;
            }
            y[static_cast<std::size_t>(i)] = 0;
        }
        if (i == m)
        {
            return;
        }
    }
}

bool has_zero(std::vector<int> const& y)
{
    return std::find(y.begin(), y.end(), 0) != y.end();
}

//! Fill representative, degenerate set and box flag from member points
void describe_cell(BoundaryCell& cell, std::vector<std::vector<int>> const& members, int clamp, std::map<std::vector<int>, int> const& owner, int self)
{
    std::size_t const m = members.front().size();
    std::vector<int> lo = members.front();
    std::vector<bool> pinned(m, true);
    for (auto const& y : members)
    {
        for (std::size_t i = 0; i < m; ++i)
        {
            lo[i] = std::min(lo[i], y[i]);
            pinned[i] = pinned[i] && y[i] == members.front()[i];
        }
    }
    cell.representative = GapVector{lo};
    cell.degenerate.clear();
    for (std::size_t i = 0; i < m; ++i)
    {
        if (pinned[i] && lo[i] < clamp)
        {
            cell.degenerate.push_back(static_cast<int>(i) + 1);
        }
    }
    cell.members_in_box = static_cast<int>(members.size());

    // The cell is a box iff it equals {y_f = rep_f, y_i >= rep_i otherwise}
    int expected = 0;
    bool all_owned = true;
    for_each_box_point(static_cast<int>(m), clamp, [&](int, std::vector<int> const& y) {
        for (std::size_t i = 0; i < m; ++i)
        {
            bool const fixed = std::find(cell.degenerate.begin(), cell.degenerate.end(), static_cast<int>(i) + 1) != cell.degenerate.end();
            if (fixed ? y[i] != lo[i] : y[i] < lo[i])
            {
                return;
            }
        }
        ++expected;
        auto it = owner.find(y);
        all_owned = all_owned && it != owner.end() && it->second == self;
    });
    cell.is_box = all_owned && expected == cell.members_in_box;
}

std::vector<int> principal_point(int m, int i)
{
    std::vector<int> y(static_cast<std::size_t>(m), 1);
    y[static_cast<std::size_t>(i)] = 0;
    if (i + 1 < m)
    {
        y[static_cast<std::size_t>(i + 1)] = 2;
    }
    return y;
}

}  // namespace

//---------------------------------------------------------------------------//
bool GapVector::on_boundary() const
{
    return std::find(w.begin(), w.end(), 0) != w.end();
}

GapVector project(std::span<std::int64_t const> positions)
{
    if (positions.size() < 2)
    {
        throw DimensionError("gap projection needs at least two balls");
    }
    GapVector g;
    g.w.resize(positions.size() - 1);
    for (std::size_t i = 0; i + 1 < positions.size(); ++i)
    {
        g.w[i] = static_cast<int>(positions[i + 1] - positions[i] - 1);
    }
    return g;
}

GapVector project(BallConfig const& config)
{
    return project(config.positions());
}

Increment bulk_increment(CoinVector const& coins)
{
    if (coins.size() < 2)
    {
        throw DimensionError("bulk increment needs at least two coins");
    }
    Increment dx(coins.eta.size() - 1);
    for (std::size_t i = 0; i < dx.size(); ++i)
    {
        dx[i] = static_cast<int>(coins.eta[i + 1]) - static_cast<int>(coins.eta[i]);
    }
    return dx;
}

CoinVector coins_from_mask(int d, unsigned mask)
{
    CoinVector c;
    c.eta.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
    {
        c.eta[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
    }
    return c;
}

std::vector<Increment> coin_response(GapVector const& w, Capacity capacity)
{
    int const d = w.size() + 1;
    if (d > kMaxKernelBalls)
    {
        throw DimensionError("coin enumeration supports at most " + std::to_string(kMaxKernelBalls) + " balls");
    }
    for (int g : w.w)
    {
        if (g < 0)
        {
            throw ValidationError("gaps must be nonnegative");
        }
    }
    auto const base = positions_from_gaps(w.w);
    std::vector<Increment> out;
    out.reserve(std::size_t{1} << d);
    for (unsigned mask = 0; mask < (1U << d); ++mask)
    {
        out.push_back(sweep_increment(w.w, base, coins_from_mask(d, mask).eta, capacity));
    }
    return out;
}

std::map<Increment, Rational> exact_kernel(GapVector const& w, Rational const& eps, Capacity capacity)
{
    if (eps < 0 || eps > 1)
    {
        throw ValidationError("epsilon must lie in [0, 1]");
    }
    int const d = w.size() + 1;
    auto const response = coin_response(w, capacity);
    Rational const succ = 1 - eps;
    std::map<Increment, Rational> kernel;
    for (unsigned mask = 0; mask < response.size(); ++mask)
    {
        Rational weight = 1;
        for (int i = 0; i < d; ++i)
        {
            weight *= ((mask >> i) & 1U) ? succ : eps;
        }
        if (weight != 0)
        {
            kernel[response[mask]] += weight;
        }
    }
    return kernel;
}

RationalVector mean_increment(GapVector const& w, Rational const& eps, Capacity capacity)
{
    RationalVector mean(static_cast<std::size_t>(w.size()));
    for (auto const& [dw, p] : exact_kernel(w, eps, capacity))
    {
        for (std::size_t i = 0; i < dw.size(); ++i)
        {
            mean[i] += p * dw[i];
        }
    }
    return mean;
}

//---------------------------------------------------------------------------//
CellSignature cell_signature(GapVector const& w, int d, Capacity capacity)
{
    if (w.size() != d - 1)
    {
        throw DimensionError("gap vector must have d - 1 entries");
    }
    if (!w.on_boundary())
    {
        throw ValidationError("cell signature requested for an interior point");
    }
    GapVector clamped = w;
    for (auto& g : clamped.w)
    {
        g = std::min(g, d);
    }
    CellSignature sig;
    for (auto const& dw : coin_response(clamped, capacity))
    {
        for (int v : dw)
        {
            sig.data.push_back(static_cast<std::int8_t>(v));
        }
    }
    return sig;
}

//---------------------------------------------------------------------------//
int BoundaryPartition::locate(std::span<int const> w) const
{
    if (static_cast<int>(w.size()) != d_ - 1)
    {
        throw DimensionError("gap vector does not match the partition dimension");
    }
    int index = 0;
    int stride = 1;
    for (int g : w)
    {
        if (g < 0)
        {
            throw ValidationError("gaps must be nonnegative");
        }
        index += std::min(g, clamp_) * stride;
        stride *= clamp_ + 1;
    }
    return table_[static_cast<std::size_t>(index)];
}

int BoundaryPartition::locate(GapVector const& w) const
{
    return locate(std::span<int const>(w.w));
}

bool BoundaryPartition::principal_structure_ok() const
{
    for (int j = 0; j < k(); ++j)
    {
        auto const& f = cells_[static_cast<std::size_t>(j)].degenerate;
        bool const singleton = f.size() == 1;
        if (j < d_ - 1)
        {
            if (!singleton || f.front() != j + 1)
            {
                return false;
            }
        }
        else if (singleton)
        {
            return false;
        }
    }
    return k() >= d_ - 1;
}

BoundaryPartition build_partition(int d, Capacity capacity)
{
    if (d < 2 || d > kMaxPartitionBalls)
    {
        throw DimensionError("boundary partitions are supported for 2 <= d <= " + std::to_string(kMaxPartitionBalls));
    }
    int const m = d - 1;
    int const clamp = d;

    std::map<CellSignature, std::vector<std::vector<int>>> groups;
    for_each_box_point(m, clamp, [&](int, std::vector<int> const& y) {
        if (has_zero(y))
        {
            groups[cell_signature(GapVector{y}, d, capacity)].push_back(y);
        }
    });

    // Order: the cells holding the principal points first, then by representative
    std::map<std::vector<int>, CellSignature const*> by_point;
    for (auto const& [sig, members] : groups)
    {
        for (auto const& y : members)
        {
            by_point[y] = &sig;
        }
    }
    std::vector<CellSignature const*> order;
    for (int i = 0; i < m; ++i)
    {
        auto const* sig = by_point.at(principal_point(m, i));
        if (std::find(order.begin(), order.end(), sig) == order.end())
        {
            order.push_back(sig);
        }
    }
    std::vector<std::pair<std::vector<int>, CellSignature const*>> rest;
    for (auto const& [sig, members] : groups)
    {
        if (std::find(order.begin(), order.end(), &sig) != order.end())
        {
            continue;
        }
        std::vector<int> lo = members.front();
        for (auto const& y : members)
        {
            for (std::size_t i = 0; i < lo.size(); ++i)
            {
                lo[i] = std::min(lo[i], y[i]);
            }
        }
        rest.emplace_back(lo, &sig);
    }
    std::sort(rest.begin(), rest.end());
    for (auto const& r : rest)
    {
        order.push_back(r.second);
    }

    std::map<std::vector<int>, int> owner;
    for (std::size_t j = 0; j < order.size(); ++j)
    {
        for (auto const& y : groups.at(*order[j]))
        {
            owner[y] = static_cast<int>(j);
        }
    }

    BoundaryPartition part;
    part.model_ = GapModel::sbbs;
    part.d_ = d;
    part.capacity_ = capacity;
    part.clamp_ = clamp;
    for (std::size_t j = 0; j < order.size(); ++j)
    {
        BoundaryCell cell;
        cell.id = static_cast<int>(j) + 1;
        describe_cell(cell, groups.at(*order[j]), clamp, owner, static_cast<int>(j));
        part.cells_.push_back(std::move(cell));
    }
    for_each_box_point(m, clamp, [&](int index, std::vector<int> const& y) {
        auto it = owner.find(y);
        part.table_.push_back(it == owner.end() ? -1 : it->second);
        (void)index;
    });
    return part;
}

//---------------------------------------------------------------------------//
Increment push_increment(GapVector const& w, int particle)
{
    int const d = w.size() + 1;
    if (particle < 1 || particle > d)
    {
        throw ValidationError("particle index out of range");
    }
    Increment dw(static_cast<std::size_t>(w.size()), 0);
    if (particle > 1)
    {
        dw[static_cast<std::size_t>(particle - 2)] += 1;
    }
    for (int j = particle - 1; j < w.size(); ++j)
    {
        if (w[j] > 0)
        {
            dw[static_cast<std::size_t>(j)] -= 1;
            break;
        }
    }
    return dw;
}

Increment push_bulk_increment(int d, int particle)
{
    if (particle < 1 || particle > d)
    {
        throw ValidationError("particle index out of range");
    }
    Increment dx(static_cast<std::size_t>(d - 1), 0);
    if (particle > 1)
    {
        dx[static_cast<std::size_t>(particle - 2)] += 1;
    }
    if (particle < d)
    {
        dx[static_cast<std::size_t>(particle - 1)] -= 1;
    }
    return dx;
}

BoundaryPartition build_pushtasep_partition(int d)
{
    if (d < 2 || d > kMaxPartitionBalls + 4)
    {
        throw DimensionError("PushTASEP partitions are supported for 2 <= d <= " + std::to_string(kMaxPartitionBalls + 4));
    }
    int const m = d - 1;
    std::vector<std::vector<int>> points;
    for_each_box_point(m, 1, [&](int, std::vector<int> const& y) {
        if (has_zero(y))
        {
            points.push_back(y);
        }
    });
    std::vector<std::vector<int>> order;
    for (int i = 0; i < m; ++i)
    {
        std::vector<int> y(static_cast<std::size_t>(m), 1);
        y[static_cast<std::size_t>(i)] = 0;
        order.push_back(y);
    }
    std::sort(points.begin(), points.end());
    for (auto const& y : points)
    {
        if (std::count(y.begin(), y.end(), 0) > 1)
        {
            order.push_back(y);
        }
    }

    BoundaryPartition part;
    part.model_ = GapModel::pushtasep_jump;
    part.d_ = d;
    part.capacity_ = Capacity::unbounded();
    part.clamp_ = 1;
    std::map<std::vector<int>, int> owner;
    for (std::size_t j = 0; j < order.size(); ++j)
    {
        owner[order[j]] = static_cast<int>(j);
        BoundaryCell cell;
        cell.id = static_cast<int>(j) + 1;
        cell.representative = GapVector{order[j]};
        for (int i = 0; i < m; ++i)
        {
            if (order[j][static_cast<std::size_t>(i)] == 0)
            {
                cell.degenerate.push_back(i + 1);
            }
        }
        cell.members_in_box = 1;
        cell.is_box = true;
        part.cells_.push_back(std::move(cell));
    }
    for_each_box_point(m, 1, [&](int, std::vector<int> const& y) {
        auto it = owner.find(y);
        part.table_.push_back(it == owner.end() ? -1 : it->second);
    });
    return part;
}

}  // namespace boxball
