// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/reflection.hpp"

#include <algorithm>

#include "boxball/simplex.hpp"

namespace boxball
{
namespace
{
//! Fixed lower bound for the positive multipliers
Rational const kDelta{1, 1000000};

std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    for (unsigned mask = 1; mask < (1U << n); ++mask)
    {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
        {
            if ((mask >> i) & 1U)
            {
                s.push_back(i);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

//---------------------------------------------------------------------------//
RationalVector analytic_principal_reflection(int j, Rational const& eps, Capacity capacity, int d)
{
    if (d < 2 || j < 1 || j > d - 1)
    {
        throw DimensionError("principal cell index must lie in 1..d-1");
    }
    RationalVector r(static_cast<std::size_t>(d - 1));
    auto set = [&](int pos, Rational const& v) {
        if (pos >= 1 && pos <= d - 1)
        {
            r[static_cast<std::size_t>(pos - 1)] = (1 - eps) * v;
        }
    };
    if (capacity.limit() >= 2)
    {
        set(j - 1, 1 - eps);
        set(j, eps);
        set(j + 1, Rational(-1));
    }
    else
    {
        set(j, eps);
        set(j + 1, -eps);
    }
    return r;
}

RationalVector empirical_reflection(BoundaryPartition const& partition, int j, Rational const& eps)
{
    auto const& rep = partition.cell(j).representative;
    if (partition.model() == GapModel::sbbs)
    {
        return mean_increment(rep, eps, partition.capacity());
    }
    int const d = partition.d();
    RationalVector mean(static_cast<std::size_t>(d - 1));
    for (int i = 1; i <= d; ++i)
    {
        auto const dw = push_increment(rep, i);
        for (std::size_t c = 0; c < dw.size(); ++c)
        {
            mean[c] += Rational(dw[c], d);
        }
    }
    return mean;
}

RationalMatrix reflection_matrix(BoundaryPartition const& partition, Rational const& eps)
{
    std::size_t const m = static_cast<std::size_t>(partition.d() - 1);
    RationalMatrix r(m, static_cast<std::size_t>(partition.k()));
    for (int j = 0; j < partition.k(); ++j)
    {
        auto const col = empirical_reflection(partition, j, eps);
        for (std::size_t i = 0; i < m; ++i)
        {
            r(i, static_cast<std::size_t>(j)) = col[i];
        }
    }
    return r;
}

RationalMatrix tridiagonal(std::size_t n, Rational const& sub, Rational const& diag, Rational const& super)
{
    RationalMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
    {
        t(i, i) = diag;
        if (i > 0)
        {
            t(i, i - 1) = sub;
        }
        if (i + 1 < n)
        {
            t(i, i + 1) = super;
        }
    }
    return t;
}

StandardMatrices standard_matrices(int d, Rational const& eps, Capacity capacity)
{
    if (d < 2)
    {
        throw DimensionError("standard matrices need d >= 2");
    }
    auto const n = static_cast<std::size_t>(d - 1);
    StandardMatrices s;
    s.sigma_pt = tridiagonal(n, -1, 2, -1);
    s.r_pt = tridiagonal(n, -1, 1, 0);
    if (capacity.limit() >= 2)
    {
        s.hat_r = tridiagonal(n, -1, eps, 1 - eps);
    }
    else
    {
        s.hat_r = tridiagonal(n, -eps, eps, 0);
    }
    return s;
}

//---------------------------------------------------------------------------//
DegenerateMap degenerate_map(BoundaryPartition const& partition)
{
    DegenerateMap f;
    for (auto const& cell : partition.cells())
    {
        f.push_back(cell.degenerate);
    }
    return f;
}

DegenerateMap identity_map(std::size_t k)
{
    DegenerateMap f(k);
    for (std::size_t j = 0; j < k; ++j)
    {
        f[j] = {static_cast<int>(j) + 1};
    }
    return f;
}

SCertificate weakly_completely_s(RationalMatrix const& r, DegenerateMap const& f)
{
    if (f.size() != r.cols())
    {
        throw DimensionError("degenerate map must have one entry per column");
    }
    SCertificate cert;
    for (auto const& rows : nonempty_subsets(r.rows()))
    {
        SubsetCertificate sub;
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < f.size(); ++j)
        {
            bool const inside = std::all_of(f[j].begin(), f[j].end(), [&](int i) {
                return std::find(rows.begin(), rows.end(), static_cast<std::size_t>(i - 1)) != rows.end();
            });
            if (inside)
            {
                cols.push_back(j);
                sub.constraints.push_back(static_cast<int>(j) + 1);
            }
        }
        for (auto i : rows)
        {
            sub.subset.push_back(static_cast<int>(i) + 1);
        }

        // (mu + delta 1)^T R_{I,J} >= 1  <=>  R_{I,J}^T mu >= 1 - delta * colsum
        RationalMatrix const block = r.select(rows, cols).transpose();
        RationalVector rhs(cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
        {
            Rational colsum = 0;
            for (std::size_t i = 0; i < rows.size(); ++i)
            {
                colsum += block(c, i);
            }
            rhs[c] = 1 - kDelta * colsum;
        }
        if (auto mu = find_feasible(block, rhs))
        {
            sub.lambda.resize(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i)
            {
                sub.lambda[i] = (*mu)[i] + kDelta;
            }
        }
        else
        {
            cert.holds = false;
            // Infeasibility of the scale-free system lambda >= 0, R^T lambda >= 1
            RationalVector ones(cols.size(), Rational(1));
            sub.farkas = farkas_witness(block, ones);
        }
        cert.subsets.push_back(std::move(sub));
    }
    return cert;
}

bool verify_certificate(RationalMatrix const& r, DegenerateMap const& f, SCertificate const& cert)
{
    if (!cert.holds || cert.subsets.size() != (std::size_t{1} << r.rows()) - 1)
    {
        return false;
    }
    for (auto const& sub : cert.subsets)
    {
        if (sub.lambda.size() != sub.subset.size())
        {
            return false;
        }
        for (auto const& l : sub.lambda)
        {
            if (l <= 0)
            {
                return false;
            }
        }
        for (std::size_t j = 0; j < f.size(); ++j)
        {
            bool const inside = std::all_of(f[j].begin(), f[j].end(), [&](int i) {
                return std::find(sub.subset.begin(), sub.subset.end(), i) != sub.subset.end();
            });
            bool const listed = std::find(sub.constraints.begin(), sub.constraints.end(), static_cast<int>(j) + 1) != sub.constraints.end();
            if (inside != listed)
            {
                return false;
            }
            if (!inside)
            {
                continue;
            }
            Rational dot = 0;
            for (std::size_t i = 0; i < sub.subset.size(); ++i)
            {
                dot += sub.lambda[i] * r(static_cast<std::size_t>(sub.subset[i] - 1), j);
            }
            if (dot < 1)
            {
                return false;
            }
        }
    }
    return true;
}

bool completely_s(RationalMatrix const& m)
{
    if (m.rows() != m.cols())
    {
        throw DimensionError("completely-S is defined for square matrices");
    }
    for (auto const& idx : nonempty_subsets(m.rows()))
    {
        // x >= 1 (scale-free), M_II x >= 1
        RationalMatrix const block = m.select(idx, idx);
        std::size_t const n = idx.size();
        RationalMatrix a(2 * n, n);
        RationalVector b(2 * n, Rational(1));
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t j = 0; j < n; ++j)
            {
                a(i, j) = block(i, j);
            }
            a(n + i, i) = 1;
        }
        if (!find_feasible(a, b))
        {
            return false;
        }
    }
    return true;
}

}  // namespace boxball
