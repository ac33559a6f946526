// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/simplex.hpp"

#include <stdexcept>

namespace boxball
{
std::optional<RationalVector> find_feasible(RationalMatrix const& a, RationalVector const& b)
{
    std::size_t const m = a.rows();
    std::size_t const n = a.cols();
    if (b.size() != m)
    {
        throw std::invalid_argument("right-hand side does not match the constraint count");
    }
    if (m == 0)
    {
        return RationalVector(n, Rational(0));
    }

    // Columns: x (n), surplus (m), artificial (m); last column is the rhs.
    std::size_t const cols = n + 2 * m;
    RationalMatrix t(m, cols + 1);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
    {
        int const sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j)
        {
            t(i, j) = sign * a(i, j);
        }
        t(i, n + i) = -sign;
        t(i, n + m + i) = 1;
        t(i, cols) = sign * b[i];
        basis[i] = n + m + i;
    }

    // Reduced costs of "minimize the sum of artificials"
    RationalVector cost(cols + 1);
    for (std::size_t i = 0; i < m; ++i)
    {
        for (std::size_t j = 0; j <= cols; ++j)
        {
            if (j < n + m || j == cols)
            {
                cost[j] -= t(i, j);
            }
        }
    }

    while (true)
    {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
        {
            if (cost[j] < 0)
            {
                enter = j;
                break;
            }
        }
        if (enter == cols)
        {
            break;
        }
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i)
        {
            if (t(i, enter) > 0)
            {
                Rational ratio = t(i, cols) / t(i, enter);
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave]))
                {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave == m)
        {
            // Phase-1 objective is bounded below by zero
            throw std::logic_error("unbounded phase-1 problem");
        }
        Rational const pivot = t(leave, enter);
        for (std::size_t j = 0; j <= cols; ++j)
        {
            t(leave, j) /= pivot;
        }
        for (std::size_t i = 0; i < m; ++i)
        {
            if (i != leave && t(i, enter) != 0)
            {
                Rational const factor = t(i, enter);
                for (std::size_t j = 0; j <= cols; ++j)
                {
                    t(i, j) -= factor * t(leave, j);
                }
            }
        }
        if (cost[enter] != 0)
        {
            Rational const factor = cost[enter];
            for (std::size_t j = 0; j <= cols; ++j)
            {
                cost[j] -= factor * t(leave, j);
            }
        }
        basis[leave] = enter;
    }

    if (cost[cols] != 0)
    {
        return std::nullopt;
    }
    RationalVector x(n);
    for (std::size_t i = 0; i < m; ++i)
    {
        if (basis[i] < n)
        {
            x[basis[i]] = t(i, cols);
        }
    }
    return x;
}

std::optional<RationalVector> farkas_witness(RationalMatrix const& a, RationalVector const& b)
{
    std::size_t const m = a.rows();
    std::size_t const n = a.cols();
    // y >= 0, -A^T y >= 0, b^T y >= 1
    RationalMatrix dual(n + 1, m);
    RationalVector rhs(n + 1);
    for (std::size_t j = 0; j < n; ++j)
    {
        for (std::size_t i = 0; i < m; ++i)
        {
            dual(j, i) = -a(i, j);
        }
    }
    for (std::size_t i = 0; i < m; ++i)
    {
        dual(n, i) = b[i];
    }
    rhs[n] = 1;
    return find_feasible(dual, rhs);
}

}  // namespace boxball
