// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/srbm.hpp"

#include <algorithm>
#include <cmath>

#include "boxball/bbs.hpp"
#include "boxball/rational.hpp"
#include "boxball/reflection.hpp"

namespace boxball
{
namespace
{
std::vector<double> to_std(Eigen::VectorXd const& v)
{
    return {v.data(), v.data() + v.size()};
}

Eigen::MatrixXd noise_factor(Eigen::MatrixXd const& cov)
{
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() == Eigen::Success)
    {
        return llt.matrixL();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

void check_grid(double horizon, double dt)
{
    if (!(dt > 0.0))
    {
        throw ValidationError("time step must be positive");
    }
    if (!(horizon >= 0.0))
    {
        throw ValidationError("horizon must be nonnegative");
    }
}

long step_count(double horizon, double dt)
{
    return std::lround(horizon / dt);
}

}  // namespace

//---------------------------------------------------------------------------//
void SrbmSpec::validate() const
{
    Eigen::Index const m = covariance.rows();
    if (m < 1 || m > kMaxSrbmDimension)
    {
        throw ValidationError("SRBM dimension must lie in 1..4");
    }
    if (covariance.cols() != m || reflection.rows() != m || reflection.cols() != m || drift.size() != m
        || initial.size() != m)
    {
        throw DimensionError("SRBM data have inconsistent shapes");
    }
    if (!covariance.isApprox(covariance.transpose(), 0.0))
    {
        throw ValidationError("covariance must be symmetric");
    }
    if ((covariance.diagonal().array() < 0.0).any())
    {
        throw ValidationError("covariance diagonal must be nonnegative");
    }
    if ((initial.array() < 0.0).any())
    {
        throw ValidationError("initial point must lie in the orthant");
    }
    // Doubles convert to rationals exactly, so the check is exact for the given data
    RationalMatrix r(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i)
    {
        for (Eigen::Index j = 0; j < m; ++j)
        {
            r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(reflection(i, j));
        }
    }
    if (!completely_s(r))
    {
        throw ValidationError("reflection matrix is not completely-S");
    }
}

//---------------------------------------------------------------------------//
LcpSolution solve_lcp(Eigen::VectorXd const& z, Eigen::MatrixXd const& r)
{
    auto const m = static_cast<int>(z.size());
    if (r.rows() != m || r.cols() != m)
    {
        throw DimensionError("LCP matrix must be square and match z");
    }
    double const tol = 1e-12 * (1.0 + z.cwiseAbs().maxCoeff());

    std::vector<unsigned> order;
    for (unsigned mask = 0; mask < (1U << m); ++mask)
    {
        order.push_back(mask);
    }
    auto members = [&](unsigned mask) {
        std::vector<int> s;
        for (int i = 0; i < m; ++i)
        {
            if ((mask >> i) & 1U)
            {
                s.push_back(i);
            }
        }
        return s;
    };
    std::stable_sort(order.begin(), order.end(), [&](unsigned a, unsigned b) {
        auto sa = members(a);
        auto sb = members(b);
        if (sa.size() != sb.size())
        {
            return sa.size() < sb.size();
        }
        return sa < sb;
    });

    LcpSolution best;
    for (unsigned mask : order)
    {
        auto const s = members(mask);
        Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
        Eigen::VectorXd w;
        bool ok = true;
        if (s.empty())
        {
            ok = (z.array() >= 0.0).all();
            w = z;
        }
        else
        {
            auto const n = static_cast<Eigen::Index>(s.size());
            Eigen::MatrixXd rs(n, n);
            Eigen::VectorXd rhs(n);
            for (Eigen::Index a = 0; a < n; ++a)
            {
                rhs(a) = -z(s[static_cast<std::size_t>(a)]);
                for (Eigen::Index b = 0; b < n; ++b)
                {
                    rs(a, b) = r(s[static_cast<std::size_t>(a)], s[static_cast<std::size_t>(b)]);
                }
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(rs);
            if (!lu.isInvertible())
            {
                continue;
            }
            Eigen::VectorXd ys = n == 1 ? Eigen::VectorXd::Constant(1, rhs(0) / rs(0, 0)) : Eigen::VectorXd(lu.solve(rhs));
            for (Eigen::Index a = 0; a < n; ++a)
            {
                ok = ok && ys(a) >= -tol;
                y(s[static_cast<std::size_t>(a)]) = std::max(0.0, ys(a));
            }
            w = z + r * y;
            for (int i : s)
            {
                w(i) = 0.0;
            }
            for (int i = 0; i < m; ++i)
            {
                ok = ok && w(i) >= -tol;
                w(i) = std::max(0.0, w(i));
            }
        }
        if (!ok)
        {
            continue;
        }
        if (best.feasible_sets++ == 0)
        {
            best.w = w;
            best.y = y;
            best.active = s;
        }
    }
    if (best.feasible_sets == 0)
    {
        throw LcpError("no active set solves the complementarity problem");
    }
    return best;
}

//---------------------------------------------------------------------------//
PathSample reflected_bm_1d(double variance, double horizon, double dt, RngStream& rng, bool record)
{
    check_grid(horizon, dt);
    if (!(variance >= 0.0))
    {
        throw ValidationError("variance must be nonnegative");
    }
    double const scale = std::sqrt(variance);
    double const sdt = std::sqrt(dt);
    long const n = step_count(horizon, dt);
    PathSample path;
    double w = 0.0;
    double y = 0.0;
    path.times.push_back(0.0);
    path.w.push_back({w});
    path.y.push_back({y});
    for (long k = 1; k <= n; ++k)
    {
        double const z = w + scale * (rng.normal() * sdt);
        if (z < 0.0)
        {
            y += -z;
            w = 0.0;
        }
        else
        {
            w = z;
        }
        if (record || k == n)
        {
            path.times.push_back(static_cast<double>(k) * dt);
            path.w.push_back({w});
            path.y.push_back({y});
        }
    }
    return path;
}

PathSample srbm_euler(SrbmSpec const& spec, double horizon, double dt, RngStream& rng, bool record)
{
    spec.validate();
    check_grid(horizon, dt);
    auto const m = spec.dimension();
    Eigen::MatrixXd const factor = noise_factor(spec.covariance);
    double const sdt = std::sqrt(dt);
    long const n = step_count(horizon, dt);

    PathSample path;
    Eigen::VectorXd w = spec.initial;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
    path.times.push_back(0.0);
    path.w.push_back(to_std(w));
    path.y.push_back(to_std(y));
    Eigen::VectorXd v(m);
    for (long k = 1; k <= n; ++k)
    {
        for (int i = 0; i < m; ++i)
        {
            v(i) = rng.normal() * sdt;
        }
        Eigen::VectorXd z = w + factor * v;
        if (!spec.drift.isZero(0.0))
        {
            z += spec.drift * dt;
        }
        LcpSolution sol = solve_lcp(z, spec.reflection);
        path.degenerate_steps += sol.feasible_sets > 1 ? 1 : 0;
        w = sol.w;
        y += sol.y;
        if (record || k == n)
        {
            path.times.push_back(static_cast<double>(k) * dt);
            path.w.push_back(to_std(w));
            path.y.push_back(to_std(y));
        }
    }
    return path;
}

//---------------------------------------------------------------------------//
double oscillation(std::vector<double> const& times, std::vector<std::vector<double>> const& values, double t1, double t2)
{
    if (!(t1 < t2))
    {
        throw ValidationError("oscillation window needs t1 < t2");
    }
    if (times.size() != values.size())
    {
        throw DimensionError("times and values differ in length");
    }
    std::vector<double> lo;
    std::vector<double> hi;
    for (std::size_t k = 0; k < times.size(); ++k)
    {
        if (times[k] < t1 || times[k] > t2)
        {
            continue;
        }
        auto const& g = values[k];
        if (lo.empty())
        {
            lo = g;
            hi = g;
        }
        for (std::size_t i = 0; i < g.size(); ++i)
        {
            lo[i] = std::min(lo[i], g[i]);
            hi[i] = std::max(hi[i], g[i]);
        }
    }
    if (lo.empty())
    {
        throw ValidationError("oscillation window contains no grid points");
    }
    double osc = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i)
    {
        osc = std::max(osc, hi[i] - lo[i]);
    }
    return osc;
}

double oscillation(PathSample const& path, double t1, double t2)
{
    return oscillation(path.times, path.w, t1, t2);
}

}  // namespace boxball
