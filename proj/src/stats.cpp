// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/poisson.hpp>

namespace boxball
{
double ks_critical_constant(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
    {
        throw std::invalid_argument("significance level must lie in (0, 1)");
    }
    if (alpha == 0.01)
    {
        return kKsC001;
    }
    return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

KsResult ks_one_sample(std::span<double const> sample, std::function<double(double)> const& cdf, double alpha)
{
    if (sample.size() < kMinKsSample)
    {
        throw SampleSizeError("KS test needs at least 50 observations");
    }
    std::vector<double> s(sample.begin(), sample.end());
    std::sort(s.begin(), s.end());
    double const n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size();)
    {
        // Equal values form one jump of the empirical CDF
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i])
        {
            ++j;
        }
        double const f = cdf(s[i]);
        double const f_left = cdf(std::nextafter(s[i], -INFINITY));
        d = std::max({d, std::abs(static_cast<double>(j) / n - f), std::abs(f_left - static_cast<double>(i) / n)});
        i = j;
    }
    return {d, ks_critical_constant(alpha) / std::sqrt(n)};
}

KsResult ks_two_sample(std::span<double const> a, std::span<double const> b, double alpha)
{
    if (a.size() < kMinKsSample || b.size() < kMinKsSample)
    {
        throw SampleSizeError("KS test needs at least 50 observations per sample");
    }
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double const m = static_cast<double>(x.size());
    double const n = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size())
    {
        double const v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v)
        {
            ++i;
        }
        while (j < y.size() && y[j] == v)
        {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
    }
    return {d, ks_critical_constant(alpha) * std::sqrt((m + n) / (m * n))};
}

double half_normal_cdf(double x, double sigma)
{
    if (x <= 0.0)
    {
        return 0.0;
    }
    if (sigma <= 0.0)
    {
        return 1.0;
    }
    return std::erf(x / (sigma * std::sqrt(2.0)));
}

double binomial_cdf(long k, long n, double p)
{
    if (k < 0)
    {
        return 0.0;
    }
    if (k >= n)
    {
        return 1.0;
    }
    return boost::math::cdf(boost::math::binomial_distribution<double>(static_cast<double>(n), p), static_cast<double>(k));
}

double poisson_cdf(long k, double mean)
{
    if (k < 0)
    {
        return 0.0;
    }
    if (mean <= 0.0)
    {
        return 1.0;
    }
    return boost::math::cdf(boost::math::poisson_distribution<double>(mean), static_cast<double>(k));
}

//---------------------------------------------------------------------------//
void MeanAccumulator::add(double x)
{
    ++n_;
    double const delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

double MeanAccumulator::variance() const
{
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double MeanAccumulator::standard_error() const
{
    return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

MeanAccumulator summarize(std::span<double const> xs)
{
    MeanAccumulator acc;
    for (double x : xs)
    {
        acc.add(x);
    }
    return acc;
}

LineFit loglog_fit(std::span<double const> x, std::span<double const> y)
{
    if (x.size() != y.size() || x.size() < 2)
    {
        throw std::invalid_argument("log-log fit needs at least two matched points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double const n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (!(x[i] > 0.0 && y[i] > 0.0))
        {
            throw std::invalid_argument("log-log fit needs positive data");
        }
        double const lx = std::log(x[i]);
        double const ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

}  // namespace boxball
