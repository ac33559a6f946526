// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "boxball/rng.hpp"
#include "boxball/stats.hpp"

using namespace boxball;

namespace
{
double uniform_cdf(double x)
{
    return std::clamp(x, 0.0, 1.0);
}
}  // namespace

TEST_CASE("critical constants")
{
    CHECK(ks_critical_constant(0.01) == 1.628);
    CHECK(ks_critical_constant(0.05) == doctest::Approx(1.3581).epsilon(1e-3));
    CHECK_THROWS(ks_critical_constant(0.0));
}

TEST_CASE("identical samples have zero distance")
{
    std::vector<double> a;
    for (int i = 0; i < 100; ++i)
    {
        a.push_back(std::sin(i));
    }
    auto const r = ks_two_sample(a, a);
    CHECK(r.statistic == 0.0);
    CHECK(r.threshold == doctest::Approx(1.628 * std::sqrt(2.0 / 100)));
}

TEST_CASE("quantile samples sit close to the reference")
{
    int const n = 1000;
    std::vector<double> q;
    for (int i = 1; i <= n; ++i)
    {
        q.push_back(static_cast<double>(i) / (n + 1));
    }
    CHECK(ks_one_sample(q, uniform_cdf).statistic <= 1.0 / (n + 1) + 1e-12);
}

TEST_CASE("two-sample distance of disjoint samples is one")
{
    std::vector<double> a(60, 0.0), b(80, 1.0);
    CHECK(ks_two_sample(a, b).statistic == 1.0);
}

TEST_CASE("ties form a single jump")
{
    // 50 zeros and 50 ones against a point mass split: exact distance 0
    std::vector<double> s(50, 0.0);
    s.insert(s.end(), 50, 1.0);
    auto const cdf = [](double x) { return x < 0 ? 0.0 : (x < 1 ? 0.5 : 1.0); };
    CHECK(ks_one_sample(s, cdf).statistic == 0.0);
}

TEST_CASE("small samples are refused")
{
    std::vector<double> s(49, 0.5);
    CHECK_THROWS_AS(ks_one_sample(s, uniform_cdf), SampleSizeError);
    std::vector<double> ok(50, 0.5);
    CHECK_THROWS_AS(ks_two_sample(s, ok), SampleSizeError);
}

TEST_CASE("uniform samples pass at the nominal rate")
{
    // 1000 seeded runs of n = 10^4; the level-0.01 test should reject about
    // 10 times. Accept a count within three binomial standard deviations.
    int const runs = 1000;
    int const n = 10000;
    int rejections = 0;
    std::vector<double> s(n);
    for (int run = 0; run < runs; ++run)
    {
        RngStream rng(2718, static_cast<std::uint64_t>(run));
        for (auto& x : s)
        {
            x = rng.uniform();
        }
        auto const r = ks_one_sample(s, uniform_cdf);
        CHECK(r.threshold == doctest::Approx(0.01628));
        rejections += r.rejects() ? 1 : 0;
    }
    MESSAGE("rejections: " << rejections << " of " << runs);
    double const sd = std::sqrt(runs * 0.01 * 0.99);
    CHECK(rejections <= static_cast<int>(runs * 0.01 + 3 * sd));
    CHECK(rejections >= static_cast<int>(std::ceil(runs * 0.01 - 3 * sd)));
}

TEST_CASE("distribution functions")
{
    CHECK(half_normal_cdf(-1.0, 1.0) == 0.0);
    CHECK(half_normal_cdf(1.0, 1.0) == doctest::Approx(0.682689492137));
    CHECK(half_normal_cdf(std::sqrt(2.0), std::sqrt(2.0)) == doctest::Approx(0.682689492137));
    CHECK(binomial_cdf(0, 3, 0.5) == doctest::Approx(0.125));
    CHECK(binomial_cdf(1, 3, 0.5) == doctest::Approx(0.5));
    CHECK(binomial_cdf(3, 3, 0.5) == 1.0);
    CHECK(poisson_cdf(0, 2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK(poisson_cdf(1, 2.0) == doctest::Approx(3 * std::exp(-2.0)));
    CHECK(poisson_cdf(-1, 2.0) == 0.0);
}

TEST_CASE("mean accumulator")
{
    std::vector<double> const xs{1, 2, 3, 4};
    auto const acc = summarize(xs);
    CHECK(acc.count() == 4);
    CHECK(acc.mean() == doctest::Approx(2.5));
    CHECK(acc.variance() == doctest::Approx(5.0 / 3));
    CHECK(acc.standard_error() == doctest::Approx(std::sqrt(5.0 / 12)));
}

TEST_CASE("standard error shrinks as one over root trials")
{
    RngStream rng(3, 0);
    MeanAccumulator small, large;
    for (int i = 0; i < 1000; ++i)
    {
        small.add(rng.normal());
    }
    for (int i = 0; i < 16000; ++i)
    {
        large.add(rng.normal());
    }
    CHECK(small.standard_error() / large.standard_error() == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("log-log fit")
{
    std::vector<double> const x{1e4, 4e4, 16e4};
    std::vector<double> y;
    for (double v : x)
    {
        y.push_back(3.0 * std::sqrt(v));
    }
    auto const fit = loglog_fit(x, y);
    CHECK(fit.slope == doctest::Approx(0.5));
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.0));
    CHECK_THROWS(loglog_fit(std::vector<double>{1.0}, std::vector<double>{1.0}));
}
