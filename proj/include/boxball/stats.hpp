// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/stats.hpp
//! Kolmogorov-Smirnov statistics, reference CDFs and summary estimators.
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace boxball
{
class SampleSizeError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMinKsSample = 50;

//! Asymptotic KS critical constant at level 0.01
inline constexpr double kKsC001 = 1.628;

struct KsResult
{
    double statistic = 0.0;
    double threshold = 0.0;  //!< rejection threshold at the requested level
    bool rejects() const { return statistic > threshold; }
};

//! c(alpha) = sqrt(-log(alpha / 2) / 2), with the tabulated 1.628 at 0.01
double ks_critical_constant(double alpha);

//! sup |F_n - F|; threshold c(alpha) / sqrt(n)
KsResult ks_one_sample(std::span<double const> sample, std::function<double(double)> const& cdf, double alpha = 0.01);

//! sup |F_m - G_n| with ties handled jointly; threshold c(alpha) sqrt((m+n)/(mn))
KsResult ks_two_sample(std::span<double const> a, std::span<double const> b, double alpha = 0.01);

//! CDF of |N(0, sigma^2)|
double half_normal_cdf(double x, double sigma);

double binomial_cdf(long k, long n, double p);
double poisson_cdf(long k, double mean);

//---------------------------------------------------------------------------//
//! Mean and standard error of a sequence, accumulated in a fixed order
class MeanAccumulator
{
  public:
    void add(double x);
    long count() const { return n_; }
    double mean() const { return mean_; }
    //! Unbiased sample variance
    double variance() const;
    double standard_error() const;

  private:
    long n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

MeanAccumulator summarize(std::span<double const> xs);

struct LineFit
{
    double slope = 0.0;
    double intercept = 0.0;
};

//! Least-squares fit of log(y) against log(x)
LineFit loglog_fit(std::span<double const> x, std::span<double const> y);

}  // namespace boxball
