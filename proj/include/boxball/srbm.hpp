// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/srbm.hpp
//! Reference reflected Brownian motions: the one-dimensional Skorokhod map
//! and an Euler scheme for SRBM with a per-step complementarity solve.
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "rng.hpp"

namespace boxball
{
//! Raised when no active set solves a complementarity problem
class LcpError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct SrbmSpec
{
    Eigen::VectorXd drift;
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd reflection;
    Eigen::VectorXd initial;

    int dimension() const { return static_cast<int>(covariance.rows()); }
    //! Throws ValidationError on bad shapes, asymmetric covariance, or a
    //! reflection matrix that is not completely-S
    void validate() const;
};

struct PathSample
{
    std::vector<double> times;
    std::vector<std::vector<double>> w;  //!< state per grid point
    std::vector<std::vector<double>> y;  //!< cumulative pushing per grid point
    long degenerate_steps = 0;  //!< steps where several active sets were feasible
};

struct LcpSolution
{
    Eigen::VectorXd w;
    Eigen::VectorXd y;
    std::vector<int> active;  //!< 0-based active set
    int feasible_sets = 0;
};

/*!
 * Solve w = z + R y, w >= 0, y >= 0, w^T y = 0 by enumerating active sets.
 *
 * Sets are tried by increasing cardinality, then lexicographically; the
 * first feasible one is returned and all feasible sets are counted. The
 * empty set is accepted only when z >= 0 exactly. On the active set w is
 * set to exactly zero; off it y is exactly zero.
 */
LcpSolution solve_lcp(Eigen::VectorXd const& z, Eigen::MatrixXd const& r);

inline constexpr int kMaxSrbmDimension = 4;

/*!
 * Gaussian walk with steps sqrt(variance) * sqrt(dt) * N(0,1) under the
 * discrete Skorokhod map: W = X - min(0, running min of X).
 */
PathSample reflected_bm_1d(double variance, double horizon, double dt, RngStream& rng, bool record = true);

/*!
 * Euler scheme: z = W_k + theta dt + L sqrt(dt) N, then the LCP. L is the
 * Cholesky factor of the covariance (a symmetric square root when singular).
 * With record == false only the initial and final points are kept.
 */
PathSample srbm_euler(SrbmSpec const& spec, double horizon, double dt, RngStream& rng, bool record = true);

/*!
 * Largest range of any coordinate over grid points in [t1, t2].
 */
double oscillation(std::vector<double> const& times, std::vector<std::vector<double>> const& values, double t1, double t2);
double oscillation(PathSample const& path, double t1, double t2);

}  // namespace boxball
