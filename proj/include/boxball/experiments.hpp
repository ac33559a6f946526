// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/experiments.hpp
//! Seeded Monte Carlo experiments, exact dynamic-programming oracles and
//! their pass bands.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbs.hpp"
#include "rational.hpp"

namespace boxball
{
//---------------------------------------------------------------------------//
/*!
 * Everything that determines an experiment's output.
 *
 * `epsilon` is kept as text so exact oracles can parse it as a rational.
 * List-valued fields drive sweeps; `n` holds step counts (or PushTASEP
 * horizons, rounded to integers).
 */
struct ExperimentConfig
{
    std::string name;
    std::string mode;  //!< sub-experiment selector where one exists
    std::string epsilon = "0.5";
    std::vector<std::string> epsilons;
    Capacity capacity = Capacity::unbounded();
    int d = 2;
    std::vector<long> n{1000};
    double horizon = 1.0;
    double dt = 1e-4;
    long trials = 100;
    std::uint64_t seed = 1;
    std::optional<std::vector<int>> init_gaps;
    int threads = 0;
    std::string output;  //!< per-trial CSV path
    std::string summary;  //!< summary JSON path

    double eps() const;
    Rational eps_exact() const;
    void validate() const;
};

/*!
 * One estimated quantity with its band.
 *
 * `gated` estimates decide the run's pass flag; the rest are diagnostics
 * reported alongside them.
 */
struct EstimateReport
{
    std::string label;
    double estimate = 0.0;
    double standard_error = 0.0;
    long trials = 0;
    std::optional<double> predicted;
    std::string rule;  //!< human-readable pass rule
    double lower = 0.0;
    double upper = 0.0;
    bool pass = true;
    bool gated = true;
};

struct ExperimentResult
{
    ExperimentConfig config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<EstimateReport> estimates;

    bool pass() const;
    EstimateReport const& estimate(std::string const& label) const;
};

//! Names accepted by run_experiment
std::vector<std::string> experiment_names();

ExperimentResult run_experiment(ExperimentConfig const& config);

//---------------------------------------------------------------------------//
// EXACT ORACLES
//---------------------------------------------------------------------------//

/*!
 * Exact E[N_n] for d = 2 from gap 0, counting t = 0..n.
 *
 * Propagates the gap distribution with the enumerated one-step kernel.
 * Exact arithmetic grows quickly, so this is meant for n up to about 10^3.
 */
Rational dp_expected_boundary_time_d2(Rational const& eps, Capacity capacity, long n);

//! Same recursion in long double, for large n
long double dp_expected_boundary_time_d2_fp(Rational const& eps, Capacity capacity, long n);

//---------------------------------------------------------------------------//
// CLOSED FORMS
//---------------------------------------------------------------------------//

//! Published d = 2 local-time constant: sqrt(2 eps^3 (1-eps)^3 n / pi)
double published_local_time_d2(double eps, double n);

/*!
 * Running-minimum local time of a lazy walk with P(-1) = p and variance v:
 * sqrt(2 v n / pi) / p. For d = 2 gaps, p = eps(1-eps) and v = 2 eps(1-eps).
 */
double corrected_local_time_d2(double eps, double n);

//! Published sqrt(n) coefficient of the mean excess of ball i in d = 2
double published_excess_coefficient(int ball, double eps, Capacity capacity);

//! Excess per visit to gap 0 times the corrected local-time coefficient
double corrected_excess_coefficient(int ball, double eps, Capacity capacity);

//---------------------------------------------------------------------------//
// EXPERIMENTS
//---------------------------------------------------------------------------//

ExperimentResult run_boundary_time(ExperimentConfig const& config);
ExperimentResult run_ball_positions(ExperimentConfig const& config);
ExperimentResult run_pushtasep_boundary(ExperimentConfig const& config);
//! mode: half_normal | cross_pushtasep | cross_srbm
ExperimentResult run_diffusive_limit(ExperimentConfig const& config);
ExperimentResult run_dp_boundary_time(ExperimentConfig const& config);
ExperimentResult sbbs_as_pushtasep_check(ExperimentConfig const& config);
ExperimentResult run_lazy_walk_local_time(ExperimentConfig const& config);
ExperimentResult run_oscillation_fit(ExperimentConfig const& config);

}  // namespace boxball
