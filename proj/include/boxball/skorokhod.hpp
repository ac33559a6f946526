// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/skorokhod.hpp
//! Exact overdetermined Skorokhod decomposition W = X + R Y + alpha.
//---------------------------------------------------------------------------//
#pragma once

#include <span>
#include <vector>

#include "bbs.hpp"
#include "gaps.hpp"
#include "pushtasep.hpp"
#include "rational.hpp"

namespace boxball
{
/*!
 * Per-step decomposition record.
 *
 * X_0 = W_0, Y_0 = 0 and alpha_0 = 0. At each step the cell containing W_t
 * (if any) has its pushing coordinate incremented, and alpha accumulates
 * the residual dW - dX - R_j. alpha is a running sum, never W - X - RY,
 * so the identity is a genuine check.
 */
struct SkorokhodStep
{
    std::vector<int> w;
    std::vector<long> x;
    std::vector<long> y;
    RationalVector alpha;
    int cell = -1;  //!< 0-based cell of w, -1 in the interior
};

struct SkorokhodTrace
{
    int d = 0;
    int k = 0;
    std::vector<SkorokhodStep> steps;
};

//! SBBS trajectory with its recorded coins
SkorokhodTrace decompose_trajectory(SbbsPath const& path, BoundaryPartition const& partition, RationalMatrix const& r);

//! Same from gap states and coins directly
SkorokhodTrace decompose_gaps(std::span<GapVector const> gaps, std::span<CoinVector const> coins, BoundaryPartition const& partition, RationalMatrix const& r);

//! PushTASEP jump chain: bulk increment e_{i-1} - e_i at each jump of particle i
SkorokhodTrace pushtasep_jump_decomposition(PushTasepPath const& path, BoundaryPartition const& partition, RationalMatrix const& r);

/*!
 * Check W_t = X_t + R Y_t + alpha_t at every step, recomputing R Y_t from
 * scratch. Also checks that Y moves by at most one unit in the cell of W_t.
 * Returns the first failing step index, or -1.
 */
long verify_trace(SkorokhodTrace const& trace, RationalMatrix const& r);

//! Number of t with some coordinate of W_t equal to zero
long boundary_local_time(std::span<GapVector const> gaps);
long boundary_local_time(std::span<BallConfig const> states);

}  // namespace boxball
