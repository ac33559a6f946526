// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/simplex.hpp
//! Exact phase-1 simplex for tiny rational feasibility problems.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>

#include "rational.hpp"

namespace boxball
{
/*!
 * Find x >= 0 with A x >= b, exactly.
 *
 * Phase-1 simplex with Bland's rule, so it terminates on degenerate
 * problems. Returns a basic feasible point or nothing when the system is
 * infeasible.
 */
std::optional<RationalVector> find_feasible(RationalMatrix const& a, RationalVector const& b);

/*!
 * Farkas certificate for infeasibility of {x >= 0, A x >= b}:
 * y >= 0 with y^T A <= 0 and y^T b >= 1. Empty when the system is feasible.
 */
std::optional<RationalVector> farkas_witness(RationalMatrix const& a, RationalVector const& b);

}  // namespace boxball
