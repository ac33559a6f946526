// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/pushtasep.hpp
//! Continuous-time PushTASEP on finitely many particles.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bbs.hpp"
#include "rng.hpp"

namespace boxball
{
struct PushTasepState
{
    BallConfig positions;
    double clock = 0.0;
};

//! Particle `particle` (1-based) rings at `time`
struct JumpEvent
{
    double time;
    int particle;
};

/*!
 * Move particle i (1-based) one site right; the maximal block of particles
 * immediately to its right is pushed along by one.
 */
PushTasepState push_move(PushTasepState const& state, int particle);

//! In-place push of the 0-based particle index
void push_in_place(std::span<std::int64_t> positions, std::size_t index);

struct PushTasepPath
{
    std::vector<JumpEvent> events;
    //! states[0] is the initial state, states[k] follows events[k-1]
    std::vector<PushTasepState> states;
};

/*!
 * Simulate on [0, horizon]: event times form a rate-d Poisson process and
 * each event picks a particle uniformly. Equivalent to d independent rate-1
 * clocks.
 */
PushTasepPath pushtasep_trajectory(PushTasepState const& init, double horizon, RngStream& rng);

/*!
 * Embedded jump chain: `jumps` uniform particle choices, no clock.
 * Returned events carry the jump index as their time.
 */
PushTasepPath pushtasep_jump_chain(BallConfig const& init, long jumps, RngStream& rng);

}  // namespace boxball
