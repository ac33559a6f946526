// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/bbs.hpp
//! Stochastic box-ball system: coins, carrier sweep, trajectories, solitons.
//---------------------------------------------------------------------------//
#pragma once

#include <climits>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rng.hpp"

namespace boxball
{
//---------------------------------------------------------------------------//
//! Raised when an input violates a documented precondition
class ValidationError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Raised when a vector or matrix has the wrong dimension
class DimensionError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//---------------------------------------------------------------------------//
/*!
 * Carrier capacity: a positive integer or unbounded.
 *
 * Unbounded compares greater than every finite capacity. For a d-ball
 * system any capacity >= d behaves exactly like unbounded, since the carrier
 * never holds more than d balls.
 */
class Capacity
{
  public:
    static Capacity unbounded() { return Capacity(INT_MAX); }
    static Capacity finite(int limit);
    //! Accepts "inf", "infinity", "unbounded" or a positive integer
    static Capacity parse(std::string_view text);

    bool is_unbounded() const { return limit_ == INT_MAX; }
    int limit() const { return limit_; }
    bool full(int load) const { return load >= limit_; }
    //! Capacity that behaves identically for a d-ball system
    bool binds_for(int d) const { return limit_ < d; }

    std::string to_string() const;

    auto operator<=>(Capacity const&) const = default;

  private:
    explicit Capacity(int limit) : limit_(limit) {}
    int limit_;
};

//---------------------------------------------------------------------------//
//! Error probability, capacity and ball count of an SBBS
struct DynamicsParams
{
    double epsilon = 0.0;
    Capacity capacity = Capacity::unbounded();
    int d = 1;

    void validate() const;
};

//---------------------------------------------------------------------------//
/*!
 * Positions of d >= 1 balls on sites 0, 1, 2, ..., strictly increasing.
 */
class BallConfig
{
  public:
    BallConfig() = default;
    explicit BallConfig(std::vector<std::int64_t> positions);

    //! Balls at 0, 1, ..., d-1
    static BallConfig block(int d, std::int64_t start = 0);
    //! Balls with the given gaps, first ball at `start`
    static BallConfig from_gaps(std::span<int const> gaps, std::int64_t start = 0);

    int size() const { return static_cast<int>(positions_.size()); }
    std::int64_t operator[](int i) const { return positions_[static_cast<std::size_t>(i)]; }
    std::span<std::int64_t const> positions() const { return positions_; }

    BallConfig shifted(std::int64_t offset) const;

    bool operator==(BallConfig const&) const = default;

  private:
    std::vector<std::int64_t> positions_;
};

//---------------------------------------------------------------------------//
/*!
 * Coin flips for one sweep, indexed by ball in left-to-right order.
 *
 * eta[i] == 1 means the carrier's attempt to pick up ball i succeeds, which
 * happens with probability 1 - epsilon. The attempt is void (the ball is
 * skipped) when the carrier is full. Empty sites consume no coins.
 */
struct CoinVector
{
    std::vector<std::uint8_t> eta;

    int size() const { return static_cast<int>(eta.size()); }
    bool operator==(CoinVector const&) const = default;
};

//! What happened to the carrier at one site
enum class CarrierAction : std::uint8_t
{
    pickup,
    drop,
    skip_failed,  //!< ball left in place because the coin failed
    skip_full,  //!< ball left in place because the carrier was full
};

struct CarrierEvent
{
    std::int64_t site;
    CarrierAction action;
};

/*!
 * Site-by-site carrier record.
 *
 * gamma[0] is the load before site 0 and gamma[k + 1] the load after
 * scanning site k.
 */
struct CarrierTrace
{
    std::vector<int> gamma;
    std::vector<CarrierEvent> events;
};

struct SweepResult
{
    BallConfig next;
    CarrierTrace trace;
};

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//

CoinVector draw_coins(DynamicsParams const& params, RngStream& rng);

//! Fill `eta` with coins (1 with probability `success`)
void draw_coins_into(std::span<std::uint8_t> eta, BernoulliThreshold success, RngStream& rng);

/*!
 * One carrier sweep, scanned site by site from site 0.
 *
 * This is the literal load recursion: a ball is picked up when its coin
 * succeeds and the carrier is not full; an empty site receives a ball
 * whenever the carrier is loaded. The sweep stops once every ball has been
 * processed and the carrier is empty.
 */
SweepResult carrier_sweep(BallConfig const& config, Capacity capacity, CoinVector const& coins);

/*!
 * Same update as carrier_sweep, computed in place in O(d) by jumping over
 * runs of empty sites.
 */
void advance_in_place(std::span<std::int64_t> positions, std::span<std::uint8_t const> eta, Capacity capacity);

BallConfig advance(BallConfig const& config, Capacity capacity, CoinVector const& coins);

//! States 0..n of an SBBS run; entry t+1 is one sweep of entry t
std::vector<BallConfig> sbbs_trajectory(BallConfig const& init, DynamicsParams const& params, long steps, RngStream& rng);

//! Trajectory together with the coins used at each step (coins[t] maps t -> t+1)
struct SbbsPath
{
    std::vector<BallConfig> states;
    std::vector<CoinVector> coins;
};

SbbsPath sbbs_path(BallConfig const& init, DynamicsParams const& params, long steps, RngStream& rng);

//---------------------------------------------------------------------------//
// SOLITONS
//---------------------------------------------------------------------------//

//! Soliton sizes by 10-elimination, sorted in decreasing order
std::vector<int> soliton_census_ts(BallConfig const& config);

//! Lengths of maximal runs of consecutive balls, sorted in decreasing order
std::vector<int> run_soliton_census(BallConfig const& config);

}  // namespace boxball
