// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/gaps.hpp
//! Gap projection, bulk increments, exact one-step kernels and the
//! partition of the orthant boundary into cells of homogeneous dynamics.
//---------------------------------------------------------------------------//
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "bbs.hpp"
#include "rational.hpp"

namespace boxball
{
//---------------------------------------------------------------------------//
//! Gaps between consecutive balls: w[i] = x[i+1] - x[i] - 1 >= 0
struct GapVector
{
    std::vector<int> w;

    int size() const { return static_cast<int>(w.size()); }
    int operator[](int i) const { return w[static_cast<std::size_t>(i)]; }
    bool on_boundary() const;

    auto operator<=>(GapVector const&) const = default;
};

//! Signed integer increment of a gap vector
using Increment = std::vector<int>;

GapVector project(BallConfig const& config);
GapVector project(std::span<std::int64_t const> positions);

//! Component i is eta[i+1] - eta[i]
Increment bulk_increment(CoinVector const& coins);

//! Coin mask convention for enumeration: bit i of the mask is eta[i]
CoinVector coins_from_mask(int d, unsigned mask);

/*!
 * The epsilon-free map from coin vectors to gap increments at w.
 *
 * Entry `mask` is the increment produced by coins_from_mask(d, mask).
 */
std::vector<Increment> coin_response(GapVector const& w, Capacity capacity);

//! Largest d accepted by exact_kernel (2^d coin vectors)
inline constexpr int kMaxKernelBalls = 12;

/*!
 * Exact distribution of the gap increment at w, by enumerating all coin
 * vectors with weight eps^(#failures) (1-eps)^(#successes).
 */
std::map<Increment, Rational> exact_kernel(GapVector const& w, Rational const& eps, Capacity capacity);

//! Exact mean increment at w
RationalVector mean_increment(GapVector const& w, Rational const& eps, Capacity capacity);

//---------------------------------------------------------------------------//
// BOUNDARY CELLS
//---------------------------------------------------------------------------//

//! Flattened coin response at the clamped point; equal signature == same cell
struct CellSignature
{
    std::vector<std::int8_t> data;
    auto operator<=>(CellSignature const&) const = default;
};

/*!
 * Signature of a boundary point for a d-ball SBBS.
 *
 * Coordinates are clamped to d first: a gap of d or more empties any load
 * the carrier can hold, so larger gaps are dynamically identical.
 */
CellSignature cell_signature(GapVector const& w, int d, Capacity capacity);

enum class GapModel
{
    sbbs,
    pushtasep_jump,
};

struct BoundaryCell
{
    int id = 0;  //!< 1-based, principal cells first
    std::vector<int> degenerate;  //!< f(j): pinned coordinates, 1-based
    GapVector representative;  //!< componentwise minimum over the cell
    int members_in_box = 0;  //!< points of the clamp box in this cell
    bool is_box = false;  //!< cell == {y_f = rep_f, y_i >= rep_i otherwise}
};

/*!
 * Partition of the boundary of the gap orthant into cells on which the
 * one-step gap dynamics are homogeneous.
 *
 * Cells 1..d-1 are principal: cell i contains the points with w_i = 0,
 * w_{i+1} >= 2 and all other gaps >= 1.
 */
class BoundaryPartition
{
  public:
    GapModel model() const { return model_; }
    int d() const { return d_; }
    Capacity capacity() const { return capacity_; }
    int k() const { return static_cast<int>(cells_.size()); }
    int clamp() const { return clamp_; }
    std::vector<BoundaryCell> const& cells() const { return cells_; }
    BoundaryCell const& cell(int j) const { return cells_[static_cast<std::size_t>(j)]; }

    //! 0-based cell index of w, or -1 in the interior
    int locate(GapVector const& w) const;
    int locate(std::span<int const> w) const;

    //! Every principal cell has f = {i} and no other cell does
    bool principal_structure_ok() const;

  private:
    friend BoundaryPartition build_partition(int d, Capacity capacity);
    friend BoundaryPartition build_pushtasep_partition(int d);

    GapModel model_ = GapModel::sbbs;
    int d_ = 0;
    Capacity capacity_ = Capacity::unbounded();
    int clamp_ = 0;
    std::vector<BoundaryCell> cells_;
    std::vector<int> table_;  //!< clamp-box point (mixed radix) -> cell index
};

inline constexpr int kMaxPartitionBalls = 6;

/*!
 * Group the boundary points of the clamp box [0, d]^{d-1} by signature.
 *
 * For capacity >= d the cells have pairwise distinct dynamics; for smaller
 * capacity cells with identical dynamics merge and k may be smaller.
 */
BoundaryPartition build_partition(int d, Capacity capacity);

/*!
 * PushTASEP jump-chain cells: one per nonempty set of zero gaps,
 * 2^{d-1} - 1 in total.
 */
BoundaryPartition build_pushtasep_partition(int d);

//! Gap increment of the PushTASEP jump chain when `particle` (1-based) moves
Increment push_increment(GapVector const& w, int particle);

//! PushTASEP bulk increment e_{i-1} - e_i for particle i (1-based)
Increment push_bulk_increment(int d, int particle);

}  // namespace boxball
