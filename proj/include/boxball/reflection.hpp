// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/reflection.hpp
//! Reflection vectors, the standard tridiagonal matrices, and exact
//! (weakly) completely-S certificates.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <vector>

#include "gaps.hpp"
#include "rational.hpp"

namespace boxball
{
/*!
 * Closed-form reflection vector of principal cell j (1-based).
 *
 * c >= 2: (1-eps) * (..., 1-eps at j-1, eps at j, -1 at j+1, ...)
 * c == 1: (1-eps) * (..., eps at j, -eps at j+1, ...)
 */
RationalVector analytic_principal_reflection(int j, Rational const& eps, Capacity capacity, int d);

//! Exact mean one-step increment at the representative of cell j (0-based)
RationalVector empirical_reflection(BoundaryPartition const& partition, int j, Rational const& eps);

//! (d-1) x k matrix whose columns are the empirical reflection vectors
RationalMatrix reflection_matrix(BoundaryPartition const& partition, Rational const& eps);

struct StandardMatrices
{
    RationalMatrix sigma_pt;  //!< tridiag(-1, 2, -1)
    RationalMatrix r_pt;  //!< tridiag(-1, 1, 0)
    RationalMatrix hat_r;  //!< tridiag(-1, eps, 1-eps) for c >= 2, eps * r_pt for c == 1
};

StandardMatrices standard_matrices(int d, Rational const& eps, Capacity capacity);

//! Square tridiagonal matrix with constant sub-, main and super-diagonal
RationalMatrix tridiagonal(std::size_t n, Rational const& sub, Rational const& diag, Rational const& super);

//---------------------------------------------------------------------------//
// CERTIFICATES
//---------------------------------------------------------------------------//

//! Degenerate-coordinate sets, one per column, 1-based
using DegenerateMap = std::vector<std::vector<int>>;

DegenerateMap degenerate_map(BoundaryPartition const& partition);

//! Identity map f(j) = {j} for square matrices
DegenerateMap identity_map(std::size_t k);

struct SubsetCertificate
{
    std::vector<int> subset;  //!< I, 1-based rows
    std::vector<int> constraints;  //!< J_I = {j : f(j) subset of I}, 1-based columns
    RationalVector lambda;  //!< strictly positive, over I
    std::optional<RationalVector> farkas;  //!< present iff no lambda exists
};

struct SCertificate
{
    bool holds = true;
    std::vector<SubsetCertificate> subsets;
};

/*!
 * For every nonempty row subset I, look for lambda > 0 over I with
 * (lambda^T R_{I, J_I})_j >= 1 for all j in J_I.
 *
 * The constraints are invariant under positive scaling of lambda, so
 * substituting lambda = mu + delta * 1 with mu >= 0 and a fixed delta
 * loses nothing: any strictly positive solution can be scaled until its
 * smallest entry is at least delta.
 */
SCertificate weakly_completely_s(RationalMatrix const& r, DegenerateMap const& f);

//! Exact verification of a certificate against R and f
bool verify_certificate(RationalMatrix const& r, DegenerateMap const& f, SCertificate const& cert);

/*!
 * Classical completely-S test: every principal submatrix M_II admits
 * x > 0 with M_II x > 0.
 */
bool completely_s(RationalMatrix const& m);

}  // namespace boxball
