// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/rational.hpp
//! Exact rational scalars for the algebraic checks.
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace boxball
{
using Rational = boost::multiprecision::mpq_rational;

using RationalVector = std::vector<Rational>;

//! Dense row-major rational matrix
class RationalMatrix
{
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Rational const& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector column(std::size_t c) const;
    RationalMatrix transpose() const;
    //! Submatrix with the given rows and columns, in the given order
    RationalMatrix select(std::vector<std::size_t> const& rows, std::vector<std::size_t> const& cols) const;

    bool operator==(RationalMatrix const&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

//! Parse "p/q", an integer, or a finite decimal ("0.25", "1e-3") exactly
Rational parse_rational(std::string_view text);

//! "p/q" or "p" when the denominator is one
std::string to_string(Rational const& q);

double to_double(Rational const& q);

}  // namespace boxball
