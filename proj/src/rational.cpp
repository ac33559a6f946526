// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace boxball
{
RationalVector RationalMatrix::column(std::size_t c) const
{
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
    {
        out[r] = (*this)(r, c);
    }
    return out;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
    {
        for (std::size_t c = 0; c < cols_; ++c)
        {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

RationalMatrix RationalMatrix::select(std::vector<std::size_t> const& rows, std::vector<std::size_t> const& cols) const
{
    RationalMatrix s(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        for (std::size_t c = 0; c < cols.size(); ++c)
        {
            s(r, c) = (*this)(rows[r], cols[c]);
        }
    }
    return s;
}

Rational parse_rational(std::string_view text)
{
    auto fail = [&] { throw std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
    if (text.empty())
    {
        fail();
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos)
    {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0)
        {
            fail();
        }
        return num / den;
    }

    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-')
    {
        negative = text[i] == '-';
        ++i;
    }
    boost::multiprecision::mpz_int mantissa = 0;
    long scale = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i)
    {
        char const ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch)))
        {
            mantissa = mantissa * 10 + (ch - '0');
            any_digit = true;
            if (seen_point)
            {
                --scale;
            }
        }
        else if (ch == '.' && !seen_point)
        {
            seen_point = true;
        }
        else if (ch == 'e' || ch == 'E')
        {
            break;
        }
        else
        {
            fail();
        }
    }
    if (!any_digit)
    {
        fail();
    }
    if (i < text.size())
    {
        std::string const exponent(text.substr(i + 1));
        if (exponent.empty())
        {
            fail();
        }
        std::size_t used = 0;
        long e = 0;
        try
        {
            e = std::stol(exponent, &used);
        }
        catch (std::exception const&)
        {
            fail();
        }
        if (used != exponent.size())
        {
            fail();
        }
        scale += e;
    }
    Rational value(mantissa);
    boost::multiprecision::mpz_int const ten_pow = boost::multiprecision::pow(
        boost::multiprecision::mpz_int(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    if (scale < 0)
    {
        value /= Rational(ten_pow);
    }
    else
    {
        value *= Rational(ten_pow);
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(Rational const& q)
{
    if (denominator(q) == 1)
    {
        return numerator(q).str();
    }
    return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(Rational const& q)
{
    return q.convert_to<double>();
}

}  // namespace boxball
