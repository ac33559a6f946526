// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/rng.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>

namespace boxball
{
//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 counter-based block function.
 *
 * Maps a 128-bit counter and a 64-bit key to 128 pseudorandom bits. The
 * output depends only on (counter, key), so results are identical on every
 * platform and independent of thread scheduling.
 */
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter apply(Counter ctr, Key key);
};

//---------------------------------------------------------------------------//
/*!
 * Reproducible random stream keyed by (master seed, stream index).
 *
 * The key is the master seed, the upper half of the counter is the stream
 * index and the lower half counts 128-bit blocks. Words are consumed in
 * order, so a given (seed, stream) always yields the same sequence.
 */
class RngStream
{
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    //! Uniform double in [0, 1) with 53 random bits
    double uniform();
    //! Uniform double in (0, 1]
    double uniform_pos();
    //! Standard normal deviate (Box-Muller, second value cached)
    double normal();
    //! Exponential deviate with the given rate
    double exponential(double rate);
    //! Uniform integer in [0, n), n >= 1
    std::uint32_t below(std::uint32_t n);

    //! Independent child stream; same arguments give the same child
    RngStream split(std::uint64_t index) const;

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Bernoulli threshold on 32-bit words: P(word < threshold) = p.
 *
 * Stored as 64-bit so that p = 1 maps to 2^32 and always succeeds.
 */
class BernoulliThreshold
{
  public:
    explicit BernoulliThreshold(double p);

    bool operator()(std::uint32_t word) const { return word < threshold_; }
    std::uint64_t raw() const { return threshold_; }

  private:
    std::uint64_t threshold_;
};

}  // namespace boxball
