// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
#include "boxball/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boxball
{
namespace
{
constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    std::uint64_t const p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace

Philox4x32::Counter Philox4x32::apply(Counter ctr, Key key)
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMulA, ctr[0], hi0, lo0);
        mulhilo(kMulB, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

std::uint32_t RngStream::next_u32()
{
    if (used_ == 4)
    {
        Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_),
                                static_cast<std::uint32_t>(block_ >> 32),
                                static_cast<std::uint32_t>(stream_),
                                static_cast<std::uint32_t>(stream_ >> 32)};
        Philox4x32::Key key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
        buf_ = Philox4x32::apply(ctr, key);
        ++block_;
        used_ = 0;
    }
    return buf_[used_++];
}

std::uint64_t RngStream::next_u64()
{
    std::uint64_t const lo = next_u32();
    std::uint64_t const hi = next_u32();
    return (hi << 32) | lo;
}

double RngStream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos()
{
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    double const u1 = uniform_pos();
    double const u2 = uniform();
    double const r = std::sqrt(-2.0 * std::log(u1));
    double const theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

double RngStream::exponential(double rate)
{
    return -std::log(uniform_pos()) / rate;
}

std::uint32_t RngStream::below(std::uint32_t n)
{
    // Lemire's multiply-shift with rejection: exactly uniform
    std::uint64_t m = static_cast<std::uint64_t>(next_u32()) * n;
    auto low = static_cast<std::uint32_t>(m);
    if (low < n)
    {
        std::uint32_t const threshold = static_cast<std::uint32_t>(-n) % n;
        while (low < threshold)
        {
            m = static_cast<std::uint64_t>(next_u32()) * n;
            low = static_cast<std::uint32_t>(m);
        }
    }
    return static_cast<std::uint32_t>(m >> 32);
}

RngStream RngStream::split(std::uint64_t index) const
{
    return RngStream(splitmix(seed_ ^ splitmix(stream_)), splitmix(index + 0x632BE59BD9B4E019ull));
}

BernoulliThreshold::BernoulliThreshold(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
    {
        throw std::invalid_argument("Bernoulli probability outside [0, 1]");
    }
    threshold_ = static_cast<std::uint64_t>(std::llround(std::ldexp(p, 32)));
}

}  // namespace boxball
