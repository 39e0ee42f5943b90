//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/rng.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>

namespace thinchar
{
namespace detail
{
//! SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
{
    return (x << k) | (x >> (64 - k));
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Seeded, splittable random stream.
 *
 * The state is a xoshiro256** generator whose 256-bit state is expanded by
 * SplitMix64 from a key derived from (seed, stream). Two streams with the
 * same (seed, stream) pair produce identical sequences; child streams for
 * parallel work are obtained with \c split, which only depends on the
 * parent's identifiers and the child key (never on how many numbers the
 * parent has already produced).
 *
 * Instances are single-owner: do not share one stream between threads.
 */
class RngStream
{
  public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream)
    {
        std::uint64_t sm = seed ^ detail::mix64(stream + 0x9e3779b97f4a7c15ull);
        for (auto& s : state_)
        {
            sm += 0x9e3779b97f4a7c15ull;
            s = detail::mix64(sm);
        }
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    //! Independent child stream identified by \c key.
    RngStream split(std::uint64_t key) const noexcept
    {
        return RngStream(
            seed_, detail::mix64(stream_ ^ detail::mix64(key + 0x632be59bd9b4e019ull)));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept
    {
        auto const result = detail::rotl(state_[1] * 5, 7) * 9;
        auto const t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl(state_[3], 45);
        return result;
    }

    //! Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept
    {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    //! 1 with probability p.
    bool bernoulli(double p) noexcept { return this->uniform() < p; }

    //! Uniform integer in [0, n) by Lemire's multiply-shift rejection.
    std::uint64_t below(std::uint64_t n) noexcept
    {
        auto x = (*this)();
        auto m = static_cast<__uint128_t>(x) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n)
        {
            std::uint64_t const threshold = (0 - n) % n;
            while (low < threshold)
            {
                x = (*this)();
                m = static_cast<__uint128_t>(x) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::array<std::uint64_t, 4> state_{};
};

//---------------------------------------------------------------------------//
}  // namespace thinchar
