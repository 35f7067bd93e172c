// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file remlab/rng.hpp
//! Counter-based random streams keyed by (master seed, node key).
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstdint>

namespace remlab
{
//---------------------------------------------------------------------------//
/*!
 * Stream domains.
 *
 * Each consumer of randomness draws from its own domain so that, e.g., the
 * Gaussian field and the percolation weights of the same seed are unrelated.
 */
enum class Domain : std::uint64_t
{
    field = 0x6669656c64ull,
    tree_weight = 0x74726565ull,
    cube_weight = 0x63756265ull,
    gff = 0x676666ull,
    cascade = 0x63617363ull,
    mc = 0x6d63ull,
    trial = 0x747269616cull,
};

//---------------------------------------------------------------------------//
//! SplitMix64 finalizer: a bijective 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ull;

//---------------------------------------------------------------------------//
/*!
 * Keyed pseudorandom function over one tree level (or one flat index space).
 *
 * The output for counter \c i is mix64(key + (i + 1) * gamma), i.e. position
 * \c i of a SplitMix64 sequence whose starting state is derived from
 * (seed, domain, level). Any node is therefore addressable in O(1) without
 * touching its neighbors, which is what makes depth-first streaming and
 * subtree pruning order-independent.
 */
class LevelStream
{
  public:
    LevelStream(std::uint64_t seed, Domain domain, std::uint64_t level) noexcept
        : key_(mix64(mix64(seed ^ static_cast<std::uint64_t>(domain))
                     + (level + 1) * 0xd1b54a32d192ed03ull))
    {
    }

    std::uint64_t operator()(std::uint64_t counter) const noexcept
    {
        return mix64(key_ + (counter + 1) * golden_gamma);
    }

  private:
    std::uint64_t key_;
};

//! Draw \c i of the (seed, domain, level) stream.
inline std::uint64_t
prf_bits(std::uint64_t seed, Domain domain, std::uint64_t level, std::uint64_t i)
{
    return LevelStream(seed, domain, level)(i);
}

//! Seed of trial \c t derived from a master seed.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t t)
{
    return prf_bits(master, Domain::trial, 0, t);
}

//---------------------------------------------------------------------------//
// UNIFORM AND DISTRIBUTION TRANSFORMS
//---------------------------------------------------------------------------//
//! Rank of the uniform encoded by 64 random bits (52 significant bits).
constexpr std::uint64_t uniform_rank(std::uint64_t bits) noexcept
{
    return bits >> 12;
}

//! Uniform in (0, 1): (2k + 1) / 2^53 is exact in double, and so is 1 - u.
constexpr double uniform_from_rank(std::uint64_t rank) noexcept
{
    return static_cast<double>(2 * rank + 1) * 0x1.0p-53;
}

constexpr double uniform_open(std::uint64_t bits) noexcept
{
    return uniform_from_rank(uniform_rank(bits));
}

// Wichura's AS241 (PPND16): relative accuracy about 1e-16 over (0, 1).
double inverse_normal_cdf(double p);

//! Standard normal cumulative distribution function.
inline double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

//! Standard normal upper tail P[Z >= x].
inline double normal_sf(double x)
{
    return 0.5 * std::erfc(x * M_SQRT1_2);
}

inline double normal_pdf(double x)
{
    constexpr double inv_sqrt_2pi = 0.398942280401432677939946059934;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

//! Standard normal draw from 64 random bits via the inverse CDF.
inline double gaussian_from_bits(std::uint64_t bits)
{
    return inverse_normal_cdf(uniform_open(bits));
}

//! Mean-one exponential draw from 64 random bits via -log(1 - u).
inline double exponential_from_bits(std::uint64_t bits)
{
    return -std::log1p(-uniform_open(bits));
}

//---------------------------------------------------------------------------//
}  // namespace remlab
