// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include "remlab/trials.hpp"

#include <stdexcept>

namespace remlab
{
//---------------------------------------------------------------------------//
MCEstimate summarize(std::span<double const> xs, std::uint64_t seed)
{
    MCEstimate est;
    est.trials = xs.size();
    est.seed = seed;
    if (xs.empty())
        return est;
    // Two-pass for stability.
    double sum = 0;
    for (double x : xs)
        sum += x;
    est.mean = sum / xs.size();
    if (xs.size() > 1)
    {
        double ss = 0;
        for (double x : xs)
            ss += (x - est.mean) * (x - est.mean);
        est.std_error = std::sqrt(ss / (xs.size() - 1) / xs.size());
    }
    return est;
}

double quantile(std::vector<double> xs, double q)
{
    if (xs.empty())
        throw std::invalid_argument("quantile of an empty sample");
    std::sort(xs.begin(), xs.end());
    double const pos = q * (xs.size() - 1);
    auto const lo = static_cast<std::size_t>(std::floor(pos));
    auto const hi = std::min(lo + 1, xs.size() - 1);
    double const frac = pos - lo;
    return xs[lo] * (1 - frac) + xs[hi] * frac;
}

unsigned default_threads()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

//---------------------------------------------------------------------------//
}  // namespace remlab
