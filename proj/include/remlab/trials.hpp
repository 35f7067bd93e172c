// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file remlab/trials.hpp
//! Seed-derived trial batches and Monte Carlo summaries.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "rng.hpp"

namespace remlab
{
//---------------------------------------------------------------------------//
//! Universal statistical result record.
struct MCEstimate
{
    double mean{0};
    double std_error{0};
    std::uint64_t trials{0};
    std::uint64_t seed{0};
};

//! Mean and standard error of a sample.
MCEstimate summarize(std::span<double const> xs, std::uint64_t seed = 0);

//! Sample quantile with linear interpolation (q in [0, 1]); sorts a copy.
double quantile(std::vector<double> xs, double q);

//! Default worker count: hardware concurrency, at least one.
unsigned default_threads();

//---------------------------------------------------------------------------//
/*!
 * Evaluate \c fn(i) for i in [0, count) on \c threads workers and return the
 * results by index. The first exception thrown by any call is rethrown.
 */
template<class Fn>
auto run_indexed(std::uint64_t count, Fn&& fn, unsigned threads = 0)
{
    using Result = decltype(fn(std::uint64_t{}));
    std::vector<Result> out(count);
    if (threads == 0)
        threads = default_threads();
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));

    if (threads <= 1)
    {
        for (std::uint64_t i = 0; i < count; ++i)
            out[i] = fn(i);
        return out;
    }

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;)
        {
            std::uint64_t const i = next.fetch_add(1);
            if (i >= count)
                return;
            try
            {
                out[i] = fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = count;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
    return out;
}

/*!
 * Run \c fn(trial_seed(master, t)) for t in [0, trials) and return the
 * results in trial order.
 *
 * Each trial only sees its derived seed and results are stored by index, so
 * the output is identical for any thread count.
 */
template<class Fn>
auto run_trials(std::uint64_t master_seed, std::uint64_t trials, Fn&& fn,
                unsigned threads = 0)
{
    return run_indexed(
        trials,
        [&](std::uint64_t t) { return fn(trial_seed(master_seed, t)); },
        threads);
}

//---------------------------------------------------------------------------//
}  // namespace remlab
