// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file remlab/extremes.hpp
//! Maxima, counting variables, barrier thinning and extremal-process summaries.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "model.hpp"

namespace remlab
{
//---------------------------------------------------------------------------//
// BARRIERS
//---------------------------------------------------------------------------//
struct NoBarrier
{
};

//! l -> slope * l + offset
struct LineBarrier
{
    double slope{0};
    double offset{0};
};

//! l -> slope * l - min(l, depth - l)^gamma, with 0 < gamma < 1/2
struct EnvelopeBarrier
{
    double gamma{0.25};
    int depth{1};
    double slope{0};
};

//! l -> beta_c * l + k_const * log(depth)
struct LogLineBarrier
{
    double k_const{0};
    int depth{1};
};

using Barrier
    = std::variant<NoBarrier, LineBarrier, EnvelopeBarrier, LogLineBarrier>;

//! Envelope with validated gamma; slope defaults to beta_c.
EnvelopeBarrier make_envelope(double gamma, int depth);
EnvelopeBarrier make_envelope(double gamma, int depth, double slope);

//! Barrier height at interior level l (energy units).
double barrier_value(Barrier const& b, int level);

//---------------------------------------------------------------------------//
// RESULTS
//---------------------------------------------------------------------------//
struct CountingResult
{
    std::uint64_t count{0};
    std::uint64_t total_leaves{0};
    std::vector<double> thresholds;
};

struct WindowCounts
{
    double a_n{0};
    std::vector<double> edges;
    //! counts[i] is the number of leaves with edges[i] <= X - a_n < edges[i+1]
    std::vector<std::uint64_t> counts;
};

struct MaxResult
{
    double energy{0};
    LeafIndex argmax;
    PathProfile profile;
};

//! Empirical bridge of the maximizing path across trials.
struct ProfileStats
{
    //! Levels 0..depth
    std::vector<double> mean;
    std::vector<double> std_error;
    std::vector<double> q10;
    std::vector<double> q50;
    std::vector<double> q90;
    std::uint64_t trials{0};
    int depth{0};

    //! Normalized mean at level depth/2; empty when there is no interior level.
    std::optional<double> midpoint_mean() const;
    std::optional<double> midpoint_std_error() const;
};

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//
MaxResult
scan_max(ModelSpec const& model, std::uint64_t seed, StreamOptions const& = {});

/*!
 * Count leaves whose block sums all clear their thresholds.
 *
 * The depth is split into K consecutive blocks (the last absorbing the
 * remainder); the count is over leaves with block sum l >= lambda_l * N for
 * l = 2..K. Block 1 is deliberately unconstrained. \c lambdas holds
 * lambda_2..lambda_K.
 */
CountingResult count_exceedances(ModelSpec const& model, std::uint64_t seed,
                                 int k, std::vector<double> const& lambdas,
                                 StreamOptions const& = {});

//! Leaves with energy >= lambda * N.
CountingResult count_rem_threshold(ModelSpec const& model, std::uint64_t seed,
                                   double lambda, StreamOptions const& = {});

//! Leaves with energy >= a whose interior partial sums stay <= the barrier.
CountingResult count_below_barrier(ModelSpec const& model, std::uint64_t seed,
                                   Barrier const& barrier, double a,
                                   StreamOptions const& = {});

WindowCounts window_counts(ModelSpec const& model, std::uint64_t seed,
                           double a_n, std::vector<double> const& edges,
                           StreamOptions const& = {});

/*!
 * Per-level statistics of the argmax profile over trials.
 *
 * Profiles are normalized as S_l - t_l * S_depth where t_l is the fraction of
 * total variance carried by levels 1..l (equal to l/depth when all levels
 * have the same variance).
 */
ProfileStats
argmax_profile_stats(ModelSpec const& model,
                     std::vector<std::uint64_t> const& seeds,
                     unsigned threads = 0);

//! Same statistics from precomputed argmax profiles.
ProfileStats profile_stats(ModelSpec const& model,
                           std::vector<PathProfile> const& profiles);

//! Seeds trial_seed(master, 0..trials-1)
std::vector<std::uint64_t> trial_seeds(std::uint64_t master,
                                       std::uint64_t trials);

//---------------------------------------------------------------------------//
// CASCADES
//---------------------------------------------------------------------------//
struct CascadeOptions
{
    //! Points kept per cluster, taken from the top down.
    std::uint64_t max_per_cluster{std::uint64_t{1} << 20};
    //! Refuse when the expected number of generated points exceeds this.
    double point_budget{1e8};
};

struct CascadeSample
{
    double lower{0};
    double upper{0};
    std::vector<double> atoms;
    //! clusters[i] holds the sums atoms[i] + offset, in decreasing order
    std::vector<std::vector<double>> clusters;
    //! True if any cluster was cut at max_per_cluster
    bool truncated{false};

    std::vector<double> points() const;
    std::uint64_t count_in(double lo, double hi) const;
};

/*!
 * Poisson points with intensity exp(-b t) dt on [lower, upper], decreasing.
 *
 * Points are generated from the top by inverting the cumulative intensity
 * measured from \c upper, so any prefix of the output is exact.
 */
std::vector<double> sample_poisson_exponential(double b, double lower,
                                               double upper,
                                               std::uint64_t seed,
                                               std::uint64_t stream = 0,
                                               std::uint64_t max_points
                                               = ~std::uint64_t{0});

/*!
 * Two-level Poisson cascade restricted to [lower, upper].
 *
 * First-level atoms have intensity exp(-b1 t); each atom t carries a cluster
 * of offsets s with intensity exp(-b2 s) restricted so that t + s lies in
 * [lower, upper]. Returned points are the sums t + s.
 */
CascadeSample sample_cascade(double b1, double b2, double lower, double upper,
                             std::uint64_t seed, CascadeOptions const& = {});

//---------------------------------------------------------------------------//
}  // namespace remlab
