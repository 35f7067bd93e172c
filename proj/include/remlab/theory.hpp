// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file remlab/theory.hpp
//! Closed-form level predictions, variational and bridge solvers.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"
#include "trials.hpp"

namespace remlab
{
//---------------------------------------------------------------------------//
// CONSTANTS AND UNITS
//---------------------------------------------------------------------------//
inline constexpr double ln2 = 0.693147180559945309417232121458;

//! sqrt(2 ln 2)
inline double beta_c()
{
    return std::sqrt(2 * ln2);
}

//! GFF Green-function prefactor g = 2/pi
inline constexpr double gff_g = 0.636619772367581343075535053490;

/*!
 * Convert a per-unit-N growth rate expressed in log2 units to natural-log
 * units. Every rate this library returns is in natural-log units.
 */
inline constexpr double natural_rate(double rate_log2)
{
    return rate_log2 * ln2;
}

//! Inverse of natural_rate.
inline constexpr double log2_rate(double rate_natural)
{
    return rate_natural / ln2;
}

//---------------------------------------------------------------------------//
// LEVEL PREDICTIONS
//---------------------------------------------------------------------------//
/*!
 * Predicted maximum a_N = leading * N - log_coeff * log N
 * - loglog_coeff * log log N. For the GFF the leading term multiplies log N.
 */
struct LevelPrediction
{
    double leading{0};
    double log_coeff{0};
    double loglog_coeff{0};
    //! Prediction is conjectural (interpolating trees)
    bool conjectural{false};
    //! Leading term multiplies log N instead of N
    bool log_scale{false};
    std::string formula_id;

    //! Evaluate at size n.
    double at(double n) const;
};

LevelPrediction predicted_level(ModelSpec const& model);

//! 2 sqrt(g) log N - (3/4) sqrt(g) log log N on an N x N box.
LevelPrediction gff_level();

//---------------------------------------------------------------------------//
// VARIATIONAL PRINCIPLE
//---------------------------------------------------------------------------//
/*!
 * Maximizer of lambda_1 + ... + lambda_K subject to the nested constraints
 * sum_{j<=L} lambda_j^2 / (2 a_j) <= t_L log 2 for L = 1..K.
 */
struct VariationalSolution
{
    double value{0};
    std::vector<double> lambdas;
    //! active[L-1] is true when constraint L holds with equality
    std::vector<bool> active;
    //! Last level of each block of equal lambda_j / a_j
    std::vector<int> block_ends;
};

/*!
 * Solve the variational problem with budgets t_L = L/K.
 *
 * Every KKT point is determined by its active constraints, which cut the
 * levels into consecutive blocks; within a block lambda_j / a_j is constant
 * and the block budget is saturated. All 2^(K-1) block structures are solved
 * in closed form and the best feasible one is returned (fewest blocks on
 * ties).
 */
VariationalSolution solve_variational(std::vector<double> const& a);

//! Same with explicit cumulative budgets t_1 < ... < t_K = 1.
VariationalSolution solve_variational(std::vector<double> const& a,
                                      std::vector<double> const& budgets);

//! Brute-force grid maximization (mesh step on lambda_1..lambda_{K-1}; the
//! last coordinate is maximized exactly). Cost grows as mesh^-(K-1).
double grid_search_variational(std::vector<double> const& a, double mesh);

//! Maximum constraint violation of a candidate (<= 0 when feasible).
double variational_violation(std::vector<double> const& a,
                             std::vector<double> const& lambdas);

//---------------------------------------------------------------------------//
// SECOND MOMENT AND COUNTING RATES
//---------------------------------------------------------------------------//
struct RateReport
{
    //! rates[r-1] for r = 1..K-1, natural-log units per unit N
    std::vector<double> rates;
    double max_rate{0};
    bool vanishing{false};
};

/*!
 * Exponents (K/2) sum_{j=2}^{r+1} lambda_j^2 - (r/K) log 2 of the branches of
 * the normalized second moment; \c lambdas holds lambda_2..lambda_K.
 */
RateReport second_moment_rate(int k, std::vector<double> const& lambdas);

/*!
 * Exponential growth rate of the two-level counting variable, or -infinity
 * when either side constraint fails. Negative thresholds do not bind.
 */
double grem2_region(double lambda1, double lambda2, double a1, double a2);

//---------------------------------------------------------------------------//
// BRIDGES
//---------------------------------------------------------------------------//
//! 1 - exp(-2ab/N); 0 when a <= 0 or b <= 0.
double bridge_below_line(double n, double a, double b);

/*!
 * Density propagation for a bridge of Gaussian unit-variance increments.
 *
 * Holds the sub-probability density of S_{N-1} on the event S_l <= barrier_l
 * for l = 1..N-1, so the bridge probability for any terminal value costs one
 * quadrature.
 */
class BridgeDP
{
  public:
    static constexpr int bins = 4096;
    static constexpr double half_width_sd = 12;
    static constexpr double kernel_sd = 10;

    BridgeDP(int n, std::vector<double> const& barrier);

    //! P[S_l <= barrier_l, l < N | S_N = terminal]
    double probability(double terminal) const;

    int n() const { return n_; }

  private:
    int n_;
    double lo_;
    double h_;
    double last_barrier_;
    std::vector<double> density_;

    double integrate_below(double b, double x) const;
};

//! One-shot form of BridgeDP.
double bridge_dp_below_barrier(int n, std::vector<double> const& barrier,
                               double terminal);

//! P[bridge of lifespan K stays <= 0 at 1..K-1]: quadrature for K <= 4,
//! Monte Carlo with 10^7 paths above.
double ballot_constant(int k);

//! Nested adaptive Gauss-Kronrod quadrature, 2 <= K <= 4.
double ballot_constant_quadrature(int k);

//! Monte Carlo estimate from counter-based Gaussian paths.
MCEstimate ballot_constant_mc(int k, std::uint64_t paths, std::uint64_t seed,
                              unsigned threads = 0);

//---------------------------------------------------------------------------//
// PERCOLATION AND MATCHING
//---------------------------------------------------------------------------//
//! Rate function of the mean-one exponential, x - 1 - log x.
inline double exp_rate(double x)
{
    return x - 1 - std::log(x);
}

//! The two roots c1 < 1 < c2 of 2c = e^{c-1}.
std::pair<double, double> percolation_constants();

//! P[Erlang(n, 1) <= x]
double erlang_cdf(int n, double x);

struct MatchingReport
{
    std::vector<int> n_list;
    std::vector<double> expected;
    //! Least-squares slope of log(expected) against log N
    double exponent{0};
};

/*!
 * Expected number of leaves with X - a_N in [x0, x1] for
 * a_N = beta_c N - c log N.
 *
 * REM uses 2^N times the Gaussian window mass; BRW additionally weights by the
 * probability that the path stays below the line l * beta_c.
 */
MatchingReport matching_expected_count(Variant variant, double c, double x0,
                                       double x1, std::vector<int> const& ns);

//! Least-squares slope of log(y) against log(x).
double loglog_slope(std::vector<double> const& x, std::vector<double> const& y);

//---------------------------------------------------------------------------//
}  // namespace remlab
