// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file remlab/gff.hpp
//! Discrete Gaussian free field on a square box and local projections.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "trials.hpp"

namespace remlab
{
//---------------------------------------------------------------------------//
enum class GreenMethod
{
    linear_solve,
    walk_mc,
};

struct GreenOptions
{
    //! Materialize the dense covariance (linear solve only)
    bool dense{true};
    //! Killed walks per starting site (walk-MC only)
    std::uint64_t walks_per_site{2000};
    std::uint64_t seed{0};
    unsigned threads{0};
};

//! Largest box side for which covariances are built.
inline constexpr int max_green_box = 64;

/*!
 * Green function of simple random walk killed on the boundary of [0, N]^2.
 *
 * Interior sites (x, y) with 1 <= x, y <= N-1 are numbered
 * (x - 1) * (N - 1) + (y - 1). The covariance is G = (I - P)^{-1} where P is
 * the walk's transition matrix restricted to the interior. Immutable after
 * construction.
 */
class GreenOperator
{
  public:
    using SparseMatrix = Eigen::SparseMatrix<double>;
    using Factor = Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower,
                                        Eigen::NaturalOrdering<int>>;

    int n() const { return n_; }
    int side() const { return n_ - 1; }
    int size() const { return side() * side(); }
    GreenMethod method() const { return method_; }

    int index(int x, int y) const { return (x - 1) * side() + (y - 1); }
    std::array<int, 2> site(int i) const
    {
        return {i / side() + 1, i % side() + 1};
    }
    bool is_interior(int x, int y) const
    {
        return x >= 1 && y >= 1 && x <= n_ - 1 && y <= n_ - 1;
    }

    //! I - P on interior sites
    SparseMatrix const& laplacian() const { return laplacian_; }
    bool has_dense() const { return dense_.size() > 0; }
    Eigen::MatrixXd const& dense() const { return dense_; }
    //! Entrywise standard errors (walk-MC only)
    Eigen::MatrixXd const& std_error() const { return stderr_; }
    bool has_factor() const { return static_cast<bool>(factor_); }
    //! Diagonal jitter added before factorizing (0 unless needed)
    double jitter() const { return jitter_; }

    //! G(i, j), from the dense matrix or one sparse solve
    double entry(int i, int j) const;
    //! Columns G(:, cols)
    Eigen::MatrixXd columns(std::vector<int> const& cols) const;
    //! x = U^{-1} z with I - P = U^T U, so Cov(x) = G when Cov(z) = I
    Eigen::VectorXd color(Eigen::VectorXd const& z) const;

  private:
    friend GreenOperator build_green(int, GreenMethod, GreenOptions const&);

    int n_{0};
    GreenMethod method_{GreenMethod::linear_solve};
    SparseMatrix laplacian_;
    std::shared_ptr<Factor const> factor_;
    Eigen::MatrixXd dense_;
    Eigen::MatrixXd stderr_;
    double jitter_{0};
};

GreenOperator build_green(int n, GreenMethod method = GreenMethod::linear_solve,
                          GreenOptions const& opts = {});

//---------------------------------------------------------------------------//
struct FieldSample2D
{
    int n{0};
    std::uint64_t seed{0};
    //! Values on interior sites, indexed as in GreenOperator
    std::vector<double> values;
};

FieldSample2D sample_gff(GreenOperator const& green, std::uint64_t seed);

struct GffMaxStats
{
    int n{0};
    double delta{0};
    //! Maximum over sites at distance >= delta N from the boundary
    MCEstimate interior_max;
    //! interior maximum / log N
    MCEstimate ratio;
    MCEstimate full_max;
    std::vector<double> interior_by_trial;
    std::vector<double> full_by_trial;
};

GffMaxStats gff_max_stats(int n, double delta, std::uint64_t trials,
                          std::uint64_t seed, unsigned threads = 0);

//! Sites at distance >= delta N from the boundary of [0, N]^2
std::vector<int> delta_interior(GreenOperator const& green, double delta);

//---------------------------------------------------------------------------//
// LOCAL PROJECTIONS
//---------------------------------------------------------------------------//
struct LocalProjection
{
    double radius{0};
    //! Inner vertex boundary of the Euclidean ball, as site indices
    std::vector<int> boundary;
    //! Conditional-mean coefficients from Gaussian conditioning on G
    std::vector<double> coefficients;
    //! Exit distribution of the walk from the center on the boundary
    std::vector<double> harmonic;
    double max_coefficient_gap{0};
    double harmonic_mass{0};
    double residual_variance{0};
    double mean_variance{0};
    double total_variance{0};
    //! max |Cov(residual, X_b)| over boundary sites b
    double max_residual_covariance{0};
    //! Largest |coefficient| off the boundary when conditioning on the whole
    //! complement of the ball's interior; NaN when not computed
    double complement_off_boundary{0};
    double complement_gap{0};
};

struct ProjectionOptions
{
    //! Also condition on the full complement when it has at most this many
    //! sites
    int complement_limit{2500};
};

/*!
 * Project X_z on the boundary of the ball of radius N^{1 - pi q / 2}.
 */
LocalProjection local_projection_gff(GreenOperator const& green, int x, int y,
                                     double q, ProjectionOptions const& = {});

//! Same with an explicit radius.
LocalProjection local_projection_gff_radius(GreenOperator const& green, int x,
                                            int y, double radius,
                                            ProjectionOptions const& = {});

/*!
 * Conditional mean of a two-level leaf given its 2^{N/2} - 1 siblings.
 *
 * With M = 2^{N/2} leaves under the same first-level node, observations
 * Y_tau = X1 + Z_tau (tau != alpha_2), v1 = a1 N and v2 = (1 - a1) N:
 * E[X_alpha | Y] = A X1 + B sum_tau Z_tau with
 * A = (M - 1) v1 / (v2 + (M - 1) v1) and B = v1 / (v2 + (M - 1) v1).
 */
struct Grem2Projection
{
    int n{0};
    double a1{0};
    double siblings{0};
    double first_coefficient{0};
    double sibling_coefficient{0};
    //! Var(X_alpha - E[X_alpha | Y])
    double residual_variance{0};
    //! Cov(residual, X1); nonzero at finite N
    double residual_first_covariance{0};
    //! Values of the commonly quoted display
    //! 1/(1 + 2^{-N/2}(1 - a1)) and 2^{-N/2}/(a1 + (1 - a1) 2^{-N/2})
    double quoted_first{0};
    double quoted_sibling{0};
};

Grem2Projection local_projection_grem2(int n, double a1);

//! Dense Gaussian conditioning on the materialized sibling covariance.
struct Grem2DenseOracle
{
    double first_coefficient{0};
    double sibling_coefficient{0};
    //! max |c_tau - mean c| over observations
    double sibling_spread{0};
    //! max |Cov(residual, Y_tau)|
    double max_residual_observation_covariance{0};
    double residual_first_covariance{0};
};

Grem2DenseOracle grem2_dense_projection(int n, double a1);

//---------------------------------------------------------------------------//
}  // namespace remlab
