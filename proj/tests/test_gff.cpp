// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numeric>

#include <doctest.h>

#include "remlab/extremes.hpp"
#include "remlab/gff.hpp"
#include "remlab/model.hpp"
#include "remlab/theory.hpp"

using namespace remlab;

namespace
{
double const g_slope = 2 / M_PI;

int center(GreenOperator const& g)
{
    return g.index(g.n() / 2, g.n() / 2);
}
}  // namespace

//---------------------------------------------------------------------------//
TEST_CASE("smallest box has a single site with unit variance")
{
    auto const g = build_green(2);
    REQUIRE(g.size() == 1);
    CHECK(g.dense()(0, 0) == doctest::Approx(1.0).epsilon(1e-14));

    GreenOptions opts;
    opts.walks_per_site = 100;
    auto const mc = build_green(2, GreenMethod::walk_mc, opts);
    CHECK(mc.dense()(0, 0) == 1.0);
    CHECK(mc.std_error()(0, 0) == 0.0);
}

TEST_CASE("Green matrix is symmetric and inverts the Laplacian")
{
    for (int n : {8, 16, 32})
    {
        auto const g = build_green(n);
        Eigen::MatrixXd const& d = g.dense();
        CHECK((d - d.transpose()).cwiseAbs().maxCoeff() < 1e-10);
        Eigen::MatrixXd const id = g.laplacian() * d;
        CHECK((id - Eigen::MatrixXd::Identity(g.size(), g.size()))
                  .cwiseAbs()
                  .maxCoeff()
              < 1e-8);
        CHECK(g.jitter() == 0.0);
    }
}

TEST_CASE("Laplacian rows sum to the escape probability")
{
    auto const g = build_green(5);
    Eigen::VectorXd const ones = Eigen::VectorXd::Ones(g.size());
    Eigen::VectorXd const s = g.laplacian() * ones;
    // corner sites touch two boundary edges, edge sites one, bulk none
    CHECK(s(g.index(1, 1)) == doctest::Approx(0.5));
    CHECK(s(g.index(1, 2)) == doctest::Approx(0.25));
    CHECK(s(g.index(2, 2)) == doctest::Approx(0.0));
}

TEST_CASE("entry and columns agree with the dense matrix")
{
    auto const dense = build_green(12);
    GreenOptions opts;
    opts.dense = false;
    auto const lazy = build_green(12, GreenMethod::linear_solve, opts);
    CHECK_FALSE(lazy.has_dense());
    CHECK(lazy.entry(7, 40) == doctest::Approx(dense.dense()(7, 40)).epsilon(1e-12));
    auto const cols = lazy.columns({3, 60});
    CHECK((cols.col(1) - dense.dense().col(60)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("walk Monte Carlo agrees with the linear solve")
{
    auto const exact = build_green(16);
    GreenOptions opts;
    opts.walks_per_site = 20000;
    opts.seed = 11;
    auto const mc = build_green(16, GreenMethod::walk_mc, opts);
    int const size = exact.size();
    int within = 0;
    for (int i = 0; i < size; ++i)
    {
        for (int j = 0; j < size; ++j)
        {
            double const diff = std::fabs(mc.dense()(i, j) - exact.dense()(i, j));
            within += diff <= 3 * mc.std_error()(i, j);
        }
    }
    CHECK(within >= 0.99 * size * size);
    for (int i = 0; i < size; ++i)
        CHECK(mc.dense()(i, i) >= 1.0);
}

TEST_CASE("walk Monte Carlo is reproducible across thread counts")
{
    GreenOptions opts;
    opts.walks_per_site = 200;
    opts.seed = 5;
    opts.threads = 1;
    auto const a = build_green(8, GreenMethod::walk_mc, opts);
    opts.threads = 3;
    auto const b = build_green(8, GreenMethod::walk_mc, opts);
    CHECK(a.dense() == b.dense());
}

TEST_CASE("center variance grows by (2/pi) log 2 per doubling")
{
    auto const g32 = build_green(32);
    auto const g64 = build_green(64);
    double const inc = g64.dense()(center(g64), center(g64))
                       - g32.dense()(center(g32), center(g32));
    CHECK(std::fabs(inc - g_slope * std::log(2.0)) <= 0.05);
}

TEST_CASE("interior variances stay within a bounded offset of (2/pi) log N")
{
    // Offset bound measured once on N = 16, 32, 64 and frozen.
    double const c_delta = 0.65;
    for (int n : {16, 32, 64})
    {
        auto const g = build_green(n);
        for (double delta : {0.1, 0.25})
        {
            for (int i : delta_interior(g, delta))
            {
                double const off = g.dense()(i, i) - g_slope * std::log(double(n));
                CHECK(std::fabs(off) <= c_delta);
            }
        }
    }
}

TEST_CASE("delta interior keeps sites far from the boundary")
{
    auto const g = build_green(20);
    auto const s = delta_interior(g, 0.25);
    CHECK(s.size() == 11u * 11u);
    for (int i : s)
    {
        auto const [x, y] = g.site(i);
        CHECK(std::min({x, y, 20 - x, 20 - y}) >= 5);
    }
    CHECK(delta_interior(g, 0.0).size() == std::size_t(g.size()));
    CHECK_THROWS_AS(delta_interior(g, 0.5), std::invalid_argument);
}

//---------------------------------------------------------------------------//
TEST_CASE("field samples have the Green covariance")
{
    auto const g = build_green(32);
    int const c = center(g);
    int const samples = 20000;
    double s1 = 0, s2 = 0;
    std::vector<double> site_sum(g.size(), 0.0);
    for (auto seed : trial_seeds(21, samples))
    {
        auto const f = sample_gff(g, seed);
        s1 += f.values[c];
        s2 += f.values[c] * f.values[c];
        for (int i = 0; i < g.size(); ++i)
            site_sum[i] += f.values[i];
    }
    double const var = s2 / samples - (s1 / samples) * (s1 / samples);
    double const g_cc = g.dense()(c, c);
    CHECK(std::fabs(var / g_cc - 1) <= 0.05);
    for (int i = 0; i < g.size(); i += 37)
    {
        double const sigma = std::sqrt(g.dense()(i, i) / samples);
        CHECK(std::fabs(site_sum[i] / samples) <= 4 * sigma);
    }
}

TEST_CASE("small-box sample covariance matches every Green entry")
{
    auto const g = build_green(8);
    int const size = g.size();
    int const samples = 10000;
    Eigen::MatrixXd xs(samples, size);
    auto const seeds = trial_seeds(23, samples);
    for (int s = 0; s < samples; ++s)
    {
        auto const f = sample_gff(g, seeds[s]);
        for (int i = 0; i < size; ++i)
            xs(s, i) = f.values[i];
    }
    int bad = 0;
    for (int i = 0; i < size; ++i)
    {
        for (int j = i; j < size; ++j)
        {
            Eigen::ArrayXd const p = xs.col(i).array() * xs.col(j).array();
            double const m = p.mean();
            double const sd = std::sqrt((p - m).square().sum() / (samples - 1));
            bad += std::fabs(m - g.dense()(i, j)) > 4 * sd / std::sqrt(double(samples));
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("samples depend only on the seed")
{
    auto const g = build_green(16);
    auto const a = sample_gff(g, 3);
    auto const b = sample_gff(g, 3);
    auto const c = sample_gff(g, 4);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.seed == 3);
    CHECK(a.n == 16);
}

TEST_CASE("sampling needs a factorization")
{
    GreenOptions opts;
    opts.walks_per_site = 10;
    auto const mc = build_green(4, GreenMethod::walk_mc, opts);
    CHECK_THROWS_AS(sample_gff(mc, 1), std::invalid_argument);
}

TEST_CASE("interior maximum grows like log N")
{
    auto const s16 = gff_max_stats(16, 0.1, 100, 31);
    auto const s64 = gff_max_stats(64, 0.1, 100, 31);
    for (std::size_t t = 0; t < s16.interior_by_trial.size(); ++t)
        CHECK(s16.interior_by_trial[t] <= s16.full_by_trial[t]);
    CHECK(s64.ratio.mean > s16.ratio.mean);
    CHECK(s64.ratio.mean >= 1.0);
    CHECK(s64.ratio.mean <= 1.7);
    CHECK(s16.ratio.trials == 100);
}

TEST_CASE("box sides above 64 are refused")
{
    CHECK_THROWS_AS(build_green(65), BudgetExceeded);
    CHECK_THROWS_AS(build_green(1), std::invalid_argument);
}

//---------------------------------------------------------------------------//
TEST_CASE("unit-radius projection averages the four neighbors")
{
    auto const g = build_green(16);
    auto const p = local_projection_gff_radius(g, 8, 8, 1.0);
    REQUIRE(p.boundary.size() == 4u);
    for (double c : p.coefficients)
        CHECK(c == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("boundary projection equals the harmonic measure")
{
    auto const g = build_green(32);
    for (double q : {0.2, 0.3, 0.4, 0.5})
    {
        auto const p = local_projection_gff(g, 16, 16, q);
        CHECK(p.radius == doctest::Approx(std::pow(32.0, 1 - M_PI * q / 2)));
        CHECK(p.max_coefficient_gap < 1e-8);
        CHECK(p.max_residual_covariance < 1e-8);
        CHECK(std::fabs(p.mean_variance + p.residual_variance - p.total_variance)
              < 1e-10 * p.total_variance);
        CHECK(p.harmonic_mass == doctest::Approx(1.0).epsilon(1e-10));
        double sum = 0;
        for (double c : p.coefficients)
        {
            CHECK(c >= -1e-10);
            sum += c;
        }
        CHECK(sum <= 1 + 1e-10);
    }
}

TEST_CASE("conditioning on the whole complement only uses the boundary")
{
    auto const g = build_green(24);
    auto const p = local_projection_gff_radius(g, 12, 12, 4.0);
    REQUIRE_FALSE(std::isnan(p.complement_off_boundary));
    CHECK(p.complement_off_boundary < 1e-8);
    CHECK(p.complement_gap < 1e-8);

    ProjectionOptions tight;
    tight.complement_limit = 10;
    CHECK(std::isnan(local_projection_gff_radius(g, 12, 12, 4.0, tight)
                         .complement_off_boundary));
}

TEST_CASE("projection balls must stay inside the box")
{
    auto const g = build_green(16);
    CHECK_THROWS_AS(local_projection_gff_radius(g, 2, 8, 3.0), std::domain_error);
    CHECK_THROWS_AS(local_projection_gff_radius(g, 8, 8, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(local_projection_gff(g, 8, 8, 0.7), std::invalid_argument);
}

//---------------------------------------------------------------------------//
TEST_CASE("two-level closed form matches dense conditioning")
{
    for (int n : {2, 8, 12, 16})
    {
        for (double a1 : {0.25, 0.5, 0.75})
        {
            auto const p = local_projection_grem2(n, a1);
            auto const o = grem2_dense_projection(n, a1);
            CHECK(std::fabs(p.first_coefficient - o.first_coefficient) < 1e-12);
            CHECK(std::fabs(p.sibling_coefficient - o.sibling_coefficient) < 1e-12);
            CHECK(std::fabs(p.residual_first_covariance - o.residual_first_covariance)
                  < 1e-10);
            CHECK(o.sibling_spread < 1e-12);
            CHECK(o.max_residual_observation_covariance < 1e-10);
        }
    }
}

TEST_CASE("two-level residual variance is the conditional variance")
{
    int const n = 10;
    double const a1 = 0.4;
    auto const p = local_projection_grem2(n, a1);
    double const m = std::ldexp(1.0, n / 2);
    double const v1 = a1 * n, v2 = (1 - a1) * n;
    // Var(X | Y) = v1 + v2 - c^T S_yy c with all siblings symmetric
    double const s_yx = v1;
    double const row_sum = v2 + (m - 1) * v1;
    double const explained = (m - 1) * s_yx * s_yx / row_sum;
    CHECK(p.residual_variance == doctest::Approx(v1 + v2 - explained).epsilon(1e-12));
}

TEST_CASE("pure first-level weight projects fully on the shared ancestor")
{
    auto const p = local_projection_grem2(12, 1.0);
    CHECK(p.first_coefficient == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.sibling_coefficient == doctest::Approx(1.0 / 63).epsilon(1e-15));
    CHECK(p.residual_first_covariance == 0.0);
}

TEST_CASE("leading coefficient increases to one and sibling weights decay")
{
    double prev = 0;
    std::vector<double> ns, lb;
    for (int n = 8; n <= 20; n += 2)
    {
        auto const p = local_projection_grem2(n, 0.5);
        CHECK(p.first_coefficient > prev);
        prev = p.first_coefficient;
        ns.push_back(n);
        lb.push_back(std::log2(p.sibling_coefficient));
    }
    CHECK(std::fabs(prev - 1) <= 1e-2);
    double const mx = std::accumulate(ns.begin(), ns.end(), 0.0) / ns.size();
    double const my = std::accumulate(lb.begin(), lb.end(), 0.0) / lb.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ns.size(); ++i)
    {
        sxy += (ns[i] - mx) * (lb[i] - my);
        sxx += (ns[i] - mx) * (ns[i] - mx);
    }
    CHECK(std::fabs(sxy / sxx + 0.5) <= 0.05);
}

TEST_CASE("quoted display coefficients equal exact conditioning"
          * doctest::should_fail())
{
    auto const p = local_projection_grem2(8, 0.5);
    CHECK(std::fabs(p.quoted_first - p.first_coefficient) < 1e-10);
    CHECK(std::fabs(p.quoted_sibling - p.sibling_coefficient) < 1e-10);
}

TEST_CASE("finite-N residual is uncorrelated with the ancestor"
          * doctest::should_fail())
{
    CHECK(std::fabs(local_projection_grem2(8, 0.5).residual_first_covariance) < 1e-10);
}

TEST_CASE("two-level projection validates its arguments")
{
    CHECK_THROWS_AS(local_projection_grem2(7, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(local_projection_grem2(64, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(local_projection_grem2(8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(grem2_dense_projection(18, 0.5), std::invalid_argument);
}
