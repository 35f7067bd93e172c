// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include <doctest.h>

#include "remlab/extremes.hpp"
#include "remlab/model.hpp"
#include "remlab/percolation.hpp"
#include "remlab/theory.hpp"
#include "remlab/trials.hpp"

using namespace remlab;

namespace
{
void brute_tree(int n, std::uint64_t seed, int level, std::uint64_t idx,
                double s, double& lo, double& hi)
{
    if (level == n)
    {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        return;
    }
    for (std::uint64_t c = 0; c < 2; ++c)
    {
        std::uint64_t const child = 2 * idx + c;
        brute_tree(n, seed, level + 1, child,
                   s + tree_edge_weight(seed, level + 1, child), lo, hi);
    }
}

bool bit_equal(double a, double b)
{
    return std::memcmp(&a, &b, sizeof a) == 0;
}

std::vector<double> cube_minima(int n, std::uint64_t master, std::uint64_t trials)
{
    std::vector<double> out;
    for (auto s : trial_seeds(master, trials))
        out.push_back(hypercube_min_path(n, s).weight);
    return out;
}
}  // namespace

//---------------------------------------------------------------------------//
TEST_CASE("one-level tree optimizes over its two edges")
{
    auto const [lo, hi] = tree_fpp_lpp(1, 42);
    double const e0 = tree_edge_weight(42, 1, 0), e1 = tree_edge_weight(42, 1, 1);
    CHECK(lo.weight == std::min(e0, e1));
    CHECK(hi.weight == std::max(e0, e1));
    CHECK(lo.mode == PathMode::min);
    CHECK(hi.mode == PathMode::max);
    CHECK(lo.seed == 42);
}

TEST_CASE("tree optima match a recursive brute force")
{
    for (int n : {2, 5, 10})
    {
        for (std::uint64_t s : {1u, 2u})
        {
            double lo = INFINITY, hi = -INFINITY;
            brute_tree(n, s, 0, 0, 0.0, lo, hi);
            auto const r = tree_fpp_lpp(n, s);
            CHECK(r.first.weight == doctest::Approx(lo).epsilon(1e-13));
            CHECK(r.second.weight == doctest::Approx(hi).epsilon(1e-13));
            CHECK(r.first.normalized == doctest::Approx(lo / n).epsilon(1e-13));
        }
    }
}

TEST_CASE("tree min and max are ordered and nonnegative")
{
    for (auto s : trial_seeds(3, 20))
    {
        auto const r = tree_fpp_lpp(12, s);
        CHECK(r.first.weight >= 0);
        CHECK(r.second.weight >= r.first.weight);
    }
}

TEST_CASE("a constant edge offset shifts tree optima by c N")
{
    for (auto s : trial_seeds(4, 5))
    {
        auto const base = tree_fpp_lpp(14, s);
        auto const shifted = tree_fpp_lpp(14, s, 1.0);
        CHECK(std::fabs(shifted.first.weight - base.first.weight - 14) < 1e-9);
        CHECK(std::fabs(shifted.second.weight - base.second.weight - 14) < 1e-9);
    }
}

TEST_CASE("tree min per level concentrates as N grows")
{
    auto spread = [](int n, std::uint64_t trials) {
        std::vector<double> xs;
        for (auto s : trial_seeds(5, trials))
            xs.push_back(tree_fpp_lpp(n, s).first.normalized);
        return summarize(xs).std_error * std::sqrt(double(trials));
    };
    CHECK(spread(22, 20) < spread(14, 20));
}

TEST_CASE("tree depth beyond 28 is refused")
{
    CHECK_THROWS_AS(tree_fpp_lpp(29, 1), BudgetExceeded);
    CHECK_THROWS_AS(tree_fpp_lpp(0, 1), std::invalid_argument);
}

TEST_CASE("tree FPP and LPP per level reach the outer-bound roots at N=22"
          * doctest::should_fail())
{
    auto const [c1, c2] = percolation_constants();
    std::vector<double> lo, hi;
    for (auto s : trial_seeds(9, 50))
    {
        auto const r = tree_fpp_lpp(22, s);
        lo.push_back(r.first.normalized);
        hi.push_back(r.second.normalized);
    }
    CHECK(std::fabs(summarize(lo).mean - c1) <= 0.05);
    CHECK(std::fabs(summarize(hi).mean - c2) <= 0.07);
}

//---------------------------------------------------------------------------//
TEST_CASE("one-dimensional cube has a single edge")
{
    CHECK(hypercube_min_path(1, 8).weight == cube_weights(8)(0, 0));
    CHECK(hypercube_exhaustive(1, 8).weight == cube_weights(8)(0, 0));
}

TEST_CASE("subset dynamic program equals exhaustive search bitwise for N <= 8")
{
    int mismatches = 0;
    for (int n = 1; n <= 8; ++n)
    {
        for (auto s : trial_seeds(100 + n, 100))
        {
            mismatches += !bit_equal(hypercube_min_path(n, s).weight,
                                     hypercube_exhaustive(n, s).weight);
        }
    }
    CHECK(mismatches == 0);
    CHECK(bit_equal(hypercube_min_path(4, 3).weight, hypercube_exhaustive(4, 3).weight));
    CHECK(bit_equal(hypercube_min_path(6, 3).weight, hypercube_exhaustive(6, 3).weight));
}

TEST_CASE("relabeling coordinates leaves the optimum unchanged")
{
    int const n = 6;
    CubeWeights const w = cube_weights(17);
    std::vector<int> perm{3, 0, 5, 1, 4, 2};
    auto map_subset = [&](std::uint32_t s) {
        std::uint32_t out = 0;
        for (int i = 0; i < n; ++i)
            if (s >> i & 1u)
                out |= 1u << perm[i];
        return out;
    };
    CubeWeights const relabeled = [&](std::uint32_t s, int i) {
        return w(map_subset(s), perm[i]);
    };
    CHECK(hypercube_exhaustive(n, relabeled).weight
          == doctest::Approx(hypercube_exhaustive(n, w).weight).epsilon(1e-15));
    CHECK(hypercube_min_path(n, relabeled).weight
          == doctest::Approx(hypercube_min_path(n, w).weight).epsilon(1e-15));
}

TEST_CASE("a constant edge offset shifts the cube optimum by c N")
{
    for (auto s : trial_seeds(6, 5))
    {
        CHECK(std::fabs(hypercube_min_path(10, s, 1.0).weight
                        - hypercube_min_path(10, s).weight - 10)
              < 1e-9);
    }
}

TEST_CASE("hypercube minimal weight decreases toward one")
{
    double const m12 = quantile(cube_minima(12, 7, 60), 0.5);
    double const m20 = quantile(cube_minima(20, 7, 60), 0.5);
    CHECK(m12 > m20);
    CHECK(m20 >= 1.0);
    CHECK(m20 <= 1.7);
}

TEST_CASE("small cube minima respect the union bound")
{
    int const n = 16;
    double const x = 0.8;
    auto const m = cube_minima(n, 8, 200);
    double const freq
        = std::count_if(m.begin(), m.end(), [&](double v) { return v <= x * n; })
          / double(m.size());
    double const bound = std::tgamma(n + 1.0) * erlang_cdf(n, x * n);
    CHECK(freq <= bound);
}

TEST_CASE("cube budgets are enforced")
{
    CHECK_THROWS_AS(hypercube_min_path(25, 1, 0, std::uint64_t{1} << 20), BudgetExceeded);
    CHECK_THROWS_AS(hypercube_exhaustive(9, 1), std::invalid_argument);
}
