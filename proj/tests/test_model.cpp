// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "remlab/model.hpp"
#include "remlab/trials.hpp"

using namespace remlab;

namespace
{
double variance_sum(ModelSpec const& m)
{
    double s = 0;
    for (int l = 1; l <= m.depth(); ++l)
        s += m.variance(l);
    return s;
}

//! Energies of all leaves in DFS order.
std::vector<double> energies(ModelSpec const& m, std::uint64_t seed,
                             StreamOptions const& opts = {})
{
    std::vector<double> out;
    stream_leaves(
        m, seed, [&](LeafView const& v) { out.push_back(v.energy); }, opts);
    return out;
}

//! Empirical covariance of two leaves over independent realizations.
MCEstimate leaf_pair_covariance(ModelSpec const& m, LeafIndex const& a,
                                LeafIndex const& b, std::uint64_t trials)
{
    std::vector<double> prod(trials);
    for (std::uint64_t t = 0; t < trials; ++t)
    {
        std::uint64_t const s = trial_seed(2024, t);
        prod[t] = leaf_profile(m, a, s).energy() * leaf_profile(m, b, s).energy();
    }
    return summarize(prod);
}
}  // namespace

TEST_CASE("critical two-level GREM resolves to two equal levels")
{
    ModelSpec const m = make_grem(20, {0.5, 0.5});
    CHECK(m.depth() == 2);
    CHECK(m.variance(1) == doctest::Approx(10));
    CHECK(m.variance(2) == doctest::Approx(10));
    CHECK(m.branching(1) == 1024);
    CHECK(m.branching(2) == 1024);
}

TEST_CASE("BRW has unit variance and binary branching at every level")
{
    ModelSpec const m = make_brw(16);
    CHECK(m.depth() == 16);
    for (int l = 1; l <= 16; ++l)
    {
        CHECK(m.variance(l) == 1.0);
        CHECK(m.branching(l) == 2);
    }
}

TEST_CASE("invalid model descriptions are rejected")
{
    CHECK_THROWS_AS(make_grem(20, {0.6, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(make_grem(20, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_interpolating(20, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_interpolating(20, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_rem(0), std::invalid_argument);
    RawModel raw{Variant::grem, 8, {0.5, 0.5}, {8, 0}, 0.5};
    CHECK_THROWS_AS(make_model(raw), std::invalid_argument);
}

TEST_CASE("GREM blocks give the remainder to the last level")
{
    ModelSpec const m = make_grem(22, {0.2, 0.3, 0.5});
    CHECK(m.bits(1) == 7);
    CHECK(m.bits(2) == 7);
    CHECK(m.bits(3) == 8);
    CHECK(m.total_log2_leaves() == 22);
}

TEST_CASE("interpolating tree uses ceil(N^alpha) levels")
{
    ModelSpec const m = make_interpolating(20, 0.5);
    CHECK(m.depth() == 5);
    CHECK(m.bits(1) == 4);
    CHECK(m.variance(1) == doctest::Approx(4));
    CHECK(m.log2_rounding_correction() == 0);

    ModelSpec const r = make_interpolating(20, 0.4);
    CHECK(r.depth() == 4);
    CHECK(r.total_log2_leaves() == 20);

    ModelSpec const odd = make_interpolating(10, 0.6);
    CHECK(odd.depth() == 4);
    CHECK(odd.log2_rounding_correction() == 4 * 3 - 10);
}

TEST_CASE("level variances always sum to N")
{
    for (int n : {1, 5, 16, 23})
    {
        CHECK(variance_sum(make_rem(n)) == doctest::Approx(n));
        CHECK(variance_sum(make_brw(n)) == doctest::Approx(n));
        CHECK(variance_sum(make_interpolating(n, 0.3)) == doctest::Approx(n));
    }
    CHECK(variance_sum(make_grem(24, {0.1, 0.2, 0.3, 0.4}))
          == doctest::Approx(24));
}

TEST_CASE("node increments are deterministic")
{
    ModelSpec const m = make_brw(10);
    NodeKey const k{4, 9};
    CHECK(node_increment(m, k, 5) == node_increment(m, k, 5));
    CHECK(node_increment(m, k, 5) != node_increment(m, k, 6));
    CHECK_THROWS_AS(node_increment(m, NodeKey{4, 16}, 5), std::invalid_argument);
    CHECK_THROWS_AS(node_increment(m, NodeKey{11, 0}, 5), std::invalid_argument);
}

TEST_CASE("a million increments at one level have the level's moments")
{
    ModelSpec const m = make_grem(40, {0.5, 0.5});
    std::size_t const n = 1000000;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = node_increment(m, NodeKey{2, i}, 17);
    MCEstimate const e = summarize(xs);
    CHECK(std::fabs(e.mean) < 5 * std::sqrt(m.variance(2) / n));
    double const var = e.std_error * e.std_error * n;
    CHECK(std::fabs(var / m.variance(2) - 1) < 0.02);
}

TEST_CASE("sibling increments are uncorrelated")
{
    ModelSpec const m = make_brw(4);
    std::size_t const trials = 100000;
    std::vector<double> a(trials), b(trials), ab(trials);
    for (std::size_t t = 0; t < trials; ++t)
    {
        a[t] = node_increment(m, NodeKey{3, 4}, t);
        b[t] = node_increment(m, NodeKey{3, 5}, t);
        ab[t] = a[t] * b[t];
    }
    double const rho = summarize(ab).mean;  // unit variances
    CHECK(std::fabs(rho) < 0.01);
}

TEST_CASE("REM with three bits has eight independent leaves")
{
    ModelSpec const m = make_rem(3);
    auto const e = energies(m, 1);
    CHECK(e.size() == 8);
    std::size_t const trials = 20000;
    std::vector<double> sq(trials), cross(trials);
    for (std::size_t t = 0; t < trials; ++t)
    {
        auto const x = energies(m, trial_seed(3, t));
        sq[t] = x[0] * x[0];
        cross[t] = x[0] * x[5];
    }
    MCEstimate const v = summarize(sq), c = summarize(cross);
    CHECK(std::fabs(v.mean - 3) < 4 * v.std_error);
    CHECK(std::fabs(c.mean) < 4 * c.std_error);
}

TEST_CASE("BRW(2) siblings share their first increment")
{
    ModelSpec const m = make_brw(2);
    MCEstimate const c = leaf_pair_covariance(m, {0, 0}, {0, 1}, 100000);
    CHECK(std::fabs(c.mean - 1) < 3 * c.std_error);
    CHECK(leaf_covariance(m, LeafIndex{0, 0}, LeafIndex{0, 1}) == 1.0);
}

TEST_CASE("GREM(2) leaves under one first-level node have covariance a1 N")
{
    ModelSpec const m = make_grem(4, {0.25, 0.75});
    MCEstimate const c = leaf_pair_covariance(m, {2, 0}, {2, 3}, 100000);
    CHECK(std::fabs(c.mean - 1.0) < 4 * c.std_error);
    CHECK(leaf_covariance(m, LeafIndex{2, 0}, LeafIndex{2, 3}) == 1.0);
    CHECK(leaf_covariance(m, LeafIndex{2, 0}, LeafIndex{1, 0}) == 0.0);
}

TEST_CASE("empirical covariances match tree overlaps for small trees")
{
    struct Case
    {
        ModelSpec model;
        LeafIndex a, b;
    };
    std::vector<Case> const cases{
        {make_brw(3), {0, 1, 0}, {0, 1, 1}},
        {make_brw(3), {1, 0, 0}, {1, 1, 1}},
        {make_brw(4), {0, 0, 0, 0}, {1, 0, 0, 0}},
        {make_grem(6, {0.2, 0.3, 0.5}), {1, 2, 0}, {1, 2, 3}},
        {make_grem(6, {0.2, 0.3, 0.5}), {1, 2, 0}, {1, 2, 0}},
        {make_interpolating(8, 0.5), {3, 1, 2}, {3, 0, 2}},
    };
    for (auto const& c : cases)
    {
        MCEstimate const e = leaf_pair_covariance(c.model, c.a, c.b, 100000);
        double const exact = leaf_covariance(c.model, c.a, c.b);
        CHECK(std::fabs(e.mean - exact) < 4 * e.std_error);
    }
}

TEST_CASE("streaming is independent of chunking and profiles end at the energy")
{
    ModelSpec const m = make_grem(12, {0.3, 0.3, 0.4});
    auto const all = energies(m, 77);
    CHECK(all.size() == 4096);

    StreamOptions lo, hi;
    lo.last_top_child = 5;
    hi.first_top_child = 5;
    auto part = energies(m, 77, lo);
    auto const rest = energies(m, 77, hi);
    part.insert(part.end(), rest.begin(), rest.end());
    CHECK(part == all);

    bool exact = true;
    std::size_t i = 0;
    stream_leaves(m, 77, [&](LeafView const& v) {
        exact = exact && v.partial_sums.back() == v.energy
                && v.partial_sums.front() == 0.0;
        if (i++ == 1234)
        {
            LeafIndex const path(v.path.begin(), v.path.end());
            exact = exact && leaf_profile(m, path, 77).energy() == v.energy;
        }
    });
    CHECK(exact);
}

TEST_CASE("enumeration beyond the leaf budget is refused")
{
    CHECK_THROWS_AS(check_leaf_budget(make_rem(29), default_leaf_budget),
                    BudgetExceeded);
    try
    {
        energies(make_brw(30), 1);
        FAIL("expected budget refusal");
    }
    catch (BudgetExceeded const& e)
    {
        CHECK(e.required() == std::ldexp(1.0, 30));
        CHECK(e.budget() == std::ldexp(1.0, 28));
    }
    StreamOptions opts;
    opts.leaf_budget = 100;
    CHECK_THROWS_AS(energies(make_rem(8), 1, opts), BudgetExceeded);
}
