// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <set>

#include <boost/math/distributions/normal.hpp>
#include <doctest.h>

#include "remlab/rng.hpp"
#include "remlab/trials.hpp"

using namespace remlab;

TEST_CASE("inverse normal cdf is accurate to 1e-9")
{
    boost::math::normal const ref;
    double worst = 0;
    for (int i = 1; i < 20000; ++i)
    {
        double const p = i / 20000.0;
        worst = std::max(worst, std::fabs(inverse_normal_cdf(p)
                                          - boost::math::quantile(ref, p)));
    }
    for (double p : {1e-300, 1e-100, 1e-20, 1e-10, 1 - 1e-10, 1 - 1e-16})
    {
        worst = std::max(worst, std::fabs(inverse_normal_cdf(p)
                                          - boost::math::quantile(ref, p)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("uniform draws lie strictly inside the unit interval")
{
    CHECK(uniform_open(0) > 0);
    CHECK(uniform_open(~std::uint64_t{0}) < 1);
    CHECK(1 - uniform_open(~std::uint64_t{0}) > 0);
    CHECK(std::isfinite(gaussian_from_bits(0)));
    CHECK(std::isfinite(gaussian_from_bits(~std::uint64_t{0})));
    CHECK(exponential_from_bits(~std::uint64_t{0}) > 0);
}

TEST_CASE("streams are pure functions of seed, domain, level and counter")
{
    LevelStream const a(7, Domain::field, 3);
    LevelStream const b(7, Domain::field, 3);
    CHECK(a(12345) == b(12345));
    CHECK(a(12345) != LevelStream(8, Domain::field, 3)(12345));
    CHECK(a(12345) != LevelStream(7, Domain::gff, 3)(12345));
    CHECK(a(12345) != LevelStream(7, Domain::field, 4)(12345));
    CHECK(prf_bits(7, Domain::field, 3, 12345) == a(12345));

    std::set<std::uint64_t> seeds;
    for (std::uint64_t t = 0; t < 1000; ++t)
        seeds.insert(trial_seed(99, t));
    CHECK(seeds.size() == 1000);
}

TEST_CASE("exponential draws have unit mean")
{
    LevelStream const s(3, Domain::mc, 0);
    std::vector<double> xs;
    for (std::uint64_t i = 0; i < 200000; ++i)
        xs.push_back(exponential_from_bits(s(i)));
    MCEstimate const e = summarize(xs);
    CHECK(std::fabs(e.mean - 1) < 5 * e.std_error);
}

TEST_CASE("parallel map returns results in index order for any thread count")
{
    auto f = [](std::uint64_t i) { return gaussian_from_bits(prf_bits(1, Domain::mc, 0, i)); };
    auto one = run_indexed(1000, f, 1);
    auto four = run_indexed(1000, f, 4);
    CHECK(one == four);
    CHECK_THROWS_AS(run_indexed(
                        10,
                        [](std::uint64_t i) -> int {
                            if (i == 7)
                                throw std::runtime_error("boom");
                            return 0;
                        },
                        3),
                    std::runtime_error);
}

TEST_CASE("quantile interpolates linearly")
{
    CHECK(quantile({3, 1, 2}, 0.5) == doctest::Approx(2));
    CHECK(quantile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
    CHECK(quantile({5}, 0.9) == 5);
}
