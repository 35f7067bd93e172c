// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include "remlab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "remlab/model.hpp"
#include "remlab/rng.hpp"

namespace remlab
{
namespace
{
void require(bool cond, char const* msg)
{
    if (!cond)
        throw std::invalid_argument(msg);
}

PercolationResult
make_result(double w, int n, std::uint64_t seed, PathMode mode)
{
    return {w, w / n, n, seed, mode};
}

//! Depth-first min and max over the tree; the last level uses uniform ranks
//! since the exponential transform is increasing.
class TreeScan
{
  public:
    TreeScan(int n, std::uint64_t seed, double offset) : n_(n), offset_(offset)
    {
        for (int l = 1; l <= n; ++l)
            streams_.emplace_back(seed, Domain::tree_weight, l);
    }

    void run()
    {
        if (n_ == 1)
        {
            leaf_pair(0, 0.0);
            return;
        }
        visit(1, 0, 0.0);
        visit(1, 1, 0.0);
    }

    double min_weight() const { return min_; }
    double max_weight() const { return max_; }

  private:
    int n_;
    double offset_;
    std::vector<LevelStream> streams_;
    double min_{std::numeric_limits<double>::infinity()};
    double max_{-std::numeric_limits<double>::infinity()};

    double weight(int level, std::uint64_t idx) const
    {
        return exponential_from_bits(streams_[level - 1](idx)) + offset_;
    }

    void leaf_pair(std::uint64_t parent, double s)
    {
        auto const& last = streams_[n_ - 1];
        std::uint64_t const r0 = uniform_rank(last(2 * parent));
        std::uint64_t const r1 = uniform_rank(last(2 * parent + 1));
        std::uint64_t const lo = std::min(r0, r1);
        std::uint64_t const hi = std::max(r0, r1);
        double const w_lo = -std::log1p(-uniform_from_rank(lo)) + offset_;
        double const w_hi = -std::log1p(-uniform_from_rank(hi)) + offset_;
        min_ = std::min(min_, s + w_lo);
        max_ = std::max(max_, s + w_hi);
    }

    void visit(int level, std::uint64_t idx, double s)
    {
        s += weight(level, idx);
        if (level == n_ - 1)
        {
            leaf_pair(idx, s);
            return;
        }
        visit(level + 1, 2 * idx, s);
        visit(level + 1, 2 * idx + 1, s);
    }
};
}  // namespace

//---------------------------------------------------------------------------//
double tree_edge_weight(std::uint64_t seed, int level, std::uint64_t index)
{
    require(level >= 1 && level <= 62, "tree level out of range");
    require(level >= 64 || index < (std::uint64_t{1} << level),
            "tree node index out of range");
    return exponential_from_bits(prf_bits(seed, Domain::tree_weight, level, index));
}

std::pair<PercolationResult, PercolationResult>
tree_fpp_lpp(int n, std::uint64_t seed, double offset)
{
    require(n >= 1, "tree depth must be positive");
    if (n > 28)
    {
        std::ostringstream os;
        os << "tree percolation budget exceeded: depth " << n
           << " has 2^" << n << " leaves, limit is 2^28";
        throw BudgetExceeded(os.str(), std::ldexp(1.0, n), std::ldexp(1.0, 28));
    }
    TreeScan scan(n, seed, offset);
    scan.run();
    return {make_result(scan.min_weight(), n, seed, PathMode::min),
            make_result(scan.max_weight(), n, seed, PathMode::max)};
}

//---------------------------------------------------------------------------//
CubeWeights cube_weights(std::uint64_t seed, double offset)
{
    LevelStream const stream(seed, Domain::cube_weight, 0);
    return [stream, offset](std::uint32_t subset, int coord) {
        std::uint64_t const edge = (std::uint64_t{subset} << 5) | unsigned(coord);
        return exponential_from_bits(stream(edge)) + offset;
    };
}

namespace
{
template<class W>
double cube_dp(int n, W const& w, std::uint64_t memory_budget)
{
    require(n >= 1 && n <= 30, "hypercube dimension out of range");
    std::uint64_t const states = std::uint64_t{1} << n;
    std::uint64_t const bytes = states * sizeof(double);
    if (bytes > memory_budget)
    {
        std::ostringstream os;
        os << "hypercube memory budget exceeded: N=" << n << " needs " << bytes
           << " bytes, budget is " << memory_budget;
        throw BudgetExceeded(os.str(), double(bytes), double(memory_budget));
    }
    std::vector<double> m(states, std::numeric_limits<double>::infinity());
    m[0] = 0;
    for (std::uint64_t s = 1; s < states; ++s)
    {
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
        {
            if (!(s >> i & 1u))
                continue;
            auto const prev = static_cast<std::uint32_t>(s & ~(std::uint64_t{1} << i));
            best = std::min(best, m[prev] + w(prev, i));
        }
        m[s] = best;
    }
    return m[states - 1];
}

template<class W>
double cube_exhaustive(int n, W const& w)
{
    require(n >= 1 && n <= 8, "exhaustive hypercube search needs N <= 8");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do
    {
        double sum = 0;
        std::uint32_t subset = 0;
        for (int i : order)
        {
            sum += w(subset, i);
            subset |= 1u << i;
        }
        best = std::min(best, sum);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}
}  // namespace

PercolationResult hypercube_min_path(int n, std::uint64_t seed, double offset,
                                     std::uint64_t memory_budget)
{
    LevelStream const stream(seed, Domain::cube_weight, 0);
    auto w = [&stream, offset](std::uint32_t subset, int coord) {
        std::uint64_t const edge = (std::uint64_t{subset} << 5) | unsigned(coord);
        return exponential_from_bits(stream(edge)) + offset;
    };
    return make_result(cube_dp(n, w, memory_budget), n, seed, PathMode::min);
}

PercolationResult hypercube_min_path(int n, CubeWeights const& weights,
                                     std::uint64_t memory_budget)
{
    return make_result(cube_dp(n, weights, memory_budget), n, 0, PathMode::min);
}

PercolationResult
hypercube_exhaustive(int n, std::uint64_t seed, double offset)
{
    return make_result(cube_exhaustive(n, cube_weights(seed, offset)), n, seed,
                       PathMode::min);
}

PercolationResult hypercube_exhaustive(int n, CubeWeights const& weights)
{
    return make_result(cube_exhaustive(n, weights), n, 0, PathMode::min);
}

//---------------------------------------------------------------------------//
}  // namespace remlab
