// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file remlab/percolation.hpp
//! First- and last-passage percolation with exponential edge weights.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <functional>
#include <utility>

namespace remlab
{
//---------------------------------------------------------------------------//
enum class PathMode
{
    min,
    max,
};

struct PercolationResult
{
    double weight{0};
    double normalized{0};
    int n{0};
    std::uint64_t seed{0};
    PathMode mode{PathMode::min};
};

//---------------------------------------------------------------------------//
// BINARY TREE
//---------------------------------------------------------------------------//
//! Weight of the edge into tree node (level, index), level in [1, N].
double tree_edge_weight(std::uint64_t seed, int level, std::uint64_t index);

/*!
 * Exact minimum and maximum root-to-leaf weight over the binary tree of depth
 * N, with \c offset added to every edge weight.
 */
std::pair<PercolationResult, PercolationResult>
tree_fpp_lpp(int n, std::uint64_t seed, double offset = 0);

//---------------------------------------------------------------------------//
// HYPERCUBE
//---------------------------------------------------------------------------//
//! Weight of the edge that adds coordinate \c coord to \c subset.
using CubeWeights = std::function<double(std::uint32_t subset, int coord)>;

//! Keyed exponential weights of a realization.
CubeWeights cube_weights(std::uint64_t seed, double offset = 0);

//! Bytes the subset table of hypercube_min_path may use by default.
inline constexpr std::uint64_t default_cube_memory = std::uint64_t{1} << 30;

/*!
 * Minimum weight of a monotone path from 0...0 to 1...1 on the N-cube.
 *
 * Subsets are processed in increasing integer order, which respects
 * inclusion, so m(S) = min_i m(S - i) + w(S - i, i) is available when needed.
 */
PercolationResult hypercube_min_path(int n, std::uint64_t seed,
                                     double offset = 0,
                                     std::uint64_t memory_budget
                                     = default_cube_memory);

PercolationResult hypercube_min_path(int n, CubeWeights const& weights,
                                     std::uint64_t memory_budget
                                     = default_cube_memory);

//! Brute force over all N! coordinate orders (N <= 8).
PercolationResult
hypercube_exhaustive(int n, std::uint64_t seed, double offset = 0);

PercolationResult hypercube_exhaustive(int n, CubeWeights const& weights);

//---------------------------------------------------------------------------//
}  // namespace remlab
