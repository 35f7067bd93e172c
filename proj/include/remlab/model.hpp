// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file remlab/model.hpp
//! Tree-structured Gaussian fields and their streaming samplers.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace remlab
{
//---------------------------------------------------------------------------//
//! Raised when an enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error
{
  public:
    BudgetExceeded(std::string const& what, double required, double budget)
        : std::runtime_error(what), required_(required), budget_(budget)
    {
    }

    //! Required budget (e.g. leaf count or bytes).
    double required() const { return required_; }
    double budget() const { return budget_; }

  private:
    double required_;
    double budget_;
};

inline constexpr std::uint64_t default_leaf_budget = std::uint64_t{1} << 28;

//---------------------------------------------------------------------------//
enum class Variant
{
    rem,
    grem,
    brw,
    interpolating,
};

char const* to_string(Variant v);

//---------------------------------------------------------------------------//
/*!
 * Unvalidated model description, as given by a user or the CLI.
 *
 * For GREM, \c weights are the variance fractions a_1..a_K (summing to one)
 * and \c level_bits optionally overrides the per-level log2 branching; when
 * omitted the N bits are split into K blocks of floor(N/K), the last block
 * absorbing the remainder.
 */
struct RawModel
{
    Variant variant{Variant::rem};
    int n{0};
    std::vector<double> weights;
    std::vector<int> level_bits;
    double alpha{0.5};
};

//---------------------------------------------------------------------------//
/*!
 * Validated tree-structured Gaussian field.
 *
 * Level \c l (1-based) has 2^bits(l) children per parent and independent
 * centered Gaussian increments of variance variance(l). Leaf energies have
 * total variance n().
 */
class ModelSpec
{
  public:
    ModelSpec() = default;

    Variant variant() const { return variant_; }
    int n() const { return n_; }
    int depth() const { return static_cast<int>(bits_.size()); }
    //! log2 branching of level l in [1, depth]
    int bits(int level) const { return bits_[level - 1]; }
    std::uint64_t branching(int level) const
    {
        return std::uint64_t{1} << bits_[level - 1];
    }
    double variance(int level) const { return variances_[level - 1]; }
    double stddev(int level) const { return stddevs_[level - 1]; }
    int total_log2_leaves() const { return total_bits_; }
    //! total_log2_leaves() - n(): nonzero only for rounded interpolating trees
    int log2_rounding_correction() const { return total_bits_ - n_; }
    double alpha() const { return alpha_; }
    //! GREM weights a_l (variance fractions); empty for other variants
    std::vector<double> const& weights() const { return weights_; }

    std::uint64_t leaf_count() const { return std::uint64_t{1} << total_bits_; }

    //! Short human-readable summary, e.g. "GREM(N=20; bits 10,10)".
    std::string describe() const;

  private:
    friend ModelSpec make_model(RawModel const&);

    Variant variant_{Variant::rem};
    int n_{0};
    int total_bits_{0};
    double alpha_{0};
    std::vector<int> bits_;
    std::vector<double> variances_;
    std::vector<double> stddevs_;
    std::vector<double> weights_;
};

//! Validate and resolve a raw description.
ModelSpec make_model(RawModel const& raw);

//! Shorthands
ModelSpec make_rem(int n);
ModelSpec make_brw(int n);
ModelSpec make_grem(int n, std::vector<double> weights);
ModelSpec make_interpolating(int n, double alpha);

//---------------------------------------------------------------------------//
/*!
 * Address of a tree node: its level and its index among the nodes of that
 * level (mixed-radix encoding of the root-to-node path).
 */
struct NodeKey
{
    int level{0};
    std::uint64_t index{0};
};

//! Per-level child indices of a leaf.
using LeafIndex = std::vector<std::uint32_t>;

//! Partial sums S_0 = 0, S_1, ..., S_depth along a root-to-leaf path.
struct PathProfile
{
    std::vector<double> partial_sums;

    double energy() const { return partial_sums.back(); }
};

//! Node key of the level-l ancestor of a leaf path (1 <= l <= depth).
NodeKey node_key(ModelSpec const& model, std::span<std::uint32_t const> path,
                 int level);

//! Gaussian increment of a tree node: a pure function of (seed, key).
double node_increment(ModelSpec const& model, NodeKey key, std::uint64_t seed);

//! Profile of a given leaf, regenerated from node increments.
PathProfile leaf_profile(ModelSpec const& model,
                         std::span<std::uint32_t const> path,
                         std::uint64_t seed);

//! Exact covariance of two leaf energies: sum of shared-level variances.
double leaf_covariance(ModelSpec const& model,
                       std::span<std::uint32_t const> a,
                       std::span<std::uint32_t const> b);

//---------------------------------------------------------------------------//
// STREAMING
//---------------------------------------------------------------------------//
struct StreamOptions
{
    std::uint64_t leaf_budget{default_leaf_budget};
    //! Restrict traversal to first-level children [first, last).
    std::uint64_t first_top_child{0};
    std::uint64_t last_top_child{~std::uint64_t{0}};
};

//! Leaf as seen by a streaming visitor; views are valid during the call only.
struct LeafView
{
    std::span<std::uint32_t const> path;
    double energy;
    std::span<double const> partial_sums;
};

//! Interior node as seen by a pruning predicate.
struct NodeView
{
    int level;
    std::uint64_t index;
    std::span<std::uint32_t const> path;
    //! S_0..S_level
    std::span<double const> partial_sums;
};

//! Throws BudgetExceeded if the model's leaves cannot be enumerated.
void check_leaf_budget(ModelSpec const& model, std::uint64_t budget);

namespace detail
{
//! Per-level streams and scales of one realization.
struct LevelStreams
{
    std::vector<LevelStream> streams;
    std::vector<double> stddev;

    LevelStreams(ModelSpec const& model, std::uint64_t seed)
    {
        streams.reserve(model.depth());
        for (int l = 1; l <= model.depth(); ++l)
        {
            streams.emplace_back(seed, Domain::field, l);
            stddev.push_back(model.stddev(l));
        }
    }
};
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Depth-first traversal with subtree pruning.
 *
 * \c keep(NodeView) is consulted for every interior node at levels
 * 1..depth-1; returning false skips the whole subtree without generating any
 * of its increments. \c on_leaf receives every surviving leaf. Memory is
 * O(depth).
 */
template<class Keep, class OnLeaf>
void walk_tree(ModelSpec const& model, std::uint64_t seed, Keep&& keep,
               OnLeaf&& on_leaf, StreamOptions const& opts = {})
{
    check_leaf_budget(model, opts.leaf_budget);
    int const depth = model.depth();
    detail::LevelStreams const ls(model, seed);

    std::vector<std::uint32_t> path(depth, 0);
    std::vector<std::uint64_t> index(depth + 1, 0);
    std::vector<double> sums(depth + 1, 0.0);
    std::vector<std::uint64_t> end(depth + 1, 0);

    std::uint64_t const top_end = std::min<std::uint64_t>(
        model.branching(1), opts.last_top_child);
    if (opts.first_top_child >= top_end)
        return;

    // Descend from `level` (whose child counter path[level-1] is set) until
    // a leaf or a pruned node is hit.
    int level = 1;
    path[0] = static_cast<std::uint32_t>(opts.first_top_child);
    end[1] = top_end;
    for (;;)
    {
        std::uint64_t const idx = index[level - 1] * model.branching(level)
                                  + path[level - 1];
        index[level] = idx;
        sums[level] = sums[level - 1]
                      + ls.stddev[level - 1]
                            * gaussian_from_bits(ls.streams[level - 1](idx));

        bool descend = false;
        if (level == depth)
        {
            on_leaf(LeafView{std::span<std::uint32_t const>(path),
                             sums[depth],
                             std::span<double const>(sums)});
        }
        else if (keep(NodeView{
                     level, idx,
                     std::span<std::uint32_t const>(path.data(), level),
                     std::span<double const>(sums.data(), level + 1)}))
        {
            descend = true;
        }

        if (descend)
        {
            ++level;
            path[level - 1] = 0;
            end[level] = model.branching(level);
            continue;
        }
        // Advance to the next sibling, climbing as needed.
        while (level >= 1 && ++path[level - 1] >= end[level])
            --level;
        if (level == 0)
            return;
    }
}

//---------------------------------------------------------------------------//
/*!
 * Visit every leaf exactly once in depth-first order.
 *
 * The visitor is called as visitor(LeafView) and returned by value, so it
 * can carry accumulated results.
 */
template<class Visitor>
Visitor stream_leaves(ModelSpec const& model, std::uint64_t seed,
                      Visitor visitor, StreamOptions const& opts = {})
{
    walk_tree(
        model, seed, [](NodeView const&) { return true; },
        [&visitor](LeafView const& leaf) { visitor(leaf); }, opts);
    return visitor;
}

//---------------------------------------------------------------------------//
}  // namespace remlab
