// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include "remlab/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "remlab/theory.hpp"
#include "remlab/trials.hpp"

namespace remlab
{
namespace
{
void require(bool cond, char const* msg)
{
    if (!cond)
        throw std::invalid_argument(msg);
}

/*!
 * Visit every surviving parent of the last level.
 *
 * \c on_parent(index, sums, path_prefix) is called for each node at level
 * depth-1 (the root for single-level models) that passed \c keep; \c sums
 * spans S_0..S_{depth-1}. Interior nodes are generated exactly as in
 * walk_tree, but the recursion here avoids the per-node bookkeeping of the
 * general iterator, which matters for the 2^(N-1) interior nodes of a BRW.
 */
template<class Keep, class OnParent>
class LastParentScan
{
  public:
    LastParentScan(ModelSpec const& model, std::uint64_t seed, Keep& keep,
                   OnParent& on_parent)
        : model_(model)
        , streams_(model, seed)
        , keep_(keep)
        , on_parent_(on_parent)
        , depth_(model.depth())
        , path_(depth_, 0)
        , sums_(depth_ + 1, 0.0)
    {
    }

    void run(StreamOptions const& opts)
    {
        if (depth_ == 1)
        {
            on_parent_(std::uint64_t{0}, std::span<double const>(sums_.data(), 1),
                       std::span<std::uint32_t const>{});
            return;
        }
        std::uint64_t const b = model_.branching(1);
        std::uint64_t const hi = std::min(b, opts.last_top_child);
        for (std::uint64_t c = opts.first_top_child; c < hi; ++c)
            visit(1, c, c);
    }

  private:
    ModelSpec const& model_;
    detail::LevelStreams streams_;
    Keep& keep_;
    OnParent& on_parent_;
    int depth_;
    std::vector<std::uint32_t> path_;
    std::vector<double> sums_;

    void visit(int level, std::uint64_t idx, std::uint64_t child)
    {
        path_[level - 1] = static_cast<std::uint32_t>(child);
        sums_[level] = sums_[level - 1]
                       + streams_.stddev[level - 1]
                             * gaussian_from_bits(streams_.streams[level - 1](idx));
        NodeView const node{level, idx,
                            std::span<std::uint32_t const>(path_.data(), level),
                            std::span<double const>(sums_.data(), level + 1)};
        if (!keep_(node))
            return;
        if (level == depth_ - 1)
        {
            on_parent_(idx, node.partial_sums, node.path);
            return;
        }
        std::uint64_t const b = model_.branching(level + 1);
        std::uint64_t const base = idx * b;
        for (std::uint64_t c = 0; c < b; ++c)
            visit(level + 1, base + c, c);
    }
};

template<class Keep, class OnParent>
void for_each_last_parent(ModelSpec const& model, std::uint64_t seed,
                          Keep&& keep, OnParent&& on_parent,
                          StreamOptions const& opts)
{
    check_leaf_budget(model, opts.leaf_budget);
    LastParentScan<std::remove_reference_t<Keep>,
                   std::remove_reference_t<OnParent>>
        scan(model, seed, keep, on_parent);
    scan.run(opts);
}

//! Range of last-level children to scan under a parent.
struct ChildRange
{
    std::uint64_t begin;
    std::uint64_t end;
};

ChildRange child_range(ModelSpec const& model, StreamOptions const& opts)
{
    std::uint64_t const b = model.branching(model.depth());
    if (model.depth() > 1)
        return {0, b};
    return {std::min(opts.first_top_child, b),
            std::min(opts.last_top_child, b)};
}

/*!
 * Call \c on_leaf(child, energy) for each child of a last-level parent whose
 * energy might reach \c threshold.
 *
 * Children are prefiltered on their uniform rank with a conservative margin;
 * the caller applies its exact test to the returned energy, which is computed
 * with the same arithmetic as the streaming walk.
 */
template<class OnLeaf>
void scan_children_above(LevelStream const& stream, double sigma,
                         std::uint64_t parent_index, std::uint64_t branching,
                         ChildRange range, double s_parent, double threshold,
                         OnLeaf&& on_leaf)
{
    double const z = (threshold - s_parent) / sigma;
    double const p_skip = std::isfinite(z) ? normal_cdf(z) - 1e-9
                                           : (z > 0 ? 2.0 : -1.0);
    std::uint64_t const base = parent_index * branching;
    for (std::uint64_t c = range.begin; c < range.end; ++c)
    {
        double const u = uniform_open(stream(base + c));
        if (u < p_skip)
            continue;
        on_leaf(c, s_parent + sigma * inverse_normal_cdf(u));
    }
}

std::uint64_t visited_leaves(ModelSpec const& model, StreamOptions const& opts)
{
    std::uint64_t const top = model.branching(1);
    std::uint64_t const lo = std::min(opts.first_top_child, top);
    std::uint64_t const hi = std::min(opts.last_top_child, top);
    if (hi <= lo)
        return 0;
    return (hi - lo) * (model.leaf_count() / top);
}
}  // namespace

//---------------------------------------------------------------------------//
// BARRIERS
//---------------------------------------------------------------------------//
EnvelopeBarrier make_envelope(double gamma, int depth)
{
    return make_envelope(gamma, depth, beta_c());
}

EnvelopeBarrier make_envelope(double gamma, int depth, double slope)
{
    require(gamma > 0 && gamma < 0.5, "envelope gamma must lie in (0, 1/2)");
    require(depth >= 1, "envelope depth must be positive");
    require(std::isfinite(slope), "envelope slope must be finite");
    return {gamma, depth, slope};
}

double barrier_value(Barrier const& b, int level)
{
    struct Eval
    {
        int l;
        double operator()(NoBarrier) const
        {
            return std::numeric_limits<double>::infinity();
        }
        double operator()(LineBarrier const& x) const
        {
            return x.slope * l + x.offset;
        }
        double operator()(EnvelopeBarrier const& x) const
        {
            double const d = std::min(l, x.depth - l);
            return x.slope * l - std::pow(std::max(d, 0.0), x.gamma);
        }
        double operator()(LogLineBarrier const& x) const
        {
            return beta_c() * l + x.k_const * std::log(double(x.depth));
        }
    };
    return std::visit(Eval{level}, b);
}

//---------------------------------------------------------------------------//
// PROFILE STATS
//---------------------------------------------------------------------------//
std::optional<double> ProfileStats::midpoint_mean() const
{
    if (depth < 2)
        return std::nullopt;
    return mean[depth / 2];
}

std::optional<double> ProfileStats::midpoint_std_error() const
{
    if (depth < 2)
        return std::nullopt;
    return std_error[depth / 2];
}

//---------------------------------------------------------------------------//
// MAXIMUM
//---------------------------------------------------------------------------//
/*!
 * The last level is scanned on uniform ranks: the inverse CDF is monotone, so
 * the largest child is found with one inverse-CDF evaluation per parent.
 * Subtrees that cannot reach the current best even if every remaining draw
 * were the largest representable Gaussian are skipped.
 */
MaxResult
scan_max(ModelSpec const& model, std::uint64_t seed, StreamOptions const& opts)
{
    int const depth = model.depth();
    LevelStream const last(seed, Domain::field, depth);
    double const sigma = model.stddev(depth);
    std::uint64_t const b = model.branching(depth);
    ChildRange const range = child_range(model, opts);

    // reach[l]: largest possible increment sum over levels l+1..depth
    double const g_max
        = inverse_normal_cdf(uniform_from_rank((std::uint64_t{1} << 52) - 1))
          + 1e-9;
    std::vector<double> reach(depth + 1, 0.0);
    for (int l = depth - 1; l >= 0; --l)
        reach[l] = reach[l + 1] + model.stddev(l + 1) * g_max;

    double best = -std::numeric_limits<double>::infinity();
    LeafIndex best_path;
    bool found = false;

    for_each_last_parent(
        model, seed,
        [&](NodeView const& node) {
            return !found
                   || node.partial_sums[node.level] + reach[node.level] >= best;
        },
        [&](std::uint64_t index, std::span<double const> sums,
            std::span<std::uint32_t const> prefix) {
            double const s_parent = sums.back();
            if (found && s_parent + reach[depth - 1] < best)
                return;
            std::uint64_t const base = index * b;
            std::uint64_t top_rank = 0;
            std::uint64_t top_child = range.end;
            for (std::uint64_t c = range.begin; c < range.end; ++c)
            {
                std::uint64_t const r = uniform_rank(last(base + c));
                if (top_child == range.end || r > top_rank)
                {
                    top_rank = r;
                    top_child = c;
                }
            }
            if (top_child == range.end)
                return;
            double const e
                = s_parent
                  + sigma * inverse_normal_cdf(uniform_from_rank(top_rank));
            if (!found || e > best)
            {
                found = true;
                best = e;
                best_path.assign(prefix.begin(), prefix.end());
                best_path.push_back(static_cast<std::uint32_t>(top_child));
            }
        },
        opts);

    require(found, "no leaves in the requested traversal range");
    MaxResult result;
    result.profile = leaf_profile(model, best_path, seed);
    result.energy = result.profile.energy();
    result.argmax = std::move(best_path);
    return result;
}

//---------------------------------------------------------------------------//
// COUNTING
//---------------------------------------------------------------------------//
CountingResult count_exceedances(ModelSpec const& model, std::uint64_t seed,
                                 int k, std::vector<double> const& lambdas,
                                 StreamOptions const& opts)
{
    require(k >= 2, "coarse graining K must be at least 2");
    int const depth = model.depth();
    require(k <= depth, "coarse graining K exceeds the model depth");
    require(static_cast<int>(lambdas.size()) == k - 1,
            "expected one threshold per block 2..K");
    for (double x : lambdas)
        require(!std::isnan(x), "thresholds must not be NaN");

    // ends[j] = last level of block j (1-based blocks, ends[0] = 0)
    int const per = depth / k;
    std::vector<int> ends(k + 1);
    for (int j = 0; j < k; ++j)
        ends[j] = j * per;
    ends[k] = depth;
    // block_at[level] = j if level closes block j >= 2 below the leaves
    std::vector<int> block_at(depth + 1, 0);
    for (int j = 2; j < k; ++j)
        block_at[ends[j]] = j;

    double const n = model.n();
    auto threshold = [&](int j) { return lambdas[j - 2] * n; };

    CountingResult result;
    result.thresholds = lambdas;
    result.total_leaves = model.leaf_count();

    LevelStream const last(seed, Domain::field, depth);
    double const sigma = model.stddev(depth);
    std::uint64_t const b = model.branching(depth);
    ChildRange const range = child_range(model, opts);
    double const t_last = threshold(k);

    for_each_last_parent(
        model, seed,
        [&](NodeView const& node) {
            int const j = block_at[node.level];
            if (j == 0)
                return true;
            double const block = node.partial_sums[ends[j]]
                                 - node.partial_sums[ends[j - 1]];
            return block >= threshold(j);
        },
        [&](std::uint64_t index, std::span<double const> sums,
            std::span<std::uint32_t const>) {
            double const s_parent = sums.back();
            double const s_start = sums[ends[k - 1]];
            scan_children_above(last, sigma, index, b, range, s_parent,
                                t_last + s_start, [&](std::uint64_t, double e) {
                                    if (e - s_start >= t_last)
                                        ++result.count;
                                });
        },
        opts);
    return result;
}

CountingResult count_rem_threshold(ModelSpec const& model, std::uint64_t seed,
                                   double lambda, StreamOptions const& opts)
{
    require(!std::isnan(lambda), "threshold must not be NaN");
    CountingResult result
        = count_below_barrier(model, seed, NoBarrier{}, lambda * model.n(),
                              opts);
    result.thresholds = {lambda};
    return result;
}

CountingResult count_below_barrier(ModelSpec const& model, std::uint64_t seed,
                                   Barrier const& barrier, double a,
                                   StreamOptions const& opts)
{
    require(!std::isnan(a), "final threshold must not be NaN");
    int const depth = model.depth();
    std::vector<double> heights(depth + 1,
                                std::numeric_limits<double>::infinity());
    for (int l = 1; l < depth; ++l)
        heights[l] = barrier_value(barrier, l);

    CountingResult result;
    result.thresholds = {a};
    result.total_leaves = visited_leaves(model, opts);

    LevelStream const last(seed, Domain::field, depth);
    double const sigma = model.stddev(depth);
    std::uint64_t const b = model.branching(depth);
    ChildRange const range = child_range(model, opts);

    for_each_last_parent(
        model, seed,
        [&](NodeView const& node) {
            return node.partial_sums[node.level] <= heights[node.level];
        },
        [&](std::uint64_t index, std::span<double const> sums,
            std::span<std::uint32_t const>) {
            double const s_parent = sums.back();
            scan_children_above(last, sigma, index, b, range, s_parent, a,
                                [&](std::uint64_t, double e) {
                                    if (e >= a)
                                        ++result.count;
                                });
        },
        opts);
    return result;
}

WindowCounts window_counts(ModelSpec const& model, std::uint64_t seed,
                           double a_n, std::vector<double> const& edges,
                           StreamOptions const& opts)
{
    require(std::isfinite(a_n), "recentering a_N must be finite");
    require(std::is_sorted(edges.begin(), edges.end()),
            "window edges must be sorted");
    WindowCounts result;
    result.a_n = a_n;
    result.edges = edges;
    if (edges.size() < 2)
        return result;
    result.counts.assign(edges.size() - 1, 0);

    int const depth = model.depth();
    LevelStream const last(seed, Domain::field, depth);
    double const sigma = model.stddev(depth);
    std::uint64_t const b = model.branching(depth);
    ChildRange const range = child_range(model, opts);
    double const lowest = a_n + edges.front();

    for_each_last_parent(
        model, seed, [](NodeView const&) { return true; },
        [&](std::uint64_t index, std::span<double const> sums,
            std::span<std::uint32_t const>) {
            double const s_parent = sums.back();
            scan_children_above(
                last, sigma, index, b, range, s_parent, lowest,
                [&](std::uint64_t, double e) {
                    double const y = e - a_n;
                    auto it = std::upper_bound(edges.begin(), edges.end(), y);
                    if (it == edges.begin() || it == edges.end())
                        return;
                    ++result.counts[it - edges.begin() - 1];
                });
        },
        opts);
    return result;
}

//---------------------------------------------------------------------------//
// ARGMAX PROFILE
//---------------------------------------------------------------------------//
std::vector<std::uint64_t> trial_seeds(std::uint64_t master,
                                       std::uint64_t trials)
{
    std::vector<std::uint64_t> out(trials);
    for (std::uint64_t t = 0; t < trials; ++t)
        out[t] = trial_seed(master, t);
    return out;
}

ProfileStats profile_stats(ModelSpec const& model,
                           std::vector<PathProfile> const& profiles)
{
    require(profiles.size() >= 100, "argmax profile statistics need >= 100 trials");
    int const depth = model.depth();
    std::vector<double> frac(depth + 1, 0.0);
    for (int l = 1; l <= depth; ++l)
        frac[l] = frac[l - 1] + model.variance(l) / model.n();

    ProfileStats st;
    st.trials = profiles.size();
    st.depth = depth;
    std::vector<double> column(profiles.size());
    for (int l = 0; l <= depth; ++l)
    {
        for (std::size_t t = 0; t < profiles.size(); ++t)
        {
            auto const& s = profiles[t].partial_sums;
            require(static_cast<int>(s.size()) == depth + 1,
                    "profile depth does not match the model");
            column[t] = l == depth ? 0.0 : s[l] - frac[l] * s[depth];
        }
        MCEstimate const e = summarize(column);
        st.mean.push_back(e.mean);
        st.std_error.push_back(e.std_error);
        st.q10.push_back(quantile(column, 0.1));
        st.q50.push_back(quantile(column, 0.5));
        st.q90.push_back(quantile(column, 0.9));
    }
    return st;
}

ProfileStats argmax_profile_stats(ModelSpec const& model,
                                  std::vector<std::uint64_t> const& seeds,
                                  unsigned threads)
{
    require(seeds.size() >= 100, "argmax profile statistics need >= 100 trials");
    auto profiles = run_indexed(
        seeds.size(),
        [&](std::uint64_t i) { return scan_max(model, seeds[i]).profile; },
        threads);
    return profile_stats(model, profiles);
}

//---------------------------------------------------------------------------//
// CASCADES
//---------------------------------------------------------------------------//
std::vector<double> CascadeSample::points() const
{
    std::vector<double> out;
    for (auto const& c : clusters)
        out.insert(out.end(), c.begin(), c.end());
    return out;
}

std::uint64_t CascadeSample::count_in(double lo, double hi) const
{
    std::uint64_t n = 0;
    for (auto const& c : clusters)
        for (double x : c)
            n += (x >= lo && x < hi);
    return n;
}

namespace
{
//! Point at cumulative intensity g measured down from the upper end.
double invert_from_top(double b, double upper, double g)
{
    if (b * upper >= 0)
        return -std::log(b * g + std::exp(-b * upper)) / b;
    return upper - std::log1p(b * g * std::exp(b * upper)) / b;
}

//! log of the total intensity of exp(-b t) on [lower, upper]
double log_mass(double b, double lower, double upper)
{
    return -b * lower + std::log1p(-std::exp(-b * (upper - lower)))
           - std::log(b);
}
}  // namespace

std::vector<double> sample_poisson_exponential(double b, double lower,
                                               double upper,
                                               std::uint64_t seed,
                                               std::uint64_t stream,
                                               std::uint64_t max_points)
{
    require(std::isfinite(lower) && std::isfinite(upper) && lower < upper,
            "truncation window must satisfy L < U");
    require(std::isfinite(b) && b > 0, "intensity exponent must be positive");
    LevelStream const rng(seed, Domain::cascade, stream);
    std::vector<double> out;
    double g = 0;
    for (std::uint64_t i = 0; out.size() < max_points; ++i)
    {
        g += exponential_from_bits(rng(i));
        double const t = invert_from_top(b, upper, g);
        if (!(t >= lower))
            break;
        out.push_back(t);
    }
    return out;
}

CascadeSample sample_cascade(double b1, double b2, double lower, double upper,
                             std::uint64_t seed, CascadeOptions const& opts)
{
    require(std::isfinite(b2) && b2 > 0, "intensity exponent must be positive");
    require(opts.max_per_cluster >= 1, "clusters must keep at least one point");
    CascadeSample out;
    out.lower = lower;
    out.upper = upper;
    out.atoms = sample_poisson_exponential(b1, lower, upper, seed, 0);

    double expected = static_cast<double>(out.atoms.size());
    for (double t : out.atoms)
    {
        double const m = std::exp(log_mass(b2, lower - t, upper - t));
        expected += std::min(m, static_cast<double>(opts.max_per_cluster));
    }
    if (!(expected <= opts.point_budget))
    {
        std::ostringstream os;
        os << "cascade point budget exceeded: about " << expected
           << " points expected, budget is " << opts.point_budget;
        throw BudgetExceeded(os.str(), expected, opts.point_budget);
    }

    out.clusters.reserve(out.atoms.size());
    for (std::size_t i = 0; i < out.atoms.size(); ++i)
    {
        double const t = out.atoms[i];
        auto offsets = sample_poisson_exponential(
            b2, lower - t, upper - t, seed, i + 1, opts.max_per_cluster + 1);
        if (offsets.size() > opts.max_per_cluster)
        {
            offsets.pop_back();
            out.truncated = true;
        }
        std::vector<double> cluster;
        cluster.reserve(offsets.size());
        for (double s : offsets)
        {
            double const x = t + s;
            if (x >= lower)
                cluster.push_back(x);
        }
        out.clusters.push_back(std::move(cluster));
    }
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace remlab
