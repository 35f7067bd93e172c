// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include "remlab/model.hpp"

#include <numeric>
#include <sstream>

namespace remlab
{
namespace
{
constexpr int max_total_bits = 62;
constexpr double weight_tolerance = 1e-12;

void require(bool cond, std::string const& msg)
{
    if (!cond)
        throw std::invalid_argument(msg);
}

//! ceil(n^alpha) robust to pow() landing a hair above an integer.
int ceil_power(int n, double alpha)
{
    double const v = std::pow(static_cast<double>(n), alpha);
    double const r = std::round(v);
    if (std::fabs(v - r) <= 1e-9 * std::max(1.0, r))
        return static_cast<int>(r);
    return static_cast<int>(std::ceil(v));
}
}  // namespace

//---------------------------------------------------------------------------//
char const* to_string(Variant v)
{
    switch (v)
    {
        case Variant::rem:
            return "REM";
        case Variant::grem:
            return "GREM";
        case Variant::brw:
            return "BRW";
        case Variant::interpolating:
            return "Interpolating";
    }
    return "?";
}

std::string ModelSpec::describe() const
{
    std::ostringstream os;
    os << to_string(variant_) << "(N=" << n_ << "; bits ";
    bool const uniform
        = std::all_of(bits_.begin(), bits_.end(),
                      [this](int b) { return b == bits_.front(); });
    if (uniform && depth() > 1)
    {
        os << bits_.front() << "x" << depth();
    }
    else
    {
        for (int l = 0; l < depth(); ++l)
            os << (l ? "," : "") << bits_[l];
    }
    os << ")";
    return os.str();
}

//---------------------------------------------------------------------------//
/*!
 * Validate a raw description and resolve depth, branching and variances.
 */
ModelSpec make_model(RawModel const& raw)
{
    require(raw.n >= 1, "model size N must be positive");
    require(raw.n <= max_total_bits, "model size N must be at most 62");

    ModelSpec m;
    m.variant_ = raw.variant;
    m.n_ = raw.n;
    double const n = raw.n;

    switch (raw.variant)
    {
        case Variant::rem:
            m.bits_ = {raw.n};
            m.variances_ = {n};
            break;
        case Variant::brw:
            m.bits_.assign(raw.n, 1);
            m.variances_.assign(raw.n, 1.0);
            break;
        case Variant::grem: {
            auto const& a = raw.weights;
            require(!a.empty(), "GREM needs at least one level weight");
            double sum = 0;
            for (double w : a)
            {
                require(std::isfinite(w) && w > 0,
                        "GREM level weights must be finite and positive");
                sum += w;
            }
            require(std::fabs(sum - 1.0) <= weight_tolerance,
                     "GREM level weights must sum to one");
            int const k = static_cast<int>(a.size());
            if (!raw.level_bits.empty())
            {
                require(static_cast<int>(raw.level_bits.size()) == k,
                        "GREM level_bits must have one entry per level");
                for (int b : raw.level_bits)
                    require(b >= 1, "GREM branching must be at least 2");
                require(std::accumulate(raw.level_bits.begin(),
                                        raw.level_bits.end(), 0)
                            == raw.n,
                        "GREM branching must multiply to 2^N");
                m.bits_ = raw.level_bits;
            }
            else
            {
                int const per = raw.n / k;
                require(per >= 1, "GREM needs N >= K");
                m.bits_.assign(k, per);
                m.bits_.back() += raw.n - per * k;
            }
            for (double w : a)
                m.variances_.push_back(w * n);
            m.weights_ = a;
            break;
        }
        case Variant::interpolating: {
            require(std::isfinite(raw.alpha) && raw.alpha > 0
                        && raw.alpha < 1,
                    "interpolating alpha must lie in (0, 1)");
            int const levels = std::min(ceil_power(raw.n, raw.alpha), raw.n);
            int const bits = std::max(
                1, static_cast<int>(std::lround(n / levels)));
            require(levels * bits <= max_total_bits,
                    "interpolating tree too large after rounding");
            m.bits_.assign(levels, bits);
            m.variances_.assign(levels, n / levels);
            m.alpha_ = raw.alpha;
            break;
        }
    }
    m.total_bits_ = std::accumulate(m.bits_.begin(), m.bits_.end(), 0);
    for (double v : m.variances_)
        m.stddevs_.push_back(std::sqrt(v));
    return m;
}

ModelSpec make_rem(int n)
{
    return make_model({Variant::rem, n, {}, {}, 0.5});
}

ModelSpec make_brw(int n)
{
    return make_model({Variant::brw, n, {}, {}, 0.5});
}

ModelSpec make_grem(int n, std::vector<double> weights)
{
    return make_model({Variant::grem, n, std::move(weights), {}, 0.5});
}

ModelSpec make_interpolating(int n, double alpha)
{
    return make_model({Variant::interpolating, n, {}, {}, alpha});
}

//---------------------------------------------------------------------------//
NodeKey node_key(ModelSpec const& model, std::span<std::uint32_t const> path,
                 int level)
{
    require(level >= 1 && level <= model.depth()
                && static_cast<int>(path.size()) >= level,
            "node key level out of range");
    std::uint64_t idx = 0;
    for (int l = 1; l <= level; ++l)
    {
        require(path[l - 1] < model.branching(l),
                "leaf path entry exceeds branching");
        idx = idx * model.branching(l) + path[l - 1];
    }
    return {level, idx};
}

double node_increment(ModelSpec const& model, NodeKey key, std::uint64_t seed)
{
    require(key.level >= 1 && key.level <= model.depth(),
            "node key level out of range");
    int bits_above = 0;
    for (int l = 1; l <= key.level; ++l)
        bits_above += model.bits(l);
    require(bits_above >= 64 || key.index < (std::uint64_t{1} << bits_above),
            "node key index out of range");
    LevelStream const s(seed, Domain::field, key.level);
    return model.stddev(key.level) * gaussian_from_bits(s(key.index));
}

PathProfile leaf_profile(ModelSpec const& model,
                         std::span<std::uint32_t const> path,
                         std::uint64_t seed)
{
    require(static_cast<int>(path.size()) == model.depth(),
            "leaf path length must equal model depth");
    PathProfile p;
    p.partial_sums.assign(model.depth() + 1, 0.0);
    for (int l = 1; l <= model.depth(); ++l)
    {
        p.partial_sums[l] = p.partial_sums[l - 1]
                            + node_increment(model, node_key(model, path, l),
                                             seed);
    }
    return p;
}

double leaf_covariance(ModelSpec const& model,
                       std::span<std::uint32_t const> a,
                       std::span<std::uint32_t const> b)
{
    double cov = 0;
    for (int l = 1; l <= model.depth(); ++l)
    {
        if (a[l - 1] != b[l - 1])
            break;
        cov += model.variance(l);
    }
    return cov;
}

void check_leaf_budget(ModelSpec const& model, std::uint64_t budget)
{
    if (model.total_log2_leaves() >= 63 || model.leaf_count() > budget)
    {
        double const need = std::ldexp(1.0, model.total_log2_leaves());
        std::ostringstream os;
        os << "leaf budget exceeded: " << model.describe() << " has 2^"
           << model.total_log2_leaves() << " leaves, budget is " << budget;
        throw BudgetExceeded(os.str(), need, static_cast<double>(budget));
    }
}

//---------------------------------------------------------------------------//
}  // namespace remlab
