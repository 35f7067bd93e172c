// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include "remlab/gff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

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

constexpr int dx[4] = {1, -1, 0, 0};
constexpr int dy[4] = {0, 0, 1, -1};

GreenOperator::SparseMatrix interior_laplacian(int n)
{
    int const side = n - 1;
    int const size = side * side;
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(size * 5);
    for (int x = 1; x <= side; ++x)
    {
        for (int y = 1; y <= side; ++y)
        {
            int const i = (x - 1) * side + (y - 1);
            t.emplace_back(i, i, 1.0);
            for (int d = 0; d < 4; ++d)
            {
                int const u = x + dx[d];
                int const v = y + dy[d];
                if (u >= 1 && v >= 1 && u <= side && v <= side)
                    t.emplace_back(i, (u - 1) * side + (v - 1), -0.25);
            }
        }
    }
    GreenOperator::SparseMatrix m(size, size);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

void check_box(int n)
{
    require(n >= 2, "box side must be at least 2");
    if (n > max_green_box)
    {
        std::ostringstream os;
        os << "GFF size budget exceeded: box side " << n << " exceeds "
           << max_green_box;
        throw BudgetExceeded(os.str(), n, max_green_box);
    }
}
}  // namespace

//---------------------------------------------------------------------------//
double GreenOperator::entry(int i, int j) const
{
    if (has_dense())
        return dense_(i, j);
    require(has_factor(), "Green operator has no factorization");
    Eigen::VectorXd e = Eigen::VectorXd::Zero(size());
    e(j) = 1;
    return factor_->solve(e)(i);
}

Eigen::MatrixXd GreenOperator::columns(std::vector<int> const& cols) const
{
    Eigen::MatrixXd out(size(), cols.size());
    if (has_dense())
    {
        for (std::size_t k = 0; k < cols.size(); ++k)
            out.col(k) = dense_.col(cols[k]);
        return out;
    }
    require(has_factor(), "Green operator has no factorization");
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(size(), cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k)
        rhs(cols[k], k) = 1;
    return factor_->solve(rhs);
}

Eigen::VectorXd GreenOperator::color(Eigen::VectorXd const& z) const
{
    require(has_factor(), "Green operator has no factorization for sampling");
    return factor_->matrixU().solve(z);
}

//---------------------------------------------------------------------------//
GreenOperator build_green(int n, GreenMethod method, GreenOptions const& opts)
{
    check_box(n);
    GreenOperator g;
    g.n_ = n;
    g.method_ = method;
    g.laplacian_ = interior_laplacian(n);

    if (method == GreenMethod::linear_solve)
    {
        auto factor = std::make_shared<GreenOperator::Factor>(g.laplacian_);
        if (factor->info() != Eigen::Success)
        {
            // The Laplacian is positive definite; a failure can only be
            // rounding, and at most 1e-12 is added to the diagonal.
            g.jitter_ = 1e-12;
            GreenOperator::SparseMatrix shifted = g.laplacian_;
            for (int i = 0; i < g.size(); ++i)
                shifted.coeffRef(i, i) += g.jitter_;
            factor = std::make_shared<GreenOperator::Factor>(shifted);
            if (factor->info() != Eigen::Success)
                throw std::runtime_error(
                    "Green operator factorization failed (not positive "
                    "definite)");
        }
        g.factor_ = factor;
        if (opts.dense)
        {
            g.dense_ = factor->solve(
                Eigen::MatrixXd::Identity(g.size(), g.size()).eval());
        }
        return g;
    }

    // Killed random walks: G(x, y) is the mean number of visits to y.
    int const size = g.size();
    int const side = g.side();
    std::uint64_t const walks = opts.walks_per_site;
    require(walks >= 2, "walk-MC needs at least two walks per site");
    auto rows = run_indexed(
        static_cast<std::uint64_t>(size),
        [&](std::uint64_t start) {
            LevelStream const rng(opts.seed, Domain::gff, start + 1);
            std::vector<double> sum(size, 0.0), sumsq(size, 0.0);
            std::vector<std::uint32_t> visits(size, 0);
            std::vector<int> touched;
            std::uint64_t counter = 0;
            auto const [x0, y0] = g.site(static_cast<int>(start));
            for (std::uint64_t w = 0; w < walks; ++w)
            {
                int x = x0, y = y0;
                std::uint64_t bits = 0;
                int left = 0;
                while (x >= 1 && y >= 1 && x <= side && y <= side)
                {
                    int const i = (x - 1) * side + (y - 1);
                    if (visits[i]++ == 0)
                        touched.push_back(i);
                    if (left == 0)
                    {
                        bits = rng(counter++);
                        left = 32;
                    }
                    int const d = static_cast<int>(bits & 3u);
                    bits >>= 2;
                    --left;
                    x += dx[d];
                    y += dy[d];
                }
                for (int i : touched)
                {
                    double const c = visits[i];
                    sum[i] += c;
                    sumsq[i] += c * c;
                    visits[i] = 0;
                }
                touched.clear();
            }
            std::vector<double> row(2 * size);
            double const m = static_cast<double>(walks);
            for (int i = 0; i < size; ++i)
            {
                double const mean = sum[i] / m;
                double const var
                    = std::max(0.0, (sumsq[i] - m * mean * mean) / (m - 1));
                row[i] = mean;
                row[size + i] = std::sqrt(var / m);
            }
            return row;
        },
        opts.threads);
    g.dense_.resize(size, size);
    g.stderr_.resize(size, size);
    for (int i = 0; i < size; ++i)
    {
        for (int j = 0; j < size; ++j)
        {
            g.dense_(i, j) = rows[i][j];
            g.stderr_(i, j) = rows[i][size + j];
        }
    }
    return g;
}

//---------------------------------------------------------------------------//
FieldSample2D sample_gff(GreenOperator const& green, std::uint64_t seed)
{
    LevelStream const rng(seed, Domain::gff, 0);
    Eigen::VectorXd z(green.size());
    for (int i = 0; i < green.size(); ++i)
        z(i) = gaussian_from_bits(rng(static_cast<std::uint64_t>(i)));
    Eigen::VectorXd const x = green.color(z);
    FieldSample2D out;
    out.n = green.n();
    out.seed = seed;
    out.values.assign(x.data(), x.data() + x.size());
    return out;
}

std::vector<int> delta_interior(GreenOperator const& green, double delta)
{
    require(delta >= 0 && delta < 0.5, "delta must lie in [0, 1/2)");
    int const n = green.n();
    double const reach = delta * n;
    std::vector<int> out;
    for (int i = 0; i < green.size(); ++i)
    {
        auto const [x, y] = green.site(i);
        int const dist = std::min({x, y, n - x, n - y});
        if (dist >= reach)
            out.push_back(i);
    }
    return out;
}

GffMaxStats gff_max_stats(int n, double delta, std::uint64_t trials,
                          std::uint64_t seed, unsigned threads)
{
    require(trials >= 1, "need at least one trial");
    GreenOptions opts;
    opts.dense = false;
    GreenOperator const green = build_green(n, GreenMethod::linear_solve, opts);
    auto const inner = delta_interior(green, delta);
    require(!inner.empty(), "delta-interior is empty");

    auto maxima = run_trials(
        seed, trials,
        [&](std::uint64_t s) {
            FieldSample2D const f = sample_gff(green, s);
            double in = -std::numeric_limits<double>::infinity();
            for (int i : inner)
                in = std::max(in, f.values[i]);
            double const all
                = *std::max_element(f.values.begin(), f.values.end());
            return std::array<double, 2>{in, all};
        },
        threads);

    GffMaxStats st;
    st.n = n;
    st.delta = delta;
    std::vector<double> ratio;
    for (auto const& m : maxima)
    {
        st.interior_by_trial.push_back(m[0]);
        st.full_by_trial.push_back(m[1]);
        ratio.push_back(m[0] / std::log(double(n)));
    }
    st.interior_max = summarize(st.interior_by_trial, seed);
    st.full_max = summarize(st.full_by_trial, seed);
    st.ratio = summarize(ratio, seed);
    return st;
}

//---------------------------------------------------------------------------//
// LOCAL PROJECTIONS
//---------------------------------------------------------------------------//
LocalProjection local_projection_gff(GreenOperator const& green, int x, int y,
                                     double q, ProjectionOptions const& opts)
{
    require(q > 0 && q < 2 / M_PI, "radius exponent q must lie in (0, 2/pi)");
    double const r = std::pow(double(green.n()), 1 - M_PI * q / 2);
    return local_projection_gff_radius(green, x, y, r, opts);
}

LocalProjection local_projection_gff_radius(GreenOperator const& green, int x,
                                            int y, double radius,
                                            ProjectionOptions const& opts)
{
    require(std::isfinite(radius) && radius >= 1,
            "projection radius must be at least one lattice spacing");
    require(green.is_interior(x, y), "center must be an interior site");
    int const size = green.size();

    // Lattice ball, its inner vertex boundary and its interior.
    std::vector<char> in_ball(size, 0);
    int const reach = static_cast<int>(std::floor(radius));
    double const r2 = radius * radius;
    for (int u = x - reach; u <= x + reach; ++u)
    {
        for (int v = y - reach; v <= y + reach; ++v)
        {
            double const d2 = double(u - x) * (u - x) + double(v - y) * (v - y);
            if (d2 > r2)
                continue;
            if (!green.is_interior(u, v))
                throw std::domain_error("projection ball touches the boundary");
            in_ball[green.index(u, v)] = 1;
        }
    }
    LocalProjection out;
    out.radius = radius;
    std::vector<int> inside;
    std::vector<int> pos(size, -1);
    for (int i = 0; i < size; ++i)
    {
        if (!in_ball[i])
            continue;
        auto const [u, v] = green.site(i);
        bool edge = false;
        for (int d = 0; d < 4; ++d)
        {
            int const a = u + dx[d], b = v + dy[d];
            if (!green.is_interior(a, b) || !in_ball[green.index(a, b)])
                edge = true;
        }
        if (edge)
            out.boundary.push_back(i);
        else
        {
            pos[i] = static_cast<int>(inside.size());
            inside.push_back(i);
        }
    }
    int const z = green.index(x, y);
    int const nb = static_cast<int>(out.boundary.size());

    // Gaussian conditioning on G.
    std::vector<int> cols = out.boundary;
    cols.push_back(z);
    Eigen::MatrixXd const gc = green.columns(cols);
    Eigen::MatrixXd g_bb(nb, nb);
    Eigen::VectorXd g_bz(nb);
    for (int a = 0; a < nb; ++a)
    {
        for (int b = 0; b < nb; ++b)
            g_bb(a, b) = gc(out.boundary[a], b);
        g_bz(a) = gc(out.boundary[a], nb);
    }
    Eigen::LLT<Eigen::MatrixXd> const llt(g_bb);
    require(llt.info() == Eigen::Success,
            "boundary covariance is not positive definite");
    Eigen::VectorXd const c = llt.solve(g_bz);
    out.coefficients.assign(c.data(), c.data() + nb);

    double const g_zz = gc(z, nb);
    out.total_variance = g_zz;
    out.mean_variance = c.dot(g_bb * c);
    out.residual_variance = g_zz - c.dot(g_bz);
    Eigen::VectorXd const resid_cov = g_bz - g_bb * c;
    out.max_residual_covariance = resid_cov.cwiseAbs().maxCoeff();

    // Harmonic measure: v = (I - P_UU)^{-1} e_z, H(b) = sum_{u ~ b} v_u / 4.
    int const nu = static_cast<int>(inside.size());
    std::vector<Eigen::Triplet<double>> t;
    for (int k = 0; k < nu; ++k)
    {
        auto const [u, v] = green.site(inside[k]);
        t.emplace_back(k, k, 1.0);
        for (int d = 0; d < 4; ++d)
        {
            int const j = green.index(u + dx[d], v + dy[d]);
            if (pos[j] >= 0)
                t.emplace_back(k, pos[j], -0.25);
        }
    }
    Eigen::SparseMatrix<double> a(nu, nu);
    a.setFromTriplets(t.begin(), t.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
    require(ldlt.info() == Eigen::Success, "ball Laplacian factorization failed");
    Eigen::VectorXd e = Eigen::VectorXd::Zero(nu);
    e(pos[z]) = 1;
    Eigen::VectorXd const vis = ldlt.solve(e);
    out.harmonic.assign(nb, 0.0);
    for (int k = 0; k < nb; ++k)
    {
        auto const [u, v] = green.site(out.boundary[k]);
        for (int d = 0; d < 4; ++d)
        {
            int const a2 = u + dx[d], b2 = v + dy[d];
            if (!green.is_interior(a2, b2))
                continue;
            int const j = green.index(a2, b2);
            if (pos[j] >= 0)
                out.harmonic[k] += 0.25 * vis(pos[j]);
        }
        out.harmonic_mass += out.harmonic[k];
        out.max_coefficient_gap
            = std::max(out.max_coefficient_gap,
                       std::fabs(out.harmonic[k] - out.coefficients[k]));
    }

    // Conditioning on every site outside the ball's interior.
    std::vector<int> comp;
    for (int i = 0; i < size; ++i)
        if (pos[i] < 0)
            comp.push_back(i);
    int const nc = static_cast<int>(comp.size());
    if (nc > opts.complement_limit)
    {
        out.complement_off_boundary = std::numeric_limits<double>::quiet_NaN();
        out.complement_gap = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    std::vector<int> ccols = comp;
    ccols.push_back(z);
    Eigen::MatrixXd const gcc_cols = green.columns(ccols);
    Eigen::MatrixXd g_cc(nc, nc);
    Eigen::VectorXd g_cz(nc);
    for (int a3 = 0; a3 < nc; ++a3)
    {
        for (int b3 = 0; b3 < nc; ++b3)
            g_cc(a3, b3) = gcc_cols(comp[a3], b3);
        g_cz(a3) = gcc_cols(comp[a3], nc);
    }
    Eigen::VectorXd const cc = g_cc.llt().solve(g_cz);
    std::vector<char> on_boundary(size, 0);
    std::vector<int> bpos(size, -1);
    for (int k = 0; k < nb; ++k)
    {
        on_boundary[out.boundary[k]] = 1;
        bpos[out.boundary[k]] = k;
    }
    for (int k = 0; k < nc; ++k)
    {
        if (on_boundary[comp[k]])
            out.complement_gap
                = std::max(out.complement_gap,
                           std::fabs(cc(k) - out.coefficients[bpos[comp[k]]]));
        else
            out.complement_off_boundary
                = std::max(out.complement_off_boundary, std::fabs(cc(k)));
    }
    return out;
}

//---------------------------------------------------------------------------//
Grem2Projection local_projection_grem2(int n, double a1)
{
    require(n >= 2 && n <= 62 && n % 2 == 0,
            "two-level projection needs an even N in [2, 62]");
    require(std::isfinite(a1) && a1 > 0 && a1 <= 1, "a1 must lie in (0, 1]");
    double const dn = n;
    double const m = std::ldexp(1.0, n / 2);
    double const sib = m - 1;
    double const v1 = a1 * dn;
    double const v2 = (1 - a1) * dn;
    double const denom = v2 + sib * v1;

    Grem2Projection p;
    p.n = n;
    p.a1 = a1;
    p.siblings = sib;
    p.first_coefficient = sib * v1 / denom;
    p.sibling_coefficient = v1 / denom;
    // residual = (1 - A) X1 + Z_alpha - B sum Z_tau
    double const one_minus_a = v2 / denom;
    p.residual_variance = one_minus_a * one_minus_a * v1 + v2
                          + sib * p.sibling_coefficient * p.sibling_coefficient
                                * v2;
    p.residual_first_covariance = one_minus_a * v1;
    double const inv_m = 1 / m;
    p.quoted_first = 1 / (1 + inv_m * (1 - a1));
    p.quoted_sibling = inv_m / (a1 + (1 - a1) * inv_m);
    return p;
}

Grem2DenseOracle grem2_dense_projection(int n, double a1)
{
    require(n >= 2 && n <= 16 && n % 2 == 0,
            "dense two-level oracle needs an even N in [2, 16]");
    require(std::isfinite(a1) && a1 > 0 && a1 <= 1, "a1 must lie in (0, 1]");
    int const sib = (1 << (n / 2)) - 1;
    double const v1 = a1 * n;
    double const v2 = (1 - a1) * n;

    // Joint vector (X1, Z_alpha, Z_1..Z_sib); observations Y_tau = X1 + Z_tau.
    int const dim = sib + 2;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
    cov(0, 0) = v1;
    for (int i = 1; i < dim; ++i)
        cov(i, i) = v2;
    Eigen::MatrixXd obs = Eigen::MatrixXd::Zero(sib, dim);
    for (int t = 0; t < sib; ++t)
    {
        obs(t, 0) = 1;
        obs(t, 2 + t) = 1;
    }
    Eigen::RowVectorXd target = Eigen::RowVectorXd::Zero(dim);
    target(0) = 1;
    target(1) = 1;

    Eigen::MatrixXd const s_yy = obs * cov * obs.transpose();
    Eigen::VectorXd const s_yx = obs * cov * target.transpose();
    Eigen::VectorXd const c = s_yy.ldlt().solve(s_yx);

    // Conditional mean as a combination of the components.
    Eigen::RowVectorXd const comb = c.transpose() * obs;
    Grem2DenseOracle o;
    o.first_coefficient = comb(0);
    double const mean_c = c.mean();
    o.sibling_coefficient = mean_c;
    o.sibling_spread = (c.array() - mean_c).abs().maxCoeff();
    Eigen::RowVectorXd const resid = target - comb;
    o.max_residual_observation_covariance
        = (obs * cov * resid.transpose()).cwiseAbs().maxCoeff();
    o.residual_first_covariance = (resid * cov.col(0))(0);
    return o;
}

//---------------------------------------------------------------------------//
}  // namespace remlab
