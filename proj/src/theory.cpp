// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include "remlab/theory.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

namespace remlab
{
namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

void require(bool cond, char const* msg)
{
    if (!cond)
        throw std::invalid_argument(msg);
}

void check_weights(std::vector<double> const& a)
{
    require(!a.empty(), "need at least one level weight");
    double sum = 0;
    for (double w : a)
    {
        require(std::isfinite(w) && w > 0,
                "level weights must be finite and positive");
        sum += w;
    }
    require(std::fabs(sum - 1) <= 1e-12, "level weights must sum to one");
}

std::vector<double> uniform_budgets(std::size_t k)
{
    std::vector<double> t(k);
    for (std::size_t l = 0; l < k; ++l)
        t[l] = double(l + 1) / double(k);
    return t;
}

//! Per-level maximizers when the levels are cut at the given block ends.
std::vector<double> block_lambdas(std::vector<double> const& a,
                                  std::vector<double> const& t,
                                  std::vector<int> const& ends)
{
    std::vector<double> lambda(a.size());
    int start = 0;
    double t_prev = 0;
    for (int end : ends)
    {
        double const budget = (t[end - 1] - t_prev) * ln2;
        double mass = 0;
        for (int j = start; j < end; ++j)
            mass += a[j];
        double const scale = std::sqrt(2 * budget / mass);
        for (int j = start; j < end; ++j)
            lambda[j] = a[j] * scale;
        start = end;
        t_prev = t[end - 1];
    }
    return lambda;
}

double violation(std::vector<double> const& a, std::vector<double> const& t,
                 std::vector<double> const& lambda)
{
    double used = 0;
    double worst = -inf;
    for (std::size_t j = 0; j < a.size(); ++j)
    {
        used += lambda[j] * lambda[j] / (2 * a[j]);
        worst = std::max(worst, used - t[j] * ln2);
    }
    return worst;
}

double gauss_pdf(double x)
{
    return normal_pdf(x);
}
}  // namespace

//---------------------------------------------------------------------------//
// LEVEL PREDICTIONS
//---------------------------------------------------------------------------//
double LevelPrediction::at(double n) const
{
    double const log_n = std::log(n);
    double lead = log_scale ? leading * log_n : leading * n;
    double v = lead - log_coeff * log_n;
    if (loglog_coeff != 0)
        v -= loglog_coeff * std::log(log_n);
    return v;
}

LevelPrediction predicted_level(ModelSpec const& model)
{
    double const bc = beta_c();
    LevelPrediction p;
    switch (model.variant())
    {
        case Variant::rem:
            p.leading = bc;
            p.log_coeff = 1 / (2 * bc);
            p.formula_id = "rem_level";
            return p;
        case Variant::brw:
            p.leading = bc;
            p.log_coeff = 3 / (2 * bc);
            p.formula_id = "brw_level";
            return p;
        case Variant::interpolating:
            p.leading = bc;
            p.log_coeff = (2 * model.alpha() + 1) / (2 * bc);
            p.conjectural = true;
            p.formula_id = "interpolating_level";
            return p;
        case Variant::grem: {
            // Budgets follow the branching: level l carries bits(l)/N of the
            // entropy.
            std::vector<double> t;
            int bits = 0;
            for (int l = 1; l <= model.depth(); ++l)
            {
                bits += model.bits(l);
                t.push_back(double(bits) / model.n());
            }
            auto const& a = model.weights();
            VariationalSolution const sol = solve_variational(a, t);
            p.leading = sol.value;
            // Each block behaves as a REM carrying fraction s of the variance
            // and fraction tau of the entropy.
            int start = 0;
            double t_prev = 0;
            for (int end : sol.block_ends)
            {
                double s = 0;
                for (int j = start; j < end; ++j)
                    s += a[j];
                double const tau = t[end - 1] - t_prev;
                p.log_coeff += s / (2 * std::sqrt(2 * tau * s * ln2));
                start = end;
                t_prev = t[end - 1];
            }
            p.formula_id = model.depth() == 2 ? "grem2_case_split"
                                              : "grem_variational_level";
            return p;
        }
    }
    throw std::invalid_argument("unsupported model variant");
}

LevelPrediction gff_level()
{
    LevelPrediction p;
    p.leading = 2 * std::sqrt(gff_g);
    p.loglog_coeff = 0.75 * std::sqrt(gff_g);
    p.log_scale = true;
    p.formula_id = "gff_level";
    return p;
}

//---------------------------------------------------------------------------//
// VARIATIONAL PRINCIPLE
//---------------------------------------------------------------------------//
VariationalSolution solve_variational(std::vector<double> const& a)
{
    return solve_variational(a, uniform_budgets(a.size()));
}

VariationalSolution solve_variational(std::vector<double> const& a,
                                      std::vector<double> const& t)
{
    check_weights(a);
    int const k = static_cast<int>(a.size());
    require(static_cast<int>(t.size()) == k, "need one budget per level");
    for (int l = 0; l < k; ++l)
        require(std::isfinite(t[l]) && t[l] > (l ? t[l - 1] : 0.0),
                "budgets must be positive and increasing");
    require(std::fabs(t.back() - 1) <= 1e-12, "last budget must be one");
    require(k <= 24, "too many levels for block enumeration");

    // Cuts after level j (1..K-1) are bits of the mask; visit masks with
    // fewer cuts first so that ties keep the coarser structure.
    std::vector<std::uint32_t> masks(std::uint32_t{1} << (k - 1));
    std::iota(masks.begin(), masks.end(), 0u);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t x, std::uint32_t y) {
                         return std::popcount(x) < std::popcount(y);
                     });

    VariationalSolution best;
    best.value = -inf;
    for (std::uint32_t mask : masks)
    {
        std::vector<int> ends;
        for (int j = 1; j < k; ++j)
            if (mask >> (j - 1) & 1u)
                ends.push_back(j);
        ends.push_back(k);
        auto lambda = block_lambdas(a, t, ends);
        if (violation(a, t, lambda) > 1e-12)
            continue;
        double const value = std::accumulate(lambda.begin(), lambda.end(), 0.0);
        if (value > best.value + 1e-13)
        {
            best.value = value;
            best.lambdas = std::move(lambda);
            best.block_ends = std::move(ends);
        }
    }

    double used = 0;
    best.active.resize(k);
    for (int j = 0; j < k; ++j)
    {
        used += best.lambdas[j] * best.lambdas[j] / (2 * a[j]);
        best.active[j] = std::fabs(used - t[j] * ln2) <= 1e-9;
    }
    return best;
}

double variational_violation(std::vector<double> const& a,
                             std::vector<double> const& lambdas)
{
    require(a.size() == lambdas.size(), "need one lambda per level");
    return violation(a, uniform_budgets(a.size()), lambdas);
}

double grid_search_variational(std::vector<double> const& a, double mesh)
{
    check_weights(a);
    require(mesh > 0, "mesh must be positive");
    int const k = static_cast<int>(a.size());
    auto const t = uniform_budgets(k);

    std::function<double(int, double)> best_from = [&](int j, double used) {
        double const room = t[j] * ln2 - used;
        if (room < 0)
            return -inf;
        double const top = std::sqrt(2 * a[j] * room);
        if (j == k - 1)
            return top;
        double best = -inf;
        int const steps = static_cast<int>(std::floor(top / mesh));
        for (int i = 0; i <= steps + 1; ++i)
        {
            double const lam = std::min(i * mesh, top);
            best = std::max(best,
                            lam + best_from(j + 1, used + lam * lam / (2 * a[j])));
        }
        return best;
    };
    return best_from(0, 0.0);
}

//---------------------------------------------------------------------------//
// RATES
//---------------------------------------------------------------------------//
RateReport second_moment_rate(int k, std::vector<double> const& lambdas)
{
    require(k >= 2, "coarse graining K must be at least 2");
    require(static_cast<int>(lambdas.size()) == k - 1,
            "expected thresholds lambda_2..lambda_K");
    RateReport rep;
    double sq = 0;
    for (int r = 1; r <= k - 1; ++r)
    {
        sq += lambdas[r - 1] * lambdas[r - 1];
        rep.rates.push_back(0.5 * k * sq - double(r) / k * ln2);
    }
    rep.max_rate = *std::max_element(rep.rates.begin(), rep.rates.end());
    rep.vanishing = rep.max_rate < 0;
    return rep;
}

double grem2_region(double lambda1, double lambda2, double a1, double a2)
{
    require(a1 > 0 && a2 > 0, "level weights must be positive");
    double const l1 = std::max(lambda1, 0.0);
    double const l2 = std::max(lambda2, 0.0);
    double const first = l1 * l1 / (2 * a1);
    double const total = first + l2 * l2 / (2 * a2);
    if (first > 0.5 * ln2 || total > ln2)
        return -inf;
    return ln2 - total;
}

//---------------------------------------------------------------------------//
// BRIDGES
//---------------------------------------------------------------------------//
double bridge_below_line(double n, double a, double b)
{
    require(n >= 1, "bridge lifespan must be at least one");
    if (a <= 0 || b <= 0)
        return 0;
    return -std::expm1(-2 * a * b / n);
}

BridgeDP::BridgeDP(int n, std::vector<double> const& barrier) : n_(n)
{
    require(n >= 1 && n <= 4096, "bridge lifespan must lie in [1, 4096]");
    require(static_cast<int>(barrier.size()) == n - 1,
            "need one barrier value per interior time");
    for (double b : barrier)
        require(!std::isnan(b), "barrier values must not be NaN");

    double const half = half_width_sd * std::sqrt(double(n));
    lo_ = -half;
    h_ = 2 * half / bins;
    for (double b : barrier)
    {
        if (b < lo_)
            throw std::range_error(
                "bridge grid overflow: barrier lies below the grid");
    }
    last_barrier_ = n >= 2 ? barrier.back() : inf;

    density_.resize(bins + 1);
    for (int i = 0; i <= bins; ++i)
        density_[i] = gauss_pdf(lo_ + i * h_);

    std::vector<double> next(bins + 1);
    for (int l = 1; l + 1 <= n - 1; ++l)
    {
        for (int i = 0; i <= bins; ++i)
            next[i] = integrate_below(barrier[l - 1], lo_ + i * h_);
        density_.swap(next);
    }
}

/*!
 * Trapezoid rule for the integral over y <= b of density(y) phi(x - y).
 *
 * The cell containing the barrier is cut exactly at b, with the density
 * interpolated linearly inside it.
 */
double BridgeDP::integrate_below(double b, double x) const
{
    double const hi = lo_ + bins * h_;
    double const y_top = std::min({b, hi, x + kernel_sd});
    double const y_bot = std::max(lo_, x - kernel_sd);
    if (!(y_top > y_bot))
        return 0;
    int const i0 = std::max(0, static_cast<int>(std::ceil((y_bot - lo_) / h_)));
    int const i1
        = std::min(bins, static_cast<int>(std::floor((y_top - lo_) / h_)));
    if (i1 < i0)
        return 0;

    auto g = [&](int i) { return density_[i] * gauss_pdf(x - (lo_ + i * h_)); };
    double sum = 0;
    for (int i = i0 + 1; i < i1; ++i)
        sum += g(i);
    double total = i1 > i0 ? h_ * (sum + 0.5 * (g(i0) + g(i1))) : 0.0;

    double const y1 = lo_ + i1 * h_;
    double const w = y_top - y1;
    if (w > 0 && i1 < bins)
    {
        double const frac = w / h_;
        double const f_top
            = density_[i1] + frac * (density_[i1 + 1] - density_[i1]);
        total += 0.5 * w * (g(i1) + f_top * gauss_pdf(x - y_top));
    }
    return total;
}

double BridgeDP::probability(double terminal) const
{
    require(std::isfinite(terminal), "terminal value must be finite");
    if (n_ == 1)
        return 1.0;
    double const sd = std::sqrt(double(n_));
    if (std::fabs(terminal) > half_width_sd * sd)
        throw std::range_error(
            "bridge grid overflow: terminal value lies outside the grid");
    double const p = integrate_below(last_barrier_, terminal)
                     / (gauss_pdf(terminal / sd) / sd);
    return std::clamp(p, 0.0, 1.0);
}

double bridge_dp_below_barrier(int n, std::vector<double> const& barrier,
                               double terminal)
{
    return BridgeDP(n, barrier).probability(terminal);
}

double ballot_constant_quadrature(int k)
{
    require(k >= 2 && k <= 4, "quadrature ballot constant needs 2 <= K <= 4");
    using boost::math::quadrature::gauss_kronrod;
    constexpr double tol = 1e-10;
    // inner(j, x): integral over x_j..x_{K-1} <= 0 of the remaining path
    // density given x_{j-1} = x, ending at 0.
    std::function<double(int, double)> inner = [&](int j, double x) {
        if (j == k)
            return gauss_pdf(-x);
        return gauss_kronrod<double, 21>::integrate(
            [&, x](double y) { return gauss_pdf(y - x) * inner(j + 1, y); },
            -inf, 0.0, 8, tol);
    };
    return inner(1, 0.0) / (gauss_pdf(0.0) / std::sqrt(double(k)));
}

MCEstimate ballot_constant_mc(int k, std::uint64_t paths, std::uint64_t seed,
                              unsigned threads)
{
    require(k >= 2 && k <= 64, "ballot constant lifespan out of range");
    require(paths >= 1, "need at least one path");
    constexpr std::uint64_t chunk = 1 << 16;
    std::uint64_t const chunks = (paths + chunk - 1) / chunk;
    auto hits = run_indexed(
        chunks,
        [&](std::uint64_t c) {
            LevelStream const rng(seed, Domain::mc, c);
            std::uint64_t const first = c * chunk;
            std::uint64_t const last = std::min(paths, first + chunk);
            std::vector<double> s(k + 1);
            std::uint64_t count = 0;
            for (std::uint64_t p = first; p < last; ++p)
            {
                std::uint64_t const base = (p - first) * k;
                s[0] = 0;
                for (int i = 1; i <= k; ++i)
                    s[i] = s[i - 1] + gaussian_from_bits(rng(base + i - 1));
                bool ok = true;
                for (int l = 1; l < k && ok; ++l)
                    ok = s[l] - double(l) / k * s[k] <= 0;
                count += ok;
            }
            return count;
        },
        threads);
    std::uint64_t const total = std::accumulate(hits.begin(), hits.end(),
                                                std::uint64_t{0});
    MCEstimate e;
    e.trials = paths;
    e.seed = seed;
    e.mean = double(total) / double(paths);
    e.std_error = std::sqrt(e.mean * (1 - e.mean) / double(paths));
    return e;
}

double ballot_constant(int k)
{
    require(k >= 2 && k <= 8, "ballot constant needs 2 <= K <= 8");
    if (k <= 4)
        return ballot_constant_quadrature(k);
    return ballot_constant_mc(k, 10'000'000, 0x62616c6c6f74ull).mean;
}

//---------------------------------------------------------------------------//
// PERCOLATION AND MATCHING
//---------------------------------------------------------------------------//
std::pair<double, double> percolation_constants()
{
    auto f = [](double c) {
        return std::make_pair(exp_rate(c) - ln2, 1 - 1 / c);
    };
    std::uintmax_t iters = 100;
    double const c1 = boost::math::tools::newton_raphson_iterate(
        f, 0.25, 1e-3, 0.9, 52, iters);
    iters = 100;
    double const c2 = boost::math::tools::newton_raphson_iterate(
        f, 2.7, 1.1, 20.0, 52, iters);
    return {c1, c2};
}

double erlang_cdf(int n, double x)
{
    require(n >= 1, "Erlang shape must be positive");
    if (x <= 0)
        return 0;
    return boost::math::gamma_p(double(n), x);
}

double loglog_slope(std::vector<double> const& x, std::vector<double> const& y)
{
    require(x.size() == y.size() && x.size() >= 2,
            "slope fit needs at least two points");
    double const m = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        double const lx = std::log(x[i]);
        double const ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

MatchingReport matching_expected_count(Variant variant, double c, double x0,
                                       double x1, std::vector<int> const& ns)
{
    require(std::isfinite(x0) && std::isfinite(x1) && x0 < x1,
            "matching window must be bounded and nonempty");
    require(variant == Variant::rem || variant == Variant::brw,
            "matching is available for REM and BRW");
    require(!ns.empty(), "need at least one N");
    using boost::math::quadrature::gauss_kronrod;

    MatchingReport rep;
    rep.n_list = ns;
    double const bc = beta_c();
    for (int n : ns)
    {
        require(n >= 2, "matching needs N >= 2");
        double const dn = n;
        double const omega = -c * std::log(dn);
        double const a_n = bc * dn + omega;
        auto density = [&](double x) {
            double const y = x + a_n;
            return std::exp(dn * ln2 - y * y / (2 * dn))
                   / std::sqrt(2 * M_PI * dn);
        };
        double value;
        if (variant == Variant::rem)
        {
            value = gauss_kronrod<double, 31>::integrate(density, x0, x1, 15,
                                                         1e-12);
        }
        else
        {
            BridgeDP const dp(n, std::vector<double>(n - 1, 0.0));
            value = gauss_kronrod<double, 31>::integrate(
                [&](double x) {
                    return dp.probability(x + omega) * density(x);
                },
                x0, x1, 15, 1e-10);
        }
        rep.expected.push_back(value);
    }
    if (ns.size() >= 2)
    {
        std::vector<double> xs(ns.begin(), ns.end());
        rep.exponent = loglog_slope(xs, rep.expected);
    }
    else
    {
        rep.exponent = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

//---------------------------------------------------------------------------//
}  // namespace remlab
