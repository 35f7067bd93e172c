// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include "remlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "remlab/gff.hpp"
#include "remlab/model.hpp"
#include "remlab/percolation.hpp"
#include "remlab/rng.hpp"
#include "remlab/theory.hpp"
#include "remlab/trials.hpp"

namespace remlab
{
namespace
{
using Payload = AcceptanceSuite::Payload;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(char const* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double mean(std::vector<double> const& xs)
{
    return summarize(xs).mean;
}

constexpr int gap_sizes[] = {16, 20, 24};
constexpr int profile_sizes[] = {16, 24};
constexpr int cube_sizes[] = {12, 16, 20};
constexpr int gff_sizes[] = {16, 32, 64};
constexpr int cov_box = 8;

double midpoint(ModelSpec const& model, PathProfile const& p)
{
    int const d = model.depth();
    double frac = 0;
    for (int l = 1; l <= d / 2; ++l)
        frac += model.variance(l) / model.n();
    return p.partial_sums[d / 2] - frac * p.partial_sums[d];
}

//---------------------------------------------------------------------------//
// PER-TRIAL PAYLOADS
//---------------------------------------------------------------------------//
std::vector<double> maxima(ModelSpec const& model, std::uint64_t seed,
                           std::uint64_t trials, unsigned threads)
{
    auto const seeds = trial_seeds(seed, trials);
    return run_indexed(
        trials, [&](std::uint64_t i) { return scan_max(model, seeds[i]).energy; },
        threads);
}

Payload payload_1(std::uint64_t seed, std::uint64_t trials, unsigned threads)
{
    return {maxima(make_rem(20), seed, trials, threads)};
}

Payload payload_3(std::uint64_t seed, std::uint64_t trials, unsigned threads)
{
    return {maxima(make_grem(24, {0.75, 0.25}), seed, trials, threads),
            maxima(make_grem(24, {0.25, 0.75}), seed, trials, threads)};
}

std::vector<double> brw_lambdas()
{
    return std::vector<double>(3, 0.9 * beta_c() / 4);
}

Payload payload_5(std::uint64_t seed, std::uint64_t trials, unsigned threads)
{
    ModelSpec const model = make_brw(24);
    auto const seeds = trial_seeds(seed, trials);
    auto const lambdas = brw_lambdas();
    return {run_indexed(
        trials,
        [&](std::uint64_t i) {
            return double(count_exceedances(model, seeds[i], 4, lambdas).count);
        },
        threads)};
}

Payload payload_6(std::uint64_t seed, std::uint64_t trials, unsigned threads)
{
    Payload out;
    for (int n : gap_sizes)
    {
        auto const rem = maxima(make_rem(n), seed, trials, threads);
        auto const brw = maxima(make_brw(n), seed, trials, threads);
        std::vector<double> gap(trials);
        for (std::uint64_t t = 0; t < trials; ++t)
            gap[t] = rem[t] - brw[t];
        out.push_back(std::move(gap));
    }
    return out;
}

//! Shares its seeds with the BRW scans of criterion 6.
Payload payload_8(std::uint64_t seed, std::uint64_t trials, unsigned threads)
{
    Payload out;
    auto const seeds = trial_seeds(seed, trials);
    for (int n : profile_sizes)
    {
        ModelSpec const model = make_brw(n);
        out.push_back(run_indexed(
            trials,
            [&](std::uint64_t i) {
                return midpoint(model, scan_max(model, seeds[i]).profile);
            },
            threads));
    }
    return out;
}

Payload payload_9(std::uint64_t seed, std::uint64_t trials, unsigned threads)
{
    auto const seeds = trial_seeds(seed, trials);
    auto pairs = run_indexed(
        trials,
        [&](std::uint64_t i) {
            auto const p = tree_fpp_lpp(22, seeds[i]);
            return std::array<double, 2>{p.first.normalized, p.second.normalized};
        },
        threads);
    Payload out(2);
    for (auto const& p : pairs)
    {
        out[0].push_back(p[0]);
        out[1].push_back(p[1]);
    }
    return out;
}

Payload payload_10(std::uint64_t seed, std::uint64_t trials, unsigned threads)
{
    Payload out;
    auto const seeds = trial_seeds(seed, trials);
    for (int n : cube_sizes)
    {
        out.push_back(run_indexed(
            trials,
            [&](std::uint64_t i) { return hypercube_min_path(n, seeds[i]).weight; },
            threads));
    }
    return out;
}

//! One block per interior site of the covariance box.
Payload payload_11(std::uint64_t seed, std::uint64_t trials, unsigned threads)
{
    GreenOperator const green = build_green(cov_box);
    auto const seeds = trial_seeds(seed, trials);
    auto fields = run_indexed(
        trials,
        [&](std::uint64_t i) { return sample_gff(green, seeds[i]).values; },
        threads);
    Payload out(green.size(), std::vector<double>(trials));
    for (std::uint64_t t = 0; t < trials; ++t)
        for (int s = 0; s < green.size(); ++s)
            out[s][t] = fields[t][s];
    return out;
}

Payload payload_12(std::uint64_t seed, std::uint64_t trials, unsigned threads)
{
    Payload out;
    for (int n : gff_sizes)
        out.push_back(gff_max_stats(n, 0.1, trials, seed, threads).interior_by_trial);
    return out;
}

using PayloadFn = Payload (*)(std::uint64_t, std::uint64_t, unsigned);

struct Stochastic
{
    int id;
    PayloadFn fn;
    //! Criterion whose seed the payload uses
    int seed_id;
    std::uint64_t reduced;
};

constexpr Stochastic stochastic[] = {
    {1, payload_1, 1, 40},   {3, payload_3, 3, 4},    {5, payload_5, 5, 6},
    {6, payload_6, 6, 4},    {8, payload_8, 6, 4},    {9, payload_9, 9, 2},
    {10, payload_10, 10, 3}, {11, payload_11, 11, 200}, {12, payload_12, 12, 8},
};

bool same_bits(std::vector<double> const& a, std::vector<double> const& b,
               std::size_t count)
{
    return a.size() >= count && b.size() >= count
           && std::memcmp(a.data(), b.data(), count * sizeof(double)) == 0;
}
}  // namespace

//---------------------------------------------------------------------------//
AcceptanceSuite::AcceptanceSuite(AcceptanceOptions opts)
    : opts_(opts), threads_(opts.threads ? opts.threads : default_threads())
{
}

std::uint64_t AcceptanceSuite::criterion_seed(int id) const
{
    return trial_seed(opts_.seed, static_cast<std::uint64_t>(id));
}

std::vector<MaxResult> const&
AcceptanceSuite::scans(Variant v, int n, std::uint64_t count)
{
    auto& cache = v == Variant::brw ? brw_scans_[n] : rem_scans_[n];
    if (cache.size() < count)
    {
        ModelSpec const model = v == Variant::brw ? make_brw(n) : make_rem(n);
        auto const seeds = trial_seeds(criterion_seed(6), count);
        std::size_t const have = cache.size();
        auto more = run_indexed(
            count - have,
            [&](std::uint64_t i) { return scan_max(model, seeds[have + i]); },
            threads_);
        cache.insert(cache.end(), more.begin(), more.end());
    }
    return cache;
}

CriterionResult AcceptanceSuite::run(int id)
{
    auto const start = Clock::now();
    CriterionResult r;
    switch (id)
    {
        case 1: r = c1(); break;
        case 2: r = c2(); break;
        case 3: r = c3(); break;
        case 4: r = c4(); break;
        case 5: r = c5(); break;
        case 6: r = c6(); break;
        case 7: r = c7(); break;
        case 8: r = c8(); break;
        case 9: r = c9(); break;
        case 10: r = c10(); break;
        case 11: r = c11(); break;
        case 12: r = c12(); break;
        case 13: r = c13(); break;
        case 14: r = c14(); break;
        default:
            throw std::invalid_argument("criterion id must lie in 1..14");
    }
    r.id = id;
    r.seconds = since(start);
    return r;
}

std::vector<CriterionResult> AcceptanceSuite::run_all(
    std::function<void(CriterionResult const&)> const& on_result)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= criterion_count; ++id)
    {
        CriterionResult r;
        try
        {
            r = run(id);
        }
        catch (std::exception const& e)
        {
            r.id = id;
            r.title = "criterion " + std::to_string(id);
            r.pass = false;
            r.detail = std::string("error: ") + e.what();
        }
        if (on_result)
            on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

//---------------------------------------------------------------------------//
// CRITERIA
//---------------------------------------------------------------------------//
CriterionResult AcceptanceSuite::c1()
{
    auto const t = Clock::now();
    Payload p = payload_1(criterion_seed(1), 2000, threads_);
    double const elapsed = since(t);
    std::vector<double> scaled;
    for (double x : p[0])
        scaled.push_back(x / 20);
    MCEstimate const e = summarize(scaled);
    payloads_[1] = std::move(p);
    bool const pass = std::fabs(e.mean - beta_c()) <= 0.05 && elapsed <= 120;
    return {0, "REM leading order (N=20, 2000 trials)", pass,
            fmt("mean max/N = %.4f +- %.4f, target %.5f +- 0.05, %.1f s (limit "
                "120 s)",
                e.mean, e.std_error, beta_c(), elapsed)};
}

CriterionResult AcceptanceSuite::c2()
{
    auto const t = Clock::now();
    std::vector<int> ns;
    for (int n = 64; n <= 4096; n *= 2)
        ns.push_back(n);
    auto const rep
        = matching_expected_count(Variant::rem, 1 / (2 * beta_c()), 0, 1, ns);
    double const elapsed = since(t);
    bool const pass = std::fabs(rep.exponent) <= 0.05 && elapsed < 1;
    return {0, "REM log correction via matching", pass,
            fmt("fitted exponent %.5f over N=64..4096 (tolerance 0.05), %.3f s",
                rep.exponent, elapsed)};
}

CriterionResult AcceptanceSuite::c3()
{
    Payload p = payload_3(criterion_seed(3), 500, threads_);
    double const ln2v = std::log(2.0);
    double const target_a = std::sqrt(0.75 * ln2v) + std::sqrt(0.25 * ln2v);
    double const target_b = beta_c();
    std::vector<double> a, b;
    for (double x : p[0])
        a.push_back(x / 24);
    for (double x : p[1])
        b.push_back(x / 24);
    MCEstimate const ea = summarize(a), eb = summarize(b);
    payloads_[3] = std::move(p);
    bool const pass = std::fabs(ea.mean - target_a) <= 0.05
                      && std::fabs(eb.mean - target_b) <= 0.05;
    return {0, "GREM(2) case split (N=24, 500 trials each)", pass,
            fmt("a=(0.75,0.25): %.4f +- %.4f vs %.5f; a=(0.25,0.75): %.4f +- "
                "%.4f vs %.5f (tolerance 0.05)",
                ea.mean, ea.std_error, target_a, eb.mean, eb.std_error,
                target_b)};
}

CriterionResult AcceptanceSuite::c4()
{
    LevelStream const rng(criterion_seed(4), Domain::mc, 0);
    std::uint64_t ctr = 0;
    auto uniform = [&] { return uniform_open(rng(ctr++)); };
    double worst = 0;
    int checked = 0;
    for (int i = 0; i < 50; ++i)
    {
        double const a1 = 0.05 + 0.9 * uniform();
        std::vector<double> const a{a1, 1 - a1};
        worst = std::max(worst, std::fabs(solve_variational(a).value
                                          - grid_search_variational(a, 1e-3)));
        ++checked;
    }
    for (int i = 0; i < 20; ++i)
    {
        double const u[3] = {0.05 + uniform(), 0.05 + uniform(), 0.05 + uniform()};
        double const s = u[0] + u[1] + u[2];
        std::vector<double> a{u[0] / s, u[1] / s, 0};
        a[2] = 1 - a[0] - a[1];
        worst = std::max(worst, std::fabs(solve_variational(a).value
                                          - grid_search_variational(a, 1e-3)));
        ++checked;
    }
    double const crit = solve_variational({0.25, 0.25, 0.25, 0.25}).value;
    bool const pass = worst <= 1e-2 && std::fabs(crit - beta_c()) <= 1e-9;
    return {0, "variational oracle", pass,
            fmt("max |solver - grid| = %.2e over %d instances (tolerance 1e-2); "
                "critical K=4 |m_K - beta_c| = %.1e",
                worst, checked, std::fabs(crit - beta_c()))};
}

CriterionResult AcceptanceSuite::c5()
{
    Payload p = payload_5(criterion_seed(5), 200, threads_);
    double positive = 0;
    for (double c : p[0])
        positive += c > 0;
    double const freq = positive / p[0].size();
    RateReport const rate = second_moment_rate(4, brw_lambdas());
    payloads_[5] = std::move(p);
    bool const pass = freq >= 0.95 && rate.vanishing;
    return {0, "multiscale second moment (BRW N=24, K=4, 0.9 beta_c/K)", pass,
            fmt("P[count > 0] = %.3f (need >= 0.95); max rate %.4f (%s)", freq,
                rate.max_rate, rate.vanishing ? "vanishing" : "non-vanishing")};
}

CriterionResult AcceptanceSuite::c6()
{
    constexpr std::uint64_t trials = 1000;
    Payload p;
    bool pass = true;
    std::string detail;
    for (int n : gap_sizes)
    {
        auto const& rem = scans(Variant::rem, n, trials);
        auto const& brw = scans(Variant::brw, n, trials);
        std::vector<double> gap(trials);
        for (std::uint64_t t = 0; t < trials; ++t)
            gap[t] = rem[t].energy - brw[t].energy;
        MCEstimate const e = summarize(gap);
        double const target = std::log(double(n)) / beta_c();
        bool const ok = std::fabs(e.mean - target) <= 0.3 * target;
        pass = pass && ok;
        detail += fmt("%sN=%d gap %.3f +- %.3f vs %.3f [%.3f, %.3f]",
                      detail.empty() ? "" : "; ", n, e.mean, e.std_error, target,
                      0.7 * target, 1.3 * target);
        p.push_back(std::move(gap));
    }
    payloads_[6] = std::move(p);
    return {0, "REM vs BRW correction gap (1000 paired trials)", pass, detail};
}

CriterionResult AcceptanceSuite::c7()
{
    double const c2v = bridge_dp_below_barrier(2, {0.0}, 0.0);
    auto np = [](int n) {
        std::vector<double> const barrier(n - 1, 5 * std::log(double(n)));
        return n * bridge_dp_below_barrier(n, barrier, 0.0);
    };
    double const r256 = np(256), r512 = np(512);
    double const ratio = r512 / r256;
    bool const pass = std::fabs(c2v - 0.5) <= 1e-6 && ratio >= 0.8
                      && ratio <= 1.3;
    return {0, "bridge factor", pass,
            fmt("C_2 = %.9f (target 0.5 +- 1e-6); N P(N): %.3f at 256, %.3f at "
                "512, ratio %.4f (need [0.8, 1.3])",
                c2v, r256, r512, ratio)};
}

CriterionResult AcceptanceSuite::c8()
{
    constexpr std::uint64_t trials = 500;
    Payload p;
    std::vector<double> mids, errs;
    for (int n : profile_sizes)
    {
        ModelSpec const model = make_brw(n);
        auto const& s = scans(Variant::brw, n, trials);
        std::vector<PathProfile> profiles;
        std::vector<double> block;
        for (std::uint64_t t = 0; t < trials; ++t)
        {
            profiles.push_back(s[t].profile);
            block.push_back(midpoint(model, s[t].profile));
        }
        ProfileStats const st = profile_stats(model, profiles);
        mids.push_back(*st.midpoint_mean());
        errs.push_back(*st.midpoint_std_error());
        p.push_back(std::move(block));
    }
    payloads_[8] = std::move(p);
    bool const pass = mids[0] < 0 && mids[1] < 0
                      && std::fabs(mids[1]) > std::fabs(mids[0]);
    return {0, "entropic repulsion (BRW argmax midpoint, 500 trials)", pass,
            fmt("normalized midpoint %.3f +- %.3f at N=16, %.3f +- %.3f at N=24",
                mids[0], errs[0], mids[1], errs[1])};
}

CriterionResult AcceptanceSuite::c9()
{
    auto const [c1v, c2v] = percolation_constants();
    double const res1 = std::fabs(2 * c1v - std::exp(c1v - 1));
    double const res2 = std::fabs(2 * c2v - std::exp(c2v - 1));
    auto const t = Clock::now();
    Payload p = payload_9(criterion_seed(9), 50, threads_);
    double const elapsed = since(t);
    double const lo = mean(p[0]), hi = mean(p[1]);
    payloads_[9] = std::move(p);
    bool const pass = res1 <= 1e-10 && res2 <= 1e-10
                      && std::fabs(lo - c1v) <= 0.05
                      && std::fabs(hi - c2v) <= 0.07 && elapsed <= 300;
    return {0, "percolation constants and tree FPP/LPP (N=22, 50 trials)", pass,
            fmt("roots %.12f, %.12f (residuals %.1e, %.1e); min/N %.4f vs %.4f "
                "+- 0.05; max/N %.4f vs %.4f +- 0.07; %.1f s",
                c1v, c2v, res1, res2, lo, c1v, hi, c2v, elapsed)};
}

CriterionResult AcceptanceSuite::c10()
{
    std::uint64_t const seed = criterion_seed(10);
    int mismatches = 0;
    for (int n = 1; n <= 8; ++n)
    {
        auto const seeds = trial_seeds(trial_seed(seed, 1000 + n), 100);
        auto bad = run_indexed(
            seeds.size(),
            [&](std::uint64_t i) {
                double const dp = hypercube_min_path(n, seeds[i]).weight;
                double const ex = hypercube_exhaustive(n, seeds[i]).weight;
                return std::memcmp(&dp, &ex, sizeof dp) != 0 ? 1 : 0;
            },
            threads_);
        for (int b : bad)
            mismatches += b;
    }
    Payload p = payload_10(seed, 30, threads_);
    std::vector<double> med;
    for (auto const& block : p)
        med.push_back(quantile(block, 0.5));
    payloads_[10] = std::move(p);
    bool const pass = mismatches == 0 && med[0] > med[1] && med[1] > med[2];
    return {0, "hypercube oracle and median trend", pass,
            fmt("DP vs exhaustive mismatches %d of 800; median m_N %.4f, %.4f, "
                "%.4f at N=12, 16, 20",
                mismatches, med[0], med[1], med[2])};
}

CriterionResult AcceptanceSuite::c11()
{
    // L G = I
    double lg = 0;
    for (int n : {8, 16, 32})
    {
        GreenOperator const g = build_green(n);
        Eigen::MatrixXd const prod = g.laplacian() * g.dense();
        lg = std::max(lg, (prod - Eigen::MatrixXd::Identity(g.size(), g.size()))
                              .cwiseAbs()
                              .maxCoeff());
    }

    // Empirical covariance on the 8x8 box
    constexpr std::uint64_t samples = 10000;
    Payload p = payload_11(criterion_seed(11), samples, threads_);
    GreenOperator const small = build_green(cov_box);
    int const m = small.size();
    std::vector<double> mu(m);
    for (int s = 0; s < m; ++s)
        mu[s] = mean(p[s]);
    double worst_z = 0;
    int outside = 0, entries = 0;
    for (int i = 0; i < m; ++i)
    {
        for (int j = i; j < m; ++j)
        {
            std::vector<double> prod(samples);
            for (std::uint64_t t = 0; t < samples; ++t)
                prod[t] = (p[i][t] - mu[i]) * (p[j][t] - mu[j]);
            MCEstimate const e = summarize(prod);
            double const cov = e.mean * samples / (samples - 1.0);
            double const z = std::fabs(cov - small.dense()(i, j)) / e.std_error;
            worst_z = std::max(worst_z, z);
            outside += z > 4;
            ++entries;
        }
    }
    payloads_[11] = std::move(p);

    // Local projection on the 32 box
    GreenOperator const g32 = build_green(32);
    double resid = 0;
    for (double q : {0.2, 0.3, 0.4, 0.5})
    {
        resid = std::max(
            resid, local_projection_gff(g32, 16, 16, q).max_residual_covariance);
    }

    // Center variance increment
    GreenOperator const g64 = build_green(64);
    double const v64 = g64.dense()(g64.index(32, 32), g64.index(32, 32));
    double const v32 = g32.dense()(g32.index(16, 16), g32.index(16, 16));
    double const target = gff_g * std::log(2.0);

    bool const pass = lg <= 1e-8 && outside == 0 && resid < 1e-8
                      && std::fabs(v64 - v32 - target) <= 0.05;
    return {0, "GFF structure", pass,
            fmt("max|LG - I| %.1e; covariance entries beyond 4 sigma %d of %d "
                "(max z %.2f); residual covariance %.1e; center variance "
                "increment %.4f vs %.4f +- 0.05",
                lg, outside, entries, worst_z, resid, v64 - v32, target)};
}

CriterionResult AcceptanceSuite::c12()
{
    Payload p = payload_12(criterion_seed(12), 200, threads_);
    std::vector<double> ratio;
    std::string detail;
    for (std::size_t k = 0; k < p.size(); ++k)
    {
        int const n = gff_sizes[k];
        std::vector<double> r;
        for (double x : p[k])
            r.push_back(x / std::log(double(n)));
        MCEstimate const e = summarize(r);
        ratio.push_back(e.mean);
        detail += fmt("%sN=%d %.4f +- %.4f", detail.empty() ? "" : "; ", n,
                      e.mean, e.std_error);
    }
    payloads_[12] = std::move(p);
    bool const pass = ratio.back() > ratio.front() && ratio.back() >= 1.0
                      && ratio.back() <= 1.7;
    return {0, "GFF maximum trend (delta=0.1, 200 trials)", pass,
            "mean max/log N: " + detail + " (limit 2 sqrt(g) = "
                + fmt("%.4f", 2 * std::sqrt(gff_g)) + ")"};
}

CriterionResult AcceptanceSuite::c13()
{
    double gap = 0;
    for (double a1 : {0.25, 0.5, 0.75})
    {
        auto const c = local_projection_grem2(8, a1);
        auto const d = grem2_dense_projection(8, a1);
        gap = std::max({gap, std::fabs(c.first_coefficient - d.first_coefficient),
                        std::fabs(c.sibling_coefficient - d.sibling_coefficient)});
    }
    std::vector<double> ns, mass;
    bool leading_up = true;
    double prev = 0;
    for (int n = 8; n <= 20; n += 2)
    {
        auto const c = local_projection_grem2(n, 0.5);
        leading_up = leading_up && c.first_coefficient > prev
                     && c.first_coefficient < 1;
        prev = c.first_coefficient;
        ns.push_back(n);
        mass.push_back(std::log2(c.sibling_coefficient));
    }
    // least-squares slope of log2(mass) on N
    double const mx = mean(ns), my = mean(mass);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ns.size(); ++i)
    {
        sxy += (ns[i] - mx) * (mass[i] - my);
        sxx += (ns[i] - mx) * (ns[i] - mx);
    }
    double const slope = sxy / sxx;
    bool const pass = gap <= 1e-10 && leading_up && 1 - prev < 1e-2
                      && std::fabs(slope + 0.5) <= 0.05;
    return {0, "GREM(2) local projection", pass,
            fmt("closed form vs dense oracle at N=8: %.1e; leading coefficient "
                "%.6f at N=20 (increasing: %s); sibling slope %.4f (target "
                "-0.5 +- 10%%)",
                gap, prev, leading_up ? "yes" : "no", slope)};
}

CriterionResult AcceptanceSuite::c14()
{
    int checked = 0, failed = 0;
    std::string bad;
    for (auto const& s : stochastic)
    {
        std::uint64_t const seed = criterion_seed(s.seed_id);
        Payload const one = s.fn(seed, s.reduced, 1);
        Payload const three = s.fn(seed, s.reduced, 3);
        bool ok = one.size() == three.size();
        for (std::size_t b = 0; ok && b < one.size(); ++b)
            ok = same_bits(one[b], three[b], s.reduced);
        auto const full = payloads_.find(s.id);
        if (ok && full != payloads_.end())
        {
            ok = full->second.size() == one.size();
            for (std::size_t b = 0; ok && b < one.size(); ++b)
                ok = same_bits(one[b], full->second[b], s.reduced);
        }
        ++checked;
        if (!ok)
        {
            ++failed;
            bad += " " + std::to_string(s.id);
        }
    }
    return {0, "determinism across thread counts", failed == 0,
            fmt("%d stochastic criteria rerun with 1 and 3 threads and compared "
                "bitwise with the full runs; mismatches:%s",
                checked, failed ? bad.c_str() : " none")};
}

//---------------------------------------------------------------------------//
std::string format_result(CriterionResult const& r)
{
    return fmt("%s  criterion %2d  %s  [%s] (%.1f s)", r.pass ? "PASS" : "FAIL",
               r.id, r.title.c_str(), r.detail.c_str(), r.seconds);
}

//---------------------------------------------------------------------------//
}  // namespace remlab
