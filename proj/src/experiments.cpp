// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include "remlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "remlab/extremes.hpp"
#include "remlab/gff.hpp"
#include "remlab/model.hpp"
#include "remlab/percolation.hpp"
#include "remlab/theory.hpp"

namespace remlab
{
namespace
{
using nlohmann::json;
using Clock = std::chrono::steady_clock;

void require(bool cond, char const* msg)
{
    if (!cond)
        throw std::invalid_argument(msg);
}

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Metric estimate(std::string name, std::vector<double> const& xs)
{
    MCEstimate const e = summarize(xs);
    return empirical(std::move(name), e.mean, e.std_error);
}

json base_params(ExperimentConfig const& c, int n)
{
    json p = {{"command", c.command}, {"action", c.action}, {"n", n}};
    return p;
}

std::vector<int> sizes(ExperimentConfig const& c)
{
    return c.n_list.empty() ? std::vector<int>{c.n} : c.n_list;
}

//---------------------------------------------------------------------------//
// TREE MODELS
//---------------------------------------------------------------------------//
ModelSpec config_model(ExperimentConfig const& c, int n)
{
    if (c.command == "rem")
        return make_rem(n);
    if (c.command == "brw")
        return make_brw(n);
    if (c.command == "grem")
        return make_grem(n, c.a.empty() ? std::vector<double>{0.5, 0.5} : c.a);
    return make_interpolating(n, c.alpha);
}

void add_level(ResultRecord& r, LevelPrediction const& lp, int n)
{
    r.metrics.push_back(theory("max", lp.at(n), lp.formula_id));
    r.metrics.push_back(theory("max_over_n", lp.leading, lp.formula_id));
    r.metrics.push_back(theory("log_coeff", lp.log_coeff, lp.formula_id));
    r.params["conjectural"] = lp.conjectural;
}

ResultRecord model_record(ExperimentConfig const& c, int n)
{
    ModelSpec const model = config_model(c, n);
    LevelPrediction const lp = predicted_level(model);
    ResultRecord r;
    r.exp = c.command + "." + c.action;
    r.params = base_params(c, n);
    r.params["model"] = model.describe();
    r.seed = c.seed;
    r.trials = c.trials;
    auto const seeds = trial_seeds(c.seed, c.trials);

    if (c.action == "max-scan")
    {
        auto maxima = run_indexed(
            seeds.size(),
            [&](std::uint64_t i) { return scan_max(model, seeds[i]).energy; },
            c.threads);
        std::vector<double> scaled(maxima.size());
        std::transform(maxima.begin(), maxima.end(), scaled.begin(),
                       [n](double x) { return x / n; });
        r.metrics.push_back(estimate("max", maxima));
        r.metrics.push_back(estimate("max_over_n", scaled));
        add_level(r, lp, n);
    }
    else if (c.action == "window")
    {
        auto const w = c.window.value_or(std::array<double, 2>{0.0, 1.0});
        require(w[0] < w[1], "window must satisfy lo < hi");
        double const a_n = lp.at(n);
        r.params["window"] = {w[0], w[1]};
        r.params["a_n"] = a_n;
        auto counts = run_indexed(
            seeds.size(),
            [&](std::uint64_t i) {
                auto const wc = window_counts(model, seeds[i], a_n, {w[0], w[1]});
                return static_cast<double>(wc.counts[0]);
            },
            c.threads);
        r.metrics.push_back(estimate("window_count", counts));
        if (model.variant() == Variant::rem || model.variant() == Variant::brw)
        {
            auto const m = matching_expected_count(model.variant(), lp.log_coeff,
                                                   w[0], w[1], {n});
            r.metrics.push_back(
                theory("window_count", m.expected[0], "matching_integral"));
        }
    }
    else if (c.action == "profile")
    {
        ProfileStats const st = argmax_profile_stats(model, seeds, c.threads);
        if (auto mid = st.midpoint_mean())
        {
            r.metrics.push_back(
                empirical("midpoint", *mid, *st.midpoint_std_error()));
            r.metrics.push_back(
                empirical("level1", st.mean[1], st.std_error[1]));
        }
        else
        {
            r.params["midpoint"] = "undefined";
        }
    }
    else if (c.action == "exceed")
    {
        int const k = c.k;
        double const lambda = beta_c() / k * (1 - c.eps);
        std::vector<double> const lambdas(std::max(k - 1, 0), lambda);
        r.params["k"] = k;
        r.params["eps"] = c.eps;
        auto counts = run_indexed(
            seeds.size(),
            [&](std::uint64_t i) {
                return static_cast<double>(
                    count_exceedances(model, seeds[i], k, lambdas).count);
            },
            c.threads);
        std::vector<double> positive(counts.size());
        std::transform(counts.begin(), counts.end(), positive.begin(),
                       [](double x) { return x > 0 ? 1.0 : 0.0; });
        r.metrics.push_back(estimate("count", counts));
        r.metrics.push_back(estimate("p_positive", positive));
        RateReport const rate = second_moment_rate(k, lambdas);
        r.metrics.push_back(
            theory("second_moment_max_rate", rate.max_rate, "second_moment_rate"));
    }
    else
    {
        throw UnknownCommand("unknown action '" + c.action + "' for '"
                             + c.command + "'");
    }
    return r;
}

//---------------------------------------------------------------------------//
// PERCOLATION
//---------------------------------------------------------------------------//
ResultRecord percolation_record(ExperimentConfig const& c, int n)
{
    ResultRecord r;
    r.exp = "perc." + c.action;
    r.params = base_params(c, n);
    r.seed = c.seed;
    r.trials = c.trials;
    auto const seeds = trial_seeds(c.seed, c.trials);
    if (c.action == "tree")
    {
        auto pairs = run_indexed(
            seeds.size(),
            [&](std::uint64_t i) {
                auto const p = tree_fpp_lpp(n, seeds[i]);
                return std::array<double, 2>{p.first.normalized,
                                             p.second.normalized};
            },
            c.threads);
        std::vector<double> lo, hi;
        for (auto const& p : pairs)
        {
            lo.push_back(p[0]);
            hi.push_back(p[1]);
        }
        auto const [c1, c2] = percolation_constants();
        r.metrics.push_back(estimate("min_over_n", lo));
        r.metrics.push_back(estimate("max_over_n", hi));
        r.metrics.push_back(theory("min_over_n", c1, "percolation_root_low"));
        r.metrics.push_back(theory("max_over_n", c2, "percolation_root_high"));
    }
    else if (c.action == "cube")
    {
        auto weights = run_indexed(
            seeds.size(),
            [&](std::uint64_t i) { return hypercube_min_path(n, seeds[i]).weight; },
            c.threads);
        MCEstimate const e = summarize(weights);
        double const sd = e.std_error * std::sqrt(double(weights.size()));
        r.metrics.push_back(estimate("min_weight", weights));
        // Normal-theory standard error of the median.
        r.metrics.push_back(
            empirical("median_min_weight", quantile(weights, 0.5),
                      1.2533 * sd / std::sqrt(double(weights.size()))));
        r.metrics.push_back(theory("min_weight", 1.0, "hypercube_limit"));
    }
    else
    {
        throw UnknownCommand("unknown action '" + c.action + "' for 'perc'");
    }
    return r;
}

//---------------------------------------------------------------------------//
// GFF
//---------------------------------------------------------------------------//
ResultRecord gff_record(ExperimentConfig const& c, int n)
{
    ResultRecord r;
    r.exp = "gff." + c.action;
    r.params = base_params(c, n);
    r.seed = c.seed;
    r.trials = c.trials;
    double const g = gff_g;
    if (c.action == "max")
    {
        r.params["delta"] = c.delta;
        GffMaxStats const st
            = gff_max_stats(n, c.delta, c.trials, c.seed, c.threads);
        LevelPrediction const lp = gff_level();
        r.metrics.push_back(
            empirical("max", st.interior_max.mean, st.interior_max.std_error));
        r.metrics.push_back(
            empirical("max_over_log_n", st.ratio.mean, st.ratio.std_error));
        r.metrics.push_back(theory("max", lp.at(n), lp.formula_id));
        r.metrics.push_back(theory("max_over_log_n", lp.leading, lp.formula_id));
    }
    else if (c.action == "variance")
    {
        GreenOptions opts;
        opts.dense = false;
        GreenOperator const green = build_green(n, GreenMethod::linear_solve, opts);
        int const mid = n / 2;
        int const z = green.index(mid, mid);
        r.trials = 1;
        r.metrics.push_back(exact("center_variance", green.entry(z, z)));
        r.metrics.push_back(theory("center_variance_slope", g, "gff_variance"));
    }
    else if (c.action == "projection")
    {
        GreenOperator const green = build_green(n);
        int const mid = n / 2;
        r.params["q"] = c.q;
        r.trials = 1;
        LocalProjection const p = local_projection_gff(green, mid, mid, c.q);
        r.params["radius"] = p.radius;
        r.params["boundary_sites"] = p.boundary.size();
        r.metrics.push_back(exact("coefficient_gap", p.max_coefficient_gap));
        r.metrics.push_back(
            exact("max_residual_covariance", p.max_residual_covariance));
        r.metrics.push_back(exact("residual_variance", p.residual_variance));
        r.metrics.push_back(exact("harmonic_mass", p.harmonic_mass));
        r.metrics.push_back(theory("coefficient_gap", 0.0, "markov_property"));
        r.metrics.push_back(
            theory("max_residual_covariance", 0.0, "gaussian_conditioning"));
    }
    else
    {
        throw UnknownCommand("unknown action '" + c.action + "' for 'gff'");
    }
    return r;
}

//---------------------------------------------------------------------------//
// THEORY
//---------------------------------------------------------------------------//
ResultRecord theory_record(ExperimentConfig const& c)
{
    ResultRecord r;
    r.exp = "theory." + c.action;
    r.params = {{"command", c.command}, {"action", c.action}};
    r.seed = c.seed;
    r.trials = 1;
    if (c.action == "constants")
    {
        auto const [c1, c2] = percolation_constants();
        r.metrics.push_back(theory("beta_c", beta_c(), "beta_c"));
        r.metrics.push_back(theory("g", gff_g, "gff_g"));
        r.metrics.push_back(theory("C1_star", c1, "percolation_root_low"));
        r.metrics.push_back(theory("C2_star", c2, "percolation_root_high"));
        for (int k = 2; k <= 4; ++k)
        {
            r.metrics.push_back(theory("C_" + std::to_string(k),
                                       ballot_constant(k), "ballot_quadrature"));
        }
    }
    else if (c.action == "variational")
    {
        std::vector<double> const a
            = c.a.empty() ? std::vector<double>{0.5, 0.5} : c.a;
        r.params["a"] = a;
        VariationalSolution const s = solve_variational(a);
        r.metrics.push_back(theory("m_k", s.value, "variational_active_set"));
        for (std::size_t j = 0; j < s.lambdas.size(); ++j)
        {
            r.metrics.push_back(theory("lambda_" + std::to_string(j + 1),
                                       s.lambdas[j], "variational_active_set"));
        }
    }
    else
    {
        throw UnknownCommand("unknown action '" + c.action + "' for 'theory'");
    }
    return r;
}
}  // namespace

//---------------------------------------------------------------------------//
void ExperimentConfig::validate() const
{
    require(trials >= 1, "trials must be at least 1");
    for (int m : sizes(*this))
        require(m >= 1, "sizes must be positive");
    require(std::isfinite(alpha) && std::isfinite(gamma) && std::isfinite(delta)
                && std::isfinite(q) && std::isfinite(eps),
            "parameters must be finite");
}

std::vector<std::string> const& experiment_commands()
{
    static std::vector<std::string> const names{"rem",  "grem", "brw",   "interp",
                                                "perc", "gff",  "theory"};
    return names;
}

std::vector<std::string> const& experiment_actions(std::string const& command)
{
    static std::map<std::string, std::vector<std::string>> const actions{
        {"rem", {"max-scan", "window", "profile", "exceed"}},
        {"grem", {"max-scan", "window", "profile", "exceed"}},
        {"brw", {"max-scan", "window", "profile", "exceed"}},
        {"interp", {"max-scan", "window", "profile", "exceed"}},
        {"perc", {"tree", "cube"}},
        {"gff", {"max", "variance", "projection"}},
        {"theory", {"constants", "variational"}},
    };
    auto it = actions.find(command);
    if (it == actions.end())
        throw UnknownCommand("unknown subcommand '" + command + "'");
    return it->second;
}

std::vector<ResultRecord> execute(ExperimentConfig const& config)
{
    ExperimentConfig c = config;
    auto const& actions = experiment_actions(c.command);
    if (c.action.empty())
        c.action = actions.front();
    if (std::find(actions.begin(), actions.end(), c.action) == actions.end())
        throw UnknownCommand("unknown action '" + c.action + "' for '"
                             + c.command + "'");
    c.validate();

    std::vector<ResultRecord> out;
    if (c.command == "theory")
    {
        auto const start = Clock::now();
        out.push_back(theory_record(c));
        out.back().wall_seconds = seconds_since(start);
        return out;
    }
    for (int n : sizes(c))
    {
        auto const start = Clock::now();
        if (c.command == "perc")
            out.push_back(percolation_record(c, n));
        else if (c.command == "gff")
            out.push_back(gff_record(c, n));
        else
            out.push_back(model_record(c, n));
        out.back().wall_seconds = seconds_since(start);
        out.back().validate();
    }
    return out;
}

int run(ExperimentConfig const& config, std::ostream& os, std::ostream& err)
{
    std::vector<ResultRecord> records;
    try
    {
        records = execute(config);
    }
    catch (UnknownCommand const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_status::unknown_command;
    }
    catch (BudgetExceeded const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_status::budget;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_status::failed;
    }

    if (config.out.empty())
    {
        write_records(os, records, config.format);
        os.flush();
        return os ? exit_status::ok : exit_status::io;
    }
    std::ofstream file(config.out);
    if (!file)
    {
        err << "error: cannot open '" << config.out << "' for writing\n";
        return exit_status::io;
    }
    write_records(file, records, config.format);
    file.close();
    if (!file)
    {
        err << "error: failed writing '" << config.out << "'\n";
        return exit_status::io;
    }
    return exit_status::ok;
}

//---------------------------------------------------------------------------//
}  // namespace remlab
