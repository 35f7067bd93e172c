// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/remlab.cpp
//! Command-line experiment runner.
//---------------------------------------------------------------------------//
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "remlab/acceptance.hpp"
#include "remlab/experiments.hpp"
#include "remlab/report.hpp"

using namespace remlab;

namespace
{
std::vector<std::string> const& known_commands()
{
    static std::vector<std::string> const names = [] {
        auto v = experiment_commands();
        v.push_back("accept");
        v.push_back("compare");
        return v;
    }();
    return names;
}

void add_common(CLI::App* app, ExperimentConfig& c, std::string& format,
                std::string& window)
{
    app->add_option("--n", c.n, "System size");
    app->add_option("--n-list", c.n_list, "Comma-separated sizes")
        ->delimiter(',');
    app->add_option("--trials", c.trials, "Number of trials");
    app->add_option("--seed", c.seed, "Master seed");
    app->add_option("--k", c.k, "Number of coarse-grained blocks");
    app->add_option("--a", c.a, "Comma-separated GREM weights")->delimiter(',');
    app->add_option("--alpha", c.alpha, "Interpolating exponent");
    app->add_option("--gamma", c.gamma, "Envelope exponent");
    app->add_option("--delta", c.delta, "Interior margin fraction");
    app->add_option("--q", c.q, "Projection radius exponent");
    app->add_option("--eps", c.eps, "Relative threshold slack");
    app->add_option("--window", window, "Window lo,hi");
    app->add_option("--out", c.out, "Output file (default stdout)");
    app->add_option("--format", format, "json-lines or csv");
    app->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

int run_accept(std::uint64_t seed, unsigned threads, std::vector<int> only)
{
    AcceptanceOptions opts;
    opts.seed = seed;
    opts.threads = threads;
    AcceptanceSuite suite(opts);
    bool all = true;
    auto report = [&](CriterionResult const& r) {
        all = all && r.pass;
        std::cout << format_result(r) << std::endl;
    };
    if (only.empty())
    {
        suite.run_all(report);
    }
    else
    {
        std::sort(only.begin(), only.end());
        for (int id : only)
            report(suite.run(id));
    }
    return all ? exit_status::ok : exit_status::failed;
}

int run_compare(std::string const& path, std::string const& format,
                double max_z)
{
    std::ifstream in(path);
    if (!in)
    {
        std::cerr << "error: cannot open '" << path << "'\n";
        return exit_status::io;
    }
    try
    {
        auto const records = read_records(in, format_from_string(format));
        CompareOptions opts;
        opts.max_z = max_z;
        auto const rows = compare(records, opts);
        std::cout << format_comparisons(rows);
        bool const ok = std::all_of(rows.begin(), rows.end(),
                                    [](Comparison const& c) { return c.pass; });
        return ok ? exit_status::ok : exit_status::failed;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_status::failed;
    }
}
}  // namespace

int main(int argc, char** argv)
{
    if (argc >= 2 && argv[1][0] != '-')
    {
        auto const& names = known_commands();
        if (std::find(names.begin(), names.end(), argv[1]) == names.end())
        {
            std::cerr << "error: unknown subcommand '" << argv[1] << "'\n";
            return exit_status::unknown_command;
        }
    }

    CLI::App app{"Random energy model laboratory"};
    app.require_subcommand(1);

    ExperimentConfig config;
    std::string format = "json-lines";
    std::string window;
    for (auto const& name : experiment_commands())
    {
        auto* sub = app.add_subcommand(name, "Run a " + name + " experiment");
        sub->add_option("action", config.action, "Experiment name");
        add_common(sub, config, format, window);
    }

    std::uint64_t accept_seed = AcceptanceOptions{}.seed;
    unsigned accept_threads = 0;
    std::vector<int> only;
    auto* accept = app.add_subcommand("accept", "Run the acceptance criteria");
    accept->add_option("--seed", accept_seed, "Master seed");
    accept->add_option("--threads", accept_threads, "Worker threads");
    accept->add_option("--only", only, "Criterion ids")->delimiter(',');

    std::string compare_path;
    std::string compare_format = "json-lines";
    double max_z = 3;
    auto* cmp = app.add_subcommand("compare",
                                   "Tabulate empirical against theory values");
    cmp->add_option("records", compare_path, "Record file")->required();
    cmp->add_option("--format", compare_format, "json-lines or csv");
    cmp->add_option("--max-z", max_z, "Largest accepted |z|");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        return app.exit(e);
    }

    if (accept->parsed())
        return run_accept(accept_seed, accept_threads, only);
    if (cmp->parsed())
        return run_compare(compare_path, compare_format, max_z);

    for (auto* sub : app.get_subcommands())
        config.command = sub->get_name();
    try
    {
        config.format = format_from_string(format);
        if (!window.empty())
        {
            std::istringstream is(window);
            std::array<double, 2> w{};
            char comma = 0;
            if (!(is >> w[0] >> comma >> w[1]) || comma != ',')
                throw std::invalid_argument("--window expects lo,hi");
            config.window = w;
        }
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_status::failed;
    }
    return run(config, std::cout, std::cerr);
}
