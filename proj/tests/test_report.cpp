// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <sstream>

#include <doctest.h>

#include "remlab/experiments.hpp"
#include "remlab/report.hpp"

using namespace remlab;

namespace
{
ResultRecord sample_record()
{
    ResultRecord r;
    r.exp = "rem.max-scan";
    r.params = {{"n", 12}, {"a", {0.25, 0.75}}};
    r.seed = 99;
    r.trials = 40;
    r.wall_seconds = 0.5;
    r.metrics.push_back(empirical("max", 13.25, 0.125));
    r.metrics.push_back(exact("count", 7));
    r.metrics.push_back(theory("max", 14.0, "rem_leading"));
    return r;
}

void check_same(ResultRecord const& a, ResultRecord const& b)
{
    CHECK(a.exp == b.exp);
    CHECK(a.params == b.params);
    CHECK(a.seed == b.seed);
    CHECK(a.trials == b.trials);
    CHECK(a.wall_seconds == b.wall_seconds);
    REQUIRE(a.metrics.size() == b.metrics.size());
    for (std::size_t i = 0; i < a.metrics.size(); ++i)
    {
        CHECK(a.metrics[i].name == b.metrics[i].name);
        CHECK(a.metrics[i].value == b.metrics[i].value);
        CHECK(a.metrics[i].std_error == b.metrics[i].std_error);
        CHECK(a.metrics[i].provenance == b.metrics[i].provenance);
        CHECK(a.metrics[i].formula_id == b.metrics[i].formula_id);
    }
}

ExperimentConfig config(std::string command, std::string action)
{
    ExperimentConfig c;
    c.command = std::move(command);
    c.action = std::move(action);
    return c;
}
}  // namespace

//---------------------------------------------------------------------------//
TEST_CASE("records round-trip through json lines")
{
    auto const r = sample_record();
    check_same(r, parse_json_line(to_json_line(r)));
    auto const j = to_json(r);
    CHECK(j.at("metrics").at(2).at("stderr").is_null());
    CHECK(j.at("metrics").at(2).at("provenance") == "theory");
    CHECK(to_json_line(r).find('\n') == std::string::npos);
}

TEST_CASE("records round-trip through csv")
{
    auto const r = sample_record();
    auto r2 = r;
    r2.seed = 100;
    std::stringstream ss;
    write_records(ss, {r, r2}, Format::csv);
    CHECK(ss.str().rfind(csv_header(), 0) == 0);
    auto const back = read_records(ss, Format::csv);
    REQUIRE(back.size() == 2u);
    check_same(r, back[0]);
    check_same(r2, back[1]);
}

TEST_CASE("format and provenance names")
{
    CHECK(format_from_string("csv") == Format::csv);
    CHECK(format_from_string("json-lines") == Format::json_lines);
    CHECK_THROWS(format_from_string("xml"));
    CHECK(provenance_from_string(to_string(Provenance::theory)) == Provenance::theory);
    CHECK_THROWS(provenance_from_string("guess"));
}

TEST_CASE("validation requires errors and formula ids")
{
    auto r = sample_record();
    CHECK_NOTHROW(r.validate());
    r.metrics[0].std_error.reset();
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
    r = sample_record();
    r.metrics[2].formula_id.clear();
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}

//---------------------------------------------------------------------------//
TEST_CASE("comparison pairs metrics by name")
{
    auto const rows = compare({sample_record()});
    REQUIRE(rows.size() == 1u);
    CHECK(rows[0].name == "max");
    CHECK(rows[0].discrepancy == doctest::Approx(-0.75));
    CHECK(rows[0].z == doctest::Approx(-6.0));
    CHECK_FALSE(rows[0].pass);
    CHECK(rows[0].formula_id == "rem_leading");

    CompareOptions loose;
    loose.tolerances["max"] = 1.0;
    CHECK(compare({sample_record()}, loose)[0].pass);
    CHECK(format_comparisons(rows).find("rem_leading") != std::string::npos);
}

TEST_CASE("exact agreement has zero z")
{
    ResultRecord r;
    r.exp = "theory.constants";
    r.metrics.push_back(exact("beta_c", 1.5));
    r.metrics.push_back(theory("beta_c", 1.5, "beta_c"));
    auto const rows = compare({r});
    REQUIRE(rows.size() == 1u);
    CHECK(rows[0].z == 0.0);
    CHECK(rows[0].pass);
    CHECK_FALSE(rows[0].deterministic_mismatch);
}

TEST_CASE("deterministic mismatch is flagged")
{
    ResultRecord r;
    r.exp = "theory.constants";
    r.metrics.push_back(exact("beta_c", 1.5));
    r.metrics.push_back(theory("beta_c", 1.6, "beta_c"));
    auto const rows = compare({r});
    REQUIRE(rows.size() == 1u);
    CHECK(rows[0].deterministic_mismatch);
    CHECK_FALSE(rows[0].pass);
}

TEST_CASE("records of different experiments are not compared")
{
    auto a = sample_record();
    auto b = sample_record();
    b.exp = "brw.max-scan";
    CHECK_THROWS_AS(compare({a, b}), MismatchedRecords);
}

//---------------------------------------------------------------------------//
TEST_CASE("theory constants carry formula ids")
{
    auto const recs = execute(config("theory", "constants"));
    REQUIRE(recs.size() == 1u);
    CHECK(recs[0].exp == "theory.constants");
    for (auto const& m : recs[0].metrics)
    {
        CHECK(m.provenance == Provenance::theory);
        CHECK_FALSE(m.formula_id.empty());
        CHECK_FALSE(m.std_error.has_value());
    }
}

TEST_CASE("experiments are reproducible from the seed")
{
    auto c = config("rem", "max-scan");
    c.n = 10;
    c.trials = 20;
    c.seed = 5;
    auto a = execute(c);
    c.threads = 2;
    auto b = execute(c);
    REQUIRE(a.size() == 1u);
    CHECK(a[0].seed == 5);
    CHECK(a[0].trials == 20);
    b[0].wall_seconds = a[0].wall_seconds;
    CHECK(to_json_line(a[0]) == to_json_line(b[0]));
    bool has_empirical = false, has_theory = false;
    for (auto const& m : a[0].metrics)
    {
        has_empirical |= m.provenance == Provenance::empirical;
        has_theory |= m.provenance == Provenance::theory;
    }
    CHECK(has_empirical);
    CHECK(has_theory);
}

TEST_CASE("every command and action runs at a small size")
{
    for (auto const& cmd : experiment_commands())
    {
        for (auto const& act : experiment_actions(cmd))
        {
            CAPTURE(cmd);
            CAPTURE(act);
            auto c = config(cmd, act);
            c.n = 8;
            c.trials = cmd == "gff" && act == "max" ? 5 : 120;
            c.k = 2;
            if (cmd == "grem")
                c.a = {0.5, 0.5};
            c.window = std::array<double, 2>{0.0, 2.0};
            c.q = 0.5;
            std::ostringstream os, err;
            if (cmd == "rem" && act == "exceed")
            {
                // a single level has no coarse graining
                CHECK(run(c, os, err) == exit_status::failed);
                continue;
            }
            CHECK(run(c, os, err) == exit_status::ok);
            CHECK(err.str().empty());
        }
    }
}

TEST_CASE("run maps failures to exit codes")
{
    std::ostringstream os, err;
    CHECK(run(config("nonsense", "x"), os, err) == exit_status::unknown_command);
    CHECK(run(config("rem", "nonsense"), os, err) == exit_status::unknown_command);

    auto big = config("perc", "tree");
    big.n = 30;
    CHECK(run(big, os, err) == exit_status::budget);

    auto bad = config("rem", "max-scan");
    bad.n = 8;
    bad.trials = 2;
    bad.out = "/nonexistent-dir/out.jsonl";
    CHECK(run(bad, os, err) == exit_status::io);

    auto zero = config("rem", "max-scan");
    zero.trials = 0;
    CHECK(run(zero, os, err) == exit_status::failed);
}
