// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
#include "remlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace remlab
{
namespace
{
using nlohmann::json;

json number(double x)
{
    if (std::isfinite(x))
        return x;
    return nullptr;
}

double read_number(json const& j)
{
    if (j.is_null())
        return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_quote(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> csv_split(std::string const& line)
{
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        char const c = line[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
            {
                out.back() += '"';
                ++i;
            }
            else if (c == '"')
                quoted = false;
            else
                out.back() += c;
        }
        else if (c == '"')
            quoted = true;
        else if (c == ',')
            out.emplace_back();
        else
            out.back() += c;
    }
    if (quoted)
        throw std::invalid_argument("unterminated quote in csv row");
    return out;
}

double parse_double(std::string const& s)
{
    if (s.empty())
        throw std::invalid_argument("empty numeric field");
    std::size_t pos = 0;
    double const v = std::stod(s, &pos);
    if (pos != s.size())
        throw std::invalid_argument("bad numeric field: " + s);
    return v;
}

std::uint64_t parse_u64(std::string const& s)
{
    std::size_t pos = 0;
    auto const v = std::stoull(s, &pos);
    if (pos != s.size())
        throw std::invalid_argument("bad integer field: " + s);
    return v;
}
}  // namespace

//---------------------------------------------------------------------------//
char const* to_string(Provenance p)
{
    return p == Provenance::theory ? "theory" : "empirical";
}

Provenance provenance_from_string(std::string const& s)
{
    if (s == "empirical")
        return Provenance::empirical;
    if (s == "theory")
        return Provenance::theory;
    throw std::invalid_argument("unknown provenance '" + s + "'");
}

Format format_from_string(std::string const& s)
{
    if (s == "json-lines" || s == "jsonl" || s == "json")
        return Format::json_lines;
    if (s == "csv")
        return Format::csv;
    throw std::invalid_argument("unknown output format '" + s + "'");
}

Metric empirical(std::string name, double value, double std_error)
{
    return {std::move(name), value, std_error, Provenance::empirical, {}};
}

Metric exact(std::string name, double value)
{
    return {std::move(name), value, 0.0, Provenance::empirical, {}};
}

Metric theory(std::string name, double value, std::string formula_id)
{
    return {std::move(name), value, std::nullopt, Provenance::theory,
            std::move(formula_id)};
}

void ResultRecord::validate() const
{
    if (exp.empty())
        throw std::invalid_argument("record has no experiment id");
    if (trials < 1)
        throw std::invalid_argument("record '" + exp + "' has no trial count");
    for (auto const& m : metrics)
    {
        if (m.provenance == Provenance::empirical && !m.std_error)
            throw std::invalid_argument("empirical metric '" + m.name
                                        + "' has no standard error");
        if (m.provenance == Provenance::theory && m.formula_id.empty())
            throw std::invalid_argument("theory metric '" + m.name
                                        + "' has no formula id");
    }
}

//---------------------------------------------------------------------------//
json to_json(ResultRecord const& r)
{
    json metrics = json::array();
    for (auto const& m : r.metrics)
    {
        json jm = {{"name", m.name},
                   {"value", number(m.value)},
                   {"stderr", m.std_error ? number(*m.std_error) : json()},
                   {"provenance", to_string(m.provenance)}};
        if (!m.formula_id.empty())
            jm["formula_id"] = m.formula_id;
        metrics.push_back(std::move(jm));
    }
    return {{"exp", r.exp},
            {"params", r.params},
            {"metrics", std::move(metrics)},
            {"seed", r.seed},
            {"trials", r.trials},
            {"wall_seconds", r.wall_seconds}};
}

ResultRecord record_from_json(json const& j)
{
    ResultRecord r;
    r.exp = j.at("exp").get<std::string>();
    r.params = j.at("params");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.trials = j.at("trials").get<std::uint64_t>();
    r.wall_seconds = j.value("wall_seconds", 0.0);
    for (auto const& jm : j.at("metrics"))
    {
        Metric m;
        m.name = jm.at("name").get<std::string>();
        m.value = read_number(jm.at("value"));
        m.provenance
            = provenance_from_string(jm.at("provenance").get<std::string>());
        if (m.provenance == Provenance::empirical)
            m.std_error = read_number(jm.at("stderr"));
        m.formula_id = jm.value("formula_id", std::string{});
        r.metrics.push_back(std::move(m));
    }
    return r;
}

std::string to_json_line(ResultRecord const& r)
{
    return to_json(r).dump();
}

ResultRecord parse_json_line(std::string const& line)
{
    return record_from_json(json::parse(line));
}

std::string csv_header()
{
    return "exp,seed,trials,wall_seconds,params,name,value,stderr,provenance,"
           "formula_id";
}

std::vector<std::string> to_csv_rows(ResultRecord const& r)
{
    std::string const prefix = csv_quote(r.exp) + ',' + std::to_string(r.seed)
                               + ',' + std::to_string(r.trials) + ','
                               + fmt(r.wall_seconds) + ','
                               + csv_quote(r.params.dump()) + ',';
    std::vector<std::string> rows;
    for (auto const& m : r.metrics)
    {
        rows.push_back(prefix + csv_quote(m.name) + ',' + fmt(m.value) + ','
                       + (m.std_error ? fmt(*m.std_error) : std::string{})
                       + ',' + to_string(m.provenance) + ','
                       + csv_quote(m.formula_id));
    }
    if (rows.empty())
        rows.push_back(prefix + ",,,,");
    return rows;
}

void write_records(std::ostream& os, std::vector<ResultRecord> const& records,
                   Format format)
{
    if (format == Format::csv)
        os << csv_header() << '\n';
    for (auto const& r : records)
    {
        if (format == Format::json_lines)
        {
            os << to_json_line(r) << '\n';
            continue;
        }
        for (auto const& row : to_csv_rows(r))
            os << row << '\n';
    }
}

std::vector<ResultRecord> read_records(std::istream& is, Format format)
{
    std::vector<ResultRecord> out;
    std::string line;
    if (format == Format::json_lines)
    {
        while (std::getline(is, line))
        {
            if (!line.empty())
                out.push_back(parse_json_line(line));
        }
        return out;
    }

    if (!std::getline(is, line) || line != csv_header())
        throw std::invalid_argument("missing csv header");
    std::string last_key;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        auto f = csv_split(line);
        if (f.size() != 10)
            throw std::invalid_argument("csv row must have 10 fields");
        std::string const key = f[0] + '\x1f' + f[1] + '\x1f' + f[2] + '\x1f'
                                + f[3] + '\x1f' + f[4];
        if (out.empty() || key != last_key)
        {
            ResultRecord r;
            r.exp = f[0];
            r.seed = parse_u64(f[1]);
            r.trials = parse_u64(f[2]);
            r.wall_seconds = parse_double(f[3]);
            r.params = json::parse(f[4]);
            out.push_back(std::move(r));
            last_key = key;
        }
        if (f[5].empty() && f[8].empty())
            continue;
        Metric m;
        m.name = f[5];
        m.value = parse_double(f[6]);
        if (!f[7].empty())
            m.std_error = parse_double(f[7]);
        m.provenance = provenance_from_string(f[8]);
        m.formula_id = f[9];
        out.back().metrics.push_back(std::move(m));
    }
    return out;
}

//---------------------------------------------------------------------------//
std::vector<Comparison>
compare(std::vector<ResultRecord> const& records, CompareOptions const& opts)
{
    std::vector<Comparison> rows;
    if (records.empty())
        return rows;
    std::string const& exp = records.front().exp;
    for (auto const& r : records)
    {
        if (r.exp != exp)
            throw MismatchedRecords("records mix experiments '" + exp
                                    + "' and '" + r.exp + "'");
    }
    for (auto const& r : records)
    {
        for (auto const& m : r.metrics)
        {
            if (m.provenance != Provenance::empirical)
                continue;
            for (auto const& t : r.metrics)
            {
                if (t.provenance != Provenance::theory || t.name != m.name)
                    continue;
                Comparison c;
                c.exp = exp;
                c.name = m.name;
                c.empirical = m.value;
                c.theory = t.value;
                c.formula_id = t.formula_id;
                c.discrepancy = m.value - t.value;
                c.std_error = m.std_error.value_or(0.0);
                double const adiff = std::fabs(c.discrepancy);
                auto const tol = opts.tolerances.find(m.name);
                bool const within_tol = tol != opts.tolerances.end()
                                        && adiff <= tol->second;
                if (c.std_error > 0)
                {
                    c.z = c.discrepancy / c.std_error;
                    c.pass = std::fabs(c.z) <= opts.max_z || within_tol;
                }
                else
                {
                    c.z = adiff == 0 ? 0.0
                                     : std::copysign(
                                           std::numeric_limits<double>::infinity(),
                                           c.discrepancy);
                    c.deterministic_mismatch = adiff > opts.abs_tolerance;
                    c.pass = !c.deterministic_mismatch || within_tol;
                }
                rows.push_back(std::move(c));
            }
        }
    }
    return rows;
}

std::string format_comparisons(std::vector<Comparison> const& rows)
{
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-24s %14s %14s %12s %10s  %-24s %s\n",
                  "metric", "empirical", "theory", "stderr", "z", "formula",
                  "status");
    os << buf;
    for (auto const& c : rows)
    {
        char const* status = c.pass ? "pass"
                             : c.deterministic_mismatch
                                 ? "deterministic mismatch"
                                 : "fail";
        std::snprintf(buf, sizeof buf, "%-24s %14.6g %14.6g %12.4g %10.3g  %-24s %s\n",
                      c.name.c_str(), c.empirical, c.theory, c.std_error, c.z,
                      c.formula_id.c_str(), status);
        os << buf;
    }
    return os.str();
}

//---------------------------------------------------------------------------//
}  // namespace remlab
