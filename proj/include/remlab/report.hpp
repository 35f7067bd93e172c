// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file remlab/report.hpp
//! Result records, their serialization, and empirical-versus-theory tables.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace remlab
{
//---------------------------------------------------------------------------//
enum class Provenance
{
    empirical,
    theory,
};

char const* to_string(Provenance p);
Provenance provenance_from_string(std::string const& s);

struct Metric
{
    std::string name;
    double value{0};
    //! Standard error; empty for deterministic values
    std::optional<double> std_error;
    Provenance provenance{Provenance::empirical};
    //! Formula identifier (theory metrics)
    std::string formula_id;
};

//! Empirical metric with its standard error.
Metric empirical(std::string name, double value, double std_error);
//! Deterministic computed value (empirical provenance, zero error).
Metric exact(std::string name, double value);
Metric theory(std::string name, double value, std::string formula_id);

struct ResultRecord
{
    std::string exp;
    nlohmann::json params = nlohmann::json::object();
    std::vector<Metric> metrics;
    std::uint64_t seed{0};
    std::uint64_t trials{0};
    double wall_seconds{0};

    //! Throws std::invalid_argument unless every empirical metric has an
    //! error and every theory metric a formula id.
    void validate() const;
};

enum class Format
{
    json_lines,
    csv,
};

Format format_from_string(std::string const& s);

//---------------------------------------------------------------------------//
// SERIALIZATION
//---------------------------------------------------------------------------//
nlohmann::json to_json(ResultRecord const& r);
ResultRecord record_from_json(nlohmann::json const& j);

std::string to_json_line(ResultRecord const& r);
ResultRecord parse_json_line(std::string const& line);

//! Column header of the csv format.
std::string csv_header();
//! One csv row per metric.
std::vector<std::string> to_csv_rows(ResultRecord const& r);

//! Write records, including the csv header when applicable.
void write_records(std::ostream& os, std::vector<ResultRecord> const& records,
                   Format format);
std::vector<ResultRecord> read_records(std::istream& is, Format format);

//---------------------------------------------------------------------------//
// COMPARISON
//---------------------------------------------------------------------------//
class MismatchedRecords : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct CompareOptions
{
    //! Largest |z| accepted for stochastic metrics
    double max_z{3};
    //! Absolute tolerance for deterministic metrics
    double abs_tolerance{1e-9};
    //! Per-metric absolute tolerances, accepted in addition to the z test
    std::map<std::string, double> tolerances;
};

struct Comparison
{
    std::string exp;
    std::string name;
    double empirical{0};
    double theory{0};
    double discrepancy{0};
    double std_error{0};
    //! discrepancy / std_error; 0 when both vanish
    double z{0};
    std::string formula_id;
    bool deterministic_mismatch{false};
    bool pass{false};
};

/*!
 * Pair each empirical metric with the theory metric of the same name.
 *
 * All records must share one experiment id; otherwise MismatchedRecords is
 * thrown.
 */
std::vector<Comparison> compare(std::vector<ResultRecord> const& records,
                                CompareOptions const& opts = {});

//! Fixed-width summary table.
std::string format_comparisons(std::vector<Comparison> const& rows);

//---------------------------------------------------------------------------//
}  // namespace remlab
