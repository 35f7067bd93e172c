// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file remlab/experiments.hpp
//! Named experiments that pair simulations with theory predictions.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "report.hpp"

namespace remlab
{
//---------------------------------------------------------------------------//
namespace exit_status
{
inline constexpr int ok = 0;
inline constexpr int failed = 1;
inline constexpr int unknown_command = 2;
inline constexpr int budget = 3;
inline constexpr int io = 4;
}  // namespace exit_status

class UnknownCommand : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/*!
 * One experiment invocation.
 *
 * \c command is a model or module name (rem, grem, brw, interp, perc, gff,
 * theory) and \c action selects the experiment within it.
 */
struct ExperimentConfig
{
    std::string command;
    std::string action;
    int n{20};
    //! Sizes to run; \c n alone when empty
    std::vector<int> n_list;
    std::uint64_t trials{100};
    std::uint64_t seed{0};
    int k{2};
    //! GREM weights
    std::vector<double> a;
    double alpha{0.5};
    double gamma{0.25};
    double delta{0.1};
    std::optional<std::array<double, 2>> window;
    //! GFF projection radius exponent
    double q{0.25};
    //! Relative threshold slack for exceedance counts
    double eps{0.1};
    std::string out;
    Format format{Format::json_lines};
    unsigned threads{0};

    //! Throws std::invalid_argument on inconsistent values.
    void validate() const;
};

//! Names accepted as \c command.
std::vector<std::string> const& experiment_commands();
//! Actions of a command, the first being the default.
std::vector<std::string> const& experiment_actions(std::string const& command);

//! Run the experiment and return its records (one per size).
std::vector<ResultRecord> execute(ExperimentConfig const& config);

/*!
 * Run and write records to \c config.out (or \c os when empty).
 *
 * Returns an exit_status code; errors are reported on \c err.
 */
int run(ExperimentConfig const& config, std::ostream& os, std::ostream& err);

//---------------------------------------------------------------------------//
}  // namespace remlab
