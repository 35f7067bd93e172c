// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file remlab/acceptance.hpp
//! The fourteen acceptance criteria of the laboratory.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "extremes.hpp"

namespace remlab
{
//---------------------------------------------------------------------------//
struct CriterionResult
{
    int id{0};
    std::string title;
    bool pass{false};
    std::string detail;
    double seconds{0};
};

struct AcceptanceOptions
{
    std::uint64_t seed{0x72656d6c6162ull};
    unsigned threads{0};
};

inline constexpr int criterion_count = 14;

/*!
 * Runs the criteria, caching simulations shared between them.
 *
 * Per-trial outputs of every stochastic criterion are kept so that the
 * determinism criterion can compare reruns against them bit for bit.
 */
class AcceptanceSuite
{
  public:
    using Payload = std::vector<std::vector<double>>;

    explicit AcceptanceSuite(AcceptanceOptions opts = {});

    CriterionResult run(int id);
    std::vector<CriterionResult>
    run_all(std::function<void(CriterionResult const&)> const& on_result = {});

    //! Seed of a criterion, derived from the master seed.
    std::uint64_t criterion_seed(int id) const;

  private:
    AcceptanceOptions opts_;
    unsigned threads_;
    std::map<int, Payload> payloads_;
    std::map<int, std::vector<MaxResult>> brw_scans_;
    std::map<int, std::vector<MaxResult>> rem_scans_;

    std::vector<MaxResult> const& scans(Variant v, int n, std::uint64_t count);

    CriterionResult c1();
    CriterionResult c2();
    CriterionResult c3();
    CriterionResult c4();
    CriterionResult c5();
    CriterionResult c6();
    CriterionResult c7();
    CriterionResult c8();
    CriterionResult c9();
    CriterionResult c10();
    CriterionResult c11();
    CriterionResult c12();
    CriterionResult c13();
    CriterionResult c14();
};

//! One line, e.g. "PASS  criterion  4  variational oracle  (...)".
std::string format_result(CriterionResult const& r);

//---------------------------------------------------------------------------//
}  // namespace remlab
