// Copyright 2026 The remlab Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/acceptance.cpp
//! Runs every acceptance criterion and prints one line per criterion.
//---------------------------------------------------------------------------//
#include <iostream>

#include "remlab/acceptance.hpp"

int main()
{
    remlab::AcceptanceSuite suite;
    int failed = 0;
    suite.run_all([&](remlab::CriterionResult const& r) {
        failed += !r.pass;
        std::cout << remlab::format_result(r) << std::endl;
    });
    std::cout << (remlab::criterion_count - failed) << " of "
              << remlab::criterion_count << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
