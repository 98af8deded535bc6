#pragma once

// Invariant suites behind `symrank verify`. Each suite returns one line per
// check; a failing line carries the first counterexample found.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace symrank {

struct VerifyGrid {
    long n_max = 12;
    long mu_max = 6;
    std::vector<std::uint64_t> p_list{2, 3, 5, 7};
};

struct CheckLine {
    std::string label;
    bool pass = true;
    std::string detail;  // counterexample on failure, summary otherwise
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckLine> lines;

    bool passed() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

/// crossroute, oracle, bounds, monotone, genfun, detdist.
const std::vector<std::string>& suite_names();

/// Runs one suite by name; "all" is handled by the caller. Throws
/// std::invalid_argument for unknown names or an empty / non-prime p_list.
SuiteReport run_suite(std::string_view name, const VerifyGrid& grid);

/// The (n, m) points the oracle suite enumerates.
const std::vector<std::pair<long, std::uint64_t>>& oracle_grid();

}  // namespace symrank
