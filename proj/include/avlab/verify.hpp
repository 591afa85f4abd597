#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace avlab {

/// Result row of one suite check. `statement` names the inequality or
/// identity being exercised; failures are data, never exceptions.
struct CheckReport {
    std::string name;
    std::string statement;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

enum class SuiteLevel { Fast, Full };

struct SuiteOptions {
    SuiteLevel level = SuiteLevel::Fast;
    std::uint64_t seed = 12345;
    /// Test-only hook: additionally run a check on a NaN-corrupted field to
    /// exercise the error routing.
    bool corrupt_fixture = false;
};

/// Runs every registered check on the seeded corpus. Check failures and
/// thrown module errors are recorded in the reports; the suite always
/// completes.
std::vector<CheckReport> run_suite(const SuiteOptions& opts);

/// Number of checks registered for a level (coverage is asserted in tests).
std::size_t registry_size(SuiteLevel level);

bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace avlab
