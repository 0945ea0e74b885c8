#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cascade::verification {

/// Outcome of one acceptance criterion.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // measured numbers, for the console line
};

/// Runs the full acceptance suite in criterion order. When `progress` is
/// given, one "[PASS]/[FAIL] <id>. <name>: <detail>" line is streamed per
/// criterion as it finishes.
std::vector<CriterionResult> run_all(std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace cascade::verification
