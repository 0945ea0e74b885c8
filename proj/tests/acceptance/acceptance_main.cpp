// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one pass/fail line each. Exit status 0 only when all criteria pass.

#include "cascade/verification.hpp"

#include <iostream>

int main() {
    const auto results = cascade::verification::run_all(&std::cout);
    const bool ok = cascade::verification::all_passed(results);
    std::cout << (ok ? "acceptance: all criteria passed"
                     : "acceptance: FAILURES present")
              << std::endl;
    return ok ? 0 : 1;
}
