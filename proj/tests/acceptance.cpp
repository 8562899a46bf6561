// Acceptance runner: prints one pass/fail line per criterion and exits
// nonzero when any fails.

#include <cstdio>
#include <iostream>

#include "turyn/acceptance.hpp"

int main() {
    auto results = turyn::run_acceptance();
    std::cout << turyn::format_results(results);
    return turyn::all_pass(results) ? 0 : 1;
}
