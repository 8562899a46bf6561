// The end-to-end verification suite: every headline number and structural
// claim the library is built around, one numbered criterion per row.

#pragma once

#include <string>
#include <vector>

namespace turyn {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// runs all criteria in order; never throws (failures are captured per row)
std::vector<CriterionResult> run_acceptance();

std::string format_results(const std::vector<CriterionResult>& results);
bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace turyn
