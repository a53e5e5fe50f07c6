#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qjp {

struct CriterionResult {
    int index;
    std::string name;
    bool passed;
    double worst_error; // largest measured deviation across the criterion's checks
    double tolerance;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    std::string csv; // per-check table: criterion, check, value, tolerance, passed

    bool all_passed() const;
};

// Full verification battery; criterion 15 re-runs the battery and demands
// byte-identical CSV output.
AcceptanceReport run_acceptance(std::uint64_t seed);

} // namespace qjp
