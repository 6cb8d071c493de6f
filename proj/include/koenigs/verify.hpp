#pragma once

#include <string>
#include <vector>

#include "koenigs/model.hpp"

namespace koenigs::verify {

struct CheckResult {
    std::string name;
    bool passed = true;
    bool informational = false; // reported, never gates the exit code
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings; // formula-variant discrepancy notes

    bool pass() const {
        for (const auto& c : checks)
            if (!c.informational && !c.passed) return false;
        return true;
    }
};

// Runs every check applicable to the parameter pattern: validation,
// Darboux classification, two-route cross-validation, closed-form special
// cases, flat-limit continuity, the Coulomb asymptote and Green-pole
// agreement; collects all formula-variant warnings.
VerifyReport run_verify(const SpaceSpec& spec, const SolverSettings& settings,
                        const Window& window);

std::string to_text(const VerifyReport& rep);

} // namespace koenigs::verify
