#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace gwci {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0.0;
};

// Runs the acceptance suite (optionally a named subset). Deterministic for a
// fixed seed; the determinism criterion re-runs the suite and compares the
// rendered reports byte for byte.
std::vector<CriterionResult> run_acceptance(const std::set<std::string>& only = {},
                                            std::uint64_t seed = 0);

std::string render_report(const std::vector<CriterionResult>& results);

std::vector<std::string> acceptance_suite_names();

}  // namespace gwci
