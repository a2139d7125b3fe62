// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure.
#include <cstdio>

#include "gwci/verify.hpp"

int main() {
    auto results = gwci::run_acceptance();
    std::fputs(gwci::render_report(results).c_str(), stdout);
    bool all = true;
    double total = 0.0;
    for (const auto& r : results) {
        all = all && r.pass;
        total += r.seconds;
    }
    std::fprintf(stderr, "[acceptance] %zu criteria, %.1f s total\n", results.size(), total);
    return all ? 0 : 1;
}
