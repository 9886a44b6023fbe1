#pragma once

// The fixed list of end-to-end checks run by `affschur verify` and by the
// acceptance test binary.  Each check is exact; nothing is sampled except the
// Q15 quadruples, which are drawn from a seeded generator.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace affschur {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 1;
    /// Only run the listed criteria (all when empty).
    std::vector<int> only;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// One line per criterion: "PASS  3  title: detail".
std::string format_criterion(const CriterionResult& c);

}  // namespace affschur
