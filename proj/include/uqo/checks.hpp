#pragma once

#include "uqo/config.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace uqo {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;  // largest observed discrepancy
    double tolerance = 0.0;
    std::string detail;
};

/// Brute-force cross-validation of the closed forms and programs for one
/// problem. Each finished check is also passed to `on_result` when set.
std::vector<CheckResult> run_oracle_checks(Problem problem, std::uint64_t seed,
                                           const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace uqo
