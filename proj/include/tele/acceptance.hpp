#pragma once

#include <string>
#include <vector>

#include "tele/protocol.hpp"

namespace tele::acceptance {

struct Options {
    IdleRule idle = IdleRule::instant;  // `exposed` is the mutation used to check the harness
    bool parallel = true;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::vector<std::string> details;  // one line per sub-check; failures prefixed "FAIL"
    double seconds = 0.0;
};

std::vector<CriterionResult> run_all(const Options& opts = {});
CriterionResult run_one(int id, const Options& opts = {});
int criterion_count();

}  // namespace tele::acceptance
