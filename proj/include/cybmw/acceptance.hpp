#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cybmw/json_io.hpp"

namespace cybmw {

struct AcceptanceOptions {
    bool corrupt_rules = false;
    int only = 0;  // 0 runs everything
    int max_n = 4;
    int max_k = 6;
    std::vector<std::uint64_t> seeds{1, 2};
    int threads = 1;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    Json detail;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);
Json acceptance_json(const std::vector<CriterionResult>& rs);

}  // namespace cybmw
