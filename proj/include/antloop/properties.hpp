#pragma once

#include "antloop/ant.hpp"
#include "antloop/generate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace antloop {

struct PropertyOptions {
    int horizon = 500;
    int oracle_points = 50;      // per condition row
    int sample_points = 25;      // membership sampling for closure/cone/embedding
    int complement_points = 8;   // simulated terminating samples
    uint64_t seed = 1;
    long integer_budget = 20000;
};

struct PropertyResult {
    bool pass = true;
    std::vector<std::string> failures;
    Verdict verdict_real = Verdict::Terminating;
    int normal_rows = 0;  // rows on which both formula paths were compared

    void fail(std::string msg) {
        pass = false;
        failures.push_back(std::move(msg));
    }
};

// Runs the full property battery on one program:
//  - per-point oracle vs the constructed locus on every condition row,
//  - sampled complement points terminate within the horizon,
//  - sampled locus members keep the guard positive up to the horizon,
//  - forward closure under the update and the cone property,
//  - dominant-coordinate / general formula agreement on normal rows,
//  - affine programs match their homogenization at the slice.
// An optional expected locus is compared with set_equivalent.
PropertyResult run_properties(const LoopProgram& p, const PropertyOptions& opt,
                              const std::optional<SemiLinearSet>& expected_locus = std::nullopt);

}  // namespace antloop
