#pragma once

#include "antloop/loop_program.hpp"

#include <optional>

namespace antloop {

// Exact loop execution: x_{k+1} = A x_k + c, guard values F x_k - b.
struct Trace {
    std::vector<QVector> points;        // x_0 ... x_K
    std::vector<QVector> guard_values;  // per step, F x_k - b
    std::optional<std::pair<int, int>> first_violation;  // (step, row)
};

// Runs until the first guard violation or max_steps.
Trace run(const LoopProgram& p, const QVector& x0, int max_steps);

// Scans the full horizon without stopping at violations.
Trace run_scan(const LoopProgram& p, const QVector& x0, int max_steps);

struct HorizonStatus {
    enum Kind { PositiveTail, Terminated } kind;
    int index;  // PositiveTail: least k0 with all rows positive on [k0, K];
                // Terminated: first violated step (no recovery by K)
};

// Necessary-condition evidence for membership in the asymptotic set: the
// guard must eventually stay positive. Never a proof of non-termination.
HorizonStatus check_ant_at_horizon(const LoopProgram& p, const QVector& x0, int horizon);

}  // namespace antloop
