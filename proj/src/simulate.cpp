#include "antloop/simulate.hpp"

namespace antloop {

namespace {

Trace run_impl(const LoopProgram& p, const QVector& x0, int max_steps, bool stop_at_violation) {
    if (static_cast<int>(x0.size()) != p.dim()) throw DimensionMismatch("simulation start point");
    Trace t;
    QVector x = x0;
    for (int k = 0; k <= max_steps; ++k) {
        QVector g = p.f * x;
        for (int i = 0; i < p.conditions(); ++i) g[i] -= p.b[i];
        t.points.push_back(x);
        t.guard_values.push_back(g);
        for (int i = 0; i < p.conditions(); ++i) {
            if (g[i] <= 0) {
                if (!t.first_violation) t.first_violation = {k, i};
                break;
            }
        }
        if (stop_at_violation && t.first_violation) break;
        if (k == max_steps) break;
        QVector next = p.a * x;
        for (int i = 0; i < p.dim(); ++i) next[i] += p.c[i];
        x = std::move(next);
    }
    return t;
}

}  // namespace

Trace run(const LoopProgram& p, const QVector& x0, int max_steps) {
    return run_impl(p, x0, max_steps, true);
}

Trace run_scan(const LoopProgram& p, const QVector& x0, int max_steps) {
    return run_impl(p, x0, max_steps, false);
}

HorizonStatus check_ant_at_horizon(const LoopProgram& p, const QVector& x0, int horizon) {
    Trace t = run_scan(p, x0, horizon);
    int last_violation = -1;
    for (int k = 0; k < static_cast<int>(t.guard_values.size()); ++k) {
        for (const auto& v : t.guard_values[k])
            if (v <= 0) {
                last_violation = k;
                break;
            }
    }
    if (last_violation == static_cast<int>(t.guard_values.size()) - 1)
        return {HorizonStatus::Terminated, t.first_violation ? t.first_violation->first : last_violation};
    return {HorizonStatus::PositiveTail, last_violation + 1};
}

}  // namespace antloop
