#include "antloop/properties.hpp"

#include "antloop/simulate.hpp"

#include <sstream>

namespace antloop {

namespace {

std::string point_string(const QVector& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
    os << ")";
    return os.str();
}

QVector random_point(Rng& rng, int dim) {
    QVector v(dim);
    for (auto& x : v) x = Rational(rng.range(-6, 6));
    return v;
}

// Members of the set: one witness per cell plus accepted random samples.
std::vector<QVector> sample_members(const SemiLinearSet& set, Rng& rng, int want) {
    std::vector<QVector> out;
    for (const auto& cell : set.cells()) {
        SemiLinearSet single(set.ambient_dim());
        single.add_cell(cell);
        if (auto w = single.rational_witness()) out.push_back(*w);
        if (static_cast<int>(out.size()) >= want) return out;
    }
    int attempts = want * 20;
    while (static_cast<int>(out.size()) < want && attempts-- > 0) {
        QVector x = random_point(rng, set.ambient_dim());
        if (set.membership(x)) out.push_back(std::move(x));
    }
    return out;
}

}  // namespace

PropertyResult run_properties(const LoopProgram& p, const PropertyOptions& opt,
                              const std::optional<SemiLinearSet>& expected_locus) {
    PropertyResult res;
    Rng rng(opt.seed);

    AnalyzeOptions aopt;
    aopt.integer_budget = opt.integer_budget;
    aopt.integer_verdict = false;
    aopt.with_complement = false;  // the complement is sampled by rejection below
    AnalysisReport report = analyze(p, aopt);
    res.verdict_real = report.verdict_real;

    if (expected_locus) {
        if (expected_locus->ambient_dim() != report.ant_set.ambient_dim()) {
            res.fail("expected locus has dimension " +
                     std::to_string(expected_locus->ambient_dim()) + ", analysis produced " +
                     std::to_string(report.ant_set.ambient_dim()));
        } else if (!set_equivalent(report.ant_set, *expected_locus)) {
            res.fail("locus mismatch\n  expected: " + expected_locus->to_text() +
                     "\n  computed: " + report.ant_set.to_text());
        }
    }

    // Per-point oracle against the constructed cells, per condition row.
    for (const auto& row : report.rows) {
        if (row.guard_row_zero) continue;
        std::vector<QVector> points;
        for (const auto& cell : row.ant_reduced.cells()) {
            SemiLinearSet single(row.ant_reduced.ambient_dim());
            single.add_cell(cell);
            if (auto w = single.rational_witness()) points.push_back(*w);
        }
        while (static_cast<int>(points.size()) < opt.oracle_points)
            points.push_back(random_point(rng, row.reduced.dim));
        for (const auto& x : points) {
            bool by_set = row.ant_reduced.membership(x);
            bool by_oracle = point_ant(row.reduced, x);
            if (by_set != by_oracle) {
                res.fail("oracle mismatch on row " + std::to_string(row.row) + " at " +
                         point_string(x) + ": set says " + (by_set ? "member" : "non-member") +
                         ", per-point analysis disagrees");
                break;
            }
        }
        if (row.normal) {
            ++res.normal_rows;
            SemiLinearSet general = ant_regular(row.reduced);
            if (!set_equivalent(row.ant_reduced, general))
                res.fail("normal/general formula disagreement on row " + std::to_string(row.row));
        }
    }

    // Complement members must terminate within the horizon. Membership in
    // the complement is exactly non-membership, so rejection sampling works
    // without materializing the complement set.
    {
        std::vector<QVector> complement_samples;
        QVector zero(p.dim(), Rational(0));
        if (!report.ant_set.membership(zero)) complement_samples.push_back(zero);
        int attempts = opt.complement_points * 30;
        while (static_cast<int>(complement_samples.size()) < opt.complement_points &&
               attempts-- > 0) {
            QVector x = random_point(rng, p.dim());
            if (!report.ant_set.membership(x)) complement_samples.push_back(std::move(x));
        }
        for (const auto& x : complement_samples) {
            Trace t = run_scan(p, x, opt.horizon);
            if (!t.first_violation)
                res.fail("complement point " + point_string(x) + " kept the guard positive for " +
                         std::to_string(opt.horizon) + " steps");
        }
    }

    // Locus members: guard eventually positive through the horizon. Only
    // meaningful when the locus is exact (no projected non-real part).
    if (!report.projection_convention) {
        auto members = sample_members(report.ant_set, rng, opt.complement_points);
        for (const auto& x : members) {
            HorizonStatus st = check_ant_at_horizon(p, x, opt.horizon);
            if (st.kind != HorizonStatus::PositiveTail)
                res.fail("locus member " + point_string(x) +
                         " violated the guard at the horizon (step " + std::to_string(st.index) +
                         ")");
        }
    }

    // Forward closure and the cone property, on the homogeneous space.
    {
        const SemiLinearSet& hom_set = report.ant_unsliced;
        const LoopProgram& hom_prog = report.analyzed;
        auto members = sample_members(hom_set, rng, opt.sample_points);
        for (const auto& x : members) {
            QVector ax = hom_prog.a * x;
            if (!hom_set.membership(ax))
                res.fail("forward closure failed at " + point_string(x));
            for (long t : {2L, 3L}) {
                QVector tx = scaled(x, Rational(t, t == 3 ? 2 : 1));
                if (!hom_set.membership(tx))
                    res.fail("cone property failed at " + point_string(x) + " scale " +
                             std::to_string(t));
            }
        }
    }

    // Affine programs agree with their homogenization at the slice.
    if (report.hom_note.was_affine) {
        auto members = sample_members(report.ant_set, rng, opt.sample_points);
        int extra = opt.sample_points - static_cast<int>(members.size());
        for (int i = 0; i < extra; ++i) members.push_back(random_point(rng, p.dim()));
        for (const auto& x : members) {
            QVector lifted = x;
            lifted.push_back(Rational(1));
            if (report.ant_set.membership(x) != report.ant_unsliced.membership(lifted))
                res.fail("homogenization embedding mismatch at " + point_string(x));
        }
    }

    return res;
}

}  // namespace antloop
