#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "antloop/ant.hpp"
#include "antloop/simulate.hpp"
#include "helpers.hpp"

using namespace antloop;
using namespace antloop::testing;

namespace {

SpectralData simple_spec(std::vector<std::pair<Rational, int>> sections, QVector f) {
    SpectralData spec;
    int offset = 0;
    for (auto& [lambda, mult] : sections) {
        spec.sections.push_back({lambda, mult, offset, {mult}});
        offset += mult;
    }
    spec.dim = offset;
    spec.basis = QMatrix::identity(offset);
    spec.basis_inv = QMatrix::identity(offset);
    spec.f_coeffs = std::move(f);
    return spec;
}

// Running example: eigenvalues 1, -1 (multiplicity 2 each), 2, -2; all f
// coefficients equal to one.
SpectralData running_example_spec() {
    return simple_spec({{R(1), 2}, {R(-1), 2}, {R(2), 1}, {R(-2), 1}}, QVector(6, Rational(1)));
}

// Coordinates: x11, x12, xm11, xm12, x21, xm21 (indices 0..5).
Cell cell_of(std::vector<Atom> atoms) { return Cell{std::move(atoms)}; }

QVector coeffs6(std::initializer_list<long> v) {
    QVector out;
    for (long x : v) out.push_back(Rational(x));
    return out;
}

const QVector phi_plus0 = coeffs6({1, 1, 1, 1, 0, 0});   // x11+x12+xm11+xm12
const QVector phi_minus0 = coeffs6({1, 1, -1, -1, 0, 0});
const QVector phi_plus1 = coeffs6({0, 1, 0, 1, 0, 0});   // x12+xm12
const QVector phi_minus1 = coeffs6({0, 1, 0, -1, 0, 0});
const QVector two_plus = coeffs6({0, 0, 0, 0, 1, 1});    // x21+xm21
const QVector two_minus = coeffs6({0, 0, 0, 0, 1, -1});
const QVector x21 = coeffs6({0, 0, 0, 0, 1, 0});
const QVector xm21 = coeffs6({0, 0, 0, 0, 0, 1});

}  // namespace

TEST_CASE("is_normal") {
    CHECK(is_normal(simple_spec({{R(9), 1}, {R(5), 1}, {R(2), 1}, {R(6), 2}},
                                QVector(5, Rational(1)))));
    CHECK(!is_normal(running_example_spec()));
    CHECK(is_normal(simple_spec({{R(3), 1}}, {R(1)})));
    CHECK(!is_normal(simple_spec({{R(0), 1}, {R(3), 1}}, {R(1), R(1)})));
}

TEST_CASE("ant_normal on the worked 5x5 example") {
    SpectralData spec = eigen_decompose(example5_matrix());
    spec.f_coeffs = f_coefficients(example5_guard(), spec.basis);
    REQUIRE(is_normal(spec));
    SemiLinearSet s = ant_normal(spec);

    // Expected cells, instantiated from the dominant-coordinate formula.
    auto coord = [&](long lambda, int j) {
        const EigenSection* sec = spec.section_of(R(lambda));
        QVector v(5, Rational(0));
        v[sec->offset + j - 1] = spec.f_coeffs[sec->offset + j - 1];
        return v;
    };
    SemiLinearSet expected(5);
    expected.add_cell(cell_of({gt_atom(coord(9, 1))}));
    expected.add_cell(cell_of({eq_atom(coord(9, 1)), eq_atom(coord(6, 1)), eq_atom(coord(6, 2)),
                               gt_atom(coord(5, 1))}));
    expected.add_cell(cell_of({eq_atom(coord(9, 1)), eq_atom(coord(6, 1)), eq_atom(coord(6, 2)),
                               eq_atom(coord(5, 1)), gt_atom(coord(2, 1))}));
    expected.add_cell(cell_of({eq_atom(coord(9, 1)), eq_atom(coord(6, 2)), gt_atom(coord(6, 1))}));
    expected.add_cell(cell_of({eq_atom(coord(9, 1)), gt_atom(coord(6, 2))}));
    CHECK(s.cells().size() == 5);
    CHECK(set_equivalent(s, expected));
}

TEST_CASE("ant_normal with a single eigenvalue") {
    SemiLinearSet s = ant_normal(simple_spec({{R(2), 1}}, {R(1)}));
    REQUIRE(s.cells().size() == 1);
    SemiLinearSet expected(1);
    expected.add_cell(cell_of({gt_atom({R(1)})}));
    CHECK(set_equivalent(s, expected));
}

TEST_CASE("ant_normal drops cells with a vanishing coefficient") {
    SemiLinearSet s = ant_normal(simple_spec({{R(2), 2}}, {R(1), R(0)}));
    // S_{2,2} has atom 0 * x > 0 and disappears.
    CHECK(s.cells().size() == 1);
}

TEST_CASE("ant_regular reproduces the running example cells") {
    SemiLinearSet suv = ant_regular(running_example_spec());

    SemiLinearSet expected(6);
    // S cells.
    expected.add_cell(cell_of({gt_atom(two_plus), gt_atom(two_minus)}));  // S^2_{0,0}
    expected.add_cell(cell_of({eq_atom(x21), eq_atom(xm21), eq_atom(phi_plus1),
                               eq_atom(phi_minus1), gt_atom(phi_plus0), gt_atom(phi_minus0)}));
    expected.add_cell(cell_of({eq_atom(x21), eq_atom(xm21), eq_atom(phi_plus1),
                               gt_atom(phi_plus0), gt_atom(phi_minus1)}));  // S^1_{0,1}
    expected.add_cell(cell_of({eq_atom(x21), eq_atom(xm21), eq_atom(phi_minus1),
                               gt_atom(phi_plus1), gt_atom(phi_minus0)}));  // S^1_{1,0}
    expected.add_cell(cell_of({eq_atom(x21), eq_atom(xm21), gt_atom(phi_plus1),
                               gt_atom(phi_minus1)}));  // S^1_{1,1}
    // U cells.
    expected.add_cell(cell_of({eq_atom(two_minus), eq_atom(phi_minus1), gt_atom(x21),
                               gt_atom(phi_minus0)}));  // U^{2,1}_{0,0}
    expected.add_cell(cell_of({eq_atom(two_minus), gt_atom(x21), gt_atom(phi_minus1)}));
    // V cells.
    expected.add_cell(cell_of({eq_atom(two_plus), eq_atom(phi_plus1), gt_atom(x21),
                               gt_atom(phi_plus0)}));  // V^{2,1}_{0,0}
    expected.add_cell(cell_of({eq_atom(two_plus), gt_atom(x21), gt_atom(phi_plus1)}));

    CHECK(suv.cells().size() == 9);
    CHECK(set_equivalent(suv, expected));

    // Every expected cell appears verbatim up to set equality.
    for (const auto& cell : expected.cells()) {
        SemiLinearSet single(6);
        single.add_cell(cell);
        bool found = false;
        for (const auto& got : suv.cells()) {
            SemiLinearSet candidate(6);
            candidate.add_cell(got);
            if (set_equivalent(single, candidate)) {
                found = true;
                break;
            }
        }
        CHECK_MESSAGE(found, "missing cell: ", single.to_text());
    }
}

TEST_CASE("the S, U and V families are pairwise disjoint") {
    SemiLinearSet suv = ant_regular(running_example_spec());
    // Cells are emitted in construction order: S first (5), then U (2), V (2).
    REQUIRE(suv.cells().size() == 9);
    auto family = [&](int from, int to) {
        SemiLinearSet f(6);
        for (int i = from; i < to; ++i) f.add_cell(suv.cells()[i]);
        return f;
    };
    SemiLinearSet s = family(0, 5), u = family(5, 7), v = family(7, 9);
    CHECK(s.intersect(u).is_empty_real());
    CHECK(s.intersect(v).is_empty_real());
    CHECK(u.intersect(v).is_empty_real());
}

TEST_CASE("ant_regular equals ant_normal on normal spectra") {
    SpectralData spec = simple_spec({{R(1), 1}, {R(5), 1}, {R(8), 1}}, QVector(3, Rational(1)));
    CHECK(set_equivalent(ant_regular(spec), ant_normal(spec)));
    SpectralData with_chain = simple_spec({{R(2), 2}, {R(5), 1}}, QVector(3, Rational(1)));
    CHECK(set_equivalent(ant_regular(with_chain), ant_normal(with_chain)));
}

TEST_CASE("ant_regular rejects non-regular data") {
    SpectralData multi;
    multi.dim = 2;
    multi.sections.push_back({R(2), 2, 0, {1, 1}});
    multi.basis = multi.basis_inv = QMatrix::identity(2);
    multi.f_coeffs = {R(1), R(1)};
    CHECK_THROWS(ant_regular(multi));
    CHECK_THROWS(point_ant(multi, {R(1), R(0)}));
}

TEST_CASE("point_ant") {
    SUBCASE("dominant positive coordinate") {
        SpectralData spec = simple_spec({{R(5), 1}, {R(9), 1}}, {R(1), R(-2)});
        CHECK(point_ant(spec, {R(0), R(-1)}));   // -2 * -1 = 2 > 0 dominates
        CHECK(!point_ant(spec, {R(1), R(1)}));   // 9-part negative
        CHECK(point_ant(spec, {R(3), R(0)}));    // falls to the 5-part
    }
    SUBCASE("zero is never asymptotically non-terminating") {
        CHECK(!point_ant(running_example_spec(), QVector(6, Rational(0))));
    }
    SUBCASE("running example dominant even/odd split") {
        // Only x_{2,1} = 1: even and odd tails are (+-2)^k * 1 with Q+ = Q- = 1.
        QVector x(6, Rational(0));
        x[4] = 1;
        CHECK(point_ant(running_example_spec(), x));
        // Only x_{-2,1} = 1: odd iterates are negative.
        QVector y(6, Rational(0));
        y[5] = 1;
        CHECK(!point_ant(running_example_spec(), y));
    }
}

TEST_CASE("analyze reproduces the motivating locus") {
    LoopProgram p = parse_program(motivating_source());
    AnalysisReport r = analyze(p);
    CHECK(set_equivalent(r.ant_set, motivating_locus()));
    CHECK(r.verdict_real == Verdict::NonTerminating);
    CHECK(r.verdict_rational == Verdict::NonTerminating);
    REQUIRE(r.witness.has_value());
    CHECK(r.ant_set.membership(*r.witness));
}

TEST_CASE("analyze ignores the non-real block of the five-variable example") {
    LoopProgram p = parse_program(
        "while (3t + 7s + x - 1/2y - 2z > 0) {\n"
        "  t := t - s;\n"
        "  s := t + 2s;\n"
        "  x := -20x - 9y + 75z;\n"
        "  y := -7/20x + 97/20y + 21/4z;\n"
        "  z := 35/97x + 3/97y - 40/97z;\n"
        "}");
    AnalysisReport r = analyze(p);
    CHECK(r.dim_enr == 2);
    CHECK(r.projection_convention);
    // The locus constrains only x, y, z (coordinates 2..4).
    for (const auto& cell : r.ant_set.cells())
        for (const auto& atom : cell.atoms) {
            CHECK(atom.coeffs[0] == 0);
            CHECK(atom.coeffs[1] == 0);
        }
    // And matches the three-variable locus embedded into the last coordinates.
    SemiLinearSet expected(5);
    SemiLinearSet base = motivating_locus();
    for (const auto& cell : base.cells()) {
        Cell lifted;
        for (const auto& a : cell.atoms) {
            QVector c(5, Rational(0));
            for (int i = 0; i < 3; ++i) c[2 + i] = a.coeffs[i];
            lifted.atoms.push_back(Atom{c, a.offset, a.rel});
        }
        expected.add_cell(lifted);
    }
    CHECK(set_equivalent(r.ant_set, expected));
}

TEST_CASE("analyze the audio-compression loop") {
    LoopProgram p = parse_program("while (-x > -2^(30)) { x := 2*x; y := y + 1; }");
    AnalysisReport r = analyze(p);
    SemiLinearSet expected(2);
    Cell neg, zero;
    neg.atoms.push_back(gt_atom({R(-1), R(0)}));
    zero.atoms.push_back(eq_atom({R(1), R(0)}));
    expected.add_cell(neg);
    expected.add_cell(zero);
    CHECK(set_equivalent(r.ant_set, expected));
    SemiLinearSet complement_expected(2);
    Cell pos;
    pos.atoms.push_back(gt_atom({R(1), R(0)}));
    complement_expected.add_cell(pos);
    CHECK(set_equivalent(r.terminating_underapprox, complement_expected));
}

TEST_CASE("decide_termination") {
    SUBCASE("motivating program does not terminate over R and Q") {
        LoopProgram p = parse_program(motivating_source());
        CHECK(decide_termination(p, Domain::Real).verdict == Verdict::NonTerminating);
        auto rat = decide_termination(p, Domain::Rational);
        CHECK(rat.verdict == Verdict::NonTerminating);
        CHECK(rat.witness.has_value());
    }
    SUBCASE("zeroing update terminates") {
        LoopProgram p = parse_program("while (x > 0) { x := 0*x; }");
        CHECK(decide_termination(p, Domain::Real).verdict == Verdict::Terminating);
        CHECK(decide_termination(p, Domain::Integer).verdict == Verdict::Terminating);
    }
    SUBCASE("rational and integer verdicts can differ") {
        // Fixed point 1/2: the locus collapses to 2x = 1 after slicing.
        LoopProgram p =
            parse_program("while (x > 0 && 1 - x > 0) { x := 2x - 1/2; }");
        AnalysisReport r = analyze(p);
        SemiLinearSet expected(1);
        Cell c;
        c.atoms.push_back(eq_atom({R(2)}, R(-1)));
        expected.add_cell(c);
        CHECK(set_equivalent(r.ant_set, expected));
        CHECK(r.verdict_rational == Verdict::NonTerminating);
        CHECK(r.verdict_integer == Verdict::Terminating);
        CHECK(!grid_scan_member(r.ant_set, 10).has_value());
    }
}

TEST_CASE("rotation-only programs terminate on every domain") {
    LoopProgram p;
    p.var_names = {"x", "y"};
    p.a = mat({{R(0), R(-1)}, {R(1), R(0)}});
    p.c = QVector(2, Rational(0));
    p.f = QMatrix::zero(1, 2);
    p.f.at(0, 0) = 1;
    p.b = QVector(1, Rational(0));
    p.classify();
    AnalysisReport r = analyze(p);
    CHECK(r.dim_er == 0);
    CHECK(r.ant_set.is_empty_real());
    CHECK(r.verdict_real == Verdict::Terminating);
    CHECK(r.verdict_integer == Verdict::Terminating);
}

TEST_CASE("oracle equivalence on the reduced motivating pair") {
    LoopProgram p = parse_program(motivating_source());
    AnalysisReport r = analyze(p);
    REQUIRE(r.rows.size() == 1);
    const RowAnalysis& row = r.rows[0];
    Rng rng(808);
    int checked = 0;
    for (int i = 0; i < 120; ++i) {
        QVector x(row.reduced.dim);
        for (auto& v : x) v = Rational(rng.range(-3, 3));
        CHECK(row.ant_reduced.membership(x) == point_ant(row.reduced, x));
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("forward closure of the emitted locus") {
    LoopProgram p = parse_program(motivating_source());
    AnalysisReport r = analyze(p);
    Rng rng(909);
    int members = 0;
    for (int i = 0; i < 300 && members < 25; ++i) {
        QVector x(3);
        for (auto& v : x) v = Rational(rng.range(-5, 5));
        if (!r.ant_set.membership(x)) continue;
        ++members;
        CHECK(r.ant_set.membership(p.a * x));
    }
    CHECK(members > 0);
}
