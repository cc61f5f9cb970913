#pragma once

#include "antloop/generate.hpp"
#include "antloop/matrix.hpp"
#include "antloop/poly.hpp"
#include "antloop/semilinear.hpp"

#include <vector>

namespace antloop::testing {

inline Rational R(long num, long den = 1) { return rat(num, den); }

inline QMatrix mat(std::vector<std::vector<Rational>> rows) {
    std::vector<QVector> r;
    for (auto& row : rows) r.push_back(QVector(row.begin(), row.end()));
    return QMatrix::from_rows(r);
}

inline QVector vec(std::vector<Rational> v) { return QVector(v.begin(), v.end()); }

// --- Worked 5x5 example: diagonalizable with eigenvalues 9, 5, 2, 6, 6 ---

inline QMatrix example5_matrix() {
    return mat({{R(26), R(2), R(-15), R(-6), R(30)},
                {R(24), R(3), R(-12), R(-6), R(48)},
                {R(32), R(0), R(-9), R(2), R(66)},
                {R(-12), R(1), R(6), R(8), R(-24)},
                {R(-4), R(-1), R(3), R(0), R(0)}});
}

inline QVector example5_guard() { return vec({R(-2), R(0), R(-1), R(0), R(-1, 2)}); }

inline QVector example5_eigvec_9() { return vec({R(1), R(4, 5), R(1), R(-2, 5), R(-1, 5)}); }
inline QVector example5_eigvec_5() { return vec({R(1), R(-3, 2), R(0), R(1, 2), R(-1, 2)}); }
inline QVector example5_eigvec_2() { return vec({R(1), R(6, 5), R(8, 5), R(-3, 5), R(-1, 5)}); }
inline QVector example5_eigvec_6a() { return vec({R(1), R(0), R(2, 3), R(0), R(-1, 3)}); }
inline QVector example5_eigvec_6b() { return vec({R(0), R(1), R(2, 3), R(-1, 2), R(1, 6)}); }

// --- Motivating 3x3 example: eigenvalues 1, 5, 8 ---

inline QMatrix motivating_matrix() {
    return mat({{R(-20), R(-9), R(75)}, {R(7), R(8), R(-21)}, {R(-7), R(-3), R(26)}});
}

inline QVector motivating_guard() { return vec({R(1), R(-1, 2), R(-2)}); }

inline const char* motivating_source() {
    return "while (x - 1/2y - 2z > 0) {\n"
           "  x := -20x - 9y + 75z;\n"
           "  y := -7/20x + 97/20y + 21/4z;\n"
           "  z := 35/97x + 3/97y - 40/97z;\n"
           "}\n";
}

// The expected locus, over (u1, u2, u3).
inline SemiLinearSet motivating_locus() {
    SemiLinearSet s(3, {"u1", "u2", "u3"});
    Cell c1;
    c1.atoms.push_back(gt_atom(vec({R(-1), R(-1), R(3)})));  // u1 < -u2 + 3u3
    s.add_cell(c1);
    Cell c2;
    c2.atoms.push_back(eq_atom(vec({R(1), R(1), R(-3)})));
    c2.atoms.push_back(gt_atom(vec({R(0), R(1), R(1)})));  // -u3 < u2
    s.add_cell(c2);
    Cell c3;
    c3.atoms.push_back(eq_atom(vec({R(1), R(0), R(-4)})));  // u1 == 4u3
    c3.atoms.push_back(eq_atom(vec({R(0), R(1), R(1)})));   // u2 == -u3
    c3.atoms.push_back(gt_atom(vec({R(0), R(0), R(1)})));   // 0 < u3
    s.add_cell(c3);
    return s;
}

// --- 8x8 reduction example ---

inline QMatrix example8_matrix() {
    return mat({{R(1), R(0), R(0), R(0), R(0), R(0), R(0), R(0)},
                {R(2), R(0), R(0), R(0), R(0), R(0), R(0), R(0)},
                {R(6), R(-2), R(-1), R(1), R(0), R(0), R(0), R(0)},
                {R(10), R(-3), R(-4), R(3), R(0), R(0), R(0), R(0)},
                {R(30), R(-15), R(-6), R(7), R(0), R(-1), R(0), R(0)},
                {R(44), R(-28), R(-6), R(9), R(1), R(-2), R(0), R(0)},
                {R(90), R(-55), R(-9), R(12), R(4), R(-7), R(2), R(0)},
                {R(57), R(-19), R(-9), R(1), R(5), R(-8), R(4), R(-2)}});
}

inline QVector example8_guard() {
    return vec({R(-1), R(-2), R(1), R(0), R(0), R(0), R(0), R(1)});
}

inline QVector example8_kernel_vector() {
    return vec({R(1), R(2), R(3), R(4), R(6), R(4), R(3), R(2)});
}

// The 6x6 regular block the reduction must reach.
inline QMatrix running_example_matrix() {
    return mat({{R(1), R(1), R(0), R(0), R(0), R(0)},
                {R(0), R(1), R(0), R(0), R(0), R(0)},
                {R(0), R(0), R(-1), R(-1), R(0), R(0)},
                {R(0), R(0), R(0), R(-1), R(0), R(0)},
                {R(0), R(0), R(0), R(0), R(2), R(0)},
                {R(0), R(0), R(0), R(0), R(0), R(-2)}});
}

// --- Test-only oracles ---

// Cofactor (Laplace) expansion determinant of a polynomial matrix;
// independent of the Faddeev-LeVerrier route used by char_poly.
inline QPoly cofactor_det(const std::vector<std::vector<QPoly>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    QPoly det;
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<QPoly>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<QPoly> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        QPoly term = m[0][j] * cofactor_det(minor);
        det = j % 2 == 0 ? det + term : det - term;
    }
    return det;
}

inline QPoly char_poly_oracle(const QMatrix& a) {
    int n = a.rows();
    std::vector<std::vector<QPoly>> m(n, std::vector<QPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m[i][j] = QPoly::constant(a.at(i, j));
            if (i == j) m[i][j] = m[i][j] - QPoly(QVector{Rational(0), Rational(1)});
        }
    return cofactor_det(m);
}

// Exhaustive integer scan of [-radius, radius]^n.
inline std::optional<QVector> grid_scan_member(const SemiLinearSet& set, long radius) {
    int n = set.ambient_dim();
    QVector point(n, Rational(-radius));
    while (true) {
        if (set.membership(point)) return point;
        int i = 0;
        while (i < n) {
            point[i] += 1;
            if (point[i] <= Rational(radius)) break;
            point[i] = Rational(-radius);
            ++i;
        }
        if (i == n) return std::nullopt;
    }
}

inline QMatrix random_matrix(Rng& rng, int n, long lo = -4, long hi = 4) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = Rational(rng.range(lo, hi));
    return m;
}

}  // namespace antloop::testing
