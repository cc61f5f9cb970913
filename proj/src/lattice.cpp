#include "antloop/lattice.hpp"

#include <stdexcept>

namespace antloop {

namespace {

void add_row_multiple(QMatrix& m, int dst, int src, const Rational& factor) {
    for (int j = 0; j < m.cols(); ++j) m.at(dst, j) += factor * m.at(src, j);
}

void swap_rows(QMatrix& m, int i, int j) {
    for (int c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
}

void negate_row(QMatrix& m, int i) {
    for (int c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
}

}  // namespace

HermiteForm hermite_normal_form(const QMatrix& m) {
    if (!m.is_integer()) throw std::invalid_argument("hermite_normal_form: non-integer entries");
    QMatrix h = m;
    QMatrix u = QMatrix::identity(m.rows());
    int r = 0;
    for (int col = 0; col < h.cols() && r < h.rows(); ++col) {
        // Reduce the column below row r to a single nonzero entry (the gcd).
        while (true) {
            int best = -1;
            for (int i = r; i < h.rows(); ++i) {
                if (h.at(i, col) == 0) continue;
                if (best < 0 || abs(h.at(i, col)) < abs(h.at(best, col))) best = i;
            }
            if (best < 0) break;
            if (best != r) {
                swap_rows(h, r, best);
                swap_rows(u, r, best);
            }
            bool others = false;
            for (int i = r + 1; i < h.rows(); ++i) {
                if (h.at(i, col) == 0) continue;
                others = true;
                Rational q(floor_div(BigInt(h.at(i, col).get_num()), BigInt(h.at(r, col).get_num())));
                add_row_multiple(h, i, r, -q);
                add_row_multiple(u, i, r, -q);
            }
            if (!others) break;
        }
        if (h.at(r, col) == 0) continue;
        if (sign(h.at(r, col)) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        for (int i = 0; i < r; ++i) {
            Rational q(floor_div(BigInt(h.at(i, col).get_num()), BigInt(h.at(r, col).get_num())));
            if (q != 0) {
                add_row_multiple(h, i, r, -q);
                add_row_multiple(u, i, r, -q);
            }
        }
        ++r;
    }
    return {h, u};
}

std::optional<DiophantineSolution> solve_diophantine(const QMatrix& m, const QVector& d) {
    if (m.rows() != static_cast<int>(d.size())) throw DimensionMismatch("solve_diophantine");
    for (const auto& x : d)
        if (x.get_den() != 1) throw std::invalid_argument("solve_diophantine: non-integer rhs");

    int n = m.cols();
    // Column-style HNF via the row form of the transpose: with H = U * M^T,
    // M * U^T = H^T has staircase columns and V = U^T is unimodular.
    HermiteForm hf = hermite_normal_form(m.transpose());
    QMatrix c = hf.H.transpose();  // m * v == c
    QMatrix v = hf.U.transpose();

    QVector residual = d;
    QVector y(n, Rational(0));
    std::vector<int> pivot_row(n, -1);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < c.rows(); ++i)
            if (c.at(i, j) != 0) {
                pivot_row[j] = i;
                break;
            }
    }
    for (int j = 0; j < n; ++j) {
        int p = pivot_row[j];
        if (p < 0) continue;
        Rational val = residual[p] / c.at(p, j);
        if (val.get_den() != 1) return std::nullopt;
        y[j] = val;
        for (int i = 0; i < c.rows(); ++i) residual[i] -= val * c.at(i, j);
    }
    if (!is_zero(residual)) return std::nullopt;

    DiophantineSolution sol;
    sol.particular = v * y;
    for (int j = 0; j < n; ++j)
        if (pivot_row[j] < 0) sol.lattice.push_back(v.column(j));
    return sol;
}

}  // namespace antloop
