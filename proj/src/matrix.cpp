#include "antloop/matrix.hpp"

#include <sstream>

namespace antloop {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : init) {
        if (static_cast<int>(r.size()) != cols_) throw DimensionMismatch("ragged initializer");
        for (const auto& v : r) data_.push_back(v);
    }
}

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
    if (rows.empty()) return QMatrix(0, 0);
    QMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols()) throw DimensionMismatch("ragged rows");
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols) {
    if (cols.empty()) return QMatrix(0, 0);
    QMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
        if (static_cast<int>(cols[j].size()) != m.rows()) throw DimensionMismatch("ragged columns");
        for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

QVector QMatrix::row(int i) const {
    QVector r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

QVector QMatrix::column(int j) const {
    QVector c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMatrix QMatrix::block(int row0, int col0, int nrows, int ncols) const {
    QMatrix b(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) b.at(i, j) = at(row0 + i, col0 + j);
    return b;
}

bool QMatrix::is_zero() const {
    for (const auto& v : data_)
        if (v != 0) return false;
    return true;
}

bool QMatrix::is_integer() const {
    for (const auto& v : data_)
        if (v.get_den() != 1) return false;
    return true;
}

std::string QMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "\n[" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << antloop::to_string(at(i, j));
        os << "]";
    }
    return os.str();
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix add");
    QMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
    return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sub");
    QMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
    return c;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix mul");
    QMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rational& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
    QMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = s * a.at(i, j);
    return c;
}

QVector operator*(const QMatrix& a, const QVector& v) {
    if (a.cols() != static_cast<int>(v.size())) throw DimensionMismatch("matrix-vector mul");
    QVector r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0) r[i] += a.at(i, j) * v[j];
    return r;
}

QVector operator*(const QVector& v, const QMatrix& a) {
    if (a.rows() != static_cast<int>(v.size())) throw DimensionMismatch("vector-matrix mul");
    QVector r(a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < a.cols(); ++j) r[j] += v[i] * a.at(i, j);
    }
    return r;
}

Rational dot(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot");
    Rational s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVector scaled(const QVector& v, const Rational& s) {
    QVector r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] * s;
    return r;
}

bool is_zero(const QVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

QMatrix matrix_power(const QMatrix& a, unsigned k) {
    QMatrix result = QMatrix::identity(a.rows());
    QMatrix base = a;
    while (k) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

QMatrix rref(const QMatrix& m, std::vector<int>* pivot_cols) {
    QMatrix r = m;
    int pr = 0;
    std::vector<int> pivots;
    for (int col = 0; col < r.cols() && pr < r.rows(); ++col) {
        int sel = -1;
        for (int i = pr; i < r.rows(); ++i)
            if (r.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != pr)
            for (int j = 0; j < r.cols(); ++j) std::swap(r.at(sel, j), r.at(pr, j));
        Rational inv = 1 / r.at(pr, col);
        for (int j = col; j < r.cols(); ++j) r.at(pr, j) *= inv;
        for (int i = 0; i < r.rows(); ++i) {
            if (i == pr || r.at(i, col) == 0) continue;
            Rational factor = r.at(i, col);
            for (int j = col; j < r.cols(); ++j) r.at(i, j) -= factor * r.at(pr, j);
        }
        pivots.push_back(col);
        ++pr;
    }
    if (pivot_cols) *pivot_cols = pivots;
    return r;
}

int rank(const QMatrix& m) {
    std::vector<int> pivots;
    rref(m, &pivots);
    return static_cast<int>(pivots.size());
}

Rational determinant(const QMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    QMatrix a = m;
    int n = a.rows();
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int i = col; i < n; ++i)
            if (a.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) return Rational(0);
        if (sel != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(sel, j), a.at(col, j));
            det = -det;
        }
        det *= a.at(col, col);
        Rational inv = 1 / a.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (a.at(i, col) == 0) continue;
            Rational factor = a.at(i, col) * inv;
            for (int j = col; j < n; ++j) a.at(i, j) -= factor * a.at(col, j);
        }
    }
    return det;
}

QMatrix inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
    int n = m.rows();
    QMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<int> pivots;
    QMatrix r = rref(aug, &pivots);
    if (static_cast<int>(pivots.size()) != n || pivots[n - 1] != n - 1)
        throw SingularMatrix("matrix is singular");
    return r.block(0, n, n, n);
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
    std::vector<int> pivots;
    QMatrix r = rref(m, &pivots);
    int n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;

    std::vector<QVector> basis;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        QVector v(n);
        v[f] = 1;
        for (size_t pi = 0; pi < pivots.size(); ++pi) v[pivots[pi]] = -r.at(static_cast<int>(pi), f);
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return basis;

    // Canonicalize: the row space of the basis has a unique RREF.
    QMatrix rows = rref(QMatrix::from_rows(basis));
    basis.clear();
    for (int i = 0; i < rows.rows(); ++i) {
        QVector v = rows.row(i);
        if (!is_zero(v)) basis.push_back(std::move(v));
    }
    return basis;
}

QMatrix solve_exact(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("solve_exact");
    int n = a.cols(), k = b.cols();
    QMatrix aug(a.rows(), n + k);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        for (int j = 0; j < k; ++j) aug.at(i, n + j) = b.at(i, j);
    }
    std::vector<int> pivots;
    QMatrix r = rref(aug, &pivots);
    // Full column rank on the A-part and no pivot escaping into the B-part.
    int a_pivots = 0;
    for (int p : pivots) {
        if (p >= n) throw SingularMatrix("inconsistent linear system");
        ++a_pivots;
    }
    if (a_pivots != n) throw SingularMatrix("underdetermined linear system");
    // Remaining rows must be zero on the B-part too (consistency).
    for (int i = n; i < r.rows(); ++i)
        for (int j = 0; j < k; ++j)
            if (r.at(i, n + j) != 0) throw SingularMatrix("inconsistent linear system");
    return r.block(0, n, n, k);
}

}  // namespace antloop
