#pragma once

#include "antloop/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace antloop {

// Dense matrix over the rationals, row-major. All operations are exact.
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
    QMatrix(std::initializer_list<std::initializer_list<Rational>> init);

    static QMatrix identity(int n);
    static QMatrix zero(int rows, int cols) { return QMatrix(rows, cols); }
    static QMatrix from_rows(const std::vector<QVector>& rows);
    static QMatrix from_columns(const std::vector<QVector>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    QVector row(int i) const;
    QVector column(int j) const;
    QMatrix transpose() const;
    QMatrix block(int row0, int col0, int nrows, int ncols) const;

    bool operator==(const QMatrix& other) const = default;

    bool is_zero() const;
    bool is_integer() const;

    std::string to_string() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const Rational& s, const QMatrix& a);
QVector operator*(const QMatrix& a, const QVector& v);

// Row vector times matrix.
QVector operator*(const QVector& v, const QMatrix& a);

Rational dot(const QVector& a, const QVector& b);
QVector scaled(const QVector& v, const Rational& s);
bool is_zero(const QVector& v);

QMatrix matrix_power(const QMatrix& a, unsigned k);

// Reduced row echelon form; returns the pivot column of each pivot row.
QMatrix rref(const QMatrix& m, std::vector<int>* pivot_cols = nullptr);

int rank(const QMatrix& m);
Rational determinant(const QMatrix& m);

// Exact inverse; throws SingularMatrix.
QMatrix inverse(const QMatrix& m);

// Canonical basis of the null space of M, returned as column vectors.
// The basis is normalized so that, viewed as rows, it is in reduced row
// echelon form: each vector leads with 1 at its first nonzero coordinate
// and the vectors are sorted by that coordinate. Empty for trivial kernel.
std::vector<QVector> kernel_basis(const QMatrix& m);

// Solves A * X = B for X (A need not be square; the system must be
// consistent with a unique solution on the column space, i.e. A has full
// column rank). Throws SingularMatrix otherwise.
QMatrix solve_exact(const QMatrix& a, const QMatrix& b);

}  // namespace antloop
