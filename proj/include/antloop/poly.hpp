#pragma once

#include "antloop/matrix.hpp"
#include "antloop/rational.hpp"

#include <utility>
#include <vector>

namespace antloop {

// Univariate polynomial over the rationals, coefficients in ascending
// degree. The zero polynomial has an empty coefficient list.
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(QVector coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    static QPoly constant(const Rational& c) { return QPoly(QVector{c}); }
    static QPoly monomial(const Rational& c, int degree);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const QVector& coeffs() const { return coeffs_; }
    Rational coeff(int i) const {
        return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : Rational(0);
    }
    Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

    Rational eval(const Rational& x) const;
    QPoly derivative() const;

    bool operator==(const QPoly& other) const = default;
    std::string to_string(const std::string& var = "T") const;

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    QVector coeffs_;
};

QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const Rational& s, const QPoly& a);

// Euclidean division; both quotient and remainder are exact.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

// Monic gcd.
QPoly poly_gcd(QPoly a, QPoly b);

// det(A - T*I) as an exact polynomial of degree n (Faddeev-LeVerrier).
QPoly char_poly(const QMatrix& a);

// Evaluates p at a square matrix (Horner).
QMatrix eval_at_matrix(const QPoly& p, const QMatrix& a);

// All rational roots with exact multiplicities, sorted ascending.
// Complete for the rational part of the spectrum: square-free
// decomposition followed by a divisor-based root test on the
// integer-scaled factors.
std::vector<std::pair<Rational, int>> rational_roots(const QPoly& p);

// True iff p has a real root that is not rational. Decided by a Sturm
// chain on the cofactor left after dividing out every rational root.
bool has_irrational_real_root(const QPoly& p);

// The polynomial k(k-1)...(k-j+1)/j! of degree j in k.
QPoly binomial_poly(int j);
// Its value at an integer point.
Rational binomial_at(long k, int j);
Rational binomial_at(const Rational& k, int j);

}  // namespace antloop
