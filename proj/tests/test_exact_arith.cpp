#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "antloop/lattice.hpp"
#include "antloop/poly.hpp"
#include "helpers.hpp"

using namespace antloop;
using namespace antloop::testing;

TEST_CASE("char_poly of the identity") {
    QPoly p = char_poly(QMatrix::identity(2));
    CHECK(p == QPoly(QVector{R(1), R(-2), R(1)}));  // (1 - T)^2
}

TEST_CASE("char_poly of the worked 5x5 example") {
    QPoly p = char_poly(example5_matrix());
    QPoly expected = QPoly::constant(R(1));
    for (long root : {9, 5, 2, 6, 6}) expected = expected * QPoly(QVector{R(root), R(-1)});
    CHECK(p == expected);
}

TEST_CASE("char_poly agrees with cofactor expansion on random matrices") {
    Rng rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        QMatrix a = random_matrix(rng, 4);
        CHECK(char_poly(a) == char_poly_oracle(a));
    }
}

TEST_CASE("char_poly vanishes exactly at every rational root") {
    Rng rng(77);
    for (int trial = 0; trial < 8; ++trial) {
        QMatrix a = random_matrix(rng, 3);
        QPoly p = char_poly(a);
        CHECK(p.degree() == 3);
        for (const auto& [root, mult] : rational_roots(p)) {
            CHECK(p.eval(root) == 0);
            CHECK(mult >= 1);
        }
    }
}

TEST_CASE("rational_roots") {
    SUBCASE("double root") {
        auto roots = rational_roots(QPoly(QVector{R(1), R(-2), R(1)}));
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].first == 1);
        CHECK(roots[0].second == 2);
    }
    SUBCASE("worked example spectrum") {
        auto roots = rational_roots(char_poly(example5_matrix()));
        REQUIRE(roots.size() == 4);
        CHECK(roots[0] == std::pair<Rational, int>{R(2), 1});
        CHECK(roots[1] == std::pair<Rational, int>{R(5), 1});
        CHECK(roots[2] == std::pair<Rational, int>{R(6), 2});
        CHECK(roots[3] == std::pair<Rational, int>{R(9), 1});
    }
    SUBCASE("no rational roots") {
        CHECK(rational_roots(QPoly(QVector{R(-2), R(0), R(1)})).empty());
    }
    SUBCASE("fractional roots") {
        // (2T - 1)(3T + 2)
        QPoly p = QPoly(QVector{R(-1), R(2)}) * QPoly(QVector{R(2), R(3)});
        auto roots = rational_roots(p);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0].first == R(-2, 3));
        CHECK(roots[1].first == R(1, 2));
    }
}

TEST_CASE("has_irrational_real_root") {
    CHECK(has_irrational_real_root(QPoly(QVector{R(-2), R(0), R(1)})));        // T^2 - 2
    CHECK(!has_irrational_real_root(QPoly(QVector{R(1), R(0), R(1)})));        // T^2 + 1
    // (T - 1)(T^2 + T + 1): the quadratic factor has negative discriminant.
    QPoly p = QPoly(QVector{R(-1), R(1)}) * QPoly(QVector{R(1), R(1), R(1)});
    CHECK(!has_irrational_real_root(p));
    // (T^2 - 2)(T^2 + 1) mixes both kinds.
    QPoly q = QPoly(QVector{R(-2), R(0), R(1)}) * QPoly(QVector{R(1), R(0), R(1)});
    CHECK(has_irrational_real_root(q));
}

TEST_CASE("kernel_basis") {
    SUBCASE("zero matrix spans everything") {
        auto basis = kernel_basis(QMatrix::zero(3, 3));
        REQUIRE(basis.size() == 3);
        CHECK(QMatrix::from_columns(basis) == QMatrix::identity(3));
    }
    SUBCASE("identity has trivial kernel") { CHECK(kernel_basis(QMatrix::identity(3)).empty()); }
    SUBCASE("squared eigen-operator of the worked example") {
        QMatrix a = example5_matrix();
        QMatrix shifted = a;
        for (int i = 0; i < 5; ++i) shifted.at(i, i) -= 6;
        auto basis = kernel_basis(shifted * shifted);
        REQUIRE(basis.size() == 2);
        CHECK(basis[0] == example5_eigvec_6a());
        CHECK(basis[1] == example5_eigvec_6b());
    }
    SUBCASE("rank-nullity on random matrices") {
        Rng rng(5);
        for (int trial = 0; trial < 12; ++trial) {
            int n = 2 + trial % 4;
            QMatrix m(3, n);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < n; ++j) m.at(i, j) = Rational(rng.range(-2, 2));
            auto basis = kernel_basis(m);
            CHECK(rank(m) + static_cast<int>(basis.size()) == n);
            for (const auto& v : basis) CHECK(antloop::is_zero(m * v));
        }
    }
}

TEST_CASE("hermite_normal_form") {
    SUBCASE("identity") {
        auto hf = hermite_normal_form(QMatrix::identity(3));
        CHECK(hf.H == QMatrix::identity(3));
        CHECK(hf.U == QMatrix::identity(3));
    }
    SUBCASE("2x2 with re-multiplication check") {
        QMatrix m = mat({{R(2), R(4)}, {R(1), R(3)}});
        auto hf = hermite_normal_form(m);
        CHECK(hf.U * m == hf.H);
        CHECK(abs(determinant(hf.U)) == 1);
        // staircase: pivots strictly to the right as rows descend
        int prev = -1;
        for (int i = 0; i < hf.H.rows(); ++i) {
            int lead = hf.H.cols();
            for (int j = 0; j < hf.H.cols(); ++j)
                if (hf.H.at(i, j) != 0) {
                    lead = j;
                    break;
                }
            if (lead < hf.H.cols()) {
                CHECK(lead > prev);
                CHECK(hf.H.at(i, lead) > 0);
                prev = lead;
            }
        }
    }
    SUBCASE("exposes that 2x = 1 has no integer solution") {
        auto hf = hermite_normal_form(mat({{R(2)}}));
        CHECK(hf.H == mat({{R(2)}}));
        CHECK(!solve_diophantine(mat({{R(2)}}), vec({R(1)})));
        CHECK(solve_diophantine(mat({{R(2)}}), vec({R(6)})));
    }
    SUBCASE("property on random integer matrices") {
        Rng rng(99);
        for (int trial = 0; trial < 15; ++trial) {
            int rows = 2 + trial % 3, cols = 2 + (trial / 3) % 3;
            QMatrix m(rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) m.at(i, j) = Rational(rng.range(-6, 6));
            auto hf = hermite_normal_form(m);
            CHECK(hf.U * m == hf.H);
            CHECK(abs(determinant(hf.U)) == 1);
        }
    }
}

TEST_CASE("solve_diophantine round-trips its solutions") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 2, cols = 3;
        QMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(i, j) = Rational(rng.range(-4, 4));
        QVector hidden(cols);
        for (auto& x : hidden) x = Rational(rng.range(-5, 5));
        QVector d = m * hidden;  // solvable by construction
        auto sol = solve_diophantine(m, d);
        REQUIRE(sol.has_value());
        CHECK(m * sol->particular == d);
        for (const auto& k : sol->lattice) CHECK(antloop::is_zero(m * k));
    }
}

TEST_CASE("binomial polynomials") {
    CHECK(binomial_poly(0) == QPoly::constant(R(1)));
    CHECK(binomial_at(4L, 2) == 6);
    CHECK(binomial_at(R(5), 3) == 10);
    CHECK(binomial_poly(2).eval(R(4)) == 6);
}

TEST_CASE("unipotent block powers match the binomial pattern") {
    SUBCASE("size 3, k = 5") {
        QMatrix t = mat({{R(1), R(1), R(0)}, {R(0), R(1), R(1)}, {R(0), R(0), R(1)}});
        QMatrix p5 = matrix_power(t, 5);
        CHECK(p5 == mat({{R(1), R(5), R(10)}, {R(0), R(1), R(5)}, {R(0), R(0), R(1)}}));
    }
    SUBCASE("all k <= 20, sizes <= 6") {
        for (int size = 1; size <= 6; ++size) {
            QMatrix t = QMatrix::identity(size);
            for (int i = 0; i + 1 < size; ++i) t.at(i, i + 1) = 1;
            QMatrix iterated = QMatrix::identity(size);
            for (int k = 0; k <= 20; ++k) {
                QMatrix symbolic(size, size);
                for (int i = 0; i < size; ++i)
                    for (int j = i; j < size; ++j) symbolic.at(i, j) = binomial_at(long(k), j - i);
                CHECK(symbolic == iterated);
                iterated = iterated * t;
            }
        }
    }
}

TEST_CASE("product of found factors divides char_poly") {
    Rng rng(123);
    for (int trial = 0; trial < 6; ++trial) {
        QMatrix a = random_matrix(rng, 4, -3, 3);
        QPoly p = char_poly(a);
        QPoly factors = QPoly::constant(R(1));
        for (const auto& [root, mult] : rational_roots(p)) {
            QPoly lin(QVector{-root, R(1)});
            for (int i = 0; i < mult; ++i) factors = factors * lin;
        }
        CHECK(divmod(p, factors).second.is_zero());
    }
}
