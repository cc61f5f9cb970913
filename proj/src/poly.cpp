#include "antloop/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace antloop {

QPoly QPoly::monomial(const Rational& c, int degree) {
    QVector v(degree + 1);
    v[degree] = c;
    return QPoly(std::move(v));
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::derivative() const {
    if (coeffs_.size() <= 1) return QPoly();
    QVector d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = Rational(static_cast<long>(i)) * coeffs_[i];
    return QPoly(std::move(d));
}

std::string QPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational c = coeff(i);
        if (c == 0) continue;
        if (!first) os << (sign(c) > 0 ? " + " : " - ");
        else if (sign(c) < 0)
            os << "-";
        Rational a = abs(c);
        if (a != 1 || i == 0) os << antloop::to_string(a);
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    QVector c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
    QVector c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    QVector c(a.coeffs().size() + b.coeffs().size() - 1);
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
    return QPoly(std::move(c));
}

QPoly operator*(const Rational& s, const QPoly& a) {
    QVector c = a.coeffs();
    for (auto& x : c) x *= s;
    return QPoly(std::move(c));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::runtime_error("polynomial division by zero");
    QVector rem = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {QPoly(), a};
    QVector quo(a.degree() - db + 1);
    Rational lead_inv = 1 / b.leading();
    for (int i = a.degree(); i >= db; --i) {
        Rational c = rem[i] * lead_inv;
        if (c == 0) continue;
        quo[i - db] = c;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b.coeff(j);
    }
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return (1 / a.leading()) * a;
}

QPoly char_poly(const QMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("char_poly of non-square matrix");
    int n = a.rows();
    // Faddeev-LeVerrier: p(T) = det(T*I - A) = T^n + c_{n-1} T^{n-1} + ... + c_0.
    QVector c(n + 1);
    c[n] = 1;
    QMatrix m = QMatrix::zero(n, n);
    for (int k = 1; k <= n; ++k) {
        if (k == 1) {
            m = a;
        } else {
            for (int i = 0; i < n; ++i) m.at(i, i) += c[n - k + 1];
            m = a * m;
        }
        Rational tr;
        for (int i = 0; i < n; ++i) tr += m.at(i, i);
        c[n - k] = -tr / k;
    }
    // det(A - T*I) = (-1)^n det(T*I - A).
    if (n % 2 == 1)
        for (auto& x : c) x = -x;
    return QPoly(std::move(c));
}

QMatrix eval_at_matrix(const QPoly& p, const QMatrix& a) {
    int n = a.rows();
    QMatrix acc = QMatrix::zero(n, n);
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * a;
        for (int d = 0; d < n; ++d) acc.at(d, d) += p.coeff(i);
    }
    return acc;
}

namespace {

BigInt pollard_rho(const BigInt& n) {
    if (n % 2 == 0) return BigInt(2);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEu);
    while (true) {
        BigInt x = rng.get_z_range(n - 2) + 2;
        BigInt y = x, c = rng.get_z_range(n - 1) + 1, d(1);
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            BigInt diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(BigInt n, std::map<BigInt, int>& factors) {
    if (n <= 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        factors[n]++;
        return;
    }
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        if (n % p == 0) {
            factors[BigInt(p)]++;
            factor_into(n / p, factors);
            return;
        }
    }
    BigInt d = pollard_rho(n);
    factor_into(d, factors);
    factor_into(n / d, factors);
}

std::vector<BigInt> divisors(const BigInt& n) {
    std::map<BigInt, int> factors;
    factor_into(abs(n), factors);
    std::vector<BigInt> divs{BigInt(1)};
    for (const auto& [p, e] : factors) {
        size_t count = divs.size();
        BigInt pk(1);
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

// Scales to a primitive integer polynomial (content removed, leading > 0).
QPoly integer_primitive(const QPoly& p) {
    BigInt lcm_den(1);
    for (const auto& c : p.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    QVector scaled = p.coeffs();
    for (auto& c : scaled) c *= Rational(lcm_den);
    BigInt content(0);
    for (const auto& c : scaled) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num().get_mpz_t());
    if (content == 0) return QPoly();
    for (auto& c : scaled) c /= Rational(content);
    QPoly out(std::move(scaled));
    if (sign(out.leading()) < 0) out = Rational(-1) * out;
    return out;
}

// Yun's algorithm: p = prod f_i^i with the f_i square-free and coprime.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
    std::vector<std::pair<QPoly, int>> parts;
    QPoly a = (1 / p.leading()) * p;
    QPoly g = poly_gcd(a, a.derivative());
    if (g.degree() == 0) {
        parts.emplace_back(a, 1);
        return parts;
    }
    QPoly w = divmod(a, g).first;
    QPoly y = divmod(a.derivative(), g).first;
    QPoly z = y - w.derivative();
    int i = 1;
    while (!w.is_zero() && w.degree() > 0) {
        QPoly f = poly_gcd(w, z);
        if (f.degree() > 0) parts.emplace_back(f, i);
        w = divmod(w, f).first;
        y = divmod(z, f).first;
        z = y - w.derivative();
        ++i;
    }
    return parts;
}

int sturm_sign_changes(const std::vector<QPoly>& chain, bool at_plus_infinity) {
    int changes = 0, prev = 0;
    for (const auto& q : chain) {
        if (q.is_zero()) continue;
        int s = sign(q.leading());
        if (!at_plus_infinity && q.degree() % 2 == 1) s = -s;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const QPoly& p) {
    if (p.is_zero()) throw std::runtime_error("rational_roots of zero polynomial");
    std::vector<std::pair<Rational, int>> roots;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        QPoly f = integer_primitive(factor);
        if (f.degree() < 1) continue;
        // Strip zero roots first.
        int t = 0;
        while (f.coeff(t) == 0) ++t;
        if (t > 0) {
            roots.emplace_back(Rational(0), mult);  // square-free: t is 1
            QVector shifted(f.coeffs().begin() + t, f.coeffs().end());
            f = QPoly(std::move(shifted));
            if (f.degree() < 1) continue;
        }
        std::vector<BigInt> num_divs = divisors(BigInt(f.coeff(0).get_num()));
        std::vector<BigInt> den_divs = divisors(BigInt(f.leading().get_num()));
        for (const auto& u : num_divs) {
            for (const auto& v : den_divs) {
                Rational cand(u, v);
                cand.canonicalize();
                if (cand.get_num() != u || cand.get_den() != v) continue;  // not coprime
                if (f.eval(cand) == 0) roots.emplace_back(cand, mult);
                if (f.eval(-cand) == 0) roots.emplace_back(-cand, mult);
            }
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return roots;
}

bool has_irrational_real_root(const QPoly& p) {
    if (p.is_zero()) throw std::runtime_error("has_irrational_real_root of zero polynomial");
    QPoly cofactor = p;
    for (const auto& [root, mult] : rational_roots(p)) {
        QPoly lin(QVector{-root, Rational(1)});
        for (int i = 0; i < mult; ++i) cofactor = divmod(cofactor, lin).first;
    }
    if (cofactor.degree() < 1) return false;
    // Square-free part, then count distinct real roots via Sturm on all of R.
    QPoly s = divmod(cofactor, poly_gcd(cofactor, cofactor.derivative())).first;
    std::vector<QPoly> chain{s, s.derivative()};
    while (!chain.back().is_zero()) {
        QPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
        chain.push_back(Rational(-1) * r);
    }
    chain.pop_back();
    int real_roots = sturm_sign_changes(chain, false) - sturm_sign_changes(chain, true);
    return real_roots > 0;
}

QPoly binomial_poly(int j) {
    if (j < 0) throw std::runtime_error("binomial_poly: negative j");
    QPoly result = QPoly::constant(Rational(1));
    BigInt fact(1);
    for (int i = 0; i < j; ++i) {
        result = result * QPoly(QVector{Rational(-i), Rational(1)});
        fact *= i + 1;
    }
    return Rational(1, Rational(fact).get_num()) * result;
}

Rational binomial_at(const Rational& k, int j) {
    Rational result(1);
    BigInt fact(1);
    for (int i = 0; i < j; ++i) {
        result *= k - i;
        fact *= i + 1;
    }
    return result / Rational(fact);
}

Rational binomial_at(long k, int j) { return binomial_at(Rational(k), j); }

}  // namespace antloop
