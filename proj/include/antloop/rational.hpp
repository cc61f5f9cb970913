#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace antloop {

// Exact arbitrary-precision rational scalar. mpq_class keeps values
// canonical (lowest terms, positive denominator), which is exactly the
// representation contract the rest of the analyzer relies on.
using Rational = mpq_class;
using BigInt = mpz_class;

using QVector = std::vector<Rational>;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline int sign(const Rational& q) { return sgn(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt rat_floor(const Rational& q) {
    return floor_div(BigInt(q.get_num()), BigInt(q.get_den()));
}

inline BigInt rat_ceil(const Rational& q) {
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return c;
}

// Parses "p", "-p/q" or a plain decimal like "0.5" into an exact value.
std::optional<Rational> parse_rational(const std::string& text);

std::string to_string(const Rational& q);

// Decimal rendering for reports; prepends '~' when the value is inexact
// in decimal. Handles magnitudes far beyond double range.
std::string approx_string(const Rational& q, int digits = 6);

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace antloop
