#include "antloop/rational.hpp"

#include <cctype>
#include <cstdio>

namespace antloop {

std::optional<Rational> parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return std::nullopt;

    bool neg = false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits, frac_digits, den_digits;
    bool seen_dot = false, seen_slash = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            if (seen_slash)
                den_digits += c;
            else if (seen_dot)
                frac_digits += c;
            else
                digits += c;
        } else if (c == '.' && !seen_dot && !seen_slash) {
            seen_dot = true;
        } else if (c == '/' && !seen_slash && !seen_dot) {
            seen_slash = true;
        } else {
            return std::nullopt;
        }
    }
    if (digits.empty() && frac_digits.empty()) return std::nullopt;
    if (seen_slash && den_digits.empty()) return std::nullopt;

    BigInt num(digits.empty() ? "0" : digits);
    BigInt den(1);
    if (seen_dot) {
        for (char c : frac_digits) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
    } else if (seen_slash) {
        den = BigInt(den_digits);
        if (den == 0) return std::nullopt;
    }
    Rational q(num, den);
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string approx_string(const Rational& q, int digits) {
    if (is_integer(q)) return q.get_num().get_str();
    mpf_class f(q, 128);
    char* out = nullptr;
    gmp_asprintf(&out, "%.*Fg", digits, f.get_mpf_t());
    std::string result = std::string("~") + out;
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(out, result.size());  // strlen(out) + 1
    return result;
}

}  // namespace antloop
