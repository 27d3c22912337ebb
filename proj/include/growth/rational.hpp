// Exact rational arithmetic helpers on top of GMP's mpq_class.
#ifndef GROWTH_RATIONAL_HPP
#define GROWTH_RATIONAL_HPP

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace growth {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "p/q" or "p" (decimal-free). Throws std::invalid_argument on bad syntax.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t pos = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (pos == text.size()) throw std::invalid_argument("bad rational literal");
    bool seen_slash = false;
    for (std::size_t i = pos; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/') {
            if (seen_slash || i == pos || i + 1 == text.size())
                throw std::invalid_argument("bad rational literal: " + std::string(text));
            seen_slash = true;
        } else if (c < '0' || c > '9') {
            throw std::invalid_argument("bad rational literal: " + std::string(text));
        }
    }
    Rational q(std::string(text), 10);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    q.canonicalize();
    return q;
}

/// Parses a decimal string with optional exponent ("1e-9", "0.25") into an exact rational.
inline Rational parse_decimal(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = (text[i] == '-');
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool any_digit = false;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        digits += text[i++];
        any_digit = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            digits += text[i++];
            ++frac_digits;
            any_digit = true;
        }
    }
    long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_neg = (text[i] == '-');
            ++i;
        }
        if (i == text.size()) throw std::invalid_argument("bad decimal literal: " + std::string(text));
        long e = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            e = e * 10 + (text[i++] - '0');
            if (e > 100000) throw std::invalid_argument("exponent out of range");
        }
        exponent = exp_neg ? -e : e;
    }
    if (!any_digit || i != text.size())
        throw std::invalid_argument("bad decimal literal: " + std::string(text));

    Integer mantissa(digits.empty() ? "0" : digits, 10);
    if (negative) mantissa = -mantissa;
    long shift = exponent - frac_digits;
    Integer num = mantissa, den = 1;
    if (shift > 0) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        num *= p;
    } else if (shift < 0) {
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rational_string(const Rational& q) { return q.get_str(); }

inline Rational rational_pow(const Rational& q, unsigned long n) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), n);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Largest multiple of 2^-bits that is <= q.
inline Rational round_down_pow2(const Rational& q, unsigned bits) {
    Integer scaled_num = q.get_num() << bits;
    Integer p;
    mpz_fdiv_q(p.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
    Rational r(p, Integer(1) << bits);
    r.canonicalize();
    return r;
}

/// Smallest multiple of 2^-bits that is >= q.
inline Rational round_up_pow2(const Rational& q, unsigned bits) {
    Integer scaled_num = q.get_num() << bits;
    Integer p;
    mpz_cdiv_q(p.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
    Rational r(p, Integer(1) << bits);
    r.canonicalize();
    return r;
}

enum class DecimalRounding { down, up, nearest };

/// Fixed-point decimal rendering with a chosen rounding direction.
inline std::string decimal_string(const Rational& q, unsigned digits,
                                  DecimalRounding mode = DecimalRounding::nearest) {
    bool negative = q < 0;
    Rational a = negative ? Rational(-q) : q;
    if (negative) {
        // flip direction so the printed magnitude still bounds the value
        if (mode == DecimalRounding::down) mode = DecimalRounding::up;
        else if (mode == DecimalRounding::up) mode = DecimalRounding::down;
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Integer num = a.get_num() * scale;
    Integer scaled;
    switch (mode) {
        case DecimalRounding::down:
            mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), a.get_den().get_mpz_t());
            break;
        case DecimalRounding::up:
            mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), a.get_den().get_mpz_t());
            break;
        case DecimalRounding::nearest: {
            Integer twice = num * 2 + a.get_den();
            Integer den2 = a.get_den() * 2;
            mpz_fdiv_q(scaled.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
            break;
        }
    }
    Integer whole, frac;
    mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), scaled.get_mpz_t(), scale.get_mpz_t());
    std::string out = negative && scaled != 0 ? "-" : "";
    out += whole.get_str();
    if (digits > 0) {
        std::string f = frac.get_str();
        out += "." + std::string(digits - f.size(), '0') + f;
    }
    return out;
}

/// Best small-denominator approximation of x via continued fractions (|den| <= max_den).
inline Rational small_rational_from_double(double x, unsigned long max_den) {
    bool negative = x < 0;
    if (negative) x = -x;
    double rem = x;
    // convergents p/q
    unsigned long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int step = 0; step < 64; ++step) {
        double fl = (rem >= 9e18) ? 9e18 : rem;
        unsigned long long a = static_cast<unsigned long long>(fl);
        unsigned long long p2 = a * p1 + p0;
        unsigned long long q2 = a * q1 + q0;
        if (q2 > max_den || p2 < p1) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = rem - static_cast<double>(a);
        if (frac < 1e-15) break;
        rem = 1.0 / frac;
    }
    if (q1 == 0) { p1 = static_cast<unsigned long long>(x); q1 = 1; }
    Rational r(Integer(static_cast<unsigned long>(p1)), Integer(static_cast<unsigned long>(q1)));
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

}  // namespace growth

#endif  // GROWTH_RATIONAL_HPP
