#pragma once

// Exact scalar types and the error hierarchy shared by every module.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latpts {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed external input (rational strings, JSON shapes, CLI flags).
class ParseError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Singular or linearly dependent input where full rank is required.
class RankError : public Error {
  public:
    using Error::Error;
};

/// A domain invariant does not hold (non-positive halfwidth, indefinite gram, ...).
class InvariantError : public Error {
  public:
    using Error::Error;
};

/// A result the mathematics guarantees did not materialize. Always a code bug.
class BugAlarm : public Error {
  public:
    using Error::Error;
};

inline Rational make_rational(const Integer &num, const Integer &den) {
    if (den == 0)
        throw InvariantError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational &r) { return r.get_den() == 1; }

inline Integer floor(const Rational &r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer ceil(const Rational &r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer floor_div(const Integer &a, const Integer &b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer pow2(unsigned e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline Rational pow(const Rational &base, unsigned e) {
    Rational r(1);
    for (unsigned i = 0; i < e; ++i)
        r *= base;
    return r;
}

inline Rational abs(const Rational &r) { return r < 0 ? Rational(-r) : r; }

inline std::string to_string(const Integer &z) { return z.get_str(); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational &r) {
    if (is_integer(r))
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "[+-]digits" or "[+-]digits/digits" exactly. Anything else, including
/// a zero denominator, is rejected with the offending character position.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&](std::size_t pos, const char *what) -> Rational {
        throw ParseError("malformed rational '" + std::string(text) + "' at position " +
                         std::to_string(pos) + ": " + what);
    };
    std::size_t i = 0;
    std::string num;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        if (text[i] == '-')
            num.push_back('-');
        ++i;
    }
    std::size_t digits_start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9')
        num.push_back(text[i++]);
    if (i == digits_start)
        return fail(i, "expected digit");
    std::string den = "1";
    if (i < text.size() && text[i] == '/') {
        ++i;
        std::size_t den_start = i;
        den.clear();
        while (i < text.size() && text[i] >= '0' && text[i] <= '9')
            den.push_back(text[i++]);
        if (i == den_start)
            return fail(i, "expected denominator digit");
        if (den.find_first_not_of('0') == std::string::npos)
            return fail(den_start, "zero denominator");
    }
    if (i != text.size())
        return fail(i, "unexpected character");
    return make_rational(Integer(num), Integer(den));
}

/// Integer square root, rounded down. Requires n >= 0.
inline Integer isqrt(const Integer &n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Exact number of the form a + b*sqrt(r), r >= 0. Interval endpoints for
/// ellipsoid slices and for sqrt-valued dilations are carried this way.
struct QuadraticSurd {
    Rational a{0};
    Rational b{0};
    Rational r{0};

    static QuadraticSurd rational(const Rational &v) { return {v, 0, 0}; }

    bool is_rational() const { return b == 0 || r == 0; }

    int sign() const {
        int sa = sgn(a);
        if (is_rational())
            return sa;
        int sb = sgn(b);
        if (sa >= 0 && sb >= 0)
            return (sa > 0 || sb > 0) ? 1 : 0;
        if (sa <= 0 && sb <= 0)
            return -1;
        Rational lhs = a * a;
        Rational rhs = b * b * r;
        int c = cmp(lhs, rhs);
        return sa > 0 ? c : -c;
    }

    QuadraticSurd operator-(const Rational &v) const { return {a - v, b, r}; }
    QuadraticSurd operator-() const { return {-a, -b, r}; }

    double approx() const {
        if (is_rational())
            return a.get_d();
        return a.get_d() + b.get_d() * std::sqrt(r.get_d());
    }

    Integer floor() const {
        if (is_rational())
            return latpts::floor(a);
        Integer m(std::floor(approx()));
        while ((*this - Rational(m + 1)).sign() >= 0)
            ++m;
        while ((*this - Rational(m)).sign() < 0)
            --m;
        return m;
    }

    Integer ceil() const { return -(-*this).floor(); }
};

}  // namespace latpts
