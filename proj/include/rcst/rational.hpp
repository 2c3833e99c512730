#ifndef RCST_RATIONAL_HPP
#define RCST_RATIONAL_HPP

#include <string>

#include "rcst/errors.hpp"
#include "rcst/int128.hpp"

namespace rcst {

// Exact rational with checked 128-bit numerator and denominator.
// Always stored normalized: den > 0, gcd(num, den) == 1.
struct Rational {
    int128 num = 0;
    int128 den = 1;

    Rational() = default;
    Rational(int128 n, int128 d) : num(n), den(d) { normalize(); }
    explicit Rational(int128 n) : num(n), den(1) {}

    void normalize() {
        if (den == 0) throw InvariantError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    Rational operator+(const Rational& o) const {
        return Rational(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                        checked_mul(den, o.den));
    }
    Rational operator*(const Rational& o) const {
        return Rational(checked_mul(num, o.num), checked_mul(den, o.den));
    }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const {
        return checked_mul(num, o.den) < checked_mul(o.num, den);
    }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }

    bool positive() const { return num > 0; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Rendered as "num/den" even when den is 1, so output stays uniform.
inline std::string to_string(const Rational& r) {
    return to_string(r.num) + "/" + to_string(r.den);
}

// Accepts "p", "p/q" and plain decimals such as "0.5".
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError(0, "empty rational");
    auto parse_int = [](const std::string& t) -> int128 {
        if (t.empty()) throw ParseError(0, "empty integer in rational");
        int128 v = 0;
        std::size_t i = 0;
        bool neg = false;
        if (t[0] == '-') {
            neg = true;
            i = 1;
            if (t.size() == 1) throw ParseError(0, "bad integer in rational");
        }
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') throw ParseError(0, "bad integer in rational: " + t);
            v = checked_add(checked_mul(v, 10), t[i] - '0');
        }
        return neg ? -v : v;
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string frac = s.substr(dot + 1);
        if (frac.empty()) throw ParseError(0, "bad decimal: " + s);
        int128 den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den = checked_mul(den, 10);
        int128 whole = dot == 0 ? 0 : parse_int(s.substr(0, dot));
        bool neg = whole < 0 || (dot > 0 && s[0] == '-');
        if (whole < 0) whole = -whole;
        int128 num = checked_add(checked_mul(whole, den), parse_int(frac));
        return Rational(neg ? -num : num, den);
    }
    return Rational(parse_int(s), 1);
}

} // namespace rcst

#endif
