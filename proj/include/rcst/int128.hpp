#ifndef RCST_INT128_HPP
#define RCST_INT128_HPP

#include <cstdint>
#include <string>

#include "rcst/errors.hpp"

namespace rcst {

// Signed 128-bit integer used for every cost and distance computation.
// All arithmetic on costs goes through the checked_* helpers below; an
// overflow is a hard error, never a silent wraparound.
using int128 = __int128;

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int128 addition overflow");
    return r;
}

inline int128 checked_sub(int128 a, int128 b) {
    int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int128 subtraction overflow");
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int128 multiplication overflow");
    return r;
}

// base^exp with overflow checking, exp >= 0
inline int128 checked_pow(int128 base, int exp) {
    if (exp < 0) throw OverflowError("negative exponent");
    int128 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

inline std::string to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // avoid overflow on the minimum value by working digit by digit
    std::string s;
    while (v != 0) {
        int d = static_cast<int>(v % 10);
        if (d < 0) d = -d;
        s.push_back(static_cast<char>('0' + d));
        v /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

inline int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace rcst

#endif
