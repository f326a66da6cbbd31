#pragma once

// Exact arithmetic primitives: arbitrary-precision integers and rationals,
// canonical "p/q" serialization, nearest-integer distance.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace petlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Domain error carrying a stable machine-readable code ("bad_parameter",
// "empty_parameter_range", ...). The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

inline Int pow_int(Int base, unsigned long exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

// Floor of v^(1/e) for v >= 0, e >= 1: the largest t with t^e <= v.
inline Int root_floor(const Int& v, unsigned long e) {
    if (v < 0) throw Error("domain", "root_floor requires a non-negative argument");
    if (e == 0) throw Error("domain", "root_floor requires exponent >= 1");
    if (v <= 1 || e == 1) return v;
    Int lo = 0, hi = Int(1) << (msb(v) / e + 1);
    while (lo < hi) {  // invariant: lo^e <= v < (hi+1)^e
        Int mid = (lo + hi + 1) / 2;
        if (pow_int(mid, e) <= v) lo = mid; else hi = mid - 1;
    }
    return lo;
}

// Distance from a rational to the nearest integer, exact.
// Largest integer <= v.
inline Int rat_floor(const Rat& v) {
    Int num = numerator(v), den = denominator(v);
    Int q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

inline Rat nearest_int_distance(const Rat& a) {
    Int num = numerator(a), den = denominator(a);  // den > 0 canonical
    Int m = num % den;
    if (m < 0) m += den;
    Int other = den - m;
    return Rat(m < other ? m : other, den);
}

// Canonical string: integers as "p", proper rationals as "p/q" with q > 1.
inline std::string rat_str(const Rat& v) {
    Int num = numerator(v), den = denominator(v);
    std::string s = num.str();
    if (den != 1) s += "/" + den.str();
    return s;
}

// Decimal only. cpp_int's string constructor follows C++ literal rules
// (leading 0 reads as octal, 0x as hex), so validate and strip first.
inline Int int_parse(const std::string& s) {
    size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
    if (pos == s.size()) throw Error("domain", "cannot parse integer '" + s + "'");
    for (size_t i = pos; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw Error("domain", "cannot parse integer '" + s + "'");
    while (pos + 1 < s.size() && s[pos] == '0') ++pos;
    Int v(s.substr(pos));
    return neg ? -v : v;
}

inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(int_parse(s));
    Int num = int_parse(s.substr(0, slash));
    Int den = int_parse(s.substr(slash + 1));
    if (den == 0) throw Error("domain", "rational with zero denominator: " + s);
    return Rat(num, den);
}

inline long long to_ll(const Int& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw Error("domain", "integer too large for machine word: " + v.str());
    return static_cast<long long>(v);
}

inline double to_double(const Rat& v) { return static_cast<double>(v); }

}  // namespace petlab
