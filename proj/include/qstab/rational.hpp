#ifndef QSTAB_RATIONAL_HPP
#define QSTAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qstab {

// Exact arithmetic used by everything that draws a discrete conclusion:
// arbitrary-precision integers with normalized fractions.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& q) { return numerator(q); }
inline BigInt rat_den(const Rat& q) { return denominator(q); }

inline bool rat_is_integer(const Rat& q) { return denominator(q) == 1; }

/// Largest integer <= q.
inline BigInt rat_floor(const Rat& q) {
    BigInt n = numerator(q), d = denominator(q);  // d > 0 after normalization
    BigInt t = n / d;                             // truncates toward zero
    if (n < 0 && t * d != n) --t;
    return t;
}

/// Fractional part q - floor(q), always in [0, 1).
inline Rat rat_frac(const Rat& q) { return q - Rat(rat_floor(q)); }

inline double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

inline std::string rat_to_string(const Rat& q) {
    if (rat_is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace qstab

#endif  // QSTAB_RATIONAL_HPP
