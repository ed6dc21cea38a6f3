#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace latpol {

// Exact integer and rational scalars. All geometry in this library is exact;
// hot paths may run on int64 after an a-priori worst-case bound check proves
// that no intermediate can overflow (see scan/hull internals).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool fits_int64(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    return v >= lo && v <= hi;
}

inline std::int64_t to_int64(const Int& v) {
    if (!fits_int64(v)) throw std::overflow_error("to_int64: value out of range");
    return static_cast<std::int64_t>(v);
}

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

inline Int gcd_int(Int a, Int b) {
    return boost::multiprecision::gcd(a, b);
}

// Floor/ceil division with sign-correct semantics for negative operands.
template <typename T>
T floor_div(const T& a, const T& b) {
    T q = a / b;
    T r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

template <typename T>
T ceil_div(const T& a, const T& b) {
    T q = a / b;
    T r = a % b;
    if (r != 0 && ((r < 0) == (b < 0))) ++q;
    return q;
}

inline Int rat_floor(const Rat& r) {
    return floor_div(Int(boost::multiprecision::numerator(r)),
                     Int(boost::multiprecision::denominator(r)));
}

inline Int rat_ceil(const Rat& r) {
    return ceil_div(Int(boost::multiprecision::numerator(r)),
                    Int(boost::multiprecision::denominator(r)));
}

inline std::string int_to_string(const Int& v) { return v.str(); }

} // namespace latpol
