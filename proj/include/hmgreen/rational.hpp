#ifndef HMGREEN_RATIONAL_HPP
#define HMGREEN_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace hmgreen {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline int sign(const Int& x) { return x.sign(); }
inline int sign(const Rat& x) { return num(x).sign(); }

inline double to_double(const Rat& x) { return static_cast<double>(x); }
inline double to_double(const Int& x) { return static_cast<double>(x); }

// floor(a / b) for exact integers, any signs, b != 0
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& x) { return floor_div(num(x), den(x)); }
inline Int ceil_rat(const Rat& x) { return -floor_rat(-x); }

// x - floor(x), in [0, 1)
inline Rat frac_part(const Rat& x) { return x - Rat(floor_rat(x)); }

// nonnegative remainder of a mod m, m > 0
inline Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = isqrt_floor(n);
    return root * root == n;
}

inline bool fits_long(const Int& n) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    return n >= lo && n <= hi;
}

inline std::string rat_string(const Rat& x) {
    if (den(x) == 1) return num(x).str();
    return num(x).str() + "/" + den(x).str();
}

// error kinds shared across modules
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct singularity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hmgreen

#endif
