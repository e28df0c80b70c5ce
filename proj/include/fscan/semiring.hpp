#pragma once

#include <algorithm>
#include <concepts>
#include <limits>

namespace fscan {

// A scalar semiring over double: (add, zero) is a commutative monoid,
// (mul, one) a monoid, mul distributes over add and zero annihilates.
template <class SR>
concept Semiring = requires(const SR& sr, double a, double b) {
    { sr.zero() } -> std::convertible_to<double>;
    { sr.one() } -> std::convertible_to<double>;
    { sr.add(a, b) } -> std::convertible_to<double>;
    { sr.mul(a, b) } -> std::convertible_to<double>;
};

struct RealSemiring {
    double zero() const { return 0.0; }
    double one() const { return 1.0; }
    double add(double a, double b) const { return a + b; }
    double mul(double a, double b) const { return a * b; }
};

// Min-plus tropical semiring. The additive unit ("no path") is +inf:
// min(x, +inf) = x and +inf annihilates +. Input files spell the bottom
// element "-inf"; parsing canonicalizes it (see io.hpp).
struct TropicalSemiring {
    static double bottom() { return std::numeric_limits<double>::infinity(); }
    double zero() const { return bottom(); }
    double one() const { return 0.0; }
    double add(double a, double b) const { return std::min(a, b); }
    double mul(double a, double b) const { return a + b; }
};

}  // namespace fscan
