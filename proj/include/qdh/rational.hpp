#pragma once

#include <cmath>
#include <string>

#include <gmpxx.h>

namespace qdh {

/// Exact arithmetic scalar for the rational mode (k <= 2, d <= 10 surfaces).
using Rational = mpq_class;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double fraction(long num, long den) { return double(num) / double(den); }
    static double abs(double x) { return std::fabs(x); }
    static double to_double(double x) { return x; }
    static std::string str(double x) { return std::to_string(x); }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational fraction(long num, long den) {
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static double to_double(const Rational& x) { return x.get_d(); }
    static std::string str(const Rational& x) { return x.get_str(); }
};

}  // namespace qdh
