#pragma once
#include <gmpxx.h>
#include <cmath>
#include <cstdint>
#include <string>

#include "sospencil/errors.hpp"

namespace sospencil {

using Rational = mpq_class;

inline int sign_of(const Rational& r) { return sgn(r); }

inline std::string rat_str(const Rational& r) {
    return r.get_str();  // "p" or "p/q", canonical
}

inline Rational rat_parse(const std::string& s) {
    mpq_class r;
    if (r.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'", 0);
    r.canonicalize();
    return r;
}

inline double rat_double(const Rational& r) { return r.get_d(); }

// Best rational approximation to x with denominator <= max_den, by walking
// the continued-fraction convergents. Exact ties resolve to the earlier
// (smaller-denominator) convergent.
inline Rational rational_near(double x, unsigned long max_den) {
    if (!std::isfinite(x)) throw Error("rational_near: non-finite input");
    bool neg = x < 0;
    double v = neg ? -x : x;
    // convergents p/q
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 9e17) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > static_cast<long long>(max_den) || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15 * std::max(1.0, v)) break;
        frac = 1.0 / rem;
    }
    Rational r(mpz_class(static_cast<long>(p1)),
               mpz_class(static_cast<long>(q1 == 0 ? 1 : q1)));
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

}  // namespace sospencil
