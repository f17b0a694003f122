#pragma once

#include <cmath>
#include <quadmath.h>

#include "hsdist/common.hpp"

namespace hsdist {

namespace detail {

/// Terminating Gauss hypergeometric sum in quad precision with Kahan
/// compensation. The series alternates with a wide dynamic range for the
/// arguments used by the eigenvalue density, so 113-bit arithmetic is not
/// optional here.
inline __float128 hyp2f1_terminating_q(long a_int, __float128 b, __float128 c, __float128 z) {
    __float128 sum = 0.0Q;
    __float128 comp = 0.0Q;
    __float128 term = 1.0Q;
    for (long k = 0;; ++k) {
        const __float128 y = term - comp;
        const __float128 t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (a_int + k == 0) break;
        term = term * (static_cast<__float128>(a_int) + k) * (b + k) / ((c + k) * (k + 1)) * z;
    }
    return sum;
}

}  // namespace detail

/// 2F1(a, b; c; z) for nonpositive integer a (the series terminates after
/// |a|+1 terms). c must not be a nonpositive integer above a, otherwise a
/// zero denominator is hit before termination.
inline double hyp2f1_terminating(long a, double b, double c, double z) {
    if (a > 0) throw UnsupportedParameter("hyp2f1_terminating: a must be a nonpositive integer");
    if (c <= 0.0 && c == std::floor(c) && static_cast<long>(c) > a)
        throw UnsupportedParameter("hyp2f1_terminating: c is a nonpositive integer above a");
    return static_cast<double>(detail::hyp2f1_terminating_q(a, b, c, z));
}

}  // namespace hsdist
