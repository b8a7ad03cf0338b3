#pragma once

#include <cmath>
#include <concepts>

#include "fracdde/errors.hpp"

namespace fracdde {

/// Root of f on [lo, hi] by bisection. f(lo) and f(hi) must differ in sign
/// (a zero endpoint is returned as is). Stops when the bracket is below
/// `xtol` or stops shrinking in floating point.
template <std::invocable<double> F>
double bisect_root(F&& f, double lo, double hi, double xtol = 1e-15, int max_iter = 200) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw DomainError("bisect_root: root is not bracketed");
    for (int it = 0; it < max_iter && std::fabs(hi - lo) > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace fracdde
