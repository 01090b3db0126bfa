#ifndef FRECTIFY_NUMERICS_ROOTS_HPP
#define FRECTIFY_NUMERICS_ROOTS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace frectify::numerics {

struct MonotoneInverseOptions {
    double bracket_width = 1e-6; // bisect until the bracket is this narrow
    int max_newton = 50;
};

/// Solves g(x) = target for a strictly monotone g on [lo, hi] by bisection
/// down to a narrow bracket, then Newton polish with the supplied derivative.
/// Newton steps that leave the bracket fall back to bisection, so the result
/// always stays inside [lo, hi].
template <typename Scalar, typename Fn, typename Deriv>
Scalar invert_monotone(const Fn& g, const Deriv& dg, Scalar target, Scalar lo, Scalar hi,
                       const MonotoneInverseOptions& opt = {})
{
    using std::abs;
    Scalar glo = g(lo) - target;
    Scalar ghi = g(hi) - target;
    if (glo == 0)
        return lo;
    if (ghi == 0)
        return hi;
    if ((glo > 0) == (ghi > 0))
        throw std::domain_error("invert_monotone: target not bracketed");

    while (hi - lo > Scalar(opt.bracket_width)) {
        const Scalar mid = (lo + hi) / 2;
        const Scalar gm = g(mid) - target;
        if (gm == 0)
            return mid;
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }

    Scalar x = (lo + hi) / 2;
    for (int it = 0; it < opt.max_newton; ++it) {
        const Scalar gx = g(x) - target;
        if (gx == 0)
            return x;
        if ((gx > 0) == (glo > 0))
            lo = x, glo = gx;
        else
            hi = x;
        const Scalar d = dg(x);
        Scalar next = d != 0 ? x - gx / d : (lo + hi) / 2;
        if (!(next > lo && next < hi))
            next = (lo + hi) / 2;
        if (abs(next - x) <= std::numeric_limits<Scalar>::epsilon() * abs(x) || next == x)
            return next;
        x = next;
    }
    return x;
}

} // namespace frectify::numerics

#endif // FRECTIFY_NUMERICS_ROOTS_HPP
