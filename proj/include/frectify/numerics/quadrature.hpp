#ifndef FRECTIFY_NUMERICS_QUADRATURE_HPP
#define FRECTIFY_NUMERICS_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace frectify::numerics {

namespace detail {

template <typename Value>
double max_abs(const Value& v)
{
    if constexpr (std::is_arithmetic_v<Value>)
        return std::abs(static_cast<double>(v));
    else
        return static_cast<double>(v.cwiseAbs().maxCoeff());
}

template <typename Scalar, typename Fn, typename Value>
Value adaptive_simpson_step(const Fn& fn, Scalar a, Scalar b, Value fa, Value fm, Value fb, Value whole,
                            Scalar tol, int depth)
{
    const Scalar m = (a + b) / 2;
    const Scalar lm = (a + m) / 2;
    const Scalar rm = (m + b) / 2;
    const Value flm = fn(lm);
    const Value frm = fn(rm);
    const Value left = (m - a) / 6 * (fa + 4 * flm + fm);
    const Value right = (b - m) / 6 * (fm + 4 * frm + fb);
    const Value delta = left + right - whole;

    if (depth <= 0 || max_abs(delta) <= 15 * tol)
        return left + right + delta / 15;
    return adaptive_simpson_step(fn, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson_step(fn, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature over [a, b] with Richardson extrapolation on
/// accepted panels. The integrand may return a scalar or a fixed-size Eigen
/// vector; `tol` is absolute, in the max norm.
template <typename Scalar, typename Fn>
auto adaptive_simpson(const Fn& fn, Scalar a, Scalar b, Scalar tol = Scalar(1e-10), int max_depth = 48)
{
    using Value = std::decay_t<decltype(fn(a))>;
    if (a == b)
        return Value(fn(a) * Scalar(0));
    // Split once up front so integrands with a symmetric node pattern do not
    // fool the first error estimate.
    const Scalar m = (a + b) / 2;
    Value total = fn(a) * Scalar(0);
    for (auto [lo, hi] : {std::pair{a, m}, std::pair{m, b}}) {
        const Value flo = fn(lo);
        const Value fhi = fn(hi);
        const Value fmid = fn((lo + hi) / 2);
        const Value whole = (hi - lo) / 6 * (flo + 4 * fmid + fhi);
        total += detail::adaptive_simpson_step(fn, lo, hi, flo, fmid, fhi, whole, tol / 2, max_depth);
    }
    return total;
}

/// Cumulative integral of uniformly spaced samples with spacing `h`, fourth
/// order: each cell uses the cubic through its four nearest samples (one-sided
/// at the ends). Needs at least 4 samples; returns out[0] = 0.
template <typename Value, typename Scalar>
std::vector<Value> cumulative_integral(const std::vector<Value>& y, Scalar h)
{
    const std::size_t n = y.size();
    if (n < 4)
        throw std::invalid_argument("cumulative_integral needs at least 4 samples");
    std::vector<Value> out(n);
    out[0] = y[0] * Scalar(0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Value cell;
        if (i == 0)
            cell = h / 24 * (9 * y[0] + 19 * y[1] - 5 * y[2] + y[3]);
        else if (i + 2 == n)
            cell = h / 24 * (9 * y[n - 1] + 19 * y[n - 2] - 5 * y[n - 3] + y[n - 4]);
        else
            cell = h / 24 * (-y[i - 1] + 13 * y[i] + 13 * y[i + 1] - y[i + 2]);
        out[i + 1] = out[i] + cell;
    }
    return out;
}

/// Composite Simpson on an even number of uniform panels.
template <typename Value, typename Scalar>
Value composite_simpson(const std::vector<Value>& y, Scalar h)
{
    const std::size_t n = y.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("composite_simpson needs an odd sample count >= 3");
    Value sum = y.front() + y.back();
    for (std::size_t i = 1; i + 1 < n; ++i)
        sum += (i % 2 ? Scalar(4) : Scalar(2)) * y[i];
    return h / 3 * sum;
}

} // namespace frectify::numerics

#endif // FRECTIFY_NUMERICS_QUADRATURE_HPP
