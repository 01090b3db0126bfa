#ifndef FRECTIFY_NUMERICS_SPLINE_HPP
#define FRECTIFY_NUMERICS_SPLINE_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace frectify::numerics {

enum class SplineEnd {
    natural,    // zero second derivative at both ends
    not_a_knot, // third derivative continuous across the second and penultimate knots
};

/// Interpolating cubic spline through (x_i, y_i), x strictly increasing.
/// Value may be a scalar or a fixed-size Eigen vector.
template <typename Scalar, typename Value>
class CubicSpline {
public:
    CubicSpline(std::vector<Scalar> x, std::vector<Value> y, SplineEnd end = SplineEnd::natural)
        : x_(std::move(x)), y_(std::move(y))
    {
        const std::size_t n = x_.size();
        if (n < 3 || y_.size() != n)
            throw std::invalid_argument("CubicSpline: need at least 3 matching samples");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw std::invalid_argument("CubicSpline: abscissae must be strictly increasing");
        if (n < 4)
            end = SplineEnd::natural;

        // Second derivatives m_i. Interior rows:
        //   h0 m_{i-1} + 2(h0 + h1) m_i + h1 m_{i+1} = 6 (slope_{i} - slope_{i-1})
        // For not-a-knot, m_0 and m_{n-1} are eliminated from the first and
        // last interior rows, which keeps the system tridiagonal.
        const Value zero = y_[0] * Scalar(0);
        m_.assign(n, zero);
        const std::size_t rows = n - 2; // unknowns m_1..m_{n-2}
        std::vector<Scalar> sub(rows, 0), diag(rows, 0), sup(rows, 0);
        std::vector<Value> rhs(rows, zero);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const Scalar h0 = x_[i] - x_[i - 1];
            const Scalar h1 = x_[i + 1] - x_[i];
            sub[i - 1] = h0;
            diag[i - 1] = 2 * (h0 + h1);
            sup[i - 1] = h1;
            rhs[i - 1] = 6 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        }
        const Scalar ha = x_[1] - x_[0], hb = x_[2] - x_[1];
        const Scalar hy = x_[n - 2] - x_[n - 3], hz = x_[n - 1] - x_[n - 2];
        if (end == SplineEnd::not_a_knot) {
            // m_0 = ((ha + hb) m_1 - ha m_2) / hb
            diag[0] += ha * (ha + hb) / hb;
            sup[0] -= ha * ha / hb;
            // m_{n-1} = ((hy + hz) m_{n-2} - hz m_{n-3}) / hy
            diag[rows - 1] += hz * (hy + hz) / hy;
            sub[rows - 1] -= hz * hz / hy;
        }
        // Thomas algorithm.
        for (std::size_t r = 1; r < rows; ++r) {
            const Scalar w = sub[r] / diag[r - 1];
            diag[r] -= w * sup[r - 1];
            rhs[r] = rhs[r] - w * rhs[r - 1];
        }
        m_[rows] = rhs[rows - 1] / diag[rows - 1];
        for (std::size_t r = rows - 1; r-- > 0;)
            m_[r + 1] = (rhs[r] - sup[r] * m_[r + 2]) / diag[r];
        if (end == SplineEnd::not_a_knot) {
            m_[0] = ((ha + hb) * m_[1] - ha * m_[2]) / hb;
            m_[n - 1] = ((hy + hz) * m_[n - 2] - hz * m_[n - 3]) / hy;
        }
    }

    Scalar front() const { return x_.front(); }
    Scalar back() const { return x_.back(); }
    const std::vector<Scalar>& knots() const { return x_; }

    Value operator()(Scalar x) const { return evaluate(x, 0); }
    Value derivative(Scalar x, int order = 1) const { return evaluate(x, order); }

private:
    std::size_t segment(Scalar x) const
    {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
        return std::min(i, x_.size() - 2);
    }

    Value evaluate(Scalar x, int order) const
    {
        const std::size_t i = segment(x);
        const Scalar h = x_[i + 1] - x_[i];
        const Scalar a = (x_[i + 1] - x) / h;
        const Scalar b = (x - x_[i]) / h;
        const Value& y0 = y_[i];
        const Value& y1 = y_[i + 1];
        const Value& m0 = m_[i];
        const Value& m1 = m_[i + 1];
        switch (order) {
        case 0:
            return a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * (h * h / 6);
        case 1:
            return (y1 - y0) / h + ((1 - 3 * a * a) * m0 + (3 * b * b - 1) * m1) * (h / 6);
        case 2:
            return a * m0 + b * m1;
        case 3:
            return (m1 - m0) / h;
        default:
            return y0 * Scalar(0);
        }
    }

    std::vector<Scalar> x_;
    std::vector<Value> y_;
    std::vector<Value> m_;
};

template <typename Scalar, typename Value>
using NaturalCubicSpline = CubicSpline<Scalar, Value>;

} // namespace frectify::numerics

#endif // FRECTIFY_NUMERICS_SPLINE_HPP
