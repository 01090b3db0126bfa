#ifndef FRECTIFY_NUMERICS_CHEBYSHEV_FIT_HPP
#define FRECTIFY_NUMERICS_CHEBYSHEV_FIT_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace frectify::numerics {

/// Least-squares polynomial on [lo, hi] expressed in the Chebyshev basis of
/// the mapped variable u = (2x - lo - hi) / (hi - lo).
template <typename Scalar>
struct ChebyshevFit {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Scalar lo = 0;
    Scalar hi = 1;
    Vector coefficients; // Chebyshev coefficients c_0..c_d
    Scalar rms_residual = 0;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    Scalar operator()(Scalar x) const
    {
        const Scalar u = (2 * x - lo - hi) / (hi - lo);
        // Clenshaw recurrence.
        Scalar b1 = 0, b2 = 0;
        for (int k = degree(); k >= 1; --k) {
            const Scalar b0 = 2 * u * b1 - b2 + coefficients(k);
            b2 = b1;
            b1 = b0;
        }
        return u * b1 - b2 + coefficients(0);
    }

    /// Coefficients a_k of sum a_k x^k in the original variable.
    Vector monomial() const
    {
        const int d = degree();
        // Chebyshev -> power basis in u.
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> T =
            Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(d + 1, d + 1);
        T(0, 0) = 1;
        if (d >= 1)
            T(1, 1) = 1;
        for (int k = 2; k <= d; ++k) {
            for (int j = 0; j <= d; ++j) {
                Scalar v = -T(k - 2, j);
                if (j >= 1)
                    v += 2 * T(k - 1, j - 1);
                T(k, j) = v;
            }
        }
        Vector in_u = T.transpose() * coefficients;
        // Substitute u = p x + q.
        const Scalar p = 2 / (hi - lo);
        const Scalar q = -(lo + hi) / (hi - lo);
        Vector out = Vector::Zero(d + 1);
        Vector power = Vector::Zero(d + 1); // coefficients of (p x + q)^k
        power(0) = 1;
        for (int k = 0; k <= d; ++k) {
            out += in_u(k) * power;
            Vector next = Vector::Zero(d + 1);
            for (int j = 0; j <= k && j + 1 <= d; ++j) {
                next(j + 1) += p * power(j);
                next(j) += q * power(j);
            }
            if (k + 1 <= d)
                power = next;
        }
        return out;
    }
};

/// Fits a degree-`degree` polynomial to (x_i, y_i) by least squares in the
/// Chebyshev basis (column-pivoted QR).
template <typename Scalar>
ChebyshevFit<Scalar> chebyshev_fit(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
                                   const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y, int degree)
{
    const Eigen::Index n = x.size();
    if (degree < 0 || n < degree + 1 || y.size() != n)
        throw std::invalid_argument("chebyshev_fit: not enough samples for the requested degree");

    ChebyshevFit<Scalar> fit;
    fit.lo = x.minCoeff();
    fit.hi = x.maxCoeff();
    if (!(fit.hi > fit.lo))
        throw std::invalid_argument("chebyshev_fit: degenerate abscissa range");

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> V(n, degree + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Scalar u = (2 * x(i) - fit.lo - fit.hi) / (fit.hi - fit.lo);
        V(i, 0) = 1;
        if (degree >= 1)
            V(i, 1) = u;
        for (int k = 2; k <= degree; ++k)
            V(i, k) = 2 * u * V(i, k - 1) - V(i, k - 2);
    }
    fit.coefficients = V.colPivHouseholderQr().solve(y);
    const auto residual = (V * fit.coefficients - y).eval();
    fit.rms_residual = std::sqrt(residual.squaredNorm() / static_cast<Scalar>(n));
    return fit;
}

} // namespace frectify::numerics

#endif // FRECTIFY_NUMERICS_CHEBYSHEV_FIT_HPP
