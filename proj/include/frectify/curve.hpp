#ifndef FRECTIFY_CURVE_HPP
#define FRECTIFY_CURVE_HPP

#include "frectify/expr.hpp"
#include "frectify/types.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace frectify {

/// Speed fell below the regularity threshold at parameter `t`.
class NonRegularCurveError : public NumericalError {
public:
    NonRegularCurveError(double t, double speed);
    double parameter() const noexcept { return t_; }

private:
    double t_;
};

/// A regular space curve over a parameter interval.
///
/// Three representations share one interface:
///  - analytic: component expressions, with exact symbolic derivatives;
///  - sampled: ordered (t, point) samples, interpolated by natural cubic
///    splines per component;
///  - functional: position and velocity callables (used for curves built by
///    synthesis, whose integral term has no closed form).
/// How a sampled curve is interpolated between its samples.
enum class SampledInterpolation {
    /// Not-a-knot cubic spline: C², but the third derivative is piecewise
    /// constant, so torsion carries first-order noise.
    cubic_spline,
    /// Degree-7 Lagrange polynomial through the 8 samples around each
    /// interval: continuous positions and derivatives accurate to O(h⁵)
    /// up to third order.
    local_polynomial,
};

class ParamCurve {
public:
    enum class Kind { analytic, sampled, functional };

    static ParamCurve analytic(expr::Expr x, expr::Expr y, expr::Expr z, Interval range);
    /// Requires at least 16 samples with strictly increasing parameters.
    static ParamCurve sampled(std::vector<double> t, std::vector<Vec3> points,
                              SampledInterpolation interpolation = SampledInterpolation::cubic_spline);
    static ParamCurve functional(std::function<Vec3(double)> position, std::function<Vec3(double)> velocity,
                                 Interval range);

    Kind kind() const noexcept;
    Interval range() const noexcept;

    Vec3 position(double t) const;
    /// d/dt, d²/dt², d³/dt³ for order 1..3. Functional curves only provide order 1.
    Vec3 derivative(double t, int order = 1) const;

    /// Analytic only: component expressions and their derivatives.
    const std::array<expr::Expr, 3>& components(int derivative_order = 0) const;

private:
    struct Impl;
    explicit ParamCurve(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

/// Uniform arclength grid s_k = s_origin + k·ds, k = 0..n, with the curve
/// parameter and position at every node.
struct ArcLengthCurve {
    double s_origin = 0.0;
    double ds = 0.0;
    double length = 0.0;
    std::vector<double> t;
    std::vector<Vec3> points;
    bool analytic_origin = false;

    std::size_t size() const noexcept { return points.size(); }
    double s(std::size_t k) const noexcept { return s_origin + static_cast<double>(k) * ds; }
    std::vector<double> s_values() const;
};

struct ResampleOptions {
    double s_origin = 0.0;
    double min_speed = 1e-8;
    /// Parameter cells used for the cumulative length table (0 = automatic).
    int table_cells = 0;
};

/// Reparametrizes by arclength onto n+1 uniform nodes. Length is integrated
/// with adaptive Simpson on the speed; node parameters are found by monotone
/// inversion of the cumulative length.
ArcLengthCurve resample_arclength(const ParamCurve& curve, int n, const ResampleOptions& options = {});

/// Arclength from the start of the curve's range to parameter t.
double arclength_to(const ParamCurve& curve, double t);

} // namespace frectify

#endif // FRECTIFY_CURVE_HPP
