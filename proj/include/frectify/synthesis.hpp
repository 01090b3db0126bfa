#ifndef FRECTIFY_SYNTHESIS_HPP
#define FRECTIFY_SYNTHESIS_HPP

#include "frectify/curve.hpp"
#include "frectify/function_spec.hpp"
#include "frectify/fvector.hpp"

#include <array>
#include <memory>
#include <vector>

namespace frectify {

/// A unit-speed curve Y(t) on the unit sphere, given by component
/// expressions. Construction checks |Y| = 1 and |Y'| = 1 on a 1001-point grid.
class SphericalCurve {
public:
    static SphericalCurve make(expr::Expr x, expr::Expr y, expr::Expr z, Interval range);

    Vec3 operator()(double t) const;
    Vec3 derivative(double t) const;
    Interval range() const noexcept { return range_; }
    const std::array<expr::Expr, 3>& components() const noexcept { return y_; }

private:
    std::array<expr::Expr, 3> y_;
    std::array<expr::Expr, 3> dy_;
    Interval range_;
};

/// The synthesis parameter t approaches a pole of sec(t + t0).
class SingularityGuardError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Sign of the integral term. `corrected` is the sign that makes the
/// synthesized curve unit speed in s and f-rectifying; `as_published`
/// reproduces the printed formula, whose closed-form example was derived
/// with it.
enum class IntegralSign { corrected, as_published };

struct SynthesisConfig {
    FunctionSpec spec;
    double c = 1.0;
    double t0 = 0.0;
    Interval t_range{-0.5, 0.5};
    int n = 256;
    double guard = 0.05;
    IntegralSign sign = IntegralSign::corrected;
};

/// Throws ValidationError (c, n, sign of f, t0 inconsistent with F(0)),
/// SingularityGuardError or InverseRangeError.
void validate(const SynthesisConfig& cfg);

/// s = F⁻¹(c·tan(t + t0)).
double param_to_arclength(const SynthesisConfig& cfg, double t);

/// αf(t) = c·sec(t + t0)·Y(t).
Vec3 f_position_of_t(const SynthesisConfig& cfg, const SphericalCurve& Y, double t);

/// A curve built from (f, c, t0, Y):
///   α(t) = (c·sec/f)·Y ± c²∫_{t_lo}^{t} f'·(sec/f)³·Y dt,
/// with f and f' evaluated at s(t) and the trigonometric functions at t + t0.
/// The integral is tabulated once (cell-wise Simpson, refined by doubling
/// until successive tables agree to 1e-9); evaluation between table nodes
/// integrates the remaining piece adaptively. Immutable.
class SynthesizedCurve {
public:
    const SynthesisConfig& config() const noexcept;
    const SphericalCurve& spherical() const noexcept;

    Vec3 position(double t) const;
    Vec3 velocity(double t) const;
    double arclength(double t) const { return param_to_arclength(config(), t); }
    Vec3 f_position(double t) const { return f_position_of_t(config(), spherical(), t); }

    /// The n+1 uniform parameter nodes of the configuration and their points.
    std::vector<double> t_nodes() const;
    std::vector<Vec3> nodes() const;

    /// Cells in the final integral table.
    int table_cells() const noexcept;

    /// The curve as a ParamCurve with position and velocity.
    ParamCurve curve() const;

    /// Uniform arclength grid over [s(t_lo), s(t_hi)]. With the corrected sign
    /// the parameter map is exact (t = atan(F(s)/c) - t0); otherwise the
    /// length is integrated numerically from s(t_lo).
    ArcLengthCurve resample_arclength(int n) const;

private:
    struct Impl;
    friend SynthesizedCurve synthesize(const SynthesisConfig& cfg, const SphericalCurve& Y);
    explicit SynthesizedCurve(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

SynthesizedCurve synthesize(const SynthesisConfig& cfg, const SphericalCurve& Y);

/// Sampled spherical image Y = αf/|αf| on the f-position vector's grid, after
/// re-anchoring αf so that it lies in the rectifying plane.
struct SphericalImage {
    std::vector<double> s;
    std::vector<Vec3> Y;
};

SphericalImage spherical_image(const FPositionVector& fp);
/// Resamples `curve` by arclength starting at `s_origin`, computes the frame
/// by finite differences and then the image.
SphericalImage spherical_image(const ParamCurve& curve, const FunctionSpec& spec, int n, double s_origin);

} // namespace frectify

#endif // FRECTIFY_SYNTHESIS_HPP
