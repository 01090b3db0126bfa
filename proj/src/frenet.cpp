#include "frectify/frenet.hpp"

#include "frectify/numerics/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace frectify {

VanishingCurvatureError::VanishingCurvatureError(std::size_t node, double s, double kappa)
    : NumericalError("curvature vanishes at node " + std::to_string(node) + " (s = " + std::to_string(s) +
                     ", kappa = " + std::to_string(kappa) + ")"),
      node_(node)
{
}

namespace {

// Fills the frame at node k from the first three parameter derivatives.
void frame_from_derivatives(FrenetData& fd, std::size_t k, const Vec3& r1, const Vec3& r2, const Vec3& r3,
                            double kappa_min)
{
    const Vec3 cross = r1.cross(r2);
    const double speed = r1.norm();
    const double cross_norm = cross.norm();
    const double kappa = cross_norm / (speed * speed * speed);
    if (!(kappa >= kappa_min))
        throw VanishingCurvatureError(k, fd.s[k], kappa);

    fd.T[k] = r1 / speed;
    fd.B[k] = cross / cross_norm;
    fd.N[k] = fd.B[k].cross(fd.T[k]);
    fd.kappa[k] = kappa;
    fd.tau[k] = cross.dot(r3) / (cross_norm * cross_norm);
}

FrenetData allocate(const ArcLengthCurve& grid)
{
    const std::size_t n = grid.size();
    FrenetData fd;
    fd.s_origin = grid.s_origin;
    fd.ds = grid.ds;
    fd.s = grid.s_values();
    fd.T.resize(n);
    fd.N.resize(n);
    fd.B.resize(n);
    fd.kappa.resize(n);
    fd.tau.resize(n);
    return fd;
}

} // namespace

FrenetData frenet(const ArcLengthCurve& curve, const FrenetOptions& options)
{
    if (curve.size() < static_cast<std::size_t>(numerics::one_sided_width(3)))
        throw ValidationError("frenet needs at least 7 arclength nodes, got " + std::to_string(curve.size()));

    const auto r1 = numerics::differentiate_uniform(curve.points, curve.ds, 1);
    const auto r2 = numerics::differentiate_uniform(curve.points, curve.ds, 2);
    const auto r3 = numerics::differentiate_uniform(curve.points, curve.ds, 3);

    FrenetData fd = allocate(curve);
    for (std::size_t k = 0; k < curve.size(); ++k)
        frame_from_derivatives(fd, k, r1[k], r2[k], r3[k], options.kappa_min);
    return fd;
}

FrenetData frenet(const ParamCurve& analytic_curve, const ArcLengthCurve& grid, const FrenetOptions& options)
{
    if (analytic_curve.kind() != ParamCurve::Kind::analytic)
        throw std::invalid_argument("closed-form frenet requires an analytic curve");

    FrenetData fd = allocate(grid);
    fd.analytic = true;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.t[k];
        frame_from_derivatives(fd, k, analytic_curve.derivative(t, 1), analytic_curve.derivative(t, 2),
                               analytic_curve.derivative(t, 3), options.kappa_min);
    }
    return fd;
}

std::vector<double> ratio_series(const FrenetData& fd, double kappa_min)
{
    std::vector<double> out(fd.size());
    for (std::size_t k = 0; k < fd.size(); ++k) {
        if (!(fd.kappa[k] >= kappa_min))
            throw VanishingCurvatureError(k, fd.s[k], fd.kappa[k]);
        out[k] = fd.tau[k] / fd.kappa[k];
    }
    return out;
}

FrameDiagnostics frame_diagnostics(const FrenetData& fd, std::size_t skip)
{
    FrameDiagnostics d;
    const std::size_t n = fd.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec3 &T = fd.T[k], &N = fd.N[k], &B = fd.B[k];
        d.unit_error = std::max({d.unit_error, std::abs(T.norm() - 1), std::abs(N.norm() - 1), std::abs(B.norm() - 1)});
        d.orthogonality = std::max({d.orthogonality, std::abs(T.dot(N)), std::abs(T.dot(B)), std::abs(N.dot(B))});
        d.handedness = std::max(d.handedness, (B - T.cross(N)).norm());
    }
    if (n < 7)
        return d;

    const auto dT = numerics::differentiate_uniform(fd.T, fd.ds, 1);
    const auto dN = numerics::differentiate_uniform(fd.N, fd.ds, 1);
    const auto dB = numerics::differentiate_uniform(fd.B, fd.ds, 1);
    for (std::size_t k = skip; k + skip < n; ++k) {
        d.tangent_residual = std::max(d.tangent_residual, (dT[k] - fd.kappa[k] * fd.N[k]).norm());
        d.normal_residual =
            std::max(d.normal_residual, (dN[k] + fd.kappa[k] * fd.T[k] - fd.tau[k] * fd.B[k]).norm());
        d.binormal_residual = std::max(d.binormal_residual, (dB[k] + fd.tau[k] * fd.N[k]).norm());
    }
    return d;
}

} // namespace frectify
