#ifndef FRECTIFY_FRENET_HPP
#define FRECTIFY_FRENET_HPP

#include "frectify/curve.hpp"

#include <cstddef>
#include <vector>

namespace frectify {

/// Curvature at a node fell below kappa_min, so N, B and tau are undefined.
class VanishingCurvatureError : public NumericalError {
public:
    VanishingCurvatureError(std::size_t node, double s, double kappa);
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// Frenet apparatus on a uniform arclength grid.
/// N follows T' = κN (so κ >= 0) and B = T × N.
struct FrenetData {
    double s_origin = 0.0;
    double ds = 0.0;
    std::vector<double> s;
    std::vector<Vec3> T, N, B;
    std::vector<double> kappa, tau;
    bool analytic = false;

    std::size_t size() const noexcept { return s.size(); }
};

struct FrenetOptions {
    double kappa_min = 1e-8;
};

/// Finite-difference path: fourth-order stencils on the uniform arclength
/// grid, then κ = |r'×r''|/|r'|³ and τ = ⟨r'×r'', r'''⟩/|r'×r''|².
FrenetData frenet(const ArcLengthCurve& curve, const FrenetOptions& options = {});

/// Closed-form path for analytic curves: the same formulas with symbolic
/// derivatives, evaluated at the grid's node parameters.
FrenetData frenet(const ParamCurve& analytic_curve, const ArcLengthCurve& grid, const FrenetOptions& options = {});

/// Pointwise τ/κ on the FrenetData grid.
std::vector<double> ratio_series(const FrenetData& fd, double kappa_min = 1e-8);

/// Numerical self-consistency of a frame.
struct FrameDiagnostics {
    double unit_error = 0.0;       // max | |T|-1 |, | |N|-1 |, | |B|-1 |
    double orthogonality = 0.0;    // max |T·N|, |T·B|, |N·B|
    double handedness = 0.0;       // max |B - T×N|
    double tangent_residual = 0.0; // max |T' - κN| over interior nodes
    double normal_residual = 0.0;  // max |N' + κT - τB|
    double binormal_residual = 0.0; // max |B' + τN|
};

/// Frame derivatives use the same fourth-order stencils; the outermost
/// `skip` nodes at each end are excluded from the residuals.
FrameDiagnostics frame_diagnostics(const FrenetData& fd, std::size_t skip = 3);

} // namespace frectify

#endif // FRECTIFY_FRENET_HPP
