#ifndef FRECTIFY_CLASSIFY_HPP
#define FRECTIFY_CLASSIFY_HPP

#include "frectify/frenet.hpp"
#include "frectify/function_spec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frectify {

enum class Verdict { helix, rectifying, poly_f_rectifying, f_rectifying, undetermined };

std::string to_string(Verdict v);

struct HelixAxis {
    Vec3 X = Vec3::UnitZ();
    double theta = 0.0;
    /// max |⟨T(s), X⟩ - cos θ| over the nodes.
    double drift = 0.0;
};

/// One candidate model and how well it fitted τ/κ.
struct ModelTrial {
    std::string model; // "helix", "rectifying", "candidate_F", "poly2".."poly6"
    double residual = 0.0;
    bool accepted = false;
};

struct ClassificationReport {
    Verdict verdict = Verdict::undetermined;
    /// Degree of f for poly_f_rectifying (τ/κ has degree + 1).
    int degree = 0;
    double residual = 0.0; // relative RMS of the accepted model

    double c1 = 0.0;                 // helix: τ/κ = c1
    double c2 = 0.0, c3 = 0.0;       // rectifying: τ/κ = c2 s + c3
    double a = 0.0, b = 0.0;         // rectifying: α = (s + a)T + bB, c2 = 1/b, c3 = a/b
    std::vector<double> polynomial;  // poly_f_rectifying: τ/κ = Σ p_k s^k
    double mu_bar = 0.0, offset = 0.0; // f_rectifying: τ/κ = μ̄ (F + k)
    std::optional<HelixAxis> axis;

    std::vector<ModelTrial> trials;
    std::string note;
};

struct ClassifyOptions {
    double tol = 1e-3;
    int n_max = 6;
    /// Minimum size of c1 (helix) and of the linear variation c2·L
    /// (rectifying), relative to 1 + RMS(τ/κ).
    double tol_coeff = 1e-6;
    double kappa_min = 1e-8;
    /// For finite-difference frames, nodes at each end left out of the fits:
    /// there the third-derivative stencil is one-sided and τ is least accurate.
    int edge_nodes = 3;
};

/// Fits τ/κ with models of increasing complexity and returns the first whose
/// relative RMS residual is within tol: constant (helix), linear
/// (rectifying), the candidate primitive μ̄(F + k) if given, then
/// polynomials of degree 2..n_max (f a polynomial of degree one less).
/// Curves with vanishing torsion are undetermined ("planar").
ClassificationReport classify(const FrenetData& fd, const std::optional<FunctionSpec>& candidate_F = std::nullopt,
                              const ClassifyOptions& options = {});

/// The axis direction is not constant along the curve, or θ = π/2.
class HelixAxisError : public NumericalError {
public:
    HelixAxisError(const std::string& message, double drift);
    double drift() const noexcept { return drift_; }

private:
    double drift_;
};

/// Axis X = cos θ T + sin θ B with θ = atan2(1, c1), averaged over nodes.
HelixAxis helix_axis(const FrenetData& fd, double c1, double tol = 1e-6);

struct RecoveredF {
    std::vector<double> s;
    std::vector<double> F; // (τ/κ)/μ̄
    std::vector<double> f; // dF/ds
    double mu_bar = 1.0;
};

/// Raised when τ/κ is too rough for a smooth primitive to be recovered.
class NoisyRatioError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// F = (τ/κ)/μ̄, with μ̄ from the hint or 1 (F is then known up to scale),
/// and f = dF/ds by fourth-order finite differences.
RecoveredF recover_f(const FrenetData& fd, std::optional<double> mu_bar_hint = std::nullopt, double tol = 1e-3);

} // namespace frectify

#endif // FRECTIFY_CLASSIFY_HPP
