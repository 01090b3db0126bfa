#ifndef FRECTIFY_FVECTOR_HPP
#define FRECTIFY_FVECTOR_HPP

#include "frectify/curve.hpp"
#include "frectify/frenet.hpp"
#include "frectify/function_spec.hpp"

#include <string>
#include <vector>

namespace frectify {

/// The f-position vector αf(s) = ∫ f(s) T(s) ds on a Frenet grid, anchored so
/// that αf(s_lo) = 0, together with its decomposition in the moving frame.
struct FPositionVector {
    std::vector<double> s;
    std::vector<Vec3> alpha_f;
    std::vector<double> lambda;      // ⟨αf, T⟩
    std::vector<double> normal_comp; // ⟨αf, N⟩
    std::vector<double> mu;          // ⟨αf, B⟩
    std::vector<double> rho;         // |αf|
    std::vector<Vec3> normal_part;   // αf - λT, the part orthogonal to T

    std::vector<double> f;         // f(s_i)
    std::vector<double> primitive; // F(s_i): from the FunctionSpec, or the cumulative integral of f
    std::vector<double> tau;       // copied from the frame, for degeneracy flags

    // Frame kept so the vector can be re-anchored.
    std::vector<Vec3> T, N, B;
    double ds = 0.0;

    std::size_t size() const noexcept { return s.size(); }
};

/// αf with f taken from a FunctionSpec whose domain must cover the grid.
FPositionVector compute_f_position(const FrenetData& fd, const ArcLengthCurve& curve, const FunctionSpec& spec);

/// Same, for an arbitrary expression f (including f ≡ 0, which a FunctionSpec
/// rejects). The primitive series is the cumulative integral of f.
FPositionVector compute_f_position(const FrenetData& fd, const ArcLengthCurve& curve, const expr::Expr& f);

/// Adds a constant vector to αf and recomputes the frame components.
FPositionVector translated(const FPositionVector& fp, const Vec3& offset);

/// Least-squares constant v minimising Σ⟨αf + v, N⟩². When N spans only a
/// plane (planar curves) the minimum-norm solution is returned.
Vec3 rectifying_translation(const FPositionVector& fp);

enum class CheckStatus { pass, fail, degenerate, inconclusive };

std::string to_string(CheckStatus status);

struct CheckResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::pass;
    std::string note;
};

struct VerificationReport {
    std::vector<CheckResult> checks; // tangential, normal_plane, normal_length, binormal, norm_law
    double fitted_c = 0.0;           // length of the normal part, >= 0
    double fitted_mu = 0.0;          // binormal component
    double fitted_c_squared = 0.0;   // ρ² - F̃², the c̄ of the norm law
    double tangential_offset = 0.0;  // λ - F
    Vec3 translation = Vec3::Zero(); // re-anchoring applied before the checks
    CheckStatus verdict = CheckStatus::pass;
    std::string note;

    const CheckResult& check(const std::string& name) const;
};

struct VerifyOptions {
    double tol = 1e-4;
    /// |τ| below this everywhere marks the binormal check degenerate.
    double planar_tau = 1e-8;
};

/// Default constancy tolerance for curves whose frame came from the closed
/// form or from exact positions.
inline constexpr double verify_tol_analytic = 1e-4;
/// Default for externally ingested sampled curves, whose τ carries
/// differentiation noise.
inline constexpr double verify_tol_sampled = 1e-2;

/// Relative spread max|x_i - median| / (1 + |median|).
double constancy_deviation(const std::vector<double>& x);
double median(std::vector<double> x);

/// Checks the f-rectifying characterisation on an anchored αf. The vector is
/// first re-anchored by rectifying_translation, so every check is invariant
/// under adding a constant to αf:
///   tangential     λ - F constant
///   normal_plane   ⟨αf, N⟩ = 0
///   normal_length  sqrt(ρ² - λ²) constant (fitted c)
///   binormal       μ constant (fitted μ)
///   norm_law       ρ² - (F + k)² constant, k the tangential offset
VerificationReport verify_f_rectifying(const FPositionVector& fp, const VerifyOptions& options = {});
VerificationReport verify_f_rectifying(const FPositionVector& fp, const FunctionSpec& spec,
                                       const VerifyOptions& options = {});

/// Fit of τ/κ ≈ μ̄ (F + k).
struct RatioFit {
    double mu_bar = 0.0;
    double offset = 0.0;   // k
    double residual = 0.0; // RMS of the misfit over RMS of τ/κ
};

/// Raised when the regressor F is constant, so μ̄ is not identifiable.
class DegenerateFitError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

RatioFit fit_ratio_to_primitive(const std::vector<double>& ratio, const std::vector<double>& primitive);
RatioFit ratio_vs_F(const FrenetData& fd, const FunctionSpec& spec);

} // namespace frectify

#endif // FRECTIFY_FVECTOR_HPP
