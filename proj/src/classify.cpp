#include "frectify/classify.hpp"

#include "frectify/fvector.hpp"
#include "frectify/numerics/chebyshev_fit.hpp"
#include "frectify/numerics/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace frectify {

namespace {

using Eigen::VectorXd;

double rms(const VectorXd& v) { return std::sqrt(v.squaredNorm() / static_cast<double>(v.size())); }

double relative(double misfit_rms, double scale_rms) { return scale_rms > 0 ? misfit_rms / scale_rms : misfit_rms; }

} // namespace

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::helix:
        return "helix";
    case Verdict::rectifying:
        return "rectifying";
    case Verdict::poly_f_rectifying:
        return "poly_f_rectifying";
    case Verdict::f_rectifying:
        return "f_rectifying";
    case Verdict::undetermined:
        return "undetermined";
    }
    return "undetermined";
}

HelixAxisError::HelixAxisError(const std::string& message, double drift) : NumericalError(message), drift_(drift) {}

ClassificationReport classify(const FrenetData& fd, const std::optional<FunctionSpec>& candidate_F,
                              const ClassifyOptions& options)
{
    const std::size_t n = fd.size();
    const std::size_t needed = 2 * static_cast<std::size_t>(options.n_max + 2);
    if (n < needed)
        throw ValidationError("classification needs at least " + std::to_string(needed) + " nodes, got " +
                              std::to_string(n));

    const auto full_ratio = ratio_series(fd, options.kappa_min);
    const std::size_t edge = fd.analytic ? 0 : static_cast<std::size_t>(std::max(options.edge_nodes, 0));
    if (n < needed + 2 * edge)
        throw ValidationError("classification needs at least " + std::to_string(needed + 2 * edge) +
                              " nodes, got " + std::to_string(n));
    const std::vector<double> ratio_vec(full_ratio.begin() + edge, full_ratio.end() - edge);
    const std::vector<double> s_vec(fd.s.begin() + edge, fd.s.end() - edge);
    const std::size_t m = ratio_vec.size();
    const Eigen::Map<const VectorXd> y(ratio_vec.data(), static_cast<Eigen::Index>(m));
    const Eigen::Map<const VectorXd> s(s_vec.data(), static_cast<Eigen::Index>(m));
    const double y_rms = rms(y);
    const double coeff_floor = options.tol_coeff * (1 + y_rms);
    const double length = s_vec.back() - s_vec.front();

    ClassificationReport report;
    auto accept = [&](const std::string& model, double residual) {
        report.trials.push_back({model, residual, true});
        report.residual = residual;
    };
    auto reject = [&](const std::string& model, double residual) { report.trials.push_back({model, residual, false}); };

    double max_tau = 0;
    for (double t : fd.tau)
        max_tau = std::max(max_tau, std::abs(t));
    if (max_tau < 1e-8 || y.cwiseAbs().maxCoeff() <= coeff_floor) {
        report.verdict = Verdict::undetermined;
        report.note = "planar: torsion vanishes";
        return report;
    }

    // Constant ratio: helix.
    {
        const auto fit = numerics::chebyshev_fit<double>(s, y, 0);
        const double residual = relative(fit.rms_residual, y_rms);
        const double c1 = fit.coefficients(0);
        if (residual <= options.tol && std::abs(c1) > coeff_floor) {
            accept("helix", residual);
            report.verdict = Verdict::helix;
            report.c1 = c1;
            try {
                report.axis = helix_axis(fd, c1, std::max(options.tol, 1e-6));
            } catch (const HelixAxisError& e) {
                report.note = e.what();
            }
            return report;
        }
        reject("helix", residual);
    }

    // Linear ratio: rectifying.
    {
        const auto fit = numerics::chebyshev_fit<double>(s, y, 1);
        const double residual = relative(fit.rms_residual, y_rms);
        const VectorXd p = fit.monomial();
        if (residual <= options.tol && std::abs(p(1)) * length > coeff_floor) {
            accept("rectifying", residual);
            report.verdict = Verdict::rectifying;
            report.c2 = p(1);
            report.c3 = p(0);
            report.b = 1 / report.c2;
            report.a = report.c3 / report.c2;
            return report;
        }
        reject("rectifying", residual);
    }

    // The candidate has two free parameters, like the linear model, so it is
    // tried before the higher-degree polynomials.
    if (candidate_F) {
        const Interval dom = candidate_F->domain();
        std::vector<double> F(m);
        for (std::size_t k = 0; k < m; ++k)
            F[k] = candidate_F->primitive(std::clamp(s_vec[k], dom.lo, dom.hi));
        const RatioFit fit = fit_ratio_to_primitive(ratio_vec, F);
        if (fit.residual <= options.tol && std::abs(fit.mu_bar) > 0) {
            accept("candidate_F", fit.residual);
            report.verdict = Verdict::f_rectifying;
            report.mu_bar = fit.mu_bar;
            report.offset = fit.offset;
            return report;
        }
        reject("candidate_F", fit.residual);
    }

    for (int degree = 2; degree <= options.n_max; ++degree) {
        const auto fit = numerics::chebyshev_fit<double>(s, y, degree);
        const double residual = relative(fit.rms_residual, y_rms);
        const std::string name = "poly" + std::to_string(degree);
        if (residual <= options.tol) {
            accept(name, residual);
            report.verdict = Verdict::poly_f_rectifying;
            report.degree = degree - 1;
            const VectorXd p = fit.monomial();
            report.polynomial.assign(p.data(), p.data() + p.size());
            return report;
        }
        reject(name, residual);
    }

    report.verdict = Verdict::undetermined;
    report.note = "no model fits the torsion/curvature ratio within tolerance";
    return report;
}

HelixAxis helix_axis(const FrenetData& fd, double c1, double tol)
{
    if (fd.size() == 0)
        throw ValidationError("helix axis needs at least one node");
    HelixAxis axis;
    axis.theta = std::atan2(1.0, c1);
    if (std::abs(axis.theta - std::numbers::pi / 2) < 1e-12)
        throw HelixAxisError("axis angle is pi/2: the curve is planar and has no helix axis", 1.0);

    const double ct = std::cos(axis.theta), st = std::sin(axis.theta);
    Vec3 sum = Vec3::Zero();
    for (std::size_t k = 0; k < fd.size(); ++k)
        sum += ct * fd.T[k] + st * fd.B[k];
    axis.X = sum.normalized();

    for (std::size_t k = 0; k < fd.size(); ++k)
        axis.drift = std::max(axis.drift, std::abs(fd.T[k].dot(axis.X) - ct));
    if (axis.drift > tol)
        throw HelixAxisError("helix axis is not constant along the curve (drift " + std::to_string(axis.drift) + ")",
                             axis.drift);
    return axis;
}

RecoveredF recover_f(const FrenetData& fd, std::optional<double> mu_bar_hint, double tol)
{
    const auto ratio = ratio_series(fd);
    const std::size_t n = ratio.size();
    if (n < 16)
        throw ValidationError("recovering f needs at least 16 nodes");

    const Eigen::Map<const VectorXd> y(ratio.data(), static_cast<Eigen::Index>(n));
    const Eigen::Map<const VectorXd> s(fd.s.data(), static_cast<Eigen::Index>(n));
    const int degree = std::min<int>(12, static_cast<int>(n) / 4);
    const auto smooth = numerics::chebyshev_fit<double>(s, y, degree);
    const double residual = relative(smooth.rms_residual, rms(y));
    if (residual > 10 * tol)
        throw NoisyRatioError("torsion/curvature ratio is too noisy to recover f (smooth-fit residual " +
                              std::to_string(residual) + ")");

    RecoveredF out;
    out.mu_bar = mu_bar_hint.value_or(1.0);
    if (out.mu_bar == 0)
        throw ValidationError("mu_bar must be non-zero");
    out.s = fd.s;
    out.F.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.F[k] = ratio[k] / out.mu_bar;
    out.f = numerics::differentiate_uniform(out.F, fd.ds, 1);
    return out;
}

} // namespace frectify
