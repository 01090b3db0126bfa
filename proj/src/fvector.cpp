#include "frectify/fvector.hpp"

#include "frectify/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frectify {

namespace {

void check_grid(const FrenetData& fd, const ArcLengthCurve& curve)
{
    if (fd.size() != curve.size())
        throw ValidationError("frame and curve grids differ in size");
    if (fd.size() < 4)
        throw ValidationError("f-position vector needs at least 4 nodes");
}

void decompose(FPositionVector& fp)
{
    const std::size_t n = fp.size();
    fp.lambda.resize(n);
    fp.normal_comp.resize(n);
    fp.mu.resize(n);
    fp.rho.resize(n);
    fp.normal_part.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec3& a = fp.alpha_f[k];
        fp.lambda[k] = a.dot(fp.T[k]);
        fp.normal_comp[k] = a.dot(fp.N[k]);
        fp.mu[k] = a.dot(fp.B[k]);
        fp.rho[k] = a.norm();
        fp.normal_part[k] = a - fp.lambda[k] * fp.T[k];
    }
}

FPositionVector build(const FrenetData& fd, std::vector<double> f, std::vector<double> primitive)
{
    FPositionVector fp;
    fp.s = fd.s;
    fp.ds = fd.ds;
    fp.T = fd.T;
    fp.N = fd.N;
    fp.B = fd.B;
    fp.tau = fd.tau;

    std::vector<Vec3> integrand(fd.size());
    for (std::size_t k = 0; k < fd.size(); ++k)
        integrand[k] = f[k] * fd.T[k];
    fp.alpha_f = numerics::cumulative_integral(integrand, fd.ds);
    fp.f = std::move(f);
    fp.primitive = std::move(primitive);
    decompose(fp);
    return fp;
}

CheckResult constancy_check(std::string name, const std::vector<double>& x, double tol)
{
    CheckResult r;
    r.name = std::move(name);
    r.tolerance = tol;
    r.max_deviation = constancy_deviation(x);
    r.status = r.max_deviation <= tol ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

double max_abs(const std::vector<double>& x)
{
    double m = 0;
    for (double v : x)
        m = std::max(m, std::abs(v));
    return m;
}

} // namespace

FPositionVector compute_f_position(const FrenetData& fd, const ArcLengthCurve& curve, const FunctionSpec& spec)
{
    check_grid(fd, curve);
    const Interval dom = spec.domain();
    const double slack = 1e-9 * (1 + std::abs(dom.lo) + std::abs(dom.hi));
    if (!dom.contains(fd.s.front(), slack) || !dom.contains(fd.s.back(), slack))
        throw ValidationError("f domain [" + std::to_string(dom.lo) + ", " + std::to_string(dom.hi) +
                              "] does not cover the curve's arclength range [" + std::to_string(fd.s.front()) +
                              ", " + std::to_string(fd.s.back()) + "]");

    std::vector<double> f(fd.size()), F(fd.size());
    for (std::size_t k = 0; k < fd.size(); ++k) {
        const double s = std::clamp(fd.s[k], dom.lo, dom.hi);
        f[k] = spec.f(s);
        F[k] = spec.primitive(s);
    }
    return build(fd, std::move(f), std::move(F));
}

FPositionVector compute_f_position(const FrenetData& fd, const ArcLengthCurve& curve, const expr::Expr& f_expr)
{
    check_grid(fd, curve);
    std::vector<double> f(fd.size());
    for (std::size_t k = 0; k < fd.size(); ++k) {
        f[k] = expr::eval(f_expr, fd.s[k]);
        if (!std::isfinite(f[k]))
            throw ValidationError("f is not finite at s = " + std::to_string(fd.s[k]));
    }
    auto F = numerics::cumulative_integral(f, fd.ds);
    return build(fd, std::move(f), std::move(F));
}

FPositionVector translated(const FPositionVector& fp, const Vec3& offset)
{
    FPositionVector out = fp;
    for (auto& a : out.alpha_f)
        a += offset;
    decompose(out);
    return out;
}

Vec3 rectifying_translation(const FPositionVector& fp)
{
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    Vec3 rhs = Vec3::Zero();
    for (std::size_t k = 0; k < fp.size(); ++k) {
        A += fp.N[k] * fp.N[k].transpose();
        rhs -= fp.N[k] * fp.normal_comp[k];
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix3d> cod(A);
    cod.setThreshold(1e-10);
    return cod.solve(rhs);
}

std::string to_string(CheckStatus status)
{
    switch (status) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::degenerate:
        return "degenerate";
    case CheckStatus::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

const CheckResult& VerificationReport::check(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name)
            return c;
    throw std::out_of_range("no check named " + name);
}

double median(std::vector<double> x)
{
    if (x.empty())
        throw std::invalid_argument("median of an empty series");
    const std::size_t mid = x.size() / 2;
    std::nth_element(x.begin(), x.begin() + mid, x.end());
    double m = x[mid];
    if (x.size() % 2 == 0)
        m = (m + *std::max_element(x.begin(), x.begin() + mid)) / 2;
    return m;
}

double constancy_deviation(const std::vector<double>& x)
{
    const double m = median(x);
    double worst = 0;
    for (double v : x)
        worst = std::max(worst, std::abs(v - m));
    return worst / (1 + std::abs(m));
}

VerificationReport verify_f_rectifying(const FPositionVector& anchored, const VerifyOptions& options)
{
    const double tol = options.tol;
    VerificationReport report;
    const std::size_t n = anchored.size();

    if (max_abs(anchored.rho) <= 1e-14 && max_abs(anchored.f) <= 1e-14) {
        for (const char* name : {"tangential", "normal_plane", "normal_length", "binormal", "norm_law"})
            report.checks.push_back({name, 0.0, tol, CheckStatus::degenerate, "f-position vector vanishes"});
        report.verdict = CheckStatus::degenerate;
        report.note = "f vanishes identically: degenerate, use helix classification";
        return report;
    }

    report.translation = rectifying_translation(anchored);
    const FPositionVector fp = translated(anchored, report.translation);

    // (a) tangential component follows F up to a constant.
    std::vector<double> offset(n);
    for (std::size_t k = 0; k < n; ++k)
        offset[k] = fp.lambda[k] - fp.primitive[k];
    report.checks.push_back(constancy_check("tangential", offset, tol));
    report.tangential_offset = median(offset);

    // (b) αf lies in the rectifying plane.
    {
        CheckResult r;
        r.name = "normal_plane";
        r.tolerance = tol;
        r.max_deviation = max_abs(fp.normal_comp) / (1 + median(fp.rho));
        r.status = r.max_deviation <= tol ? CheckStatus::pass : CheckStatus::fail;
        report.checks.push_back(r);
    }

    // (c) the part orthogonal to T has constant length.
    std::vector<double> normal_length(n);
    for (std::size_t k = 0; k < n; ++k)
        normal_length[k] = std::sqrt(std::max(0.0, fp.rho[k] * fp.rho[k] - fp.lambda[k] * fp.lambda[k]));
    {
        CheckResult r = constancy_check("normal_length", normal_length, tol);
        if (r.status == CheckStatus::pass && constancy_deviation(fp.rho) <= tol) {
            r.status = CheckStatus::inconclusive;
            r.note = "constant rho: inconclusive";
        }
        report.checks.push_back(r);
    }
    report.fitted_c = median(normal_length);

    // (d) constant binormal component.
    {
        CheckResult r = constancy_check("binormal", fp.mu, tol);
        if (max_abs(fp.tau) < options.planar_tau) {
            r.status = CheckStatus::degenerate;
            r.note = "torsion vanishes: planar curve";
        }
        report.checks.push_back(r);
    }
    report.fitted_mu = median(fp.mu);

    // (e) rho² - (F + k)² constant.
    std::vector<double> norm_law(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double shifted = fp.primitive[k] + report.tangential_offset;
        norm_law[k] = fp.rho[k] * fp.rho[k] - shifted * shifted;
    }
    report.checks.push_back(constancy_check("norm_law", norm_law, tol));
    report.fitted_c_squared = median(norm_law);

    report.verdict = CheckStatus::pass;
    for (const auto& c : report.checks)
        if (c.status == CheckStatus::fail)
            report.verdict = CheckStatus::fail;
    return report;
}

VerificationReport verify_f_rectifying(const FPositionVector& fp, const FunctionSpec& spec,
                                       const VerifyOptions& options)
{
    FPositionVector copy = fp;
    const Interval dom = spec.domain();
    for (std::size_t k = 0; k < copy.size(); ++k)
        copy.primitive[k] = spec.primitive(std::clamp(copy.s[k], dom.lo, dom.hi));
    return verify_f_rectifying(copy, options);
}

RatioFit fit_ratio_to_primitive(const std::vector<double>& ratio, const std::vector<double>& primitive)
{
    const std::size_t n = ratio.size();
    if (n != primitive.size() || n < 3)
        throw ValidationError("ratio fit needs matching series of at least 3 samples");

    const Eigen::Map<const Eigen::VectorXd> y(ratio.data(), static_cast<Eigen::Index>(n));
    const Eigen::Map<const Eigen::VectorXd> F(primitive.data(), static_cast<Eigen::Index>(n));
    const double mean_F = F.mean();
    const double spread = (F.array() - mean_F).abs().maxCoeff();
    if (!(spread > 1e-12 * (1 + std::abs(mean_F))))
        throw DegenerateFitError("primitive F is constant on the grid; the ratio scale is not identifiable");

    Eigen::MatrixXd A(n, 2);
    A.col(0) = F;
    A.col(1).setOnes();
    const Eigen::Vector2d x = A.colPivHouseholderQr().solve(y);

    RatioFit fit;
    fit.mu_bar = x(0);
    fit.offset = fit.mu_bar != 0 ? x(1) / fit.mu_bar : 0.0;
    const double misfit = std::sqrt((A * x - y).squaredNorm() / static_cast<double>(n));
    const double scale = std::sqrt(y.squaredNorm() / static_cast<double>(n));
    fit.residual = scale > 0 ? misfit / scale : misfit;
    return fit;
}

RatioFit ratio_vs_F(const FrenetData& fd, const FunctionSpec& spec)
{
    const auto ratio = ratio_series(fd);
    const Interval dom = spec.domain();
    std::vector<double> F(fd.size());
    for (std::size_t k = 0; k < fd.size(); ++k)
        F[k] = spec.primitive(std::clamp(fd.s[k], dom.lo, dom.hi));
    return fit_ratio_to_primitive(ratio, F);
}

} // namespace frectify
