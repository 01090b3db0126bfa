#include "frectify/synthesis.hpp"

#include "frectify/frenet.hpp"
#include "frectify/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace frectify {

namespace {

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

double integral_sign(IntegralSign s) { return s == IntegralSign::corrected ? 1.0 : -1.0; }

} // namespace

SphericalCurve SphericalCurve::make(expr::Expr x, expr::Expr y, expr::Expr z, Interval range)
{
    if (!(range.hi > range.lo))
        throw ValidationError("spherical curve: empty parameter range");
    SphericalCurve Y;
    Y.y_ = {std::move(x), std::move(y), std::move(z)};
    for (int i = 0; i < 3; ++i)
        Y.dy_[i] = expr::differentiate(Y.y_[i]);
    Y.range_ = range;

    constexpr int samples = 1001;
    for (int k = 0; k < samples; ++k) {
        const double t = range.lo + range.width() * k / (samples - 1);
        Vec3 p, v;
        try {
            p = Y(t);
            v = Y.derivative(t);
        } catch (const expr::DomainError& e) {
            throw ValidationError("spherical curve not evaluable at t = " + fmt(t) + ": " + e.what());
        }
        if (!(std::abs(p.norm() - 1) <= 1e-10))
            throw ValidationError("spherical curve invariant failed: |Y(t)| = " + fmt(p.norm()) + " at t = " + fmt(t) +
                                  " (must be 1 within 1e-10)");
        if (!(std::abs(v.norm() - 1) <= 1e-8))
            throw ValidationError("spherical curve invariant failed: |Y'(t)| = " + fmt(v.norm()) +
                                  " at t = " + fmt(t) + " (must be unit speed within 1e-8)");
    }
    return Y;
}

Vec3 SphericalCurve::operator()(double t) const
{
    return {expr::eval(y_[0], t), expr::eval(y_[1], t), expr::eval(y_[2], t)};
}

Vec3 SphericalCurve::derivative(double t) const
{
    return {expr::eval(dy_[0], t), expr::eval(dy_[1], t), expr::eval(dy_[2], t)};
}

void validate(const SynthesisConfig& cfg)
{
    if (!(cfg.c > 0) || !std::isfinite(cfg.c))
        throw ValidationError("c must be a positive number, got " + fmt(cfg.c));
    if (cfg.n < 4)
        throw ValidationError("n must be at least 4, got " + std::to_string(cfg.n));
    if (!(cfg.guard >= 0))
        throw ValidationError("singularity guard must be non-negative");
    if (!(cfg.t_range.hi > cfg.t_range.lo))
        throw ValidationError("t range is empty");
    if (cfg.spec.sign() < 0)
        throw ValidationError("f must have the same sign as c (positive) on its domain");

    const double limit = std::numbers::pi / 2 - cfg.guard;
    for (double t : {cfg.t_range.lo, cfg.t_range.hi})
        if (std::abs(t + cfg.t0) > limit)
            throw SingularityGuardError("|t + t0| = " + fmt(std::abs(t + cfg.t0)) + " at t = " + fmt(t) +
                                        " exceeds pi/2 - guard = " + fmt(limit));

    const Interval attainable = cfg.spec.range();
    const double slack = 1e-12 * (1 + std::abs(attainable.lo) + std::abs(attainable.hi));
    for (double t : {cfg.t_range.lo, cfg.t_range.hi}) {
        const double y = cfg.c * std::tan(t + cfg.t0);
        if (!attainable.contains(y, slack))
            throw InverseRangeError(y, attainable);
    }

    const Interval dom = cfg.spec.domain();
    if (dom.contains(0.0)) {
        const double F0 = cfg.spec.primitive(0.0);
        const double want = cfg.c * std::tan(cfg.t0);
        if (std::abs(F0 - want) > 1e-8 * (1 + std::abs(want)))
            throw ValidationError("t0 is inconsistent with F(0) = c*tan(t0): F(0) = " + fmt(F0) +
                                  ", c*tan(t0) = " + fmt(want) + "; use t0 = " + fmt(std::atan(F0 / cfg.c)));
    }
}

double param_to_arclength(const SynthesisConfig& cfg, double t)
{
    return cfg.spec.inverse(cfg.c * std::tan(t + cfg.t0));
}

Vec3 f_position_of_t(const SynthesisConfig& cfg, const SphericalCurve& Y, double t)
{
    return cfg.c / std::cos(t + cfg.t0) * Y(t);
}

struct SynthesizedCurve::Impl {
    SynthesisConfig cfg;
    SphericalCurve Y;
    bool integral_vanishes = false;
    double h = 0.0;           // table cell width
    std::vector<Vec3> table;  // ∫ from t_lo to each table node

    Vec3 integrand(double t) const
    {
        const double u = t + cfg.t0;
        const double s = param_to_arclength(cfg, t);
        const double ratio = 1 / (std::cos(u) * cfg.spec.f(s));
        return integral_sign(cfg.sign) * cfg.c * cfg.c * cfg.spec.f_prime(s) * ratio * ratio * ratio * Y(t);
    }

    Vec3 integral(double t) const
    {
        if (integral_vanishes)
            return Vec3::Zero();
        const double lo = cfg.t_range.lo;
        const int cells = static_cast<int>(table.size()) - 1;
        const int j = std::clamp(static_cast<int>(std::floor((t - lo) / h)), 0, cells - 1);
        const double tj = lo + j * h;
        if (t == tj)
            return table[j];
        return table[j] + numerics::adaptive_simpson([this](double x) { return integrand(x); }, tj, t, 1e-12);
    }

    void build_table()
    {
        integral_vanishes = cfg.spec.f_prime_expr().is_constant(0.0);
        if (integral_vanishes)
            return;

        const double lo = cfg.t_range.lo;
        const double width = cfg.t_range.width();
        // Cell-wise Simpson: m cells need 2m+1 samples.
        int m = std::max(cfg.n, 16);
        std::vector<Vec3> samples(2 * m + 1);
        for (int i = 0; i <= 2 * m; ++i)
            samples[i] = integrand(lo + width * i / (2 * m));

        auto cumulate = [](const std::vector<Vec3>& g, int cells, double cell) {
            std::vector<Vec3> out(cells + 1);
            out[0] = Vec3::Zero();
            for (int i = 0; i < cells; ++i)
                out[i + 1] = out[i] + cell / 6 * (g[2 * i] + 4 * g[2 * i + 1] + g[2 * i + 2]);
            return out;
        };

        std::vector<Vec3> coarse = cumulate(samples, m, width / m);
        constexpr int max_cells = 1 << 18;
        while (true) {
            const int m2 = 2 * m;
            std::vector<Vec3> fine_samples(2 * m2 + 1);
            for (int i = 0; i <= 2 * m2; ++i)
                fine_samples[i] = i % 2 == 0 ? samples[i / 2] : integrand(lo + width * i / (2 * m2));
            std::vector<Vec3> fine = cumulate(fine_samples, m2, width / m2);

            double change = 0;
            for (int i = 0; i <= m; ++i)
                change = std::max(change, (fine[2 * i] - coarse[i]).cwiseAbs().maxCoeff());
            m = m2;
            samples = std::move(fine_samples);
            coarse = std::move(fine);
            if (change < 1e-9)
                break;
            if (m >= max_cells)
                throw NumericalError("synthesis integral did not converge (last change " + fmt(change) + ")");
        }
        table = std::move(coarse);
        h = width / m;
    }
};

SynthesizedCurve::SynthesizedCurve(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

const SynthesisConfig& SynthesizedCurve::config() const noexcept { return impl_->cfg; }
const SphericalCurve& SynthesizedCurve::spherical() const noexcept { return impl_->Y; }

int SynthesizedCurve::table_cells() const noexcept
{
    return impl_->table.empty() ? 0 : static_cast<int>(impl_->table.size()) - 1;
}

Vec3 SynthesizedCurve::position(double t) const
{
    const auto& cfg = impl_->cfg;
    const double s = param_to_arclength(cfg, t);
    return cfg.c / (std::cos(t + cfg.t0) * cfg.spec.f(s)) * impl_->Y(t) + impl_->integral(t);
}

Vec3 SynthesizedCurve::velocity(double t) const
{
    const auto& cfg = impl_->cfg;
    const double u = t + cfg.t0;
    const double sec = 1 / std::cos(u);
    const double s = param_to_arclength(cfg, t);
    const double f = cfg.spec.f(s);
    const Vec3 Y = impl_->Y(t);
    const Vec3 secY_prime = sec * (std::tan(u) * Y + impl_->Y.derivative(t));
    const double correction = integral_sign(cfg.sign) - 1;
    Vec3 v = cfg.c / f * secY_prime;
    if (correction != 0)
        v += correction * cfg.c * cfg.c * cfg.spec.f_prime(s) * sec * sec * sec / (f * f * f) * Y;
    return v;
}

std::vector<double> SynthesizedCurve::t_nodes() const
{
    const auto& cfg = impl_->cfg;
    std::vector<double> t(cfg.n + 1);
    for (int k = 0; k <= cfg.n; ++k)
        t[k] = cfg.t_range.lo + cfg.t_range.width() * k / cfg.n;
    t.back() = cfg.t_range.hi;
    return t;
}

std::vector<Vec3> SynthesizedCurve::nodes() const
{
    std::vector<Vec3> out;
    for (double t : t_nodes())
        out.push_back(position(t));
    return out;
}

ParamCurve SynthesizedCurve::curve() const
{
    auto impl = impl_;
    const SynthesizedCurve self(impl);
    return ParamCurve::functional([self](double t) { return self.position(t); },
                                  [self](double t) { return self.velocity(t); }, impl_->cfg.t_range);
}

ArcLengthCurve SynthesizedCurve::resample_arclength(int n) const
{
    const auto& cfg = impl_->cfg;
    const double s_lo = arclength(cfg.t_range.lo);
    if (cfg.sign != IntegralSign::corrected)
        return frectify::resample_arclength(curve(), n, ResampleOptions{.s_origin = s_lo});
    if (n < 1)
        throw ValidationError("resample needs n >= 1");

    const double s_hi = arclength(cfg.t_range.hi);
    ArcLengthCurve out;
    out.s_origin = s_lo;
    out.length = s_hi - s_lo;
    out.ds = out.length / n;
    out.analytic_origin = true;
    out.t.resize(n + 1);
    out.points.resize(n + 1);
    const Interval dom = cfg.spec.domain();
    for (int k = 0; k <= n; ++k) {
        double t;
        if (k == 0)
            t = cfg.t_range.lo;
        else if (k == n)
            t = cfg.t_range.hi;
        else
            t = std::atan(cfg.spec.primitive(std::clamp(out.s(k), dom.lo, dom.hi)) / cfg.c) - cfg.t0;
        out.t[k] = std::clamp(t, cfg.t_range.lo, cfg.t_range.hi);
        out.points[k] = position(out.t[k]);
    }
    return out;
}

SynthesizedCurve synthesize(const SynthesisConfig& cfg, const SphericalCurve& Y)
{
    validate(cfg);
    if (!Y.range().contains(cfg.t_range.lo) || !Y.range().contains(cfg.t_range.hi))
        throw ValidationError("t range is not inside the spherical curve's parameter range");

    auto impl = std::make_shared<SynthesizedCurve::Impl>(SynthesizedCurve::Impl{cfg, Y, false, 0.0, {}});
    impl->build_table();
    return SynthesizedCurve(std::move(impl));
}

SphericalImage spherical_image(const FPositionVector& fp)
{
    const FPositionVector moved = translated(fp, rectifying_translation(fp));
    SphericalImage img;
    img.s = moved.s;
    img.Y.resize(moved.size());
    for (std::size_t k = 0; k < moved.size(); ++k) {
        if (!(moved.rho[k] > 1e-12))
            throw NumericalError("f-position vector vanishes at s = " + fmt(moved.s[k]));
        img.Y[k] = moved.alpha_f[k] / moved.rho[k];
    }
    return img;
}

SphericalImage spherical_image(const ParamCurve& curve, const FunctionSpec& spec, int n, double s_origin)
{
    const ArcLengthCurve grid = frectify::resample_arclength(curve, n, ResampleOptions{.s_origin = s_origin});
    const FrenetData fd = frenet(grid);
    return spherical_image(compute_f_position(fd, grid, spec));
}

} // namespace frectify
