#include "frectify/curve.hpp"

#include "frectify/numerics/quadrature.hpp"
#include "frectify/numerics/roots.hpp"
#include "frectify/numerics/spline.hpp"
#include "frectify/numerics/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

namespace frectify {

NonRegularCurveError::NonRegularCurveError(double t, double speed)
    : NumericalError("curve is not regular at t = " + std::to_string(t) + " (speed " + std::to_string(speed) + ")"),
      t_(t)
{
}

namespace {

struct AnalyticRep {
    std::array<std::array<expr::Expr, 3>, 4> d; // d[k] = k-th derivative components
};

struct SampledRep {
    numerics::CubicSpline<double, Vec3> spline;
};

struct LocalPolynomialRep {
    static constexpr std::size_t width = 8;
    std::vector<double> t;
    std::vector<Vec3> points;

    Vec3 derivative(double u, int order) const
    {
        auto it = std::upper_bound(t.begin(), t.end(), u);
        const std::size_t seg = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
        const std::size_t first = std::min(seg > width / 2 - 1 ? seg - (width / 2 - 1) : 0, t.size() - width);
        const std::vector<double> nodes(t.begin() + first, t.begin() + first + width);
        const auto w = numerics::fornberg_weights(u, nodes, order);
        Vec3 out = Vec3::Zero();
        for (std::size_t j = 0; j < width; ++j)
            out += w[j] * points[first + j];
        return out;
    }
};

struct FunctionalRep {
    std::function<Vec3(double)> position;
    std::function<Vec3(double)> velocity;
};

} // namespace

struct ParamCurve::Impl {
    Kind kind;
    Interval range;
    std::variant<AnalyticRep, SampledRep, LocalPolynomialRep, FunctionalRep> rep;
};

ParamCurve::ParamCurve(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

ParamCurve ParamCurve::analytic(expr::Expr x, expr::Expr y, expr::Expr z, Interval range)
{
    if (!(range.hi > range.lo))
        throw ValidationError("curve parameter range must satisfy lo < hi");
    AnalyticRep rep;
    rep.d[0] = {std::move(x), std::move(y), std::move(z)};
    for (int k = 1; k <= 3; ++k)
        for (int c = 0; c < 3; ++c)
            rep.d[k][c] = expr::differentiate(rep.d[k - 1][c]);

    // Components must be evaluable across the range.
    constexpr int probes = 257;
    for (int i = 0; i < probes; ++i) {
        const double t = range.lo + range.width() * i / (probes - 1);
        for (int c = 0; c < 3; ++c) {
            try {
                expr::eval(rep.d[0][c], t);
                expr::eval(rep.d[1][c], t);
            } catch (const expr::DomainError& e) {
                throw ValidationError("curve component " + std::to_string(c) + " is not evaluable at t = " +
                                      std::to_string(t) + ": " + e.what());
            }
        }
    }
    return ParamCurve(std::make_shared<Impl>(Impl{Kind::analytic, range, std::move(rep)}));
}

ParamCurve ParamCurve::sampled(std::vector<double> t, std::vector<Vec3> points, SampledInterpolation interpolation)
{
    if (t.size() != points.size())
        throw ValidationError("sampled curve: parameter and point counts differ");
    if (t.size() < 16)
        throw ValidationError("sampled curve needs at least 16 samples, got " + std::to_string(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || !points[i].allFinite())
            throw ValidationError("sampled curve: non-finite value at sample " + std::to_string(i));
        if (i > 0 && !(t[i] > t[i - 1]))
            throw ValidationError("sampled curve: parameters must be strictly increasing (sample " +
                                  std::to_string(i) + ")");
    }
    const Interval range{t.front(), t.back()};
    if (interpolation == SampledInterpolation::local_polynomial)
        return ParamCurve(std::make_shared<Impl>(
            Impl{Kind::sampled, range, LocalPolynomialRep{std::move(t), std::move(points)}}));
    SampledRep rep{numerics::CubicSpline<double, Vec3>(std::move(t), std::move(points), numerics::SplineEnd::not_a_knot)};
    return ParamCurve(std::make_shared<Impl>(Impl{Kind::sampled, range, std::move(rep)}));
}

ParamCurve ParamCurve::functional(std::function<Vec3(double)> position, std::function<Vec3(double)> velocity,
                                  Interval range)
{
    if (!(range.hi > range.lo))
        throw ValidationError("curve parameter range must satisfy lo < hi");
    return ParamCurve(std::make_shared<Impl>(
        Impl{Kind::functional, range, FunctionalRep{std::move(position), std::move(velocity)}}));
}

ParamCurve::Kind ParamCurve::kind() const noexcept { return impl_->kind; }
Interval ParamCurve::range() const noexcept { return impl_->range; }

Vec3 ParamCurve::position(double t) const { return derivative(t, 0); }

Vec3 ParamCurve::derivative(double t, int order) const
{
    if (order < 0 || order > 3)
        throw std::invalid_argument("ParamCurve::derivative: order must be 0..3");
    switch (impl_->kind) {
    case Kind::analytic: {
        const auto& d = std::get<AnalyticRep>(impl_->rep).d[order];
        return {expr::eval(d[0], t), expr::eval(d[1], t), expr::eval(d[2], t)};
    }
    case Kind::sampled: {
        if (const auto* local = std::get_if<LocalPolynomialRep>(&impl_->rep))
            return local->derivative(t, order);
        const auto& spline = std::get<SampledRep>(impl_->rep).spline;
        return order == 0 ? spline(t) : spline.derivative(t, order);
    }
    case Kind::functional: {
        const auto& rep = std::get<FunctionalRep>(impl_->rep);
        if (order == 0)
            return rep.position(t);
        if (order == 1)
            return rep.velocity(t);
        throw std::logic_error("functional curves only provide first derivatives");
    }
    }
    return Vec3::Zero();
}

const std::array<expr::Expr, 3>& ParamCurve::components(int derivative_order) const
{
    if (impl_->kind != Kind::analytic)
        throw std::logic_error("components() requires an analytic curve");
    return std::get<AnalyticRep>(impl_->rep).d.at(static_cast<std::size_t>(derivative_order));
}

std::vector<double> ArcLengthCurve::s_values() const
{
    std::vector<double> out(size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = s(k);
    return out;
}

namespace {

constexpr double cell_tol = 1e-13;

} // namespace

double arclength_to(const ParamCurve& curve, double t)
{
    auto speed = [&](double u) { return curve.derivative(u, 1).norm(); };
    return numerics::adaptive_simpson(speed, curve.range().lo, t, 1e-12);
}

ArcLengthCurve resample_arclength(const ParamCurve& curve, int n, const ResampleOptions& options)
{
    if (n < 2)
        throw ValidationError("resample_arclength needs n >= 2");
    const Interval range = curve.range();
    auto speed = [&](double u) { return curve.derivative(u, 1).norm(); };

    const int cells = options.table_cells > 0 ? options.table_cells : std::max(512, 2 * n);
    const double h = range.width() / cells;
    auto node = [&](int i) { return i == cells ? range.hi : range.lo + i * h; };

    std::vector<double> cum(cells + 1, 0.0);
    for (int i = 0; i <= cells; ++i) {
        for (double u : {node(i), i < cells ? node(i) + h / 2 : node(i)}) {
            const double v = speed(u);
            if (!(v >= options.min_speed))
                throw NonRegularCurveError(u, v);
        }
        if (i < cells)
            cum[i + 1] = cum[i] + numerics::adaptive_simpson(speed, node(i), node(i + 1), cell_tol);
    }

    ArcLengthCurve out;
    out.s_origin = options.s_origin;
    out.length = cum.back();
    out.ds = out.length / n;
    out.analytic_origin = curve.kind() == ParamCurve::Kind::analytic;
    out.t.resize(n + 1);
    out.points.resize(n + 1);

    for (int k = 0; k <= n; ++k) {
        double t = 0.0;
        if (k == 0) {
            t = range.lo;
        } else if (k == n) {
            t = range.hi;
        } else {
            const double target = out.ds * k;
            auto it = std::upper_bound(cum.begin(), cum.end(), target);
            const int i = std::clamp(static_cast<int>(it - cum.begin()) - 1, 0, cells - 1);
            auto g = [&](double u) { return cum[i] + numerics::adaptive_simpson(speed, node(i), u, cell_tol); };
            numerics::MonotoneInverseOptions inv;
            inv.bracket_width = std::min(1e-6, h / 8);
            if (target <= cum[i])
                t = node(i);
            else if (target >= cum[i + 1])
                t = node(i + 1);
            else
                t = numerics::invert_monotone(g, speed, target, node(i), node(i + 1), inv);
        }
        out.t[k] = t;
        out.points[k] = curve.position(t);
    }
    return out;
}

} // namespace frectify
