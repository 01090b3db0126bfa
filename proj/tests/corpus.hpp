#ifndef FRECTIFY_TESTS_CORPUS_HPP
#define FRECTIFY_TESTS_CORPUS_HPP

#include "frectify/frenet.hpp"
#include "frectify/fvector.hpp"
#include "frectify/synthesis.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace corpus {

using namespace frectify;

inline SphericalCurve example_Y()
{
    return SphericalCurve::make(expr::parse("sin(sqrt(2)*t)/sqrt(2)"), expr::parse("cos(sqrt(2)*t)/sqrt(2)"),
                                expr::parse("1/sqrt(2)"), {-10.0, 10.0});
}

/// The closed-form curve of the worked sec² example.
inline ParamCurve example_alpha(Interval range = {-0.6, 0.6})
{
    return ParamCurve::analytic(expr::parse("2*sin(t)*cos(sqrt(2)*t) - sin(sqrt(2)*t)*cos(t)/sqrt(2)"),
                                expr::parse("-2*sin(t)*sin(sqrt(2)*t) - cos(t)*cos(sqrt(2)*t)/sqrt(2)"),
                                expr::parse("3/sqrt(2)*cos(t)"), range);
}

/// An f with a domain, anchor and t range that satisfy the synthesis
/// preconditions for c = 1, t0 = 0.
struct Case {
    std::string name;
    std::string f;
    Interval domain;
    PrimitiveAnchor anchor;
    Interval t_range;
};

inline std::vector<Case> cases()
{
    return {
        {"one", "1", {-5.0, 5.0}, {0.0, 0.0}, {-0.6, 0.6}},
        {"linear", "t", {0.2, 2.5}, {0.2, 0.02}, {0.1, 1.2}},
        {"affine", "2*t+1", {-0.4, 2.0}, {0.0, 0.0}, {-0.2, 1.3}},
        {"quadratic", "t^2", {0.3, 2.0}, {0.3, 0.009}, {0.1, 1.1}},
        {"sec2", "sec(t)^2", {-1.2, 1.2}, {0.0, 0.0}, {-0.6, 0.6}},
    };
}

inline Case find(const std::string& name)
{
    for (auto& c : cases())
        if (c.name == name)
            return c;
    throw std::invalid_argument(name);
}

inline FunctionSpec spec_of(const Case& c) { return FunctionSpec::make(expr::parse(c.f), c.domain, c.anchor); }

inline SynthesizedCurve synth(const Case& c, int n = 256, IntegralSign sign = IntegralSign::corrected)
{
    return synthesize(SynthesisConfig{spec_of(c), 1.0, 0.0, c.t_range, n, 0.05, sign}, example_Y());
}

/// Synthesized curve on its arclength grid with frame and f-position vector.
struct Analysed {
    SynthesizedCurve curve;
    FunctionSpec spec;
    ArcLengthCurve grid;
    FrenetData fd;
    FPositionVector fp;
};

inline Analysed analyse(const Case& c, int n = 256)
{
    auto curve = synth(c, n);
    auto spec = spec_of(c);
    auto grid = curve.resample_arclength(n);
    auto fd = frenet(grid);
    auto fp = compute_f_position(fd, grid, spec);
    return {curve, spec, grid, fd, fp};
}

/// Circular helix (a cos(s/w), a sin(s/w), b s/w) by arclength.
inline ParamCurve helix(double a, double b, double length)
{
    const double w = std::sqrt(a * a + b * b);
    auto num = [](double v) { return expr::Expr::constant(v); };
    const expr::Expr arg = expr::Expr::variable() / num(w);
    return ParamCurve::analytic(num(a) * expr::apply(expr::Function::cos, arg),
                                num(a) * expr::apply(expr::Function::sin, arg), num(b) * arg, {0.0, length});
}

} // namespace corpus

#endif // FRECTIFY_TESTS_CORPUS_HPP
