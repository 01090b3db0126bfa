#include "frectify/function_spec.hpp"

#include "frectify/numerics/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using frectify::FunctionSpec;
using frectify::Interval;
using frectify::PrimitiveAnchor;
using frectify::expr::parse;

TEST_CASE("sec^2 primitive is tan")
{
    const auto spec = FunctionSpec::make(parse("sec(t)^2"), {-1.2, 1.2}, PrimitiveAnchor{0.0, 0.0});
    CHECK(spec.sign() == 1);
    CHECK(std::abs(spec.primitive(0.0)) <= 1e-14);
    CHECK(std::abs(spec.primitive(std::numbers::pi / 4) - 1.0) <= 1e-8);
    for (double s = -1.2; s <= 1.2; s += 0.01)
        CHECK(std::abs(spec.primitive(s) - std::tan(s)) <= 1e-10);

    CHECK(std::abs(spec.inverse(1.0) - std::numbers::pi / 4) <= 1e-8);
    CHECK(std::abs(spec.inverse(std::tan(0.7)) - 0.7) <= 1e-8);
    CHECK(spec.range().lo == doctest::Approx(std::tan(-1.2)).epsilon(1e-10));
}

TEST_CASE("unit f gives the identity primitive")
{
    const auto spec = FunctionSpec::make(parse("1"), {0.0, 5.0});
    CHECK(spec.primitive(3.5) == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(spec.primitive(5.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(std::abs(spec.inverse(2.2) - 2.2) <= 1e-12);
    CHECK(spec.f_prime(1.0) == 0.0);
}

TEST_CASE("linear f against its analytic antiderivative")
{
    // Oracle: F(s) = s^2 + s - (0.01 + 0.1) + 0.11, i.e. t^2 + t shifted onto the anchor.
    const auto spec = FunctionSpec::make(parse("2*t+1"), {0.1, 3.0}, PrimitiveAnchor{0.1, 0.11});
    auto oracle = [](double s) { return s * s + s - (0.01 + 0.1) + 0.11; };
    CHECK(std::abs(spec.primitive(2.0) - oracle(2.0)) <= 1e-10);
    CHECK(std::abs(spec.primitive(2.0) - 6.0) <= 1e-10);
    // and against an independent adaptive quadrature
    const double quad = frectify::numerics::adaptive_simpson([](double s) { return 2 * s + 1; }, 0.1, 2.0, 1e-13);
    CHECK(std::abs(spec.primitive(2.0) - (0.11 + quad)) <= 1e-10);
}

TEST_CASE("analytic primitive is validated and honours the anchor")
{
    const auto spec = FunctionSpec::make(parse("sec(t)^2"), {-1.0, 1.0}, PrimitiveAnchor{0.0, 2.0}, parse("tan(t)"));
    CHECK(spec.has_analytic_primitive());
    CHECK(spec.primitive(0.5) == doctest::Approx(std::tan(0.5) + 2.0).epsilon(1e-15));
    CHECK(spec.inverse(std::tan(0.3) + 2.0) == doctest::Approx(0.3).epsilon(1e-12));

    CHECK_THROWS_AS(FunctionSpec::make(parse("sec(t)^2"), {-1.0, 1.0}, std::nullopt, parse("sin(t)")),
                    frectify::ValidationError);
}

TEST_CASE("construction errors")
{
    try {
        FunctionSpec::make(parse("t"), {-1.0, 1.0});
        FAIL("expected a failure");
    } catch (const frectify::SignChangeError& e) {
        CHECK(e.bracket().lo <= 0.0);
        CHECK(e.bracket().hi >= 0.0);
    } catch (const frectify::ValidationError&) {
        // the sample grid can hit f = 0 exactly; that is the near-zero error
    }
    CHECK_THROWS_AS(FunctionSpec::make(parse("t - 0.3"), {-1.0, 1.0}), frectify::SignChangeError);
    CHECK_THROWS_AS(FunctionSpec::make(parse("1e-12"), {0.0, 1.0}), frectify::ValidationError);
    CHECK_THROWS_AS(FunctionSpec::make(parse("ln(t)"), {-1.0, 1.0}), frectify::ValidationError);
    CHECK_THROWS_AS(FunctionSpec::make(parse("1"), {1.0, 0.0}), frectify::ValidationError);
    CHECK_THROWS_AS(FunctionSpec::make(parse("1"), {0.0, 1.0}, PrimitiveAnchor{2.0, 0.0}), frectify::ValidationError);

    const auto spec = FunctionSpec::make(parse("1"), {0.0, 1.0});
    CHECK_THROWS_AS(spec.primitive(1.5), frectify::ValidationError);
    try {
        spec.inverse(3.0);
        FAIL("expected a range error");
    } catch (const frectify::InverseRangeError& e) {
        CHECK(e.attainable().lo == 0.0);
        CHECK(e.attainable().hi == doctest::Approx(1.0));
    }
}

TEST_CASE("negative f gives a decreasing primitive")
{
    const auto spec = FunctionSpec::make(parse("-exp(t)"), {0.0, 1.0});
    CHECK(spec.sign() == -1);
    CHECK(spec.primitive(1.0) == doctest::Approx(1.0 - std::exp(1.0)).epsilon(1e-12));
    CHECK(spec.inverse(1.0 - std::exp(0.5)) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("property: primitive/inverse round trip, monotonicity, derivative consistency")
{
    const char* fs[] = {"sec(t)^2", "1", "2*t+1", "exp(sin(3*t)) + 0.1", "1/(1+t^2)", "-(2 + cos(t))"};
    std::mt19937_64 rng(0x5eed10);
    for (const char* text : fs) {
        INFO(std::string(text));
        const Interval dom{-0.45, 1.3};
        const auto spec = FunctionSpec::make(parse(text), dom, PrimitiveAnchor{0.0, 0.0});
        std::uniform_real_distribution<double> point(dom.lo, dom.hi);
        for (int i = 0; i < 200; ++i) {
            const double s = point(rng);
            CHECK(std::abs(spec.inverse(spec.primitive(s)) - s) <= 1e-7);
            const double y = spec.primitive(s);
            CHECK(std::abs(spec.primitive(spec.inverse(y)) - y) <= 1e-10 * (1 + std::abs(y)));
        }
        for (int i = 0; i < 200; ++i) {
            double a = point(rng), b = point(rng);
            if (a == b)
                continue;
            if (a > b)
                std::swap(a, b);
            CHECK(spec.sign() * (spec.primitive(b) - spec.primitive(a)) > 0);
        }
        const double h = 1e-5;
        for (int i = 0; i <= 1000; ++i) {
            const double s = -0.44 + i * (1.73 / 1000);
            const double fd = (spec.primitive(s + h) - spec.primitive(s - h)) / (2 * h);
            CHECK(std::abs(fd - spec.f(s)) <= 1e-6 * (1 + std::abs(spec.f(s))));
        }
    }
}
