#include "generators.hpp"

#include "frectify/expr.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

using namespace frectify::expr;

namespace {

Expr c(double v) { return Expr::constant(v); }
Expr t() { return Expr::variable(); }

} // namespace

TEST_CASE("parse builds the expected trees")
{
    CHECK(parse("sec(t)^2") == Expr::binary(BinaryOp::pow, apply(Function::sec, t()), c(2)));
    CHECK(parse("t") == t());
    CHECK(parse("sin(sqrt(2)*t)/sqrt(2)") ==
          Expr::binary(BinaryOp::div,
                       apply(Function::sin, Expr::binary(BinaryOp::mul, apply(Function::sqrt, c(2)), t())),
                       apply(Function::sqrt, c(2))));
}

TEST_CASE("precedence and associativity")
{
    // pow binds tighter than unary minus
    CHECK(parse("-t^2") == Expr::negate(Expr::binary(BinaryOp::pow, t(), c(2))));
    // pow is right associative
    CHECK(parse("2^3^t") == Expr::binary(BinaryOp::pow, c(2), Expr::binary(BinaryOp::pow, c(3), t())));
    // subtraction and division are left associative
    CHECK(parse("1-2-t") == Expr::binary(BinaryOp::sub, Expr::binary(BinaryOp::sub, c(1), c(2)), t()));
    CHECK(parse("1/2/t") == Expr::binary(BinaryOp::div, Expr::binary(BinaryOp::div, c(1), c(2)), t()));
    CHECK(parse("2^-t") == Expr::binary(BinaryOp::pow, c(2), Expr::negate(t())));
    CHECK(parse(" 1 + 2 * t ") == Expr::binary(BinaryOp::add, c(1), Expr::binary(BinaryOp::mul, c(2), t())));
    CHECK(parse("s") == t());
    CHECK(eval(parse("pi"), 0.0) == std::numbers::pi);
    CHECK(eval(parse("1.5e2"), 0.0) == 150.0);
}

TEST_CASE("syntax errors carry an offset and the expected tokens")
{
    try {
        parse("sin(t");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
        REQUIRE(e.expected().size() == 1);
        CHECK(e.expected()[0] == "')'");
    }
    try {
        parse("2 * * t");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("t t"), ParseError);
    CHECK_THROWS_AS(parse("1e"), ParseError);

    try {
        parse("cosh(t)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 0);
        CHECK(std::string(e.what()).find("cosh") != std::string::npos);
    }
}

TEST_CASE("eval")
{
    CHECK(eval(parse("sec(t)^2"), 0.0) == 1.0);
    CHECK(eval(parse("tan(t)"), std::numbers::pi / 4) == doctest::Approx(1.0).epsilon(1e-12));
    const double oracle = 1.0 / (std::cos(std::numbers::pi / 3) * std::cos(std::numbers::pi / 3));
    CHECK(std::abs(eval(parse("sec(t)^2"), std::numbers::pi / 3) - oracle) <= 1e-10);
    CHECK(std::abs(eval(parse("sec(t)^2"), std::numbers::pi / 3) - 4.0) <= 1e-10);
    CHECK(eval(parse("abs(t) + sgn(t)"), -2.0) == 1.0);
}

TEST_CASE("eval reports domain errors with the offending subexpression")
{
    try {
        eval(parse("1 + ln(t - 1)"), 0.5);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(e.subexpression() == "ln(t - 1)");
    }
    CHECK_THROWS_AS(eval(parse("1/t"), 0.0), DomainError);
    CHECK_THROWS_AS(eval(parse("sec(t)"), std::numbers::pi / 2), DomainError);
    CHECK_THROWS_AS(eval(parse("tan(t)"), -3 * std::numbers::pi / 2), DomainError);
    CHECK_THROWS_AS(eval(parse("sqrt(t)"), -1.0), DomainError);
    CHECK_THROWS_AS(eval(parse("asin(t)"), 1.5), DomainError);
    CHECK_THROWS_AS(eval(parse("t^0.5"), -1.0), DomainError);
    CHECK_THROWS_AS(eval(parse("exp(t)"), 1000.0), DomainError);
    CHECK_NOTHROW(eval(parse("t^2"), -3.0));
}

TEST_CASE("differentiate")
{
    CHECK(differentiate(parse("t")) == c(1));
    CHECK(differentiate(parse("3")) == c(0));

    // d/dt tan = sec^2, compared by evaluation
    const Expr dtan = differentiate(parse("tan(t)"));
    const Expr sec2 = parse("sec(t)^2");
    for (double x = -1.4; x <= 1.4; x += 0.05)
        CHECK(eval(dtan, x) == doctest::Approx(eval(sec2, x)).epsilon(1e-13));

    // finite-difference oracle at 0 for sin(2t)
    const Expr e = parse("sin(2*t)");
    const double h = 1e-5;
    const double fd = (eval(e, h) - eval(e, -h)) / (2 * h);
    CHECK(std::abs(fd - 2.0) < 1e-9);
    CHECK(std::abs(eval(differentiate(e), 0.0) - 2.0) <= 1e-12);

    // abs is differentiable everywhere by convention, with value 0 at 0
    const Expr dabs = differentiate(parse("abs(t)"));
    CHECK(eval(dabs, 0.0) == 0.0);
    CHECK(eval(dabs, -0.3) == -1.0);

    // general power rule
    const Expr g = parse("t^t");
    CHECK(eval(differentiate(g), 2.0) == doctest::Approx(4.0 * (std::log(2.0) + 1.0)).epsilon(1e-14));
}

TEST_CASE("substitute composes")
{
    const Expr e = substitute(parse("sin(t)^2"), parse("2*t + 1"));
    CHECK(eval(e, 0.25) == doctest::Approx(std::pow(std::sin(1.5), 2)).epsilon(1e-15));
}

TEST_CASE("property: print/parse round trip is structural")
{
    std::mt19937_64 rng(0x5eed01);
    for (int i = 0; i < 1000; ++i) {
        const Expr e = frectify::testing::random_expr(rng, 6);
        const std::string text = to_string(e);
        INFO(text);
        CHECK(parse(text) == e);
    }
}

TEST_CASE("property: derivative agrees with central differences")
{
    std::mt19937_64 rng(0x5eed02);
    std::uniform_real_distribution<double> point(-1.0, 1.0);
    const double h = 1e-5;
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const Expr e = frectify::testing::random_smooth_expr(rng, 4);
        const Expr de = differentiate(e);
        for (int k = 0; k < 100; ++k) {
            const double x = point(rng);
            const double fd = (eval(e, x + h) - eval(e, x - h)) / (2 * h);
            const double exact = eval(de, x);
            INFO(to_string(e), " at t=", x);
            CHECK(std::abs(exact - fd) <= 1e-6 * (1 + std::abs(fd)));
            ++checked;
        }
    }
    CHECK(checked == 20000);
}

TEST_CASE("property: evaluation is pure")
{
    std::mt19937_64 rng(0x5eed03);
    for (int i = 0; i < 200; ++i) {
        const Expr e = frectify::testing::random_smooth_expr(rng, 5);
        const double x = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        const double a = eval(e, x);
        const double b = eval(Expr(e), x);
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
}
