// Hand-rolled generators for the property tests. Fixed seeds keep every run
// reproducible; failures print the offending expression.
#ifndef FRECTIFY_TESTS_GENERATORS_HPP
#define FRECTIFY_TESTS_GENERATORS_HPP

#include "frectify/expr.hpp"

#include <random>

namespace frectify::testing {

using expr::BinaryOp;
using expr::Expr;
using expr::Function;

/// Arbitrary tree of depth <= max_depth over the whole node set, constants
/// drawn from a mix of integers and awkward doubles.
inline Expr random_expr(std::mt19937_64& rng, int max_depth)
{
    std::uniform_int_distribution<int> pick(0, 9);
    const int choice = max_depth <= 1 ? pick(rng) % 2 : pick(rng);
    switch (choice) {
    case 0: {
        std::uniform_int_distribution<int> style(0, 2);
        switch (style(rng)) {
        case 0: return Expr::constant(std::uniform_int_distribution<int>(0, 9)(rng));
        case 1: return Expr::constant(std::uniform_real_distribution<double>(0.0, 10.0)(rng));
        default: return Expr::constant(std::exp(std::uniform_real_distribution<double>(-30.0, 30.0)(rng)));
        }
    }
    case 1: return Expr::variable();
    case 2: return Expr::negate(random_expr(rng, max_depth - 1));
    case 3:
    case 4:
    case 5:
    case 6: {
        const auto op = static_cast<BinaryOp>(std::uniform_int_distribution<int>(0, 4)(rng));
        return Expr::binary(op, random_expr(rng, max_depth - 1), random_expr(rng, max_depth - 1));
    }
    default: {
        const auto fn = static_cast<Function>(std::uniform_int_distribution<int>(0, 11)(rng));
        return Expr::call(fn, random_expr(rng, max_depth - 1));
    }
    }
}

/// Smooth expressions that are finite and differentiable for |t| <= 1: only
/// operations whose domain cannot be left from bounded arguments.
inline Expr random_smooth_expr(std::mt19937_64& rng, int max_depth)
{
    using namespace expr;
    std::uniform_int_distribution<int> pick(0, 11);
    const int choice = max_depth <= 1 ? pick(rng) % 2 : pick(rng);
    auto sub = [&] { return random_smooth_expr(rng, max_depth - 1); };
    auto c = [&] { return Expr::constant(std::uniform_real_distribution<double>(0.25, 2.0)(rng)); };
    switch (choice) {
    case 0: return c();
    case 1: return Expr::variable();
    case 2: return sub() + sub();
    case 3: return sub() - sub();
    case 4: return sub() * sub();
    case 5: return sub() / (c() + pow(sub(), Expr::constant(2)));
    case 6: return apply(Function::sin, sub());
    case 7: return apply(Function::cos, sub());
    case 8: return apply(Function::atan, sub());
    case 9: return apply(Function::exp, apply(Function::sin, sub()));
    case 10: return apply(Function::sqrt, c() + pow(sub(), Expr::constant(2)));
    default: return pow(sub(), Expr::constant(std::uniform_int_distribution<int>(2, 3)(rng)));
    }
}

} // namespace frectify::testing

#endif
