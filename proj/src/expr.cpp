#include "frectify/expr.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace frectify::expr {

struct Expr::Node {
    Node(Kind k, Expr a, Expr b) : kind(k), children{std::move(a), std::move(b)} {}

    Kind kind;
    double value = 0.0;
    BinaryOp op = BinaryOp::add;
    Function fn = Function::sin;
    std::array<Expr, 2> children;
};

namespace {

const Expr& zero_expr()
{
    static const Expr z = Expr::constant(0.0);
    return z;
}

} // namespace

Expr::Expr() : Expr(zero_expr()) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value)
{
    if (!std::isfinite(value))
        throw std::invalid_argument("expression constants must be finite");
    if (std::signbit(value) && value != 0.0)
        return negate(constant(-value));
    auto n = std::make_shared<Node>(Kind::constant, Expr(nullptr), Expr(nullptr));
    n->value = value == 0.0 ? 0.0 : value; // drop -0
    return Expr(std::move(n));
}

Expr Expr::variable()
{
    static const Expr v = [] {
        return Expr(std::make_shared<Node>(Kind::variable, Expr(nullptr), Expr(nullptr)));
    }();
    return v;
}

Expr Expr::negate(Expr operand)
{
    return Expr(std::make_shared<Node>(Kind::negate, std::move(operand), Expr(nullptr)));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs)
{
    auto n = std::make_shared<Node>(Kind::binary, std::move(lhs), std::move(rhs));
    n->op = op;
    return Expr(std::move(n));
}

Expr Expr::call(Function fn, Expr arg)
{
    auto n = std::make_shared<Node>(Kind::call, std::move(arg), Expr(nullptr));
    n->fn = fn;
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
BinaryOp Expr::op() const noexcept { return node_->op; }
Function Expr::function() const noexcept { return node_->fn; }
const Expr& Expr::lhs() const noexcept { return node_->children[0]; }
const Expr& Expr::rhs() const noexcept { return node_->children[1]; }
const Expr& Expr::operand() const noexcept { return node_->children[0]; }

bool Expr::is_constant(double v) const noexcept
{
    return node_->kind == Kind::constant && node_->value == v;
}

bool operator==(const Expr& a, const Expr& b) noexcept
{
    if (a.node_ == b.node_)
        return true;
    if (!a.node_ || !b.node_ || a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case Expr::Kind::constant:
        return a.value() == b.value();
    case Expr::Kind::variable:
        return true;
    case Expr::Kind::negate:
        return a.operand() == b.operand();
    case Expr::Kind::binary:
        return a.op() == b.op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Expr::Kind::call:
        return a.function() == b.function() && a.operand() == b.operand();
    }
    return false;
}

std::string_view function_name(Function fn) noexcept
{
    switch (fn) {
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::tan: return "tan";
    case Function::sec: return "sec";
    case Function::exp: return "exp";
    case Function::ln: return "ln";
    case Function::sqrt: return "sqrt";
    case Function::atan: return "atan";
    case Function::asin: return "asin";
    case Function::acos: return "acos";
    case Function::abs: return "abs";
    case Function::sgn: return "sgn";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength; larger binds tighter.
constexpr int prec_add = 1;
constexpr int prec_mul = 2;
constexpr int prec_unary = 3;
constexpr int prec_pow = 4;
constexpr int prec_primary = 5;

int precedence(const Expr& e)
{
    switch (e.kind()) {
    case Expr::Kind::constant:
    case Expr::Kind::variable:
    case Expr::Kind::call:
        return prec_primary;
    case Expr::Kind::negate:
        return prec_unary;
    case Expr::Kind::binary:
        switch (e.op()) {
        case BinaryOp::add:
        case BinaryOp::sub: return prec_add;
        case BinaryOp::mul:
        case BinaryOp::div: return prec_mul;
        case BinaryOp::pow: return prec_pow;
        }
    }
    return prec_primary;
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out)
{
    if (wrap)
        out += '(';
    print(e, out);
    if (wrap)
        out += ')';
}

void print(const Expr& e, std::string& out)
{
    switch (e.kind()) {
    case Expr::Kind::constant: {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, e.value());
        out.append(buf, res.ptr);
        return;
    }
    case Expr::Kind::variable:
        out += 't';
        return;
    case Expr::Kind::negate:
        out += '-';
        print_wrapped(e.operand(), precedence(e.operand()) < prec_unary, out);
        return;
    case Expr::Kind::call:
        out += function_name(e.function());
        out += '(';
        print(e.operand(), out);
        out += ')';
        return;
    case Expr::Kind::binary:
        break;
    }

    const int p = precedence(e);
    if (e.op() == BinaryOp::pow) {
        print_wrapped(e.lhs(), precedence(e.lhs()) < prec_primary, out);
        out += '^';
        print_wrapped(e.rhs(), precedence(e.rhs()) < prec_unary, out);
        return;
    }
    // Left-associative levels: a right operand at the same level needs
    // parentheses, otherwise it would reparse into the left spine.
    print_wrapped(e.lhs(), precedence(e.lhs()) < p, out);
    switch (e.op()) {
    case BinaryOp::add: out += " + "; break;
    case BinaryOp::sub: out += " - "; break;
    case BinaryOp::mul: out += '*'; break;
    case BinaryOp::div: out += '/'; break;
    case BinaryOp::pow: break;
    }
    print_wrapped(e.rhs(), precedence(e.rhs()) <= p, out);
}

} // namespace

std::string to_string(const Expr& e)
{
    std::string out;
    print(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain_fail(const std::string& why, const Expr& at)
{
    throw DomainError(why, to_string(at));
}

// cos below this magnitude is treated as an exact zero of cos.
constexpr double pole_threshold = 1e-14;

double eval_call(const Expr& e, double x)
{
    switch (e.function()) {
    case Function::sin: return std::sin(x);
    case Function::cos: return std::cos(x);
    case Function::tan: {
        const double c = std::cos(x);
        if (std::abs(c) < pole_threshold)
            domain_fail("tan pole", e);
        return std::tan(x);
    }
    case Function::sec: {
        const double c = std::cos(x);
        if (std::abs(c) < pole_threshold)
            domain_fail("sec pole", e);
        return 1.0 / c;
    }
    case Function::exp: return std::exp(x);
    case Function::ln:
        if (!(x > 0.0))
            domain_fail("ln of non-positive value", e);
        return std::log(x);
    case Function::sqrt:
        if (x < 0.0)
            domain_fail("sqrt of negative value", e);
        return std::sqrt(x);
    case Function::atan: return std::atan(x);
    case Function::asin:
        if (x < -1.0 || x > 1.0)
            domain_fail("asin argument outside [-1, 1]", e);
        return std::asin(x);
    case Function::acos:
        if (x < -1.0 || x > 1.0)
            domain_fail("acos argument outside [-1, 1]", e);
        return std::acos(x);
    case Function::abs: return std::abs(x);
    case Function::sgn: return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    }
    return 0.0;
}

double eval_node(const Expr& e, double t)
{
    switch (e.kind()) {
    case Expr::Kind::constant: return e.value();
    case Expr::Kind::variable: return t;
    case Expr::Kind::negate: return -eval_node(e.operand(), t);
    case Expr::Kind::call: return eval_call(e, eval_node(e.operand(), t));
    case Expr::Kind::binary: break;
    }
    const double a = eval_node(e.lhs(), t);
    const double b = eval_node(e.rhs(), t);
    double r = 0.0;
    switch (e.op()) {
    case BinaryOp::add: r = a + b; break;
    case BinaryOp::sub: r = a - b; break;
    case BinaryOp::mul: r = a * b; break;
    case BinaryOp::div:
        if (b == 0.0)
            domain_fail("division by zero", e);
        r = a / b;
        break;
    case BinaryOp::pow:
        if (a == 0.0 && b < 0.0)
            domain_fail("zero raised to a negative power", e);
        if (a < 0.0 && b != std::trunc(b))
            domain_fail("negative base with non-integer exponent", e);
        r = std::pow(a, b);
        break;
    }
    if (!std::isfinite(r))
        domain_fail("non-finite result", e);
    return r;
}

} // namespace

double eval(const Expr& e, double t)
{
    const double r = eval_node(e, t);
    if (!std::isfinite(r))
        domain_fail("non-finite result", e);
    return r;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

bool is_const(const Expr& e) { return e.kind() == Expr::Kind::constant; }

// Value of a constant or a negated constant.
bool numeric_value(const Expr& e, double& v)
{
    if (is_const(e)) {
        v = e.value();
        return true;
    }
    if (e.kind() == Expr::Kind::negate && is_const(e.operand())) {
        v = -e.operand().value();
        return true;
    }
    return false;
}

} // namespace

Expr operator+(const Expr& a, const Expr& b)
{
    double x = 0.0, y = 0.0;
    if (numeric_value(a, x) && x == 0.0)
        return b;
    if (numeric_value(b, y) && y == 0.0)
        return a;
    if (numeric_value(a, x) && numeric_value(b, y))
        return Expr::constant(x + y);
    return Expr::binary(BinaryOp::add, a, b);
}

Expr operator-(const Expr& a, const Expr& b)
{
    double x = 0.0, y = 0.0;
    if (numeric_value(b, y) && y == 0.0)
        return a;
    if (numeric_value(a, x) && x == 0.0)
        return -b;
    if (numeric_value(a, x) && numeric_value(b, y))
        return Expr::constant(x - y);
    return Expr::binary(BinaryOp::sub, a, b);
}

Expr operator-(const Expr& a)
{
    double x = 0.0;
    if (numeric_value(a, x))
        return Expr::constant(-x);
    if (a.kind() == Expr::Kind::negate)
        return a.operand();
    return Expr::negate(a);
}

Expr operator*(const Expr& a, const Expr& b)
{
    double x = 0.0, y = 0.0;
    const bool ca = numeric_value(a, x);
    const bool cb = numeric_value(b, y);
    if ((ca && x == 0.0) || (cb && y == 0.0))
        return Expr::constant(0.0);
    if (ca && x == 1.0)
        return b;
    if (cb && y == 1.0)
        return a;
    if (ca && x == -1.0)
        return -b;
    if (cb && y == -1.0)
        return -a;
    if (ca && cb)
        return Expr::constant(x * y);
    return Expr::binary(BinaryOp::mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b)
{
    double x = 0.0, y = 0.0;
    if (numeric_value(b, y) && y == 1.0)
        return a;
    if (numeric_value(a, x) && x == 0.0 && !(numeric_value(b, y) && y == 0.0))
        return Expr::constant(0.0);
    return Expr::binary(BinaryOp::div, a, b);
}

Expr pow(const Expr& base, const Expr& exponent)
{
    double y = 0.0;
    if (numeric_value(exponent, y)) {
        if (y == 0.0)
            return Expr::constant(1.0);
        if (y == 1.0)
            return base;
    }
    return Expr::binary(BinaryOp::pow, base, exponent);
}

Expr apply(Function fn, const Expr& arg) { return Expr::call(fn, arg); }

Expr substitute(const Expr& e, const Expr& arg)
{
    switch (e.kind()) {
    case Expr::Kind::constant: return e;
    case Expr::Kind::variable: return arg;
    case Expr::Kind::negate: return Expr::negate(substitute(e.operand(), arg));
    case Expr::Kind::call: return Expr::call(e.function(), substitute(e.operand(), arg));
    case Expr::Kind::binary:
        return Expr::binary(e.op(), substitute(e.lhs(), arg), substitute(e.rhs(), arg));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

Expr num(double v) { return Expr::constant(v); }

Expr derivative_of_call(Function fn, const Expr& u)
{
    switch (fn) {
    case Function::sin: return apply(Function::cos, u);
    case Function::cos: return -apply(Function::sin, u);
    case Function::tan: return pow(apply(Function::sec, u), num(2));
    case Function::sec: return apply(Function::sec, u) * apply(Function::tan, u);
    case Function::exp: return apply(Function::exp, u);
    case Function::ln: return num(1) / u;
    case Function::sqrt: return num(1) / (num(2) * apply(Function::sqrt, u));
    case Function::atan: return num(1) / (num(1) + pow(u, num(2)));
    case Function::asin: return num(1) / apply(Function::sqrt, num(1) - pow(u, num(2)));
    case Function::acos: return -(num(1) / apply(Function::sqrt, num(1) - pow(u, num(2))));
    case Function::abs: return apply(Function::sgn, u);
    case Function::sgn: return num(0);
    }
    return num(0);
}

} // namespace

Expr differentiate(const Expr& e)
{
    switch (e.kind()) {
    case Expr::Kind::constant: return num(0);
    case Expr::Kind::variable: return num(1);
    case Expr::Kind::negate: return -differentiate(e.operand());
    case Expr::Kind::call: {
        const Expr du = differentiate(e.operand());
        if (du.is_constant(0.0))
            return num(0);
        return derivative_of_call(e.function(), e.operand()) * du;
    }
    case Expr::Kind::binary: break;
    }

    const Expr& u = e.lhs();
    const Expr& v = e.rhs();
    const Expr du = differentiate(u);
    const Expr dv = differentiate(v);
    switch (e.op()) {
    case BinaryOp::add: return du + dv;
    case BinaryOp::sub: return du - dv;
    case BinaryOp::mul: return du * v + u * dv;
    case BinaryOp::div:
        if (dv.is_constant(0.0))
            return du / v;
        return (du * v - u * dv) / pow(v, num(2));
    case BinaryOp::pow: {
        double c = 0.0;
        if (dv.is_constant(0.0) && numeric_value(v, c))
            return num(c) * pow(u, num(c - 1.0)) * du;
        if (du.is_constant(0.0))
            return e * apply(Function::ln, u) * dv;
        return e * (dv * apply(Function::ln, u) + v * du / u);
    }
    }
    return num(0);
}

// ---------------------------------------------------------------------------

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error(std::move(message)), offset_(offset), expected_(std::move(expected))
{
}

DomainError::DomainError(const std::string& what, std::string subexpression)
    : std::domain_error(what + " in `" + subexpression + "`"), subexpression_(std::move(subexpression))
{
}

} // namespace frectify::expr
