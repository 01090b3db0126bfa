#ifndef FRECTIFY_EXPR_HPP
#define FRECTIFY_EXPR_HPP

#include <array>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace frectify::expr {

enum class BinaryOp { add, sub, mul, div, pow };

// sgn is not needed to write f or Y, but it is
// what d/dt abs(u) reduces to, so the parser accepts it as well.
enum class Function { sin, cos, tan, sec, exp, ln, sqrt, atan, asin, acos, abs, sgn };

/// Immutable expression tree over a single real variable (printed as `t`).
///
/// Copies share structure. Constants are always non-negative; a negative
/// literal value is represented as Negate(Constant), which is the only shape
/// the parser can produce and keeps print/parse round trips structural.
class Expr {
public:
    enum class Kind { constant, variable, negate, binary, call };

    /// The constant 0.
    Expr();

    static Expr constant(double value);
    static Expr variable();
    static Expr negate(Expr operand);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    static Expr call(Function fn, Expr arg);

    Kind kind() const noexcept;
    double value() const noexcept;      // constant only
    BinaryOp op() const noexcept;       // binary only
    Function function() const noexcept; // call only
    const Expr& lhs() const noexcept;   // binary
    const Expr& rhs() const noexcept;   // binary
    const Expr& operand() const noexcept; // negate, call

    bool is_constant(double v) const noexcept;

    friend bool operator==(const Expr& a, const Expr& b) noexcept;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

/// Syntax error at a byte offset, listing what the parser would have accepted.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Evaluation outside the natural domain of some subexpression.
class DomainError : public std::domain_error {
public:
    DomainError(const std::string& what, std::string subexpression);
    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

/// Grammar (highest binding first): primary, `^` (right assoc, exponent may be
/// signed), unary minus, `*` `/`, `+` `-`. Primaries are numbers, `pi`, the
/// variable `t` (alias `s`), `name(expr)` and parenthesised expressions.
Expr parse(std::string_view text);

/// Prints with the minimum parentheses that reparse to the same tree.
/// Numbers use the shortest round-trip decimal form.
std::string to_string(const Expr& e);

double eval(const Expr& e, double t);

/// Exact symbolic derivative with light constant folding. abs differentiates
/// to sgn, which is 0 at 0.
Expr differentiate(const Expr& e);

std::string_view function_name(Function fn) noexcept;

// Builders with constant folding of identities (0 + x, 1 * x, x ^ 1, ...).
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr apply(Function fn, const Expr& arg);

/// Replaces every occurrence of the variable with `arg`.
Expr substitute(const Expr& e, const Expr& arg);

} // namespace frectify::expr

#endif // FRECTIFY_EXPR_HPP
