#include "frectify/expr.hpp"

#include <cctype>
#include <charconv>
#include <numbers>
#include <optional>
#include <utility>

namespace frectify::expr {

namespace {

struct FunctionEntry {
    std::string_view name;
    Function fn;
};

constexpr FunctionEntry function_table[] = {
    {"sin", Function::sin},   {"cos", Function::cos},   {"tan", Function::tan},
    {"sec", Function::sec},   {"exp", Function::exp},   {"ln", Function::ln},
    {"sqrt", Function::sqrt}, {"atan", Function::atan}, {"asin", Function::asin},
    {"acos", Function::acos}, {"abs", Function::abs},   {"sgn", Function::sgn},
};

std::optional<Function> lookup_function(std::string_view name)
{
    for (const auto& entry : function_table)
        if (entry.name == name)
            return entry.fn;
    return std::nullopt;
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += ", ";
        out += items[i];
    }
    return out;
}

/// Recursive descent over the precedence levels documented in expr.hpp.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all()
    {
        Expr e = parse_sum();
        skip_space();
        if (pos_ != text_.size())
            fail({"operator", "end of input"});
        return e;
    }

private:
    Expr parse_sum()
    {
        Expr lhs = parse_product();
        for (;;) {
            skip_space();
            if (accept('+'))
                lhs = Expr::binary(BinaryOp::add, lhs, parse_product());
            else if (accept('-'))
                lhs = Expr::binary(BinaryOp::sub, lhs, parse_product());
            else
                return lhs;
        }
    }

    Expr parse_product()
    {
        Expr lhs = parse_unary();
        for (;;) {
            skip_space();
            if (accept('*'))
                lhs = Expr::binary(BinaryOp::mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = Expr::binary(BinaryOp::div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    Expr parse_unary()
    {
        skip_space();
        if (accept('-'))
            return Expr::negate(parse_unary());
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        skip_space();
        if (accept('^'))
            return Expr::binary(BinaryOp::pow, base, parse_unary());
        return base;
    }

    Expr parse_primary()
    {
        skip_space();
        if (pos_ >= text_.size())
            fail({"number", "variable", "function", "'('"});

        const char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            Expr inner = parse_sum();
            skip_space();
            if (!accept(')'))
                fail({"')'"});
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_')
            return parse_identifier();
        fail({"number", "variable", "function", "'('"});
    }

    Expr parse_number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
                ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits();
            else
                pos_ = mark; // not an exponent; leave for the caller to reject
        }
        double value = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            pos_ = start;
            fail({"number"});
        }
        return Expr::constant(value);
    }

    Expr parse_identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        if (name == "t" || name == "s")
            return Expr::variable();
        if (name == "pi")
            return Expr::constant(std::numbers::pi);

        const auto fn = lookup_function(name);
        if (!fn) {
            throw ParseError("unknown function or symbol '" + std::string(name) + "' at offset " +
                                 std::to_string(start),
                             start, {"function name", "t", "pi"});
        }
        skip_space();
        if (!accept('('))
            fail({"'('"});
        Expr arg = parse_sum();
        skip_space();
        if (!accept(')'))
            fail({"')'"});
        return Expr::call(*fn, arg);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::vector<std::string> expected)
    {
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
        throw ParseError("syntax error at offset " + std::to_string(pos_) + ": found " + found +
                             ", expected " + join(expected),
                         pos_, std::move(expected));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

} // namespace frectify::expr
