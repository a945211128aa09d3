#ifndef VIDEQ_EXPR_HPP
#define VIDEQ_EXPR_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace videq {

/// Parse failure; `position` is a 0-based offset into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Evaluation failure (domain error or missing binding); `position` points
/// at the offending node in the original source text.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

struct Node {
    enum class Kind { Literal, Variable, Negate, Binary, Call };

    Kind kind;
    std::size_t pos = 0;  // offset in the source text, for diagnostics
    double value = 0.0;   // Literal
    std::string name;     // Variable, Call
    char op = 0;          // Binary: one of + - * / ^
    std::shared_ptr<const Node> lhs;  // Binary lhs; Negate/Call operand
    std::shared_ptr<const Node> rhs;  // Binary rhs
};

using NodePtr = std::shared_ptr<const Node>;

bool structurally_equal(const Node& a, const Node& b);

}  // namespace detail

using Bindings = std::map<std::string, double>;

/// Immutable arithmetic expression over a declared variable set.
/// The constants pi and e are implicitly available in every expression.
class Expression {
public:
    Expression() = default;

    double evaluate(const Bindings& bindings) const;
    std::string to_text() const;
    bool operator==(const Expression& other) const;

    bool empty() const { return root_ == nullptr; }

    static Expression literal(double v);

private:
    explicit Expression(detail::NodePtr root) : root_(std::move(root)) {}

    detail::NodePtr root_;

    friend Expression parse(std::string_view text, const std::set<std::string>& allowed_vars);
};

Expression parse(std::string_view text, const std::set<std::string>& allowed_vars);

inline double evaluate(const Expression& e, const Bindings& bindings) {
    return e.evaluate(bindings);
}

inline std::string to_text(const Expression& e) { return e.to_text(); }

}  // namespace videq

#endif
