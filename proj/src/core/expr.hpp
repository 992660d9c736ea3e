#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "grid.hpp"

namespace vex {

/// Arithmetic expression over x1..x3, r = |x|, the constants pi and e, the
/// operators + - * / ^ and the functions sin cos exp log abs min max step.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?        right-associative
///   primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
///
/// -a^b parses as -(a^b). step(a, b, t) is a when t < 0, else b.
class Expr {
public:
    struct Node;

    double evaluate(const Point& x) const;
    /// Fully parenthesized source that parses back to an equal tree.
    std::string print() const;
    int dim() const noexcept { return dim_; }

    bool operator==(const Expr& other) const;

private:
    friend Expr parse(std::string_view source, int dim);
    Expr(std::shared_ptr<const Node> root, int dim) : root_(std::move(root)), dim_(dim) {}

    std::shared_ptr<const Node> root_;
    int dim_;
};

/// Errors carry 1-based column offsets.
Expr parse(std::string_view source, int dim);

/// Evaluates e at every node; failures name the node coordinates.
SampledField sampleToField(const Expr& e, const Grid& g);

}  // namespace vex
