#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "sival/distribution.hpp"

namespace sival {

enum class UnaryOp {
    neg,      ///< `-`
    abs,      ///< `abs`
    sqrt,     ///< `sqrt`, the non-negative root
    sqrt_rel, ///< `sqrtr`, the two-sided root relation
};

enum class BinaryOp { add, sub, mul, div };

[[nodiscard]] std::string_view symbol(UnaryOp op);
[[nodiscard]] std::string_view symbol(BinaryOp op);

/// Immutable expression tree over variables, unary and binary operation
/// symbols. Copies share structure.
///
/// Every node caches its variable sequence at construction; binary nodes
/// also cache the distribution plan for their two children.
class Expr {
  public:
    enum class Kind { var, unary, binary };

    static Expr var(std::string name);
    static Expr unary(UnaryOp op, Expr child);
    static Expr binary(BinaryOp op, Expr left, Expr right);

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] bool is_var() const { return kind() == Kind::var; }

    // Accessors below require the matching kind.
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] UnaryOp unary_op() const;
    [[nodiscard]] BinaryOp binary_op() const;
    [[nodiscard]] const Expr& child() const;
    [[nodiscard]] const Expr& left() const;
    [[nodiscard]] const Expr& right() const;
    [[nodiscard]] const DistributionPlan& plan() const;

    [[nodiscard]] const VariableSequence& variables() const;

    /// Structural equality.
    friend bool operator==(const Expr& a, const Expr& b);

  private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Distinct variables in left-to-right depth-first order of first occurrence.
[[nodiscard]] const VariableSequence& variable_sequence(const Expr& e);

/// 0 for a variable; 1 + the deepest child otherwise.
[[nodiscard]] std::size_t depth(const Expr& e);

/// True iff no variable occurs more than once.
[[nodiscard]] bool occurs_once(const Expr& e);

/// Source text that parses back to the same tree, with the minimum of
/// parentheses under the usual precedence and left associativity.
[[nodiscard]] std::string to_string(const Expr& e);

} // namespace sival
