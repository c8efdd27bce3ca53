#include "sival/expr.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace sival {

struct Expr::Node {
    Kind kind;
    std::string name;
    UnaryOp unary_op = UnaryOp::neg;
    BinaryOp binary_op = BinaryOp::add;
    std::vector<Expr> children;
    VariableSequence variables;
    DistributionPlan plan;
};

DistributionPlan plan_distribution(const VariableSequence& left, const VariableSequence& right,
                                   VariableSequence* combined)
{
    DistributionPlan plan;
    VariableSequence seq = left;
    plan.left_indices.resize(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        plan.left_indices[i] = i;
    }
    plan.right_indices.reserve(right.size());
    for (const auto& w : right) {
        const auto it = std::find(seq.begin(), seq.end(), w);
        if (it != seq.end() && static_cast<std::size_t>(it - seq.begin()) < left.size()) {
            plan.right_indices.push_back(static_cast<std::size_t>(it - seq.begin()));
        } else {
            plan.right_indices.push_back(seq.size());
            seq.push_back(w);
        }
    }
    plan.combined_arity = seq.size();
    if (combined != nullptr) {
        *combined = std::move(seq);
    }
    return plan;
}

std::string_view symbol(UnaryOp op)
{
    switch (op) {
    case UnaryOp::neg:
        return "-";
    case UnaryOp::abs:
        return "abs";
    case UnaryOp::sqrt:
        return "sqrt";
    case UnaryOp::sqrt_rel:
        return "sqrtr";
    }
    return "?";
}

std::string_view symbol(BinaryOp op)
{
    switch (op) {
    case BinaryOp::add:
        return "+";
    case BinaryOp::sub:
        return "-";
    case BinaryOp::mul:
        return "*";
    case BinaryOp::div:
        return "/";
    }
    return "?";
}

Expr Expr::var(std::string name)
{
    if (name.empty()) {
        throw std::invalid_argument("Expr::var: empty variable name");
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::var;
    node->variables = {name};
    node->name = std::move(name);
    return Expr(std::move(node));
}

Expr Expr::unary(UnaryOp op, Expr child)
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::unary;
    node->unary_op = op;
    node->variables = child.variables();
    node->children.push_back(std::move(child));
    return Expr(std::move(node));
}

Expr Expr::binary(BinaryOp op, Expr left, Expr right)
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::binary;
    node->binary_op = op;
    node->plan = plan_distribution(left.variables(), right.variables(), &node->variables);
    node->children.push_back(std::move(left));
    node->children.push_back(std::move(right));
    return Expr(std::move(node));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const std::string& Expr::name() const { return node_->name; }
UnaryOp Expr::unary_op() const { return node_->unary_op; }
BinaryOp Expr::binary_op() const { return node_->binary_op; }
const Expr& Expr::child() const { return node_->children.at(0); }
const Expr& Expr::left() const { return node_->children.at(0); }
const Expr& Expr::right() const { return node_->children.at(1); }
const DistributionPlan& Expr::plan() const { return node_->plan; }
const VariableSequence& Expr::variables() const { return node_->variables; }

bool operator==(const Expr& a, const Expr& b)
{
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.kind() != b.kind()) {
        return false;
    }
    switch (a.kind()) {
    case Expr::Kind::var:
        return a.name() == b.name();
    case Expr::Kind::unary:
        return a.unary_op() == b.unary_op() && a.child() == b.child();
    case Expr::Kind::binary:
        return a.binary_op() == b.binary_op() && a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

const VariableSequence& variable_sequence(const Expr& e)
{
    return e.variables();
}

std::size_t depth(const Expr& e)
{
    switch (e.kind()) {
    case Expr::Kind::var:
        return 0;
    case Expr::Kind::unary:
        return 1 + depth(e.child());
    case Expr::Kind::binary:
        return 1 + std::max(depth(e.left()), depth(e.right()));
    }
    return 0;
}

namespace {

void count_occurrences(const Expr& e, std::unordered_map<std::string, int>& counts)
{
    switch (e.kind()) {
    case Expr::Kind::var:
        ++counts[e.name()];
        break;
    case Expr::Kind::unary:
        count_occurrences(e.child(), counts);
        break;
    case Expr::Kind::binary:
        count_occurrences(e.left(), counts);
        count_occurrences(e.right(), counts);
        break;
    }
}

int precedence(const Expr& e)
{
    switch (e.kind()) {
    case Expr::Kind::var:
        return 4;
    case Expr::Kind::unary:
        return 3;
    case Expr::Kind::binary:
        return (e.binary_op() == BinaryOp::add || e.binary_op() == BinaryOp::sub) ? 1 : 2;
    }
    return 0;
}

void print(const Expr& e, std::string& out)
{
    switch (e.kind()) {
    case Expr::Kind::var:
        out += e.name();
        return;
    case Expr::Kind::unary:
        if (e.unary_op() == UnaryOp::neg) {
            out += '-';
            if (e.child().kind() == Expr::Kind::binary) {
                out += '(';
                print(e.child(), out);
                out += ')';
            } else {
                print(e.child(), out);
            }
        } else {
            out += symbol(e.unary_op());
            out += '(';
            print(e.child(), out);
            out += ')';
        }
        return;
    case Expr::Kind::binary: {
        const int p = precedence(e);
        const bool spaced = p == 1;
        const bool left_parens = precedence(e.left()) < p;
        const bool right_parens = precedence(e.right()) <= p;
        if (left_parens) {
            out += '(';
        }
        print(e.left(), out);
        if (left_parens) {
            out += ')';
        }
        if (spaced) {
            out += ' ';
        }
        out += symbol(e.binary_op());
        if (spaced) {
            out += ' ';
        }
        if (right_parens) {
            out += '(';
        }
        print(e.right(), out);
        if (right_parens) {
            out += ')';
        }
        return;
    }
    }
}

} // namespace

bool occurs_once(const Expr& e)
{
    std::unordered_map<std::string, int> counts;
    count_occurrences(e, counts);
    return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second == 1; });
}

std::string to_string(const Expr& e)
{
    std::string out;
    print(e, out);
    return out;
}

} // namespace sival
