#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gencvx {

// Parse failure; offset is a byte position within the input.
struct ParseError : std::runtime_error {
    ParseError(std::size_t offset, std::string message, std::string token)
        : std::runtime_error(message + " at offset " + std::to_string(offset) +
                             (token.empty() ? "" : " near '" + token + "'")),
          offset(offset),
          message(std::move(message)),
          token(std::move(token)) {}

    std::size_t offset;
    std::string message;
    std::string token;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class BinOp { Add, Sub, Mul, Div };
enum class UnFn { Neg, Sin, Cos, Log, Exp, Abs, Sign, Sqrt };
enum class RelOp { Lt, Le, Eq, Gt, Ge };
enum class NamedConst { Pi, E };

struct LiteralNode { double value; };
struct ConstNode { NamedConst which; };
struct VarNode { int index; };  // zero-based; prints as x{index+1}
struct BoundTNode {};
struct BinaryNode { BinOp op; NodePtr lhs, rhs; };
struct UnaryNode { UnFn fn; NodePtr arg; };
struct PowNode { NodePtr base; int exponent; };
struct PiecewiseNode {
    struct Branch {
        NodePtr lhs;
        RelOp rel;
        NodePtr rhs;
        NodePtr value;
    };
    std::vector<Branch> branches;
    NodePtr otherwise;  // mandatory else branch
};
struct Integral0Node { NodePtr integrand, upper; };

struct Node {
    std::variant<LiteralNode, ConstNode, VarNode, BoundTNode, BinaryNode,
                 UnaryNode, PowNode, PiecewiseNode, Integral0Node>
        v;
};

// Resolves integral0 nodes; implementations live in the function-model layer.
// `node_key` identifies the AST node so resolvers may cache per-node tables.
class IntegralResolver {
public:
    virtual ~IntegralResolver() = default;
    virtual double integrate(const void* node_key,
                             const std::function<double(double)>& integrand,
                             double upper) const = 0;
};

// Immutable expression tree. Evaluation is pure; instances may be shared
// across threads freely.
class Expr {
public:
    Expr() = default;

    static Expr parse(std::string_view source);

    std::string print() const;

    // Evaluates at `point`; integral0 nodes require `resolver`.
    double evaluate(std::span<const double> point,
                    const IntegralResolver* resolver = nullptr) const;

    bool structurally_equal(const Expr& other) const;

    int max_variable() const { return max_var_; }  // -1 when no variables occur
    bool uses_integral() const { return uses_integral_; }
    bool empty() const { return root_ == nullptr; }
    const Node* root() const { return root_.get(); }

private:
    NodePtr root_;
    int max_var_ = -1;
    bool uses_integral_ = false;
};

// Evaluates a bare subtree outside any integral0 context; used by the
// function-model layer for upper-limit range probing.
double evaluate_node(const Node& n, std::span<const double> point,
                     const IntegralResolver* resolver);

} // namespace gencvx
