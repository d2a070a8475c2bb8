#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gupspec {

// A parsed closed-form real expression over a fixed set of variables.
//
// Grammar: standard infix with precedence (+,-) < (*,/) < unary- < ^,
// '^' right-associative, so -X^2 parses as -(X^2) and X^-2 as X^(-2).
// Functions: sin cos exp ln sqrt abs arctan arcsinh tanh.
// Numbers are decimal literals with optional exponent.
//
// Immutable after parse; safe to share and evaluate from many threads.
class Expression {
public:
  // Throws SyntaxError / UnknownIdentifier. Every identifier in `source`
  // must be a function name or one of `variables`.
  static Expression parse(std::string_view source,
                          std::vector<std::string> variables);

  // Bindings must cover all variables that appear in the tree.
  // Throws DomainError if evaluation leaves the real domain.
  double evaluate(const std::map<std::string, double>& bindings) const;

  // Fast path: values[i] binds variables()[i]. values.size() must equal
  // variables().size().
  double evaluate(std::span<const double> values) const;

  const std::vector<std::string>& variables() const noexcept { return vars_; }

  // Whether the variable with this declaration index appears in the tree.
  bool uses_variable(std::size_t index) const noexcept;

  // Infix text that parses back to a structurally identical tree.
  std::string to_string() const;

  // Node-for-node equality (same shape, same operators, bit-equal literals).
  bool structurally_equal(const Expression& other) const noexcept;

private:
  enum class Kind : std::uint8_t {
    Literal,
    Variable,
    Negate,
    Add,
    Subtract,
    Multiply,
    Divide,
    Power,
    Call,
  };

  enum class Func : std::uint8_t {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
    Abs,
    Arctan,
    Arcsinh,
    Tanh,
  };

  struct Node {
    Kind kind;
    Func func;          // Call only
    double value;       // Literal only
    std::uint32_t var;  // Variable only: index into vars_
    std::int32_t lhs;   // first child, -1 if none
    std::int32_t rhs;   // second child, -1 if none
  };

  class Parser;

  Expression() = default;

  void print_node(std::int32_t index, int parent_precedence, bool rhs_of_parent,
                  std::string& out) const;

  // Children always precede parents, root is the last node.
  std::vector<Node> nodes_;
  std::vector<std::string> vars_;
};

} // namespace gupspec
