#include "gupspec/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "gupspec/errors.hpp"

namespace gupspec {

namespace {

// Lockstep with Expression::Func.
constexpr std::array<std::string_view, 9> kFunctionNames = {
    "sin", "cos", "exp", "ln", "sqrt", "abs", "arctan", "arcsinh", "tanh"};

int function_id(std::string_view name) {
  for (std::size_t i = 0; i < kFunctionNames.size(); ++i)
    if (name == kFunctionNames[i]) return static_cast<int>(i);
  return -1;
}

} // namespace

class Expression::Parser {
public:
  Parser(std::string_view source, Expression& out)
      : src_(source), expr_(out) {}

  void run() {
    skip_ws();
    if (pos_ >= src_.size())
      throw SyntaxError("empty expression", 0);
    parse_additive();
    skip_ws();
    if (pos_ < src_.size())
      throw SyntaxError("unexpected trailing input", pos_);
  }

private:
  static constexpr int kMaxDepth = 512;

  std::int32_t parse_additive() {
    std::int32_t lhs = parse_multiplicative();
    for (;;) {
      skip_ws();
      if (accept('+'))
        lhs = push_binary(Kind::Add, lhs, parse_multiplicative());
      else if (accept('-'))
        lhs = push_binary(Kind::Subtract, lhs, parse_multiplicative());
      else
        return lhs;
    }
  }

  std::int32_t parse_multiplicative() {
    std::int32_t lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (accept('*'))
        lhs = push_binary(Kind::Multiply, lhs, parse_unary());
      else if (accept('/'))
        lhs = push_binary(Kind::Divide, lhs, parse_unary());
      else
        return lhs;
    }
  }

  std::int32_t parse_unary() {
    DepthGuard guard(*this);
    skip_ws();
    if (accept('-'))
      return push_unary(Kind::Negate, parse_unary());
    return parse_power();
  }

  // '^' binds tighter than unary minus and is right-associative; the
  // exponent re-enters parse_unary so X^-2 is legal.
  std::int32_t parse_power() {
    std::int32_t base = parse_atom();
    skip_ws();
    if (accept('^'))
      return push_binary(Kind::Power, base, parse_unary());
    return base;
  }

  std::int32_t parse_atom() {
    DepthGuard guard(*this);
    skip_ws();
    if (pos_ >= src_.size())
      throw SyntaxError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      std::int32_t inner = parse_additive();
      skip_ws();
      if (!accept(')'))
        throw SyntaxError("unbalanced '('", open);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_identifier();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::int32_t parse_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
        ++pos_;
      if (pos_ >= src_.size() ||
          !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        pos_ = mark; // bare 'e' is not an exponent
      } else {
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      }
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      throw SyntaxError("malformed number", start);
    return push_literal(value);
  }

  std::int32_t parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_'))
      ++pos_;
    std::string_view name = src_.substr(start, pos_ - start);
    int func = function_id(name);

    skip_ws();
    bool call_follows = pos_ < src_.size() && src_[pos_] == '(';
    if (call_follows && func >= 0) {
      std::size_t open = pos_;
      ++pos_; // '('
      std::int32_t arg = parse_additive();
      skip_ws();
      if (!accept(')'))
        throw SyntaxError("unbalanced '(' in function call", open);
      return push_call(static_cast<Func>(func), arg);
    }

    for (std::size_t i = 0; i < expr_.vars_.size(); ++i) {
      if (name == expr_.vars_[i]) {
        if (call_follows)
          throw SyntaxError("'(' after variable (no implicit multiplication)",
                            pos_);
        return push_variable(static_cast<std::uint32_t>(i));
      }
    }
    if (func >= 0)
      throw SyntaxError("function '" + std::string(name) +
                            "' needs a parenthesized argument",
                        start);
    throw UnknownIdentifier(std::string(name), start);
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth)
        throw SyntaxError("expression nested too deeply", parser.pos_);
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::int32_t push_literal(double value) {
    expr_.nodes_.push_back({Kind::Literal, Func::Sin, value, 0, -1, -1});
    return last_index();
  }
  std::int32_t push_variable(std::uint32_t var) {
    expr_.nodes_.push_back({Kind::Variable, Func::Sin, 0.0, var, -1, -1});
    return last_index();
  }
  std::int32_t push_unary(Kind kind, std::int32_t child) {
    expr_.nodes_.push_back({kind, Func::Sin, 0.0, 0, child, -1});
    return last_index();
  }
  std::int32_t push_binary(Kind kind, std::int32_t lhs, std::int32_t rhs) {
    expr_.nodes_.push_back({kind, Func::Sin, 0.0, 0, lhs, rhs});
    return last_index();
  }
  std::int32_t push_call(Func func, std::int32_t arg) {
    expr_.nodes_.push_back({Kind::Call, func, 0.0, 0, arg, -1});
    return last_index();
  }
  std::int32_t last_index() const {
    return static_cast<std::int32_t>(expr_.nodes_.size() - 1);
  }

  std::string_view src_;
  Expression& expr_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

Expression Expression::parse(std::string_view source,
                             std::vector<std::string> variables) {
  Expression e;
  e.vars_ = std::move(variables);
  Parser parser(source, e);
  parser.run();
  return e;
}

double Expression::evaluate(const std::map<std::string, double>& bindings) const {
  std::vector<double> values(vars_.size(), 0.0);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = bindings.find(vars_[i]);
    if (it == bindings.end()) {
      if (uses_variable(i))
        throw DomainError("no binding for variable '" + vars_[i] + "'");
      continue;
    }
    values[i] = it->second;
  }
  return evaluate(std::span<const double>(values));
}

double Expression::evaluate(std::span<const double> values) const {
  if (values.size() != vars_.size())
    throw DomainError("binding count does not match declared variables");

  // Children precede parents, so a single forward sweep evaluates the tree.
  constexpr std::size_t kStackSlots = 64;
  std::array<double, kStackSlots> stack_slots;
  std::vector<double> heap_slots;
  double* slots = stack_slots.data();
  if (nodes_.size() > kStackSlots) {
    heap_slots.resize(nodes_.size());
    slots = heap_slots.data();
  }

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& node = nodes_[i];
    double result = 0.0;
    switch (node.kind) {
      case Kind::Literal:
        result = node.value;
        break;
      case Kind::Variable:
        result = values[node.var];
        break;
      case Kind::Negate:
        result = -slots[node.lhs];
        break;
      case Kind::Add:
        result = slots[node.lhs] + slots[node.rhs];
        break;
      case Kind::Subtract:
        result = slots[node.lhs] - slots[node.rhs];
        break;
      case Kind::Multiply:
        result = slots[node.lhs] * slots[node.rhs];
        break;
      case Kind::Divide:
        if (slots[node.rhs] == 0.0)
          throw DomainError("division by zero");
        result = slots[node.lhs] / slots[node.rhs];
        break;
      case Kind::Power:
        result = std::pow(slots[node.lhs], slots[node.rhs]);
        break;
      case Kind::Call: {
        const double arg = slots[node.lhs];
        switch (node.func) {
          case Func::Sin: result = std::sin(arg); break;
          case Func::Cos: result = std::cos(arg); break;
          case Func::Exp: result = std::exp(arg); break;
          case Func::Ln:
            if (arg <= 0.0)
              throw DomainError("ln of a non-positive value");
            result = std::log(arg);
            break;
          case Func::Sqrt:
            if (arg < 0.0)
              throw DomainError("sqrt of a negative value");
            result = std::sqrt(arg);
            break;
          case Func::Abs: result = std::fabs(arg); break;
          case Func::Arctan: result = std::atan(arg); break;
          case Func::Arcsinh: result = std::asinh(arg); break;
          case Func::Tanh: result = std::tanh(arg); break;
        }
        break;
      }
    }
    if (!std::isfinite(result))
      throw DomainError("expression evaluated to a non-finite value");
    slots[i] = result;
  }
  return slots[nodes_.size() - 1];
}

bool Expression::uses_variable(std::size_t index) const noexcept {
  for (const Node& node : nodes_) {
    if (node.kind == Kind::Variable && node.var == index)
      return true;
  }
  return false;
}

void Expression::print_node(std::int32_t index, int parent_precedence,
                            bool rhs_of_parent, std::string& out) const {
  const Node& node = nodes_[index];
  const auto precedence_of = [](Kind kind) {
    switch (kind) {
      case Kind::Add:
      case Kind::Subtract: return 1;
      case Kind::Multiply:
      case Kind::Divide: return 2;
      case Kind::Negate: return 3;
      case Kind::Power: return 4;
      default: return 5;
    }
  };
  const int prec = precedence_of(node.kind);

  // Parenthesize when this node binds looser than its context; a right
  // operand at equal precedence needs parentheses for left-associative
  // operators (a-(b-c)), a left operand for '^' ((a^b)^c).
  const bool parens =
      prec < parent_precedence ||
      (prec == parent_precedence && prec != 3 &&
       rhs_of_parent != (node.kind == Kind::Power));

  if (parens) out += '(';
  switch (node.kind) {
    case Kind::Literal: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", node.value);
      out += buf;
      break;
    }
    case Kind::Variable:
      out += vars_[node.var];
      break;
    case Kind::Negate:
      out += '-';
      print_node(node.lhs, 3, true, out);
      break;
    case Kind::Add:
    case Kind::Subtract:
    case Kind::Multiply:
    case Kind::Divide:
    case Kind::Power: {
      const char op = node.kind == Kind::Add        ? '+'
                      : node.kind == Kind::Subtract ? '-'
                      : node.kind == Kind::Multiply ? '*'
                      : node.kind == Kind::Divide   ? '/'
                                                    : '^';
      print_node(node.lhs, prec, false, out);
      out += ' ';
      out += op;
      out += ' ';
      print_node(node.rhs, prec, true, out);
      break;
    }
    case Kind::Call: {
      out += kFunctionNames[static_cast<std::size_t>(node.func)];
      out += '(';
      print_node(node.lhs, 0, false, out);
      out += ')';
      break;
    }
  }
  if (parens) out += ')';
}

std::string Expression::to_string() const {
  std::string out;
  print_node(static_cast<std::int32_t>(nodes_.size() - 1), 0, false, out);
  return out;
}

bool Expression::structurally_equal(const Expression& other) const noexcept {
  if (vars_ != other.vars_ || nodes_.size() != other.nodes_.size())
    return false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& a = nodes_[i];
    const Node& b = other.nodes_[i];
    if (a.kind != b.kind || a.lhs != b.lhs || a.rhs != b.rhs)
      return false;
    if (a.kind == Kind::Literal &&
        !(a.value == b.value || (std::isnan(a.value) && std::isnan(b.value))))
      return false;
    if (a.kind == Kind::Variable && a.var != b.var)
      return false;
    if (a.kind == Kind::Call && a.func != b.func)
      return false;
  }
  return true;
}

} // namespace gupspec
