#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <weakval/complex.hpp>
#include <weakval/dual.hpp>

namespace weakval::expr {

// Grammar (standard precedence; ^ is right-associative and binds
// tightest, unary minus sits between the additive and multiplicative
// levels, so -beta*Q^2/2 negates the whole product):
//
//   expression  := term (('+' | '-') term)*
//   term        := '-' term | factor (('*' | '/') factor)*
//   factor      := atom ('^' factor)?
//   atom        := number | 'i' | 'pi' | identifier
//                | func '(' expression ')' | '(' expression ')'
//   func        := 'exp' | 'ln' | 'sin' | 'cos' | 'tan' | 'sqrt'
//
// Numbers are decimal with optional fraction and exponent. Identifiers
// are [A-Za-z_][A-Za-z0-9_]*; 'i', 'pi' and the function names are
// reserved. A negative exponent needs parentheses: 2^(-3).

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class NamedConst { I, Pi };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
  double value;
  bool operator==(const Number&) const = default;
};
struct Constant {
  NamedConst which;
  bool operator==(const Constant&) const = default;
};
struct Variable {
  std::string name;
  bool operator==(const Variable&) const = default;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  AnalyticFn fn;
  NodePtr arg;
};

struct Node {
  std::variant<Number, Constant, Variable, Negate, Binary, Call> kind;
};

/// Parsed analytic wavefunction. free_vars is sorted and unique.
struct WaveExpr {
  NodePtr root;
  std::vector<std::string> free_vars;
};

/// Throws SyntaxError with the byte offset of the first offending token.
WaveExpr parse(std::string_view source);

/// Prints with minimal parentheses; parse(print(e)) is structurally
/// equal to e.
std::string print(const WaveExpr& e);
std::string print(const NodePtr& node);

bool structurally_equal(const NodePtr& a, const NodePtr& b);
bool structurally_equal(const WaveExpr& a, const WaveExpr& b);

/// Structural recursion over the chosen algebra. Throws UnboundVariable
/// for a free variable missing from the bindings and DomainError for
/// ln(0), division by zero and friends.
Complex evaluate(const WaveExpr& e, const std::map<std::string, Complex>& bindings);
DualBi evaluate(const WaveExpr& e, const std::map<std::string, DualBi>& bindings);

}  // namespace weakval::expr
