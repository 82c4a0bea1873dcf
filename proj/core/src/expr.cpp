#include <weakval/expr.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <set>

#include <weakval/errors.hpp>

namespace weakval::expr {

namespace {

// ---------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------

enum class TokKind {
  Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End
};

struct Token {
  TokKind kind;
  std::size_t offset;
  double number = 0.0;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    current_.offset = pos_;
    current_.text.clear();
    if (pos_ >= src_.size()) {
      current_.kind = TokKind::End;
      return;
    }
    const char c = src_[pos_];
    switch (c) {
      case '+': current_.kind = TokKind::Plus; ++pos_; return;
      case '-': current_.kind = TokKind::Minus; ++pos_; return;
      case '*': current_.kind = TokKind::Star; ++pos_; return;
      case '/': current_.kind = TokKind::Slash; ++pos_; return;
      case '^': current_.kind = TokKind::Caret; ++pos_; return;
      case '(': current_.kind = TokKind::LParen; ++pos_; return;
      case ')': current_.kind = TokKind::RParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) ||
              src_[end] == '_'))
        ++end;
      current_.kind = TokKind::Ident;
      current_.text.assign(src_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  void lex_number() {
    const std::size_t start = pos_;
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
      std::size_t exp_pos = pos_ + 1;
      if (exp_pos < src_.size() && (src_[exp_pos] == '+' || src_[exp_pos] == '-'))
        ++exp_pos;
      if (exp_pos < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[exp_pos]))) {
        pos_ = exp_pos;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      }
    }
    current_.kind = TokKind::Number;
    const std::string text(src_.substr(start, pos_ - start));
    current_.number = std::strtod(text.c_str(), nullptr);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_;
};

// ---------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------

bool function_name(const std::string& name, AnalyticFn& out) {
  if (name == "exp") { out = AnalyticFn::Exp; return true; }
  if (name == "ln") { out = AnalyticFn::Ln; return true; }
  if (name == "sin") { out = AnalyticFn::Sin; return true; }
  if (name == "cos") { out = AnalyticFn::Cos; return true; }
  if (name == "tan") { out = AnalyticFn::Tan; return true; }
  if (name == "sqrt") { out = AnalyticFn::Sqrt; return true; }
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  NodePtr run() {
    NodePtr e = expression();
    const Token& t = lex_.peek();
    if (t.kind != TokKind::End)
      throw SyntaxError("expected end of input or an operator", t.offset);
    return e;
  }

 private:
  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      const TokKind k = lex_.peek().kind;
      if (k != TokKind::Plus && k != TokKind::Minus) return lhs;
      lex_.take();
      NodePtr rhs = term();
      lhs = make(Binary{k == TokKind::Plus ? BinaryOp::Add : BinaryOp::Sub,
                        std::move(lhs), std::move(rhs)});
    }
  }

  NodePtr term() {
    // Unary minus binds a whole multiplicative chain: -a*b^2/c is the
    // negation of a*b^2/c.
    if (lex_.peek().kind == TokKind::Minus) {
      lex_.take();
      return make(Negate{term()});
    }
    NodePtr lhs = factor();
    for (;;) {
      const TokKind k = lex_.peek().kind;
      if (k != TokKind::Star && k != TokKind::Slash) return lhs;
      lex_.take();
      NodePtr rhs = factor();
      lhs = make(Binary{k == TokKind::Star ? BinaryOp::Mul : BinaryOp::Div,
                        std::move(lhs), std::move(rhs)});
    }
  }

  NodePtr factor() {
    NodePtr base = atom();
    if (lex_.peek().kind != TokKind::Caret) return base;
    lex_.take();
    // Right-associative: 2^3^2 = 2^(3^2). A negative exponent needs
    // parentheses: 2^(-3).
    NodePtr exponent = factor();
    return make(Binary{BinaryOp::Pow, std::move(base), std::move(exponent)});
  }

  NodePtr atom() {
    const Token t = lex_.take();
    switch (t.kind) {
      case TokKind::Number:
        return make(Number{t.number});
      case TokKind::LParen: {
        NodePtr e = expression();
        expect(TokKind::RParen, "expected ')'");
        return e;
      }
      case TokKind::Ident: {
        if (t.text == "i") return make(Constant{NamedConst::I});
        if (t.text == "pi") return make(Constant{NamedConst::Pi});
        AnalyticFn fn;
        if (function_name(t.text, fn)) {
          expect(TokKind::LParen, "expected '(' after function name");
          NodePtr arg = expression();
          expect(TokKind::RParen, "expected ')'");
          return make(Call{fn, std::move(arg)});
        }
        return make(Variable{t.text});
      }
      default:
        throw SyntaxError("expected a number, identifier or '('", t.offset);
    }
  }

  void expect(TokKind kind, const char* message) {
    const Token& t = lex_.peek();
    if (t.kind != kind) throw SyntaxError(message, t.offset);
    lex_.take();
  }

  template <class K>
  static NodePtr make(K&& kind) {
    return std::make_shared<const Node>(Node{std::forward<K>(kind)});
  }

  Lexer lex_;
};

void collect_vars(const NodePtr& node, std::set<std::string>& out) {
  std::visit(
      [&out](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Variable>) {
          out.insert(k.name);
        } else if constexpr (std::is_same_v<T, Negate>) {
          collect_vars(k.operand, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_vars(k.lhs, out);
          collect_vars(k.rhs, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          collect_vars(k.arg, out);
        }
      },
      node->kind);
}

// ---------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------

// Binding strength: Add/Sub = 1, Negate = 2, Mul/Div = 3, Pow = 4.
int precedence(const NodePtr& node) {
  return std::visit(
      [](const auto& k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Binary>) {
          switch (k.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub: return 1;
            case BinaryOp::Mul:
            case BinaryOp::Div: return 3;
            case BinaryOp::Pow: return 4;
          }
        }
        if constexpr (std::is_same_v<T, Negate>) return 2;
        return 5;  // atoms never need parentheses
      },
      node->kind);
}

const char* fn_name(AnalyticFn fn) {
  switch (fn) {
    case AnalyticFn::Exp: return "exp";
    case AnalyticFn::Ln: return "ln";
    case AnalyticFn::Sin: return "sin";
    case AnalyticFn::Cos: return "cos";
    case AnalyticFn::Tan: return "tan";
    case AnalyticFn::Sqrt: return "sqrt";
  }
  return "?";
}

void print_node(const NodePtr& node, std::string& out);

void print_child(const NodePtr& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print_node(child, out);
    out += ')';
  } else {
    print_node(child, out);
  }
}

void print_node(const NodePtr& node, std::string& out) {
  std::visit(
      [&out](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Number>) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.17g", k.value);
          out += buf;
        } else if constexpr (std::is_same_v<T, Constant>) {
          out += (k.which == NamedConst::I) ? "i" : "pi";
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += k.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += '-';
          print_child(k.operand, 2, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          switch (k.op) {
            case BinaryOp::Add:
              print_child(k.lhs, 1, out);
              out += " + ";
              print_child(k.rhs, 2, out);
              break;
            case BinaryOp::Sub:
              print_child(k.lhs, 1, out);
              out += " - ";
              print_child(k.rhs, 2, out);
              break;
            case BinaryOp::Mul:
              print_child(k.lhs, 3, out);
              out += "*";
              print_child(k.rhs, 4, out);
              break;
            case BinaryOp::Div:
              print_child(k.lhs, 3, out);
              out += "/";
              print_child(k.rhs, 4, out);
              break;
            case BinaryOp::Pow:
              // Right-associative: parenthesize any operator on the left,
              // and anything below ^ itself on the right.
              print_child(k.lhs, 5, out);
              out += "^";
              print_child(k.rhs, 4, out);
              break;
          }
        } else if constexpr (std::is_same_v<T, Call>) {
          out += fn_name(k.fn);
          out += '(';
          print_node(k.arg, out);
          out += ')';
        }
      },
      node->kind);
}

// ---------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------

Complex value_of(const Complex& z) { return z; }
Complex value_of(const DualBi& d) { return d.v; }

template <class Scalar>
Scalar eval_node(const NodePtr& node,
                 const std::map<std::string, Scalar>& bindings) {
  return std::visit(
      [&bindings](const auto& k) -> Scalar {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Number>) {
          return Scalar(k.value);
        } else if constexpr (std::is_same_v<T, Constant>) {
          return k.which == NamedConst::I ? Scalar(Complex(0.0, 1.0))
                                          : Scalar(std::numbers::pi);
        } else if constexpr (std::is_same_v<T, Variable>) {
          const auto it = bindings.find(k.name);
          if (it == bindings.end())
            throw UnboundVariable("unbound variable '" + k.name + "'");
          return it->second;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -eval_node(k.operand, bindings);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const Scalar lhs = eval_node(k.lhs, bindings);
          const Scalar rhs = eval_node(k.rhs, bindings);
          switch (k.op) {
            case BinaryOp::Add: return lhs + rhs;
            case BinaryOp::Sub: return lhs - rhs;
            case BinaryOp::Mul: return lhs * rhs;
            case BinaryOp::Div: {
              if (value_of(rhs) == Complex{})
                throw DomainError("division by zero");
              return lhs / rhs;
            }
            case BinaryOp::Pow: return alg_pow(lhs, rhs);
          }
          throw DomainError("unknown binary operator");
        } else {
          static_assert(std::is_same_v<T, Call>);
          return weakval::apply(k.fn, eval_node(k.arg, bindings));
        }
      },
      node->kind);
}

}  // namespace

WaveExpr parse(std::string_view source) {
  WaveExpr e;
  e.root = Parser(source).run();
  std::set<std::string> vars;
  collect_vars(e.root, vars);
  e.free_vars.assign(vars.begin(), vars.end());
  return e;
}

std::string print(const NodePtr& node) {
  std::string out;
  print_node(node, out);
  return out;
}

std::string print(const WaveExpr& e) { return print(e.root); }

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a->kind.index() != b->kind.index()) return false;
  return std::visit(
      [&b](const auto& ka) -> bool {
        using T = std::decay_t<decltype(ka)>;
        const auto& kb = std::get<T>(b->kind);
        if constexpr (std::is_same_v<T, Number> ||
                      std::is_same_v<T, Constant> ||
                      std::is_same_v<T, Variable>) {
          return ka == kb;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return structurally_equal(ka.operand, kb.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return ka.op == kb.op && structurally_equal(ka.lhs, kb.lhs) &&
                 structurally_equal(ka.rhs, kb.rhs);
        } else {
          static_assert(std::is_same_v<T, Call>);
          return ka.fn == kb.fn && structurally_equal(ka.arg, kb.arg);
        }
      },
      a->kind);
}

bool structurally_equal(const WaveExpr& a, const WaveExpr& b) {
  return structurally_equal(a.root, b.root);
}

Complex evaluate(const WaveExpr& e,
                 const std::map<std::string, Complex>& bindings) {
  return eval_node(e.root, bindings);
}

DualBi evaluate(const WaveExpr& e,
                const std::map<std::string, DualBi>& bindings) {
  return eval_node(e.root, bindings);
}

}  // namespace weakval::expr
