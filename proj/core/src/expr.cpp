#include "bdspectra/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

#include "bdspectra/errors.hpp"

namespace bdspectra {

namespace {

NodePtr make(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }

NodePtr make_const(double v) {
  if (std::signbit(v)) return make({NegNode{make({ConstNode{-v}})}});
  return make({ConstNode{v}});
}

const char* op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
    case BinaryOp::pow: return "^";
  }
  return "?";
}

const char* func_name(Func fn) {
  switch (fn) {
    case Func::sqrt: return "sqrt";
    case Func::exp: return "exp";
    case Func::ln: return "ln";
  }
  return "?";
}

void write_canonical(const NodePtr& node, std::string& out) {
  std::visit(
      [&out](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ConstNode>) {
          out += format_number(n.value);
        } else if constexpr (std::is_same_v<N, VarNode>) {
          out += 't';
        } else if constexpr (std::is_same_v<N, NegNode>) {
          out += "(-";
          write_canonical(n.operand, out);
          out += ')';
        } else if constexpr (std::is_same_v<N, BinaryNode>) {
          out += '(';
          write_canonical(n.lhs, out);
          out += op_symbol(n.op);
          write_canonical(n.rhs, out);
          out += ')';
        } else {
          out += func_name(n.fn);
          out += '(';
          write_canonical(n.arg, out);
          out += ')';
        }
      },
      node->data);
}

std::string canonical_of(const NodePtr& node) {
  std::string out;
  write_canonical(node, out);
  return out;
}

// Exponent that is an integer literal (possibly negated); such powers accept
// any base.
std::optional<int> integer_exponent(const NodePtr& node) {
  if (const auto* c = std::get_if<ConstNode>(&node->data)) {
    if (c->value == std::floor(c->value) && std::abs(c->value) <= 1024.0) {
      return static_cast<int>(c->value);
    }
    return std::nullopt;
  }
  if (const auto* neg = std::get_if<NegNode>(&node->data)) {
    if (auto inner = integer_exponent(neg->operand)) return -*inner;
  }
  return std::nullopt;
}

[[noreturn]] void domain_fail(const NodePtr& node, double t, const std::string& reason) {
  throw DomainError(canonical_of(node), t, reason);
}

Dual evaluate(const NodePtr& node, double t) {
  Dual result = std::visit(
      [&](const auto& n) -> Dual {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ConstNode>) {
          return {n.value, 0.0};
        } else if constexpr (std::is_same_v<N, VarNode>) {
          return Dual::variable(t);
        } else if constexpr (std::is_same_v<N, NegNode>) {
          return -evaluate(n.operand, t);
        } else if constexpr (std::is_same_v<N, BinaryNode>) {
          const Dual lhs = evaluate(n.lhs, t);
          if (n.op == BinaryOp::pow) {
            if (auto k = integer_exponent(n.rhs)) {
              if (lhs.value == 0.0 && *k < 0) domain_fail(node, t, "zero raised to a negative power");
              return pow_int(lhs, *k);
            }
            const Dual rhs = evaluate(n.rhs, t);
            if (!(lhs.value > 0.0)) domain_fail(node, t, "non-integer power of a non-positive base");
            return pow(lhs, rhs);
          }
          const Dual rhs = evaluate(n.rhs, t);
          switch (n.op) {
            case BinaryOp::add: return lhs + rhs;
            case BinaryOp::sub: return lhs - rhs;
            case BinaryOp::mul: return lhs * rhs;
            case BinaryOp::div:
              if (rhs.value == 0.0) domain_fail(node, t, "division by zero");
              return lhs / rhs;
            case BinaryOp::pow: break;
          }
          return {};
        } else {
          const Dual arg = evaluate(n.arg, t);
          switch (n.fn) {
            case Func::sqrt:
              if (!(arg.value > 0.0)) domain_fail(node, t, "sqrt of a non-positive value");
              return sqrt(arg);
            case Func::exp: return exp(arg);
            case Func::ln:
              if (!(arg.value > 0.0)) domain_fail(node, t, "ln of a non-positive value");
              return log(arg);
          }
          return {};
        }
      },
      node->data);
  if (!std::isfinite(result.value) || !std::isfinite(result.deriv)) {
    domain_fail(node, t, "non-finite result");
  }
  return result;
}

NodePtr substitute_node(const NodePtr& node, const NodePtr& replacement) {
  return std::visit(
      [&](const auto& n) -> NodePtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ConstNode>) {
          return node;
        } else if constexpr (std::is_same_v<N, VarNode>) {
          return replacement;
        } else if constexpr (std::is_same_v<N, NegNode>) {
          return make({NegNode{substitute_node(n.operand, replacement)}});
        } else if constexpr (std::is_same_v<N, BinaryNode>) {
          return make({BinaryNode{n.op, substitute_node(n.lhs, replacement),
                                  substitute_node(n.rhs, replacement)}});
        } else {
          return make({FuncNode{n.fn, substitute_node(n.arg, replacement)}});
        }
      },
      node->data);
}

bool mentions_variable(const NodePtr& node) {
  return std::visit(
      [](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ConstNode>) return false;
        else if constexpr (std::is_same_v<N, VarNode>) return true;
        else if constexpr (std::is_same_v<N, NegNode>) return mentions_variable(n.operand);
        else if constexpr (std::is_same_v<N, BinaryNode>)
          return mentions_variable(n.lhs) || mentions_variable(n.rhs);
        else return mentions_variable(n.arg);
      },
      node->data);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(pos_, what); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& what) { throw SyntaxError(at, what); }

  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make({BinaryNode{BinaryOp::add, lhs, term()}});
      } else if (accept('-')) {
        lhs = make({BinaryNode{BinaryOp::sub, lhs, term()}});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make({BinaryNode{BinaryOp::mul, lhs, unary()}});
      } else if (accept('/')) {
        lhs = make({BinaryNode{BinaryOp::div, lhs, unary()}});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make({NegNode{unary()}});
    return power();
  }

  NodePtr power() {
    NodePtr b = base();
    if (accept('^')) return make({BinaryNode{BinaryOp::pow, b, unary()}});
    return b;
  }

  NodePtr base() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      const std::size_t open = pos_;
      ++pos_;
      NodePtr inner;
      try {
        inner = expr();
      } catch (const SyntaxError& e) {
        if (e.offset() >= src_.size()) fail_at(open, "unbalanced '('");
        throw;
      }
      if (!accept(')')) {
        if (pos_ >= src_.size()) fail_at(open, "unbalanced '('");
        fail("expected ')'");
      }
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_;
      return pos_ - from;
    };
    std::size_t count = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail_at(start, "malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent");
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc{} || ptr != src_.data() + pos_ || !std::isfinite(value)) {
      fail_at(start, "number out of range");
    }
    return make({ConstNode{value}});
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ((src_[pos_] >= 'a' && src_[pos_] <= 'z') ||
                                  (src_[pos_] >= 'A' && src_[pos_] <= 'Z') ||
                                  (src_[pos_] >= '0' && src_[pos_] <= '9') || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "t") return make({VarNode{}});
    static constexpr std::array<std::pair<std::string_view, Func>, 3> funcs{
        {{"sqrt", Func::sqrt}, {"exp", Func::exp}, {"ln", Func::ln}}};
    for (const auto& [fname, fn] : funcs) {
      if (name == fname) {
        if (!accept('(')) fail("expected '(' after " + std::string(name));
        NodePtr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return make({FuncNode{fn, arg}});
      }
    }
    throw UnknownIdentifier(start, std::string(name));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

CoeffExpr::CoeffExpr() : CoeffExpr(make_const(0.0), "0") {}

CoeffExpr::CoeffExpr(NodePtr root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

CoeffExpr CoeffExpr::from_node(NodePtr root) {
  std::string text = canonical_of(root);
  return CoeffExpr(std::move(root), std::move(text));
}

CoeffExpr CoeffExpr::constant(double value) { return from_node(make_const(value)); }

CoeffExpr CoeffExpr::variable() { return from_node(make({VarNode{}})); }

std::string CoeffExpr::canonical() const { return canonical_of(root_); }

Dual CoeffExpr::eval(double t) const { return evaluate(root_, t); }

bool CoeffExpr::is_literal(double v) const {
  const auto* c = std::get_if<ConstNode>(&root_->data);
  return c != nullptr && c->value == v;
}

bool CoeffExpr::is_constant() const { return !mentions_variable(root_); }

CoeffExpr CoeffExpr::substitute(const CoeffExpr& replacement) const {
  return from_node(substitute_node(root_, replacement.root_));
}

CoeffExpr operator+(const CoeffExpr& a, const CoeffExpr& b) {
  return CoeffExpr::from_node(make({BinaryNode{BinaryOp::add, a.root_, b.root_}}));
}
CoeffExpr operator-(const CoeffExpr& a, const CoeffExpr& b) {
  return CoeffExpr::from_node(make({BinaryNode{BinaryOp::sub, a.root_, b.root_}}));
}
CoeffExpr operator*(const CoeffExpr& a, const CoeffExpr& b) {
  return CoeffExpr::from_node(make({BinaryNode{BinaryOp::mul, a.root_, b.root_}}));
}
CoeffExpr operator/(const CoeffExpr& a, const CoeffExpr& b) {
  return CoeffExpr::from_node(make({BinaryNode{BinaryOp::div, a.root_, b.root_}}));
}
CoeffExpr operator-(const CoeffExpr& a) { return CoeffExpr::from_node(make({NegNode{a.root_}})); }

CoeffExpr parse_expr(std::string_view source) {
  Parser parser(source);
  NodePtr root = parser.parse();
  return CoeffExpr(std::move(root), std::string(source));
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (a->data.index() != b->data.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using N = std::decay_t<decltype(na)>;
        const auto& nb = std::get<N>(b->data);
        if constexpr (std::is_same_v<N, ConstNode>) return na.value == nb.value;
        else if constexpr (std::is_same_v<N, VarNode>) return true;
        else if constexpr (std::is_same_v<N, NegNode>) return structurally_equal(na.operand, nb.operand);
        else if constexpr (std::is_same_v<N, BinaryNode>)
          return na.op == nb.op && structurally_equal(na.lhs, nb.lhs) && structurally_equal(na.rhs, nb.rhs);
        else return na.fn == nb.fn && structurally_equal(na.arg, nb.arg);
      },
      a->data);
}

}  // namespace bdspectra
