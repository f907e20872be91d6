#include "wintgen/expression.hpp"

#include <cctype>
#include <charconv>
#include <numbers>

namespace wintgen {

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars, bool allow_complex)
      : src_(src), vars_(vars), complex_(allow_complex) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw StructuralError("expression parse error: " + msg + " at offset " + std::to_string(pos_) + " in \"" +
                          std::string(src_) + "\"");
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string text_from(std::size_t start) const {
    std::string_view t = src_.substr(start, pos_ - start);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
    return std::string(t);
  }

  NodePtr make_binary(Expression::Kind k, NodePtr a, NodePtr b, std::size_t start) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->constant = a->constant && b->constant;
    n->args = {std::move(a), std::move(b)};
    n->text = text_from(start);
    return n;
  }

  NodePtr expr() {
    skip_ws();
    const std::size_t start = pos_;
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(Expression::Kind::Add, lhs, term(), start);
      } else if (accept('-')) {
        lhs = make_binary(Expression::Kind::Sub, lhs, term(), start);
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    skip_ws();
    const std::size_t start = pos_;
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(Expression::Kind::Mul, lhs, unary(), start);
      } else if (accept('/')) {
        lhs = make_binary(Expression::Kind::Div, lhs, unary(), start);
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    skip_ws();
    const std::size_t start = pos_;
    if (accept('-')) {
      NodePtr arg = unary();
      auto n = std::make_shared<Node>();
      n->kind = Expression::Kind::Neg;
      n->constant = arg->constant;
      n->args = {arg};
      n->text = text_from(start);
      return n;
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    skip_ws();
    const std::size_t start = pos_;
    NodePtr base = primary();
    if (accept('^')) return make_binary(Expression::Kind::Pow, base, unary(), start);
    return base;
  }

  NodePtr primary() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0;
      const char* first = src_.data() + pos_;
      auto [ptr, ec] = std::from_chars(first, src_.data() + src_.size(), v);
      if (ec != std::errc()) fail("malformed number");
      pos_ += static_cast<std::size_t>(ptr - first);
      auto n = std::make_shared<Node>();
      n->kind = Expression::Kind::Number;
      n->number = v;
      n->text = text_from(start);
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      const std::string name(src_.substr(start, pos_ - start));
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == '(') return call(name, start);
      return name_node(name, start);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  NodePtr call(const std::string& name, std::size_t start) {
    static const std::pair<const char*, Expression::Function> table[] = {
        {"sin", Expression::Function::Sin},   {"cos", Expression::Function::Cos},
        {"tan", Expression::Function::Tan},   {"exp", Expression::Function::Exp},
        {"log", Expression::Function::Log},   {"sqrt", Expression::Function::Sqrt},
        {"sinh", Expression::Function::Sinh}, {"cosh", Expression::Function::Cosh}};
    auto n = std::make_shared<Node>();
    n->kind = Expression::Kind::Call;
    bool found = false;
    for (const auto& [fname, f] : table) {
      if (name == fname) {
        n->function = f;
        found = true;
      }
    }
    if (!found) fail("unknown function '" + name + "'");
    accept('(');
    NodePtr arg = expr();
    if (!accept(')')) fail("expected ')' after argument of " + name);
    n->constant = arg->constant;
    n->args = {arg};
    n->text = text_from(start);
    return n;
  }

  NodePtr name_node(const std::string& name, std::size_t start) {
    auto n = std::make_shared<Node>();
    n->text = text_from(start);
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (vars_[k] == name) {
        n->kind = Expression::Kind::Variable;
        n->variable = static_cast<int>(k);
        n->constant = false;
        return n;
      }
    }
    n->kind = Expression::Kind::Number;
    if (name == "pi") {
      n->number = std::numbers::pi;
    } else if (name == "i" && complex_) {
      n->number = {0.0, 1.0};
    } else {
      fail("unknown name '" + name + "'");
    }
    return n;
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  bool complex_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view source, const std::vector<std::string>& variables,
                             bool allow_complex) {
  Expression e;
  e.root_ = Parser(source, variables, allow_complex).parse();
  e.source_ = std::string(source);
  e.variable_count_ = static_cast<int>(variables.size());
  e.complex_ = allow_complex;
  return e;
}

std::complex<double> Expression::constant_value(const Node& n) {
  const std::span<const std::complex<double>> none;
  auto make = [](std::complex<double> c) { return c; };
  return eval_node<std::complex<double>>(n, none, make);
}

double Expression::evaluate_real(std::span<const double> vars) const {
  if (complex_) throw StructuralError("complex expression evaluated in real mode");
  auto make = [](std::complex<double> c) { return c.real(); };
  return evaluate<double>(vars, make);
}

std::complex<double> Expression::evaluate_complex(std::span<const std::complex<double>> vars) const {
  auto make = [](std::complex<double> c) { return c; };
  return evaluate<std::complex<double>>(vars, make);
}

}  // namespace wintgen
