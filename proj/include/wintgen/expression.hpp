#pragma once

// Infix expression trees for chart components and Weierstrass seeds.
//
// Grammar (whitespace insensitive):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number | name | name '(' expr ')' | '(' expr ')'
// Names are the declared variables (u1..um for charts, z for seeds), the
// constant pi, and in complex mode the imaginary unit i. Functions: sin,
// cos, tan, exp, log, sqrt, sinh, cosh.

#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "wintgen/errors.hpp"
#include "wintgen/series.hpp"

namespace wintgen {

class Expression {
 public:
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };
  enum class Function { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

  struct Node {
    Kind kind = Kind::Number;
    std::complex<double> number{};
    int variable = -1;
    Function function = Function::Sin;
    std::vector<std::shared_ptr<const Node>> args;
    std::string text;
    bool constant = true;  // no variable below this node
  };

  // Throws StructuralError on syntax errors or unknown names.
  static Expression parse(std::string_view source, const std::vector<std::string>& variables,
                          bool allow_complex = false);

  const std::string& source() const noexcept { return source_; }
  int variable_count() const noexcept { return variable_count_; }
  bool is_complex() const noexcept { return complex_; }

  // Evaluates with variable values `vars`; `make` turns a complex constant
  // into a T. Singularities raise EvaluationError carrying the path.
  template <class T, class Make>
  T evaluate(std::span<const T> vars, Make&& make) const {
    return eval_node(*root_, vars, make);
  }

  double evaluate_real(std::span<const double> vars) const;
  std::complex<double> evaluate_complex(std::span<const std::complex<double>> vars) const;

 private:
  template <class T>
  static constexpr bool is_series = !std::is_same_v<T, double> && !std::is_same_v<T, std::complex<double>>;

  template <class T>
  static auto base_value(const T& x) {
    if constexpr (is_series<T>) {
      return x.value();
    } else {
      return x;
    }
  }

  template <class T, class Make>
  static T eval_node(const Node& n, std::span<const T> vars, Make& make) {
    try {
      return eval_inner(n, vars, make);
    } catch (const EvaluationError& e) {
      throw EvaluationError(e.reason(), n.text + " > " + e.path());
    } catch (const std::domain_error& e) {
      throw EvaluationError(e.what(), n.text);
    }
  }

  template <class T, class Make>
  static T eval_inner(const Node& n, std::span<const T> vars, Make& make) {
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    switch (n.kind) {
      case Kind::Number:
        return make(n.number);
      case Kind::Variable:
        return vars[static_cast<std::size_t>(n.variable)];
      case Kind::Neg:
        return -eval_node(*n.args[0], vars, make);
      case Kind::Add:
        return eval_node(*n.args[0], vars, make) + eval_node(*n.args[1], vars, make);
      case Kind::Sub:
        return eval_node(*n.args[0], vars, make) - eval_node(*n.args[1], vars, make);
      case Kind::Mul:
        return eval_node(*n.args[0], vars, make) * eval_node(*n.args[1], vars, make);
      case Kind::Div: {
        T num = eval_node(*n.args[0], vars, make);
        T den = eval_node(*n.args[1], vars, make);
        if (base_value(den) == decltype(base_value(den)){}) throw std::domain_error("division by zero");
        return num / den;
      }
      case Kind::Pow: {
        T base = eval_node(*n.args[0], vars, make);
        const Node& ex = *n.args[1];
        if (ex.constant) {
          const std::complex<double> e = constant_value(ex);
          if (e.imag() == 0.0) return real_power(base, e.real());
        }
        T e = eval_node(ex, vars, make);
        check_log(base_value(base));
        return exp(e * log(base));
      }
      case Kind::Call: {
        T a = eval_node(*n.args[0], vars, make);
        const auto a0 = base_value(a);
        switch (n.function) {
          case Function::Sin:
            return sin(a);
          case Function::Cos:
            return cos(a);
          case Function::Tan: {
            T c = cos(a);
            if (base_value(c) == decltype(base_value(c)){}) throw std::domain_error("tan at a pole");
            return sin(a) / c;
          }
          case Function::Exp:
            return exp(a);
          case Function::Log:
            check_log(a0);
            return log(a);
          case Function::Sqrt:
            check_sqrt(a0);
            return sqrt(a);
          case Function::Sinh:
            return sinh(a);
          case Function::Cosh:
            return cosh(a);
        }
      }
    }
    throw std::logic_error("unreachable expression node");
  }

  template <class V>
  static void check_log(const V& v) {
    if constexpr (std::is_same_v<V, double>) {
      if (!(v > 0)) throw std::domain_error("log of a non-positive value");
    } else {
      if (v == V{}) throw std::domain_error("log of zero");
    }
  }
  template <class V>
  static void check_sqrt(const V& v) {
    if constexpr (std::is_same_v<V, double>) {
      if (v < 0) throw std::domain_error("sqrt of a negative value");
    }
    if (v == V{}) throw std::domain_error("sqrt at zero");
  }

  template <class T>
  static T real_power(const T& base, double e) {
    if constexpr (is_series<T>) {
      return pow(base, e);
    } else {
      const bool integral = std::floor(e) == e;
      if constexpr (std::is_same_v<T, double>) {
        if (!integral && base <= 0) throw std::domain_error("non-integer power of a non-positive base");
      }
      if (e < 0 && base == T{}) throw std::domain_error("negative power of zero");
      if (integral && std::abs(e) < 64) {
        T out{1};
        T b = e < 0 ? T{1} / base : base;
        for (int k = 0; k < static_cast<int>(std::abs(e)); ++k) out *= b;
        return out;
      }
      return std::pow(base, e);
    }
  }

  static std::complex<double> constant_value(const Node& n);

  std::shared_ptr<const Node> root_;
  std::string source_;
  int variable_count_ = 0;
  bool complex_ = false;
};

}  // namespace wintgen
