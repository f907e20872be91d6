#pragma once

// Truncated multivariate Taylor series. A Series holds the Taylor
// coefficients c_alpha of a function around a base point, for all
// multi-indices |alpha| <= order, so that the partial derivative
// d^alpha f = alpha! * c_alpha. Products truncate to the smaller order of
// the two operands and each derivative lowers the order by one, which lets
// long chains of differential-geometric constructions run on exact jets.

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace wintgen {

class MonomialLayout {
 public:
  struct Product {
    int lhs;
    int rhs;
    int out;
  };
  struct DerivativeEntry {
    int from;
    int to;
    double factor;
  };

  // Shared, immutable layout for (nvars, order). Thread safe.
  static std::shared_ptr<const MonomialLayout> get(int nvars, int order);

  int nvars() const noexcept { return nvars_; }
  int order() const noexcept { return order_; }
  int size() const noexcept { return static_cast<int>(exponents_.size()); }
  // Number of monomials of total degree <= d (graded ordering).
  int size_upto(int d) const { return size_upto_[static_cast<std::size_t>(d)]; }
  std::span<const int> exponents(int k) const { return exponents_[static_cast<std::size_t>(k)]; }
  int degree(int k) const { return degree_[static_cast<std::size_t>(k)]; }
  double factorial_weight(int k) const { return weight_[static_cast<std::size_t>(k)]; }
  int index(std::span<const int> exps) const;

  // Products whose output degree is <= d form a prefix of products().
  std::span<const Product> products_upto(int d) const {
    return {products_.data(), static_cast<std::size_t>(products_upto_[static_cast<std::size_t>(d)])};
  }
  std::span<const DerivativeEntry> derivative_entries(int var) const {
    return derivative_[static_cast<std::size_t>(var)];
  }

 private:
  MonomialLayout(int nvars, int order);

  int nvars_;
  int order_;
  std::vector<std::vector<int>> exponents_;
  std::vector<int> degree_;
  std::vector<double> weight_;
  std::vector<int> size_upto_;
  std::vector<Product> products_;
  std::vector<int> products_upto_;
  std::vector<std::vector<DerivativeEntry>> derivative_;
};

template <class S>
class Series {
 public:
  using scalar_type = S;
  using LayoutPtr = std::shared_ptr<const MonomialLayout>;

  Series() = default;
  Series(LayoutPtr layout, S constant, int order = -1)
      : layout_(std::move(layout)),
        order_(order < 0 ? layout_->order() : order),
        coef_(static_cast<std::size_t>(layout_->size()), S{}) {
    coef_[0] = constant;
  }

  // The coordinate function x_var, expanded about base value `at`.
  static Series variable(LayoutPtr layout, int var, S at) {
    Series s(layout, at);
    std::vector<int> e(static_cast<std::size_t>(layout->nvars()), 0);
    e[static_cast<std::size_t>(var)] = 1;
    if (layout->order() >= 1) s.coef_[static_cast<std::size_t>(layout->index(e))] = S{1};
    return s;
  }

  const LayoutPtr& layout() const noexcept { return layout_; }
  int order() const noexcept { return order_; }
  int nvars() const noexcept { return layout_->nvars(); }
  bool empty() const noexcept { return !layout_; }
  S value() const { return coef_[0]; }
  const std::vector<S>& coefficients() const noexcept { return coef_; }
  S coefficient(int k) const { return coef_[static_cast<std::size_t>(k)]; }
  S& coefficient(int k) { return coef_[static_cast<std::size_t>(k)]; }

  // d^alpha f at the base point.
  S partial(std::span<const int> alpha) const {
    int deg = 0;
    for (int a : alpha) deg += a;
    if (deg > order_) throw std::out_of_range("partial derivative beyond series order");
    const int k = layout_->index(alpha);
    return coef_[static_cast<std::size_t>(k)] * layout_->factorial_weight(k);
  }

  Series derivative(int var) const {
    if (order_ < 1) throw std::logic_error("derivative of an order-0 series");
    Series out(layout_, S{}, order_ - 1);
    const int limit = layout_->size_upto(order_);
    for (const auto& d : layout_->derivative_entries(var)) {
      if (d.from < limit) out.coef_[static_cast<std::size_t>(d.to)] += d.factor * coef_[static_cast<std::size_t>(d.from)];
    }
    return out;
  }

  Series truncated(int order) const {
    Series out = *this;
    out.order_ = std::min(order_, order);
    const int keep = layout_->size_upto(out.order_);
    for (int k = keep; k < layout_->size(); ++k) out.coef_[static_cast<std::size_t>(k)] = S{};
    return out;
  }

  Series operator-() const {
    Series out = *this;
    for (auto& c : out.coef_) c = -c;
    return out;
  }

  Series& operator+=(const Series& o) {
    order_ = std::min(order_, o.order_);
    const int n = layout_->size_upto(order_);
    for (int k = 0; k < n; ++k) coef_[static_cast<std::size_t>(k)] += o.coef_[static_cast<std::size_t>(k)];
    zero_tail();
    return *this;
  }
  Series& operator-=(const Series& o) {
    order_ = std::min(order_, o.order_);
    const int n = layout_->size_upto(order_);
    for (int k = 0; k < n; ++k) coef_[static_cast<std::size_t>(k)] -= o.coef_[static_cast<std::size_t>(k)];
    zero_tail();
    return *this;
  }
  Series& operator*=(const Series& o) {
    *this = *this * o;
    return *this;
  }
  Series& operator/=(const Series& o) {
    *this = *this / o;
    return *this;
  }
  Series& operator+=(S c) {
    coef_[0] += c;
    return *this;
  }
  Series& operator-=(S c) {
    coef_[0] -= c;
    return *this;
  }
  Series& operator*=(S c) {
    for (auto& x : coef_) x *= c;
    return *this;
  }
  Series& operator/=(S c) {
    for (auto& x : coef_) x /= c;
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b) {
    Series out(a.layout_, S{}, std::min(a.order_, b.order_));
    for (const auto& p : a.layout_->products_upto(out.order_)) {
      out.coef_[static_cast<std::size_t>(p.out)] +=
          a.coef_[static_cast<std::size_t>(p.lhs)] * b.coef_[static_cast<std::size_t>(p.rhs)];
    }
    return out;
  }
  friend Series operator/(const Series& a, const Series& b) { return a * reciprocal(b); }

  friend Series operator+(Series a, S c) { return a += c; }
  friend Series operator+(S c, Series a) { return a += c; }
  friend Series operator-(Series a, S c) { return a -= c; }
  friend Series operator-(S c, const Series& a) { return (-a) += c; }
  friend Series operator*(Series a, S c) { return a *= c; }
  friend Series operator*(S c, Series a) { return a *= c; }
  friend Series operator/(Series a, S c) { return a /= c; }
  friend Series operator/(S c, const Series& a) { return reciprocal(a) *= c; }

  // f(a0 + delta) = sum_k d[k] delta^k, d[k] = f^(k)(a0)/k!.
  Series compose(std::span<const S> taylor) const {
    Series delta = *this;
    delta.coef_[0] = S{};
    Series out(layout_, taylor[0], order_);
    Series power = delta;
    for (int k = 1; k <= order_ && k < static_cast<int>(taylor.size()); ++k) {
      if (k > 1) power = power * delta;
      for (int i = 0; i < layout_->size_upto(order_); ++i) {
        out.coef_[static_cast<std::size_t>(i)] += taylor[static_cast<std::size_t>(k)] * power.coef_[static_cast<std::size_t>(i)];
      }
    }
    return out;
  }

  friend Series reciprocal(const Series& a) {
    const S a0 = a.value();
    if (a0 == S{}) throw std::domain_error("division by zero");
    std::vector<S> d(static_cast<std::size_t>(a.order_) + 1);
    S p = S{1} / a0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      d[k] = (k % 2 == 0 ? p : -p);
      p /= a0;
    }
    return a.compose(d);
  }

  // (a0 + delta)^e with real exponent e.
  friend Series pow(const Series& a, double e) {
    const S a0 = a.value();
    if (is_integer(e) && e >= 0) return integer_power(a, static_cast<int>(e));
    if (is_integer(e)) return integer_power(reciprocal(a), static_cast<int>(-e));
    if constexpr (std::is_floating_point_v<S>) {
      if (a0 <= 0) throw std::domain_error("non-integer power of a non-positive base");
    } else {
      if (a0 == S{}) throw std::domain_error("non-integer power of zero");
    }
    std::vector<S> d(static_cast<std::size_t>(a.order_) + 1);
    double binom = 1.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      d[k] = binom * std::pow(a0, e - static_cast<double>(k));
      binom *= (e - static_cast<double>(k)) / static_cast<double>(k + 1);
    }
    return a.compose(d);
  }

  friend Series sqrt(const Series& a) {
    if constexpr (std::is_floating_point_v<S>) {
      if (a.value() < 0) throw std::domain_error("sqrt of a negative value");
    }
    if (a.value() == S{}) throw std::domain_error("sqrt at zero is not differentiable");
    return pow(a, 0.5);
  }

  friend Series exp(const Series& a) {
    std::vector<S> d(static_cast<std::size_t>(a.order_) + 1);
    const S e0 = std::exp(a.value());
    double fact = 1.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      d[k] = e0 / fact;
    }
    return a.compose(d);
  }

  friend Series log(const Series& a) {
    const S a0 = a.value();
    if constexpr (std::is_floating_point_v<S>) {
      if (a0 <= 0) throw std::domain_error("log of a non-positive value");
    } else {
      if (a0 == S{}) throw std::domain_error("log of zero");
    }
    std::vector<S> d(static_cast<std::size_t>(a.order_) + 1);
    d[0] = std::log(a0);
    S p = a0;
    for (std::size_t k = 1; k < d.size(); ++k) {
      d[k] = (k % 2 == 1 ? S{1} : S{-1}) / (static_cast<double>(k) * p);
      p *= a0;
    }
    return a.compose(d);
  }

  friend Series sin(const Series& a) { return trig(a, false); }
  friend Series cos(const Series& a) { return trig(a, true); }
  friend Series sinh(const Series& a) { return hyperbolic(a, false); }
  friend Series cosh(const Series& a) { return hyperbolic(a, true); }

 private:
  static bool is_integer(double e) { return std::floor(e) == e && std::abs(e) < 64; }

  static Series integer_power(const Series& a, int n) {
    Series out(a.layout_, S{1}, a.order_);
    Series base = a;
    while (n > 0) {
      if (n & 1) out = out * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return out;
  }

  static Series trig(const Series& a, bool cosine) {
    const S s = std::sin(a.value());
    const S c = std::cos(a.value());
    // derivatives of sin: s, c, -s, -c ; of cos: c, -s, -c, s
    const S cycle_sin[4] = {s, c, -s, -c};
    const S cycle_cos[4] = {c, -s, -c, s};
    std::vector<S> d(static_cast<std::size_t>(a.order_) + 1);
    double fact = 1.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      d[k] = (cosine ? cycle_cos[k % 4] : cycle_sin[k % 4]) / fact;
    }
    return a.compose(d);
  }

  static Series hyperbolic(const Series& a, bool cosine) {
    const S s = std::sinh(a.value());
    const S c = std::cosh(a.value());
    std::vector<S> d(static_cast<std::size_t>(a.order_) + 1);
    double fact = 1.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      const bool even = (k % 2 == 0);
      d[k] = ((even == cosine) ? c : s) / fact;
    }
    return a.compose(d);
  }

  void zero_tail() {
    for (int k = layout_->size_upto(order_); k < layout_->size(); ++k) coef_[static_cast<std::size_t>(k)] = S{};
  }

  LayoutPtr layout_;
  int order_ = 0;
  std::vector<S> coef_;
};

using RSeries = Series<double>;
using CSeries = Series<std::complex<double>>;
using RVecSeries = std::vector<RSeries>;
using CVecSeries = std::vector<CSeries>;

inline RSeries real_part(const CSeries& z) {
  RSeries out(z.layout(), 0.0, z.order());
  for (int k = 0; k < z.layout()->size(); ++k) out.coefficient(k) = z.coefficient(k).real();
  return out;
}

inline RSeries imag_part(const CSeries& z) {
  RSeries out(z.layout(), 0.0, z.order());
  for (int k = 0; k < z.layout()->size(); ++k) out.coefficient(k) = z.coefficient(k).imag();
  return out;
}

inline CSeries complexify(const RSeries& x) {
  CSeries out(x.layout(), 0.0, x.order());
  for (int k = 0; k < x.layout()->size(); ++k) out.coefficient(k) = x.coefficient(k);
  return out;
}

// Coefficient-wise conjugate; the variables are real so this is the
// conjugate function.
inline CSeries conj(const CSeries& z) {
  CSeries out = z;
  for (int k = 0; k < z.layout()->size(); ++k) out.coefficient(k) = std::conj(z.coefficient(k));
  return out;
}

}  // namespace wintgen
