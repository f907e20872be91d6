#pragma once

// Small dense linear algebra over plain doubles or truncated series. Sizes
// here are tiny (m, p <= 6) so nested vectors are fine.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wintgen/series.hpp"

namespace wintgen {

template <class T>
using Vec = std::vector<T>;
template <class T>
using Mat = std::vector<std::vector<T>>;

inline double value_of(double x) { return x; }
inline double value_of(const RSeries& x) { return x.value(); }

template <class T>
T zero_like(const T& proto) {
  return proto * 0.0;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s = a[0] * b[0];
  for (std::size_t k = 1; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

template <class T>
Vec<T> scaled(const Vec<T>& a, const T& c) {
  Vec<T> out = a;
  for (auto& x : out) x = x * c;
  return out;
}

template <class T>
void axpy(Vec<T>& y, const T& c, const Vec<T>& x) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += c * x[k];
}

template <class T>
Vec<T> derivative(const Vec<T>& v, int var) {
  Vec<T> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.derivative(var));
  return out;
}

template <class T>
Vec<double> values(const Vec<T>& v) {
  Vec<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(value_of(x));
  return out;
}

// Gauss-Jordan inverse with partial pivoting on base values.
template <class T>
Mat<T> inverse(const Mat<T>& a) {
  const std::size_t n = a.size();
  Mat<T> m = a;
  Mat<T> inv(n, Vec<T>(n, zero_like(a[0][0])));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] += 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(value_of(m[r][c])) > std::abs(value_of(m[piv][c]))) piv = r;
    if (value_of(m[piv][c]) == 0.0) throw std::domain_error("singular matrix");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const T d = 1.0 / m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] = m[c][k] * d;
      inv[c][k] = inv[c][k] * d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const T f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

template <class T>
T determinant(const Mat<T>& a) {
  const std::size_t n = a.size();
  Mat<T> m = a;
  T det = zero_like(a[0][0]) + 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(value_of(m[r][c])) > std::abs(value_of(m[piv][c]))) piv = r;
    if (value_of(m[piv][c]) == 0.0) return zero_like(a[0][0]);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det = det * m[c][c];
    const T d = 1.0 / m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const T f = m[r][c] * d;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace wintgen
