#include "wintgen/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace wintgen {

namespace {

void enumerate_degree(int nvars, int degree, std::vector<int>& current, int var,
                      std::vector<std::vector<int>>& out) {
  if (var == nvars - 1) {
    current[static_cast<std::size_t>(var)] = degree;
    out.push_back(current);
    return;
  }
  for (int d = degree; d >= 0; --d) {
    current[static_cast<std::size_t>(var)] = d;
    enumerate_degree(nvars, degree - d, current, var + 1, out);
  }
}

}  // namespace

MonomialLayout::MonomialLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || order < 0) throw std::invalid_argument("bad monomial layout");
  std::vector<int> current(static_cast<std::size_t>(nvars), 0);
  for (int d = 0; d <= order; ++d) {
    enumerate_degree(nvars, d, current, 0, exponents_);
    size_upto_.push_back(static_cast<int>(exponents_.size()));
  }
  for (const auto& e : exponents_) {
    degree_.push_back(std::accumulate(e.begin(), e.end(), 0));
    double w = 1.0;
    for (int a : e)
      for (int j = 2; j <= a; ++j) w *= j;
    weight_.push_back(w);
  }

  const int n = size();
  std::vector<int> sum(static_cast<std::size_t>(nvars));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (degree_[static_cast<std::size_t>(i)] + degree_[static_cast<std::size_t>(j)] > order) continue;
      for (int a = 0; a < nvars; ++a)
        sum[static_cast<std::size_t>(a)] = exponents_[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] +
                                           exponents_[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)];
      products_.push_back({i, j, index(sum)});
    }
  }
  std::stable_sort(products_.begin(), products_.end(), [this](const Product& a, const Product& b) {
    return degree_[static_cast<std::size_t>(a.out)] < degree_[static_cast<std::size_t>(b.out)];
  });
  for (int d = 0; d <= order; ++d) {
    products_upto_.push_back(static_cast<int>(std::count_if(products_.begin(), products_.end(), [&](const Product& p) {
      return degree_[static_cast<std::size_t>(p.out)] <= d;
    })));
  }

  derivative_.resize(static_cast<std::size_t>(nvars));
  for (int a = 0; a < nvars; ++a) {
    for (int k = 0; k < n; ++k) {
      const auto& e = exponents_[static_cast<std::size_t>(k)];
      if (e[static_cast<std::size_t>(a)] == 0) continue;
      std::vector<int> lower = e;
      --lower[static_cast<std::size_t>(a)];
      derivative_[static_cast<std::size_t>(a)].push_back(
          {k, index(lower), static_cast<double>(e[static_cast<std::size_t>(a)])});
    }
  }
}

int MonomialLayout::index(std::span<const int> exps) const {
  // Graded ordering: monomials of each degree are enumerated with the first
  // variable's exponent descending, recursively.
  int deg = 0;
  for (int a : exps) deg += a;
  if (deg > order_ || static_cast<int>(exps.size()) != nvars_) throw std::out_of_range("monomial outside layout");
  const int start = deg == 0 ? 0 : size_upto_[static_cast<std::size_t>(deg - 1)];
  const int stop = size_upto_[static_cast<std::size_t>(deg)];
  for (int k = start; k < stop; ++k) {
    if (std::equal(exps.begin(), exps.end(), exponents_[static_cast<std::size_t>(k)].begin())) return k;
  }
  throw std::out_of_range("monomial not found");
}

std::shared_ptr<const MonomialLayout> MonomialLayout::get(int nvars, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialLayout>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot = std::shared_ptr<const MonomialLayout>(new MonomialLayout(nvars, order));
  return slot;
}

}  // namespace wintgen
