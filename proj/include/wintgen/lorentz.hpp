#pragma once

// Lorentz space R^{n}_1 with signature (-,+,...,+), index 0 timelike, and
// the light-cone model of the round sphere S^{n-2}.

#include <Eigen/Dense>
#include <random>
#include <span>
#include <vector>

#include "wintgen/errors.hpp"
#include "wintgen/tolerances.hpp"

namespace wintgen {

using LorentzVec = Eigen::VectorXd;

enum class CausalType { Timelike, Lightlike, Spacelike };

struct Signature {
  int time = 0;
  int space = 0;
  int dim() const noexcept { return time + space; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

double inner(const LorentzVec& a, const LorentzVec& b);

// Generic form for series-valued vectors; no dimension check.
template <class T>
T lorentz_inner(const std::vector<T>& a, const std::vector<T>& b) {
  T s = a[0] * b[0];
  s = -s;
  for (std::size_t k = 1; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Complex-bilinear extension on coefficient vectors; callers pass conj()
// to get the Hermitian form.
template <class T>
T lorentz_inner_bilinear(const std::vector<T>& a, const std::vector<T>& b) {
  return lorentz_inner(a, b);
}

// Tolerance scales with the squared Euclidean length of v.
CausalType classify(const LorentzVec& v, double tol_null = default_tolerances().null);

// diag(-1, 1, ..., 1) of size n.
Eigen::MatrixXd lorentz_metric(int n);

// (1, f) for a unit vector f; DomainError carrying |f| - 1 otherwise.
LorentzVec lift_to_light_cone(const Eigen::VectorXd& f, double tol_sphere = default_tolerances().sphere);

// Inverse of the lift on the projective class: the sphere point of a
// lightlike vector with positive 0-component.
Eigen::VectorXd project_to_sphere(const LorentzVec& y);

class LorentzBasis {
 public:
  LorentzBasis() = default;
  LorentzBasis(std::vector<LorentzVec> vectors, Signature signature);

  const std::vector<LorentzVec>& vectors() const noexcept { return vectors_; }
  const LorentzVec& operator[](std::size_t i) const { return vectors_[i]; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }
  Signature signature() const noexcept { return signature_; }
  // Columns are the basis vectors.
  Eigen::MatrixXd matrix() const;

  // max |gram - diag(-1..,+1..)|.
  double orthonormality_defect() const;

 private:
  std::vector<LorentzVec> vectors_;
  Eigen::MatrixXd gram_;
  Signature signature_;
};

// Lorentz-orthonormal basis of span(vs): timelike directions first (most
// negative first), then spacelike by pivoted modified Gram-Schmidt with one
// re-orthogonalization pass. GeometryError on a signature mismatch or a null
// direction in the span, DegeneracyError when vs is rank deficient.
LorentzBasis orthonormalize(std::span<const LorentzVec> vs, Signature expected,
                            const Tolerances& tol = default_tolerances());

// Null vectors e0 + u with u on a quasi-uniform grid of the unit sphere of
// the spacelike part of a signature (1, d-1) basis.
std::vector<LorentzVec> null_directions(const LorentzBasis& basis, int sample_count);

// Unit vectors on S^{k-1} used by null_directions (k spacelike dims).
std::vector<Eigen::VectorXd> sphere_grid(int k, int sample_count);

// Lorentz-orthogonal complement of a spacelike subspace (orthonormal columns).
LorentzBasis orthogonal_complement(const Eigen::MatrixXd& spacelike_orthonormal,
                                   const Tolerances& tol = default_tolerances());

// exp(X) with X in so(1, n-1), generator entries uniform in [-scale, scale].
Eigen::MatrixXd random_lorentz_transform(int n, std::mt19937_64& rng, double scale = 0.5);

// Largest principal angle between two spacelike subspaces given by
// Lorentz-orthonormal columns.
double max_principal_angle(const Eigen::MatrixXd& q1, const Eigen::MatrixXd& q2);

// Orthogonal R (k x k) minimizing |source * R - target| in the Lorentz trace
// pairing; both arguments have k spacelike orthonormal columns.
Eigen::MatrixXd procrustes_rotation(const Eigen::MatrixXd& source, const Eigen::MatrixXd& target);

}  // namespace wintgen
