#include "wintgen/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

namespace wintgen {

double inner(const LorentzVec& a, const LorentzVec& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw StructuralError("Lorentz inner product of vectors with lengths " + std::to_string(a.size()) + " and " +
                          std::to_string(b.size()));
  }
  return -a[0] * b[0] + a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
}

CausalType classify(const LorentzVec& v, double tol_null) {
  const double q = inner(v, v);
  const double scale = v.squaredNorm();
  if (std::abs(q) <= tol_null * std::max(scale, 1e-300)) return CausalType::Lightlike;
  return q < 0 ? CausalType::Timelike : CausalType::Spacelike;
}

Eigen::MatrixXd lorentz_metric(int n) {
  Eigen::MatrixXd eta = Eigen::MatrixXd::Identity(n, n);
  eta(0, 0) = -1.0;
  return eta;
}

LorentzVec lift_to_light_cone(const Eigen::VectorXd& f, double tol_sphere) {
  const double defect = f.norm() - 1.0;
  if (std::abs(defect) > tol_sphere) throw DomainError("point is not on the unit sphere", defect);
  LorentzVec y(f.size() + 1);
  y[0] = 1.0;
  y.tail(f.size()) = f;
  return y;
}

Eigen::VectorXd project_to_sphere(const LorentzVec& y) {
  if (y[0] == 0.0) throw DegeneracyError("lightlike vector with vanishing 0-component");
  return y.tail(y.size() - 1) / y[0];
}

LorentzBasis::LorentzBasis(std::vector<LorentzVec> vectors, Signature signature)
    : vectors_(std::move(vectors)), signature_(signature) {
  const auto k = static_cast<Eigen::Index>(vectors_.size());
  gram_.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      gram_(i, j) = inner(vectors_[static_cast<std::size_t>(i)], vectors_[static_cast<std::size_t>(j)]);
}

Eigen::MatrixXd LorentzBasis::matrix() const {
  if (vectors_.empty()) return {};
  Eigen::MatrixXd m(vectors_.front().size(), static_cast<Eigen::Index>(vectors_.size()));
  for (std::size_t k = 0; k < vectors_.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = vectors_[k];
  return m;
}

double LorentzBasis::orthonormality_defect() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < gram_.rows(); ++i) {
    for (Eigen::Index j = 0; j < gram_.cols(); ++j) {
      const double target = i != j ? 0.0 : (i < signature_.time ? -1.0 : 1.0);
      worst = std::max(worst, std::abs(gram_(i, j) - target));
    }
  }
  return worst;
}

LorentzBasis orthonormalize(std::span<const LorentzVec> vs, Signature expected, const Tolerances& tol) {
  const auto k = static_cast<Eigen::Index>(vs.size());
  if (k != expected.dim()) {
    throw StructuralError("orthonormalize: " + std::to_string(k) + " vectors for a signature of dimension " +
                          std::to_string(expected.dim()));
  }
  if (k == 0) return LorentzBasis({}, expected);
  const Eigen::Index n = vs[0].size();
  Eigen::MatrixXd v(n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (vs[static_cast<std::size_t>(j)].size() != n) throw StructuralError("orthonormalize: mixed vector lengths");
    v.col(j) = vs[static_cast<std::size_t>(j)];
  }
  if (k > n) throw DegeneracyError("orthonormalize: more vectors than dimensions");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(v);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(k - 1) < tol.rank * sv(0)) {
    throw DegeneracyError("orthonormalize: rank deficient input (singular value ratio " +
                          std::to_string(sv(0) == 0.0 ? 0.0 : sv(k - 1) / sv(0)) + ")");
  }

  const Eigen::MatrixXd eta = lorentz_metric(static_cast<int>(n));
  const Eigen::MatrixXd gram = v.transpose() * eta * v;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const double scale = lambda.cwiseAbs().maxCoeff();
  int negative = 0;
  int positive = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    if (std::abs(lambda(j)) <= tol.frame * scale) {
      throw GeometryError("orthonormalize: span contains a lightlike direction; expected signature (" +
                          std::to_string(expected.time) + "," + std::to_string(expected.space) + ")");
    }
    (lambda(j) < 0 ? negative : positive)++;
  }
  if (negative != expected.time || positive != expected.space) {
    throw GeometryError("orthonormalize: span has signature (" + std::to_string(negative) + "," +
                        std::to_string(positive) + "), expected (" + std::to_string(expected.time) + "," +
                        std::to_string(expected.space) + ")");
  }

  std::vector<LorentzVec> out;
  for (Eigen::Index j = 0; j < negative; ++j) {
    LorentzVec w = v * eig.eigenvectors().col(j) / std::sqrt(-lambda(j));
    for (const auto& prev : out) w += inner(w, prev) * prev;
    w /= std::sqrt(-inner(w, w));
    if (w[0] < 0 || (w[0] == 0.0 && w.maxCoeff() < -w.minCoeff())) w = -w;
    out.push_back(w);
  }

  // Spacelike part: project the inputs off the timelike block, then pivoted
  // modified Gram-Schmidt on the positive-definite remainder.
  std::vector<LorentzVec> cand;
  for (Eigen::Index j = 0; j < k; ++j) {
    LorentzVec c = v.col(j);
    for (const auto& t : out) c += inner(c, t) * t;
    cand.push_back(c);
  }
  std::vector<bool> used(cand.size(), false);
  for (int s = 0; s < positive; ++s) {
    int best = -1;
    double best_q = -1.0;
    for (std::size_t j = 0; j < cand.size(); ++j) {
      if (used[j]) continue;
      const double q = inner(cand[j], cand[j]);
      if (q > best_q) {
        best_q = q;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || best_q <= 0) throw GeometryError("orthonormalize: spacelike completion failed");
    used[static_cast<std::size_t>(best)] = true;
    LorentzVec w = cand[static_cast<std::size_t>(best)] / std::sqrt(best_q);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t t = 0; t < out.size(); ++t) {
        const double sign = t < static_cast<std::size_t>(negative) ? 1.0 : -1.0;
        w += sign * inner(w, out[t]) * out[t];
      }
      w /= std::sqrt(inner(w, w));
    }
    for (std::size_t j = 0; j < cand.size(); ++j) {
      if (!used[j]) cand[j] -= inner(cand[j], w) * w;
    }
    out.push_back(w);
  }

  LorentzBasis basis(std::move(out), expected);
  if (basis.orthonormality_defect() > tol.frame) {
    throw DegeneracyError("orthonormalize: ill-conditioned span, frame defect " +
                          std::to_string(basis.orthonormality_defect()));
  }
  return basis;
}

std::vector<Eigen::VectorXd> sphere_grid(int k, int sample_count) {
  std::vector<Eigen::VectorXd> out;
  if (sample_count <= 0 || k <= 0) return out;
  if (k == 1) {
    Eigen::VectorXd p(1);
    p << 1.0;
    out.push_back(p);
    if (sample_count >= 2) out.push_back(-p);
    return out;
  }
  if (k == 2) {
    for (int j = 0; j < sample_count; ++j) {
      const double t = 2.0 * std::numbers::pi * j / sample_count;
      Eigen::VectorXd p(2);
      p << std::cos(t), std::sin(t);
      out.push_back(p);
    }
    return out;
  }
  if (k == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < sample_count; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / sample_count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Eigen::VectorXd p(3);
      p << r * std::cos(golden * j), r * std::sin(golden * j), z;
      out.push_back(p);
    }
    return out;
  }
  // Higher spheres: deterministic Halton points pushed through the Gaussian
  // quantile and normalized.
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  auto halton = [](int index, int base) {
    double f = 1.0, r = 0.0;
    for (int i = index; i > 0; i /= base) {
      f /= base;
      r += f * (i % base);
    }
    return r;
  };
  for (int j = 0; j < sample_count; ++j) {
    Eigen::VectorXd p(k);
    for (int a = 0; a < k; ++a) {
      const double u1 = std::clamp(halton(j + 1, primes[(2 * a) % 16]), 1e-12, 1.0 - 1e-12);
      const double u2 = halton(j + 1, primes[(2 * a + 1) % 16]);
      p(a) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    out.push_back(p.normalized());
  }
  return out;
}

std::vector<LorentzVec> null_directions(const LorentzBasis& basis, int sample_count) {
  const Signature sig = basis.signature();
  if (sig.time != 1 || sig.space < 1) {
    throw GeometryError("null_directions: basis signature must be (1, d-1) with d >= 2");
  }
  std::vector<LorentzVec> out;
  for (const auto& u : sphere_grid(sig.space, sample_count)) {
    LorentzVec y = basis[0];
    for (int a = 0; a < sig.space; ++a) y += u(a) * basis[static_cast<std::size_t>(a + 1)];
    out.push_back(y);
  }
  return out;
}

LorentzBasis orthogonal_complement(const Eigen::MatrixXd& spacelike_orthonormal, const Tolerances& tol) {
  const Eigen::Index n = spacelike_orthonormal.rows();
  const Eigen::Index k = spacelike_orthonormal.cols();
  std::vector<std::pair<double, LorentzVec>> cands;
  for (Eigen::Index j = 0; j < n; ++j) {
    LorentzVec e = LorentzVec::Unit(n, j);
    for (Eigen::Index c = 0; c < k; ++c) e -= inner(e, spacelike_orthonormal.col(c)) * spacelike_orthonormal.col(c);
    cands.emplace_back(e.norm(), e);
  }
  // Column pivoting: greedily pick the candidates that add the most new
  // Euclidean direction.
  std::vector<LorentzVec> chosen;
  Eigen::MatrixXd q(n, 0);
  for (Eigen::Index s = 0; s < n - k; ++s) {
    double best = -1.0;
    LorentzVec pick;
    for (const auto& [nrm, c] : cands) {
      LorentzVec r = c;
      if (q.cols() > 0) r -= q * (q.transpose() * r);
      if (r.norm() > best) {
        best = r.norm();
        pick = c;
      }
    }
    chosen.push_back(pick);
    LorentzVec r = pick;
    if (q.cols() > 0) r -= q * (q.transpose() * r);
    q.conservativeResize(n, q.cols() + 1);
    q.col(q.cols() - 1) = r.normalized();
  }
  return orthonormalize(chosen, Signature{1, static_cast<int>(n - k - 1)}, tol);
}

Eigen::MatrixXd random_lorentz_transform(int n, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  for (int j = 1; j < n; ++j) {
    const double b = u(rng);
    x(0, j) = b;
    x(j, 0) = b;
  }
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = u(rng);
      x(i, j) = w;
      x(j, i) = -w;
    }
  }
  return x.exp();
}

double max_principal_angle(const Eigen::MatrixXd& q1, const Eigen::MatrixXd& q2) {
  if (q1.rows() != q2.rows() || q1.cols() != q2.cols()) throw StructuralError("principal angles: shape mismatch");
  const Eigen::MatrixXd eta = lorentz_metric(static_cast<int>(q1.rows()));
  const Eigen::MatrixXd m = q1.transpose() * eta * q2;
  // sin^2 of the principal angles are the eigenvalues of I - M^T M. Off a
  // Lorentzian complement these can turn negative (hyperbolic angles), so
  // the magnitude is used.
  const Eigen::MatrixXd s = Eigen::MatrixXd::Identity(m.cols(), m.cols()) - m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  const double top = std::clamp(eig.eigenvalues().cwiseAbs().maxCoeff(), 0.0, 1.0);
  return std::asin(std::sqrt(top));
}

Eigen::MatrixXd procrustes_rotation(const Eigen::MatrixXd& source, const Eigen::MatrixXd& target) {
  const Eigen::MatrixXd eta = lorentz_metric(static_cast<int>(source.rows()));
  const Eigen::MatrixXd m = source.transpose() * eta * target;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace wintgen
