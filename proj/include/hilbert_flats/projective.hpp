#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

#include "hilbert_flats/error.hpp"
#include "hilbert_flats/linalg.hpp"

namespace hflat {

/// A point of P(R^d). Stored as its canonical representative: unit norm,
/// first non-negligible coordinate positive.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const Vec& coords) : coords_(coords) {
    if (coords_.size() < 2) throw Error(ErrorCode::InvalidInput, "projective point needs at least 2 coordinates");
    if (!coords_.allFinite()) throw Error(ErrorCode::InvalidInput, "projective point has non-finite coordinates");
    const double n = coords_.norm();
    if (n == 0.0) throw Error(ErrorCode::InvalidInput, "projective point has all-zero coordinates");
    coords_ /= n;
    for (Eigen::Index i = 0; i < coords_.size(); ++i) {
      if (std::abs(coords_(i)) > 1e-12) {
        if (coords_(i) < 0) coords_ = -coords_;
        break;
      }
    }
  }

  ProjectivePoint(std::initializer_list<double> coords)
      : ProjectivePoint(Eigen::Map<const Vec>(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

  const Vec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

  /// Distance between unit representatives, minimized over the sign.
  double distance(const ProjectivePoint& other) const {
    if (other.dim() != dim()) return kInf;
    return std::min((coords_ - other.coords_).norm(), (coords_ + other.coords_).norm());
  }

  bool approx_equal(const ProjectivePoint& other, double tol = 1e-9) const { return distance(other) <= tol; }

 private:
  Vec coords_;
};

/// Row-major scan for the entry of largest magnitude (first one wins ties),
/// then divides so that entry becomes exactly +1.
inline Mat normalize_max_entry(const Mat& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
  if (best == 0.0 || !std::isfinite(best)) throw Error(ErrorCode::InvalidInput, "matrix is zero or non-finite");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) >= best * (1.0 - 1e-12)) return m / m(i, j);
    }
  }
  return m / best;
}

/// Sorted (descending) moduli of the eigenvalues of `m`.
inline Vec eigenvalue_moduli_of(const Mat& m) {
  Eigen::EigenSolver<Mat> es(m, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenSolverFailure, "dense eigenvalue routine did not converge");
  Vec mods = es.eigenvalues().cwiseAbs();
  std::sort(mods.data(), mods.data() + mods.size(), std::greater<double>());
  return mods;
}

/// An element of PGL_d(R): an invertible matrix up to nonzero scale, kept
/// normalized so its largest entry is +1, with cached eigenvalue moduli.
class ProjectiveMap {
 public:
  explicit ProjectiveMap(const Mat& m) {
    if (m.rows() != m.cols() || m.rows() < 2) throw Error(ErrorCode::InvalidInput, "projective map must be a square matrix of size >= 2");
    matrix_ = normalize_max_entry(m);
    const Vec s = singular_values(matrix_);
    if (!(s(s.size() - 1) > 1e-15 * s(0))) throw Error(ErrorCode::InvalidInput, "projective map is singular");
    spectrum_ = eigenvalue_moduli_of(matrix_);
  }

  static ProjectiveMap identity(int d) { return ProjectiveMap(Mat::Identity(d, d)); }
  static ProjectiveMap diagonal(const Vec& entries) { return ProjectiveMap(Mat(entries.asDiagonal())); }

  const Mat& matrix() const { return matrix_; }
  const Vec& spectrum() const { return spectrum_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  ProjectivePoint apply(const ProjectivePoint& p) const {
    if (p.dim() != dim()) throw Error(ErrorCode::LengthMismatch, "point and map dimensions differ");
    return ProjectivePoint(matrix_ * p.coords());
  }

  ProjectiveMap inverse() const { return ProjectiveMap(matrix_.inverse()); }

  ProjectiveMap operator*(const ProjectiveMap& other) const {
    if (other.dim() != dim()) throw Error(ErrorCode::LengthMismatch, "map dimensions differ");
    return ProjectiveMap(matrix_ * other.matrix_);
  }

  /// Equality of normalized lifts up to global sign.
  double distance(const ProjectiveMap& other) const {
    if (other.dim() != dim()) return kInf;
    return std::min((matrix_ - other.matrix_).norm(), (matrix_ + other.matrix_).norm());
  }

  bool approx_equal(const ProjectiveMap& other, double tol = 1e-10) const { return distance(other) <= tol; }

 private:
  Mat matrix_;
  Vec spectrum_;
};

inline ProjectivePoint apply_map(const ProjectiveMap& g, const ProjectivePoint& p) { return g.apply(p); }

inline Vec eigenvalue_moduli(const ProjectiveMap& g) { return g.spectrum(); }

/// Distance of the commutator [a,b] from a scalar matrix, relative to the
/// size of ab. Zero iff a and b commute in PGL_d(R).
inline double commutator_residual(const ProjectiveMap& a, const ProjectiveMap& b) {
  const Mat ab = a.matrix() * b.matrix();
  const Mat ba = b.matrix() * a.matrix();
  // ab = c * ba for some scalar c; least-squares fit of c then residual.
  const double denom = ba.squaredNorm();
  const double c = denom > 0 ? (ab.cwiseProduct(ba)).sum() / denom : 0.0;
  return (ab - c * ba).norm() / std::max(ab.norm(), 1e-300);
}

/// Cross ratio [a,x,y,b] = |x-b||y-a| / (|x-a||y-b|) of four collinear points.
inline double cross_ratio(const ProjectivePoint& a, const ProjectivePoint& x, const ProjectivePoint& y,
                          const ProjectivePoint& b) {
  const int d = a.dim();
  if (x.dim() != d || y.dim() != d || b.dim() != d) throw Error(ErrorCode::LengthMismatch, "cross ratio points differ in dimension");
  Mat rows(4, d);
  rows.row(0) = a.coords().transpose();
  rows.row(1) = x.coords().transpose();
  rows.row(2) = y.coords().transpose();
  rows.row(3) = b.coords().transpose();
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  const Vec s = svd.singularValues();
  if (s.size() > 2 && s(2) > 1e-10 * s(0)) throw Error(ErrorCode::NonCollinear, "points do not lie on a common projective line");
  const Mat basis = svd.matrixV().leftCols(2);
  const Mat plane = rows * basis;  // 4 x 2 coordinates in the common 2-plane
  auto det = [&](int i, int j) { return plane(i, 0) * plane(j, 1) - plane(i, 1) * plane(j, 0); };
  const double xa = det(1, 0);
  const double yb = det(2, 3);
  if (std::abs(xa) <= 1e-12 || std::abs(yb) <= 1e-12)
    throw Error(ErrorCode::DegenerateConfiguration, "x coincides with a or y coincides with b");
  return std::abs(det(1, 3) * det(2, 0) / (xa * yb));
}

/// A nonzero element of P(End(R^d)) with rank, image and kernel computed at
/// a singular-value cutoff of 1e-9 relative to the largest singular value.
class EndomorphismClass {
 public:
  static constexpr double kRankCutoff = 1e-9;

  explicit EndomorphismClass(const Mat& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidInput, "endomorphism must be square");
    matrix_ = normalize_max_entry(m);
    Eigen::JacobiSVD<Mat> svd(matrix_, Eigen::ComputeFullU | Eigen::ComputeFullV);
    singular_values_ = svd.singularValues();
    rank_ = 0;
    for (Eigen::Index i = 0; i < singular_values_.size(); ++i) {
      if (singular_values_(i) > kRankCutoff * singular_values_(0)) ++rank_;
    }
    image_ = svd.matrixU().leftCols(rank_);
    kernel_ = svd.matrixV().rightCols(matrix_.cols() - rank_);
  }

  const Mat& matrix() const { return matrix_; }
  int rank() const { return rank_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  /// Orthonormal basis of image(T), as columns.
  const Mat& image() const { return image_; }
  /// Orthonormal basis of ker(T), as columns.
  const Mat& kernel() const { return kernel_; }
  const Vec& singular_values() const { return singular_values_; }

  /// Relative size of T·v; near zero iff [v] lies in P(ker T).
  double kernel_residual(const ProjectivePoint& p) const {
    return (matrix_ * p.coords()).norm() / singular_values_(0);
  }

  /// T applied to a point off P(ker T).
  ProjectivePoint apply(const ProjectivePoint& p) const { return ProjectivePoint(matrix_ * p.coords()); }

 private:
  Mat matrix_;
  Vec singular_values_;
  int rank_ = 0;
  Mat image_;
  Mat kernel_;
};

struct ProjectiveLimit {
  EndomorphismClass limit;
  /// Distance between the last two normalized terms (up to sign); infinite
  /// for a one-term sequence.
  double residual;

  bool converged(double tol = 1e-10) const { return residual <= tol; }
};

/// Normalized powers g, g^2, ..., g^n. Returned as plain matrices because
/// high powers are numerically singular once normalized.
inline std::vector<Mat> power_sequence(const Mat& g, int n) {
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  Mat acc = normalize_max_entry(g);
  const Mat base = acc;
  for (int i = 0; i < n; ++i) {
    out.push_back(acc);
    acc = normalize_max_entry(acc * base);
  }
  return out;
}

inline ProjectiveLimit projective_limit(std::span<const Mat> maps) {
  if (maps.empty()) throw Error(ErrorCode::EmptyInput, "projective_limit needs a nonempty sequence");
  const Mat last = normalize_max_entry(maps.back());
  double residual = kInf;
  if (maps.size() >= 2) {
    const Mat prev = normalize_max_entry(maps[maps.size() - 2]);
    residual = std::min((last - prev).norm(), (last + prev).norm());
  }
  return ProjectiveLimit{EndomorphismClass(last), residual};
}

inline ProjectiveLimit projective_limit(const std::vector<ProjectiveMap>& maps) {
  std::vector<Mat> ms;
  ms.reserve(maps.size());
  for (const auto& g : maps) ms.push_back(g.matrix());
  return projective_limit(std::span<const Mat>(ms));
}

}  // namespace hflat
