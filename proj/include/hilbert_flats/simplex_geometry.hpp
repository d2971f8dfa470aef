#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hilbert_flats/convex_domain.hpp"
#include "hilbert_flats/error.hpp"
#include "hilbert_flats/linalg.hpp"
#include "hilbert_flats/projective.hpp"

namespace hflat {

inline constexpr double kPositiveCoordinateFloor = 1e-13;

/// The open standard k-simplex {x_1 > 0, ..., x_{k+1} > 0} in P(R^{k+1}).
inline ConvexDomain build_standard_simplex(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidInput, "simplex dimension must be >= 1");
  std::vector<Vec> vs;
  for (int i = 0; i <= k; ++i) vs.push_back(Vec::Unit(k + 1, i));
  return ConvexDomain::polytope(vs);
}

/// All-positive representative: sign fixed so the largest-magnitude entry is
/// positive, then every entry must clear a small floor.
inline Vec positive_representative(const ProjectivePoint& x) {
  Vec v = x.coords();
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
  if (v.minCoeff() <= kPositiveCoordinateFloor)
    throw Error(ErrorCode::NonPositiveCoordinates, "point has no all-positive representative");
  return v;
}

namespace detail {
inline void check_simplex_dim(const ProjectivePoint& x, int k) {
  if (x.dim() != k + 1)
    throw Error(ErrorCode::LengthMismatch, "point has " + std::to_string(x.dim()) + " coordinates, expected " + std::to_string(k + 1));
}
}  // namespace detail

/// max_{i,j} 1/2 |log(x_i y_j / (y_i x_j))| on the open standard simplex.
inline double simplex_distance(const ProjectivePoint& x, const ProjectivePoint& y, int k) {
  detail::check_simplex_dim(x, k);
  detail::check_simplex_dim(y, k);
  const Vec lx = positive_representative(x).array().log();
  const Vec ly = positive_representative(y).array().log();
  // log(x_i y_j / (y_i x_j)) = u_i - u_j with u = log x - log y.
  const Vec u = lx - ly;
  return 0.5 * (u.maxCoeff() - u.minCoeff());
}

/// Φ(x) = (log(x_2/x_1), ..., log(x_{k+1}/x_1)).
inline Vec phi_coordinates(const ProjectivePoint& x, int k) {
  detail::check_simplex_dim(x, k);
  const Vec lx = positive_representative(x).array().log();
  return lx.tail(k).array() - lx(0);
}

/// Polyhedral-norm distance on R^k making Φ an isometry.
inline double dist_rd(const Vec& v, const Vec& w) {
  if (v.size() != w.size()) throw Error(ErrorCode::LengthMismatch, "dist_rd arguments differ in length");
  const Vec u = v - w;
  if (u.size() == 0) return 0.0;
  // max(max_i |u_i|, max_{i,j} |u_i - u_j|) = max(u_max, 0) - min(u_min, 0).
  return 0.5 * (std::max(u.maxCoeff(), 0.0) - std::min(u.minCoeff(), 0.0));
}

/// A projective k-simplex given by k+1 linearly independent vertices.
struct SimplexFlat {
  std::vector<ProjectivePoint> vertices;
  std::optional<ConvexDomain> ambient;
  int dim = 0;
  /// Vertex lifts as columns, signed so the simplex is their positive span.
  Mat frame;

  /// Coordinates c with x ∝ frame c (c > 0 on the open simplex).
  Vec simplex_coordinates(const Vec& x) const {
    return frame.colPivHouseholderQr().solve(x);
  }

  ProjectivePoint barycenter() const { return ProjectivePoint(Vec(frame.rowwise().sum())); }

  Vec lift(const Vec& c) const { return frame * c; }
};

/// Builds a SimplexFlat. When `ambient` is given, vertex lifts are taken
/// chart-normalized (so the closed simplex lies in the closed domain) and the
/// simplex must be properly embedded.
inline SimplexFlat make_simplex_flat(const std::vector<ProjectivePoint>& vertices, const ConvexDomain* ambient = nullptr) {
  if (vertices.empty()) throw Error(ErrorCode::EmptyInput, "simplex needs at least one vertex");
  const int d = vertices.front().dim();
  SimplexFlat s;
  s.vertices = vertices;
  s.dim = static_cast<int>(vertices.size()) - 1;
  s.frame.resize(d, static_cast<Eigen::Index>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].dim() != d) throw Error(ErrorCode::LengthMismatch, "simplex vertices differ in dimension");
    s.frame.col(static_cast<Eigen::Index>(i)) = ambient ? ambient->lift(vertices[i]) : vertices[i].coords();
  }
  if (numeric_rank(s.frame, 1e-9) != static_cast<int>(vertices.size()))
    throw Error(ErrorCode::DegenerateConfiguration, "simplex vertices are not linearly independent");
  if (ambient) s.ambient = *ambient;
  if (ambient && s.dim > 0) {
    std::vector<Vec> lifts;
    for (Eigen::Index j = 0; j < s.frame.cols(); ++j) lifts.push_back(s.frame.col(j));
    if (!properly_embedded(*ambient, ConvexSubset(std::move(lifts))))
      throw Error(ErrorCode::ValidationError, "simplex is not properly embedded in the ambient domain");
  }
  return s;
}

/// Hilbert distance on the open simplex spanned by `s`, through simplex
/// coordinates and the closed form.
inline double simplex_flat_distance(const SimplexFlat& s, const Vec& x, const Vec& y) {
  const Vec cx = s.simplex_coordinates(x);
  const Vec cy = s.simplex_coordinates(y);
  const int k = s.dim;
  return simplex_distance(ProjectivePoint(cx), ProjectivePoint(cy), k);
}

struct SimplexAutDiagnostic {
  bool is_automorphism = false;
  /// perm[i] = image index of vertex i.
  std::vector<int> permutation;
  /// Positive diagonal scale factors (normalized so the largest is 1).
  Vec scales;
  double residual = 0.0;
};

/// Aut of the standard simplex: positive diagonal matrices composed with
/// permutations, up to scale. Diagnostic only.
inline SimplexAutDiagnostic simplex_automorphism_diagnostic(const ProjectiveMap& g, double tol = 1e-10) {
  const Mat& m = g.matrix();
  const auto n = m.rows();
  SimplexAutDiagnostic out;
  out.permutation.assign(static_cast<std::size_t>(n), -1);
  out.scales = Vec::Zero(n);
  double off = 0.0;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  double sign = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index i = 0;
    m.col(j).cwiseAbs().maxCoeff(&i);
    const double v = m(i, j);
    if (sign == 0.0) sign = v > 0 ? 1.0 : -1.0;
    if (v * sign <= 0 || used[static_cast<std::size_t>(i)]) return out;
    used[static_cast<std::size_t>(i)] = true;
    out.permutation[static_cast<std::size_t>(j)] = static_cast<int>(i);
    out.scales(j) = v * sign;
    off = std::max(off, (m.col(j) - v * Vec::Unit(n, i)).cwiseAbs().maxCoeff());
  }
  out.scales /= out.scales.maxCoeff();
  out.residual = off;
  out.is_automorphism = off <= tol;
  return out;
}

}  // namespace hflat
