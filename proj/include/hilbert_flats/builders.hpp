#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hilbert_flats/convex_domain.hpp"
#include "hilbert_flats/error.hpp"
#include "hilbert_flats/group_action.hpp"
#include "hilbert_flats/linalg.hpp"
#include "hilbert_flats/projective.hpp"
#include "hilbert_flats/simplex_geometry.hpp"

namespace hflat {

// ---------------------------------------------------------------------------
// Named examples
// ---------------------------------------------------------------------------

/// Whole-domain invariant subset of a polytope: the hull of its vertices.
inline ConvexSubset whole_domain_subset(const ConvexDomain& omega) {
  if (!omega.is_polytope()) throw Error(ErrorCode::NotPolytope, "whole-domain subset needs a polytope");
  return ConvexSubset(omega.vertex_lifts());
}

/// Standard k-simplex with the single generator diag(e^{z_1}, ..., e^{z_{k+1}}).
inline GroupSpec simplex_with_diagonal(int k, const Vec& z) {
  if (z.size() != k + 1) throw Error(ErrorCode::LengthMismatch, "exponent vector must have k+1 entries");
  ConvexDomain s = build_standard_simplex(k);
  ConvexSubset c = whole_domain_subset(s);
  return make_group(std::move(s), {ProjectiveMap::diagonal(z.array().exp().matrix())}, {"a1"}, std::move(c));
}

/// The full diagonal lattice {diag(e^{z}) : z ∈ Z^{k+1}} on the standard
/// k-simplex, generated by the k+1 elementary matrices diag(.., e, ..).
inline GroupSpec diagonal_lattice(int k) {
  ConvexDomain s = build_standard_simplex(k);
  std::vector<ProjectiveMap> gens;
  std::vector<std::string> labels;
  for (int i = 0; i <= k; ++i) {
    Vec e = Vec::Ones(k + 1);
    e(i) = std::exp(1.0);
    gens.push_back(ProjectiveMap::diagonal(e));
    labels.push_back("e" + std::to_string(i + 1));
  }
  ConvexSubset c = whole_domain_subset(s);
  return make_group(std::move(s), std::move(gens), std::move(labels), std::move(c));
}

/// Subgroup {diag(e^{φ_1(w)}, ..., e^{φ_{k+1}(w)}) : w ∈ Z^m} of the diagonal
/// lattice. `phi` is (k+1) x m with integer entries; w ↦ φ(w) must be
/// injective and the rows pairwise distinct.
inline GroupSpec homomorphism_subgroup(int k, const Mat& phi) {
  if (phi.rows() != k + 1 || phi.cols() < 1) throw Error(ErrorCode::LengthMismatch, "phi must be (k+1) x m with m >= 1");
  if ((phi.array() - phi.array().round()).abs().maxCoeff() > 0)
    throw Error(ErrorCode::ValidationError, "phi must have integer entries");
  if (numeric_rank(phi, 1e-12) != phi.cols()) throw Error(ErrorCode::ValidationError, "phi is not injective");
  for (Eigen::Index i = 0; i < phi.rows(); ++i)
    for (Eigen::Index j = i + 1; j < phi.rows(); ++j)
      if (phi.row(i) == phi.row(j)) throw Error(ErrorCode::ValidationError, "phi_i = phi_j for some i != j");
  ConvexDomain s = build_standard_simplex(k);
  std::vector<ProjectiveMap> gens;
  std::vector<std::string> labels;
  for (Eigen::Index j = 0; j < phi.cols(); ++j) {
    gens.push_back(ProjectiveMap::diagonal(phi.col(j).array().exp().matrix()));
    labels.push_back("w" + std::to_string(j + 1));
  }
  ConvexSubset c = whole_domain_subset(s);
  return make_group(std::move(s), std::move(gens), std::move(labels), std::move(c));
}

/// The interval P(R²)_{>0} with ⟨diag(λ, 1)⟩.
inline GroupSpec interval_with_dilation(double lambda = 2.0) {
  ConvexDomain s = build_standard_simplex(1);
  ConvexSubset c = whole_domain_subset(s);
  return make_group(std::move(s), {ProjectiveMap::diagonal((Vec(2) << lambda, 1.0).finished())}, {"g"}, std::move(c));
}

/// Square |x|,|y| < z with the reflections in the coordinate axes: a finite,
/// real-diagonalizable group with an interior fixed point.
inline GroupSpec square_reflections() {
  std::vector<Vec> vs;
  for (double sx : {1.0, -1.0})
    for (double sy : {1.0, -1.0}) vs.push_back((Vec(3) << sx, sy, 1.0).finished());
  ConvexDomain sq = ConvexDomain::polytope(vs);
  ConvexSubset c = whole_domain_subset(sq);
  return make_group(std::move(sq),
                    {ProjectiveMap::diagonal((Vec(3) << -1, 1, 1).finished()), ProjectiveMap::diagonal((Vec(3) << 1, -1, 1).finished())},
                    {"rx", "ry"}, std::move(c));
}

// ---------------------------------------------------------------------------
// Random scenes
// ---------------------------------------------------------------------------

/// Orthogonal · positive diagonal in [e^{-spread}, e^{spread}] · orthogonal.
inline Mat random_well_conditioned(std::mt19937_64& rng, int n, double spread = 0.5) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(-spread, spread);
  auto orth = [&] {
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Mat> qr(g);
    return Mat(qr.householderQ());
  };
  Vec s(n);
  for (int i = 0; i < n; ++i) s(i) = std::exp(unif(rng));
  return orth() * s.asDiagonal() * orth();
}

/// Transported copy (hΩ, hgh⁻¹, hC) of a group.
inline GroupSpec conjugate_group(const GroupSpec& g, const Mat& h) {
  const ProjectiveMap hm(h);
  const Mat hinv = h.inverse();
  ConvexDomain dom = g.ambient.transformed(hm);
  std::vector<ProjectiveMap> gens;
  for (const auto& a : g.generators) gens.emplace_back(Mat(h * a.matrix() * hinv));
  std::optional<ConvexSubset> c;
  if (g.invariant_subset) {
    std::vector<Vec> lifts;
    for (const auto& v : g.invariant_subset->generators()) lifts.push_back(dom.lift(ProjectivePoint(Vec(h * v))));
    c = ConvexSubset(std::move(lifts));
  }
  return make_group(std::move(dom), std::move(gens), g.labels, std::move(c));
}

/// Random simplex in P(R^{k+1}) with m commuting positive-diagonal
/// generators (in the simplex's vertex frame).
inline GroupSpec random_simplex_scene(std::mt19937_64& rng, int k, int m) {
  std::normal_distribution<double> normal(0.0, 0.7);
  std::vector<ProjectiveMap> gens;
  for (int j = 0; j < m; ++j) {
    Vec z(k + 1);
    for (int i = 0; i <= k; ++i) z(i) = normal(rng);
    gens.push_back(ProjectiveMap::diagonal(z.array().exp().matrix()));
  }
  ConvexDomain s = build_standard_simplex(k);
  ConvexSubset c = whole_domain_subset(s);
  return conjugate_group(make_group(std::move(s), std::move(gens), {}, std::move(c)), random_well_conditioned(rng, k + 1));
}

/// Pyramid over a regular n-gon in P(R⁴) with the commuting pair
/// diag(λ R^j, λ, μ) and diag(R^i, 1, 1), R the rotation by 2π/n.
inline GroupSpec random_pyramid_scene(std::mt19937_64& rng, int n) {
  std::vector<Vec> vs;
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * j / n;
    vs.push_back((Vec(4) << std::cos(t), std::sin(t), 1.0, 0.0).finished());
  }
  vs.push_back((Vec(4) << 0.0, 0.0, 0.0, 1.0).finished());
  ConvexDomain pyr = ConvexDomain::polytope(vs);
  std::uniform_int_distribution<int> rot(0, n - 1);
  std::uniform_real_distribution<double> logscale(0.2, 1.2);
  auto rotation = [&](int j) {
    const double t = 2.0 * std::numbers::pi * j / n;
    Mat r = Mat::Identity(4, 4);
    r(0, 0) = std::cos(t);
    r(0, 1) = -std::sin(t);
    r(1, 0) = std::sin(t);
    r(1, 1) = std::cos(t);
    return r;
  };
  const double lambda = std::exp(logscale(rng));
  Mat a = rotation(rot(rng));
  a.topRows(3) *= lambda;
  const Mat b = rotation(rot(rng));
  ConvexSubset c = whole_domain_subset(pyr);
  return conjugate_group(make_group(std::move(pyr), {ProjectiveMap(a), ProjectiveMap(b)}, {}, std::move(c)), random_well_conditioned(rng, 4));
}

/// Round ball in P(R^d) (quadric x_1² + … + x_{d-1}² − x_d²) with a Lorentz
/// boost in the (x_1, x_d) plane and a commuting rotation of x_2, x_3.
inline GroupSpec random_ball_scene(std::mt19937_64& rng, int d) {
  if (d < 3) throw Error(ErrorCode::InvalidInput, "ball scene needs d >= 3");
  Mat q = Mat::Identity(d, d);
  q(d - 1, d - 1) = -1.0;
  ConvexDomain ball = ConvexDomain::from_quadric(q, Vec::Unit(d, d - 1));
  std::uniform_real_distribution<double> rap(0.3, 1.5), ang(0.0, 2.0 * std::numbers::pi);
  const double s = rap(rng);
  Mat boost = Mat::Identity(d, d);
  boost(0, 0) = boost(d - 1, d - 1) = std::cosh(s);
  boost(0, d - 1) = boost(d - 1, 0) = std::sinh(s);
  std::vector<ProjectiveMap> gens{ProjectiveMap(boost)};
  if (d >= 4) {
    const double t = ang(rng);
    Mat r = Mat::Identity(d, d);
    r(1, 1) = r(2, 2) = std::cos(t);
    r(1, 2) = -std::sin(t);
    r(2, 1) = std::sin(t);
    gens.emplace_back(r);
  }
  return conjugate_group(make_group(std::move(ball), std::move(gens)), random_well_conditioned(rng, d, 0.3));
}

/// A random commuting-pair scene of projective dimension ≤ 3 (d ≤ 4).
inline GroupSpec random_commuting_scene(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (seed % 3) {
    case 0: return random_simplex_scene(rng, 2 + static_cast<int>((seed / 3) % 2), 2);
    case 1: return random_pyramid_scene(rng, 3 + static_cast<int>((seed / 3) % 4));
    default: return random_ball_scene(rng, 3 + static_cast<int>((seed / 3) % 2));
  }
}

/// Random polytope in P(R^d): jittered points on the unit sphere of the chart
/// x_d = 1, plus a simplex frame so the hull has nonempty interior.
inline ConvexDomain random_polytope_domain(std::mt19937_64& rng, int d, int extra_vertices = 6) {
  std::normal_distribution<double> normal;
  std::vector<Vec> vs;
  for (int i = 0; i < d; ++i) {
    Vec v = Vec::Zero(d);
    if (i < d - 1) v(i) = 1.0;
    else v.head(d - 1).setConstant(-1.0 / std::sqrt(static_cast<double>(d - 1)));
    v(d - 1) = 1.0;
    vs.push_back(v);
  }
  for (int i = 0; i < extra_vertices; ++i) {
    Vec u(d - 1);
    for (int j = 0; j < d - 1; ++j) u(j) = normal(rng);
    Vec v(d);
    v << u / u.norm() * (0.8 + 0.2 * std::abs(normal(rng))), 1.0;
    vs.push_back(v);
  }
  return ConvexDomain::polytope(vs).transformed(ProjectiveMap(random_well_conditioned(rng, d, 0.3)));
}

}  // namespace hflat
