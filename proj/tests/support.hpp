#pragma once

// Generators and independent reference computations shared by the tests.
// Nothing here calls into the chord / cross-ratio machinery under test.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hilbert_flats/convex_domain.hpp"
#include "hilbert_flats/linalg.hpp"
#include "hilbert_flats/projective.hpp"

namespace testsupport {

using hflat::Mat;
using hflat::Vec;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  Vec normal_vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  Vec positive_vec(int n, double lo = 0.05, double hi = 1.0) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

  /// Point in the open standard simplex, log-uniform coordinates.
  Vec simplex_point(int n, double spread = 4.0) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = std::exp(uniform(-spread, spread));
    return v;
  }

  /// Matrix with singular values in [1/cond_root, cond_root].
  Mat well_conditioned(int n, double cond_root = 3.0) {
    while (true) {
      Mat m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = normal();
      Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Vec s(n);
      for (int i = 0; i < n; ++i) s(i) = std::exp(uniform(-std::log(cond_root), std::log(cond_root)));
      Mat out = svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
      if (out.determinant() != 0.0) return out;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Closed-form Hilbert distance on the positive orthant (simplex).
inline double simplex_formula(const Vec& x, const Vec& y) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = 0; j < x.size(); ++j)
      best = std::max(best, 0.5 * std::abs(std::log(x(i) * y(j) / (y(i) * x(j)))));
  return best;
}

/// Hilbert distance for an H-described polytope via the Funk formulation:
/// 1/2 log max_{j,k} f_j(x) f_k(y) / (f_j(y) f_k(x)). Independent of the
/// chord-intersection code path.
inline double funk_hilbert(const Mat& facets, const Vec& x, const Vec& y) {
  const Vec fx = facets * x;
  const Vec fy = facets * y;
  double hi = -hflat::kInf, lo = hflat::kInf;
  for (Eigen::Index j = 0; j < fx.size(); ++j) {
    const double r = std::log(fx(j) / fy(j));
    hi = std::max(hi, r);
    lo = std::min(lo, r);
  }
  return 0.5 * (hi - lo);
}

/// Random polytope: lifts (u, 1) of points on a jittered sphere in the
/// chart x_d = 1, enough of them to have full dimension.
inline std::vector<Vec> random_polytope_lifts(Gen& g, int d, int count) {
  std::vector<Vec> lifts;
  for (int i = 0; i < count; ++i) {
    Vec u = g.normal_vec(d - 1);
    u *= g.uniform(0.6, 1.0) / u.norm();
    Vec l(d);
    l << u, 1.0;
    lifts.push_back(l);
  }
  return lifts;
}

inline hflat::ConvexDomain random_polytope(Gen& g, int d) {
  while (true) {
    try {
      return hflat::ConvexDomain::polytope(random_polytope_lifts(g, d, d + 2 + g.integer(0, 3)));
    } catch (const hflat::Error&) {
    }
  }
}

/// Strictly interior point: random convex combination of vertices pulled
/// toward the vertex centroid.
inline Vec interior_lift(Gen& g, const hflat::ConvexDomain& omega, double pull = 0.05) {
  if (omega.is_polytope()) {
    const auto& vs = omega.vertex_lifts();
    Vec w = g.positive_vec(static_cast<int>(vs.size()), 0.0, 1.0);
    w = w.array().pow(3.0);
    w /= w.sum();
    Vec p = Vec::Zero(omega.dim());
    for (std::size_t i = 0; i < vs.size(); ++i) p += w(static_cast<Eigen::Index>(i)) * vs[i];
    return (1 - pull) * p + pull * omega.reference_lift();
  }
  while (true) {
    Vec u = g.normal_vec(omega.dim() - 1);
    u *= std::pow(g.uniform(0, 1), 1.0 / (omega.dim() - 1)) * 3.0 / u.norm();
    const Vec x = omega.frame().lift(u);
    if (omega.margin(x) > 1e-3) return x;
  }
}

/// Convex-polygon membership by monotone chain hull in 2D (strict interior).
inline bool polygon_contains(std::vector<std::pair<double, double>> pts, double qx, double qy) {
  std::sort(pts.begin(), pts.end());
  auto cross = [](auto o, auto a, auto b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  const std::pair<double, double> q{qx, qy};
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (cross(hull[i], hull[(i + 1) % hull.size()], q) <= 1e-12) return false;
  }
  return true;
}

}  // namespace testsupport
