#pragma once

// Randomized property checks shared by the `verify` command and the
// acceptance binary. Each check reports its worst violation against a
// pinned tolerance.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hilbert_flats/builders.hpp"
#include "hilbert_flats/convex_domain.hpp"
#include "hilbert_flats/error.hpp"
#include "hilbert_flats/flat_torus.hpp"
#include "hilbert_flats/group_action.hpp"
#include "hilbert_flats/hilbert_metric.hpp"
#include "hilbert_flats/simplex_geometry.hpp"

namespace hflat {

struct PropertyResult {
  std::string name;
  bool applicable = true;
  bool passed = true;
  int trials = 0;
  /// Largest violation seen (positive means the inequality failed by that much).
  double worst = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct VerifyConfig {
  int metric_triples = 200;
  int geodesic_pairs = 50;
  int geodesic_times = 20;
  int neighborhood_configs = 5;
  int neighborhood_probes = 40;
  int chord_pairs = 20;
  int phi_pairs = 200;
  /// Margins above the largest translation length.
  std::vector<double> hull_radii{0.5, 1.0};

  void validate() const {
    for (int n : {metric_triples, geodesic_pairs, geodesic_times, neighborhood_configs, neighborhood_probes, chord_pairs, phi_pairs})
      if (n < 1) throw Error(ErrorCode::ValidationError, "verify trial counts must be >= 1");
    for (double r : hull_radii)
      if (!(r > 0)) throw Error(ErrorCode::ValidationError, "hull radii must be positive");
  }
};

namespace detail {

/// Largest s with o + s·w in the closed domain (o interior, w in the chart plane).
inline double ray_exit(const ConvexDomain& omega, const Vec& o, const Vec& w) {
  if (omega.is_polytope()) {
    const Vec fo = omega.facets() * o, fw = omega.facets() * w;
    double s = kInf;
    for (Eigen::Index j = 0; j < fo.size(); ++j)
      if (fw(j) < 0) s = std::min(s, -fo(j) / fw(j));
    return s;
  }
  const Mat& q = omega.quadric();
  const double a = w.dot(q * w), b = o.dot(q * w), c = o.dot(q * o);
  if (a <= 0) return kInf;
  return (-b + std::sqrt(std::max(b * b - a * c, 0.0))) / a;
}

/// Random interior lift: a random chart direction from the reference point,
/// at a random fraction (at most `reach`) of the way to the boundary.
inline Vec random_interior_lift(const ConvexDomain& omega, std::mt19937_64& rng, double reach = 0.95) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, reach);
  const int k = omega.dim() - 1;
  Vec u(k);
  for (int i = 0; i < k; ++i) u(i) = normal(rng);
  const Vec w = omega.frame().basis * u;
  const Vec o = omega.reference_lift();
  const double s = ray_exit(omega, o, w);
  return o + unif(rng) * s * w;
}

inline PropertyResult finish(PropertyResult r) {
  r.passed = !r.applicable || r.worst <= r.tolerance;
  return r;
}

}  // namespace detail

/// Symmetry, identity, triangle inequality, invariance under the given
/// automorphisms and projective invariance under a random change of frame.
inline PropertyResult check_metric_axioms(const ConvexDomain& omega, const std::vector<ProjectiveMap>& automorphisms, int triples,
                                          std::mt19937_64& rng, double tol = 1e-9) {
  PropertyResult r{"metric_axioms", true, true, 0, 0.0, tol, ""};
  const ProjectiveMap h(random_well_conditioned(rng, omega.dim(), 0.5));
  const ConvexDomain moved = omega.transformed(h);
  for (int t = 0; t < triples; ++t) {
    const ProjectivePoint x(detail::random_interior_lift(omega, rng)), y(detail::random_interior_lift(omega, rng)),
        z(detail::random_interior_lift(omega, rng));
    const double dxy = hilbert_distance(omega, x, y), dyx = hilbert_distance(omega, y, x);
    const double dxz = hilbert_distance(omega, x, z), dyz = hilbert_distance(omega, y, z);
    double w = std::abs(dxy - dyx);
    w = std::max(w, hilbert_distance(omega, x, x));
    w = std::max(w, dxz - dxy - dyz);
    w = std::max(w, std::abs(hilbert_distance(moved, h.apply(x), h.apply(y)) - dxy));
    for (const auto& g : automorphisms) w = std::max(w, std::abs(hilbert_distance(omega, g.apply(x), g.apply(y)) - dxy));
    r.worst = std::max(r.worst, w);
    ++r.trials;
  }
  return detail::finish(r);
}

/// H(σ1(t), σ2(t)) ≤ H(σ1(0), σ2(0)) + H(σ1(T), σ2(T)) for unit-speed
/// projective line geodesics on a common interval.
inline PropertyResult check_crampon(const ConvexDomain& omega, int pairs, int times, std::mt19937_64& rng, double tol = 1e-9) {
  PropertyResult r{"crampon_estimate", true, true, 0, -kInf, tol, ""};
  std::uniform_real_distribution<double> len(0.1, 3.0);
  for (int p = 0; p < pairs; ++p) {
    const ProjectivePoint x1(detail::random_interior_lift(omega, rng)), y1(detail::random_interior_lift(omega, rng));
    const ProjectivePoint x2(detail::random_interior_lift(omega, rng)), y2(detail::random_interior_lift(omega, rng));
    const double big_t = len(rng);
    auto s1 = [&](double t) { return geodesic_at_length(omega, x1, y1, t); };
    auto s2 = [&](double t) { return geodesic_at_length(omega, x2, y2, t); };
    const double bound = hilbert_distance(omega, s1(0), s2(0)) + hilbert_distance(omega, s1(big_t), s2(big_t));
    for (int i = 1; i <= times; ++i) {
      const double t = big_t * i / (times + 1.0);
      r.worst = std::max(r.worst, hilbert_distance(omega, s1(t), s2(t)) - bound);
      ++r.trials;
    }
  }
  return detail::finish(r);
}

/// Midpoints of points in N_r(D) stay in N_r(D), for segments D.
inline PropertyResult check_neighborhood_convexity(const ConvexDomain& omega, int configs, int probes, std::mt19937_64& rng,
                                                   double tol = 1e-9) {
  PropertyResult r{"neighborhood_convexity", true, true, 0, -kInf, tol, ""};
  std::uniform_real_distribution<double> radius(0.2, 1.0);
  for (int c = 0; c < configs; ++c) {
    const ConvexSubset dset({detail::random_interior_lift(omega, rng, 0.7), detail::random_interior_lift(omega, rng, 0.7)});
    const double rad = radius(rng);
    int found = 0;
    for (int attempt = 0; attempt < 50 * probes && found < probes; ++attempt) {
      const ProjectivePoint p(detail::random_interior_lift(omega, rng)), q(detail::random_interior_lift(omega, rng));
      if (!neighborhood_contains(omega, dset, rad, p) || !neighborhood_contains(omega, dset, rad, q)) continue;
      if (p.approx_equal(q, 1e-12)) continue;
      ++found;
      const ProjectivePoint m = geodesic_point(omega, p, q, 0.5);
      r.worst = std::max(r.worst, distance_to_subset(omega, dset, m).value - rad);
    }
    r.trials += found;
  }
  if (r.trials == 0) r.note = "no probe pairs found inside the neighborhoods";
  return detail::finish(r);
}

/// Hausdorff distance between two chords whose endpoints share open faces is
/// at most the larger face distance (polytopes; plus the estimate's resolution).
inline PropertyResult check_face_chord_hausdorff(const ConvexDomain& omega, int pairs, std::mt19937_64& rng, const MetricConfig& mcfg = {},
                                                 double tol = 1e-9) {
  PropertyResult r{"face_chord_hausdorff", true, true, 0, -kInf, tol, ""};
  if (!omega.is_polytope()) {
    r.applicable = false;
    r.note = "faces of an ellipsoid are points";
    return detail::finish(r);
  }
  const Mat& f = omega.facets();
  const auto& vs = omega.vertex_lifts();
  std::uniform_int_distribution<Eigen::Index> pick(0, f.rows() - 1);
  std::exponential_distribution<double> expo(1.0);
  auto facet_point = [&](Eigen::Index j) {
    Vec p = Vec::Zero(omega.dim());
    for (const auto& v : vs)
      if (std::abs(f.row(j).dot(v) / v.norm()) <= 1e-10) p += expo(rng) * v;
    return ProjectivePoint(p);
  };
  for (int t = 0; t < pairs; ++t) {
    const Eigen::Index a = pick(rng);
    Eigen::Index b = pick(rng);
    while (b == a) b = pick(rng);
    const ProjectivePoint p1 = facet_point(a), p2 = facet_point(a), q1 = facet_point(b), q2 = facet_point(b);
    const Face fa = open_face(omega, p1), fb = open_face(omega, q1);
    if (!in_face(omega, fa, p2) || !in_face(omega, fb, q2)) continue;
    const ConvexSubset c1({omega.lift(p1), omega.lift(q1)}), c2({omega.lift(p2), omega.lift(q2)});
    const HausdorffEstimate est = hausdorff_distance(omega, c1, c2, mcfg);
    const double bound = std::max(face_distance(omega, fa, p1, p2), face_distance(omega, fb, q1, q2));
    r.worst = std::max(r.worst, est.value - bound - est.resolution);
    ++r.trials;
  }
  return detail::finish(r);
}

/// Displacements on ConvHull(M_r) stay below 2^{d−1} r. The radii are
/// margins above max_j τ(a_j); below that M_r is empty.
inline PropertyResult check_hull_inflation(const GroupSpec& group, const std::vector<double>& margins, const SamplingConfig& cfg,
                                           double tol = 1e-6) {
  PropertyResult r{"hull_inflation", true, true, 0, -kInf, tol, ""};
  if (!group.commuting) {
    r.applicable = false;
    r.note = "group is not commuting";
    return detail::finish(r);
  }
  double tau = 0.0;
  for (const auto& g : group.generators) tau = std::max(tau, translation_length(g));
  for (double m : margins) {
    const HullInflationReport h = hull_inflation_check(group, tau + m, cfg, 0.0);
    if (h.m_r_count == 0) r.note += (r.note.empty() ? "" : "; ") + std::string("M_r sample empty at r = max tau + ") + std::to_string(m);
    r.worst = std::max(r.worst, h.worst_displacement - h.bound);
    r.trials += h.hull_samples;
  }
  return detail::finish(r);
}

/// The invariant simplex lies in every Min(a): displacement on simplex
/// samples within the tolerance of τ(a).
inline PropertyResult check_simplex_in_min(const GroupSpec& group, const SamplingConfig& cfg, double tol = 1e-6) {
  PropertyResult r{"simplex_in_min", true, true, 0, -kInf, tol, ""};
  if (!group.commuting) {
    r.applicable = false;
    r.note = "group is not commuting";
    return detail::finish(r);
  }
  try {
    const FixedPointSet fixed = common_fixed_points(group);
    const SimplexSearchResult s = minimal_simplex_search(group, fixed.projective_points());
    const SimplexMinResidual sr = simplex_min_residual(group, s.simplex, cfg);
    r.worst = sr.residual;
    r.trials = sr.samples;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSimultaneouslyDiagonalizable) throw;
    r.applicable = false;
    r.note = "generators are not simultaneously diagonalizable over R";
  }
  return detail::finish(r);
}

/// Φ is an isometry from the k-simplex onto (R^k, dist_rd), and the closed
/// form agrees with the generic chord distance.
inline PropertyResult check_phi_isometry(int k, int pairs, std::mt19937_64& rng, double tol = 1e-10) {
  PropertyResult r{"phi_isometry", true, true, 0, 0.0, tol, ""};
  std::uniform_real_distribution<double> logc(-4.0, 4.0);
  for (int t = 0; t < pairs; ++t) {
    Vec x(k + 1), y(k + 1);
    for (int i = 0; i <= k; ++i) {
      x(i) = std::exp(logc(rng));
      y(i) = std::exp(logc(rng));
    }
    const ProjectivePoint px(x), py(y);
    r.worst = std::max(r.worst, std::abs(simplex_distance(px, py, k) - dist_rd(phi_coordinates(px, k), phi_coordinates(py, k))));
    ++r.trials;
  }
  return detail::finish(r);
}

/// The whole suite on a domain and an optional group.
inline std::vector<PropertyResult> run_property_suite(const ConvexDomain& omega, const GroupSpec* group, const VerifyConfig& vcfg,
                                                      const SamplingConfig& scfg, const MetricConfig& mcfg, std::uint64_t seed) {
  vcfg.validate();
  std::vector<PropertyResult> out;
  std::mt19937_64 rng(seed);
  out.push_back(check_metric_axioms(omega, group ? group->generators : std::vector<ProjectiveMap>{}, vcfg.metric_triples, rng));
  out.push_back(check_crampon(omega, vcfg.geodesic_pairs, vcfg.geodesic_times, rng));
  out.push_back(check_neighborhood_convexity(omega, vcfg.neighborhood_configs, vcfg.neighborhood_probes, rng));
  out.push_back(check_face_chord_hausdorff(omega, vcfg.chord_pairs, rng, mcfg));
  if (group) {
    out.push_back(check_hull_inflation(*group, vcfg.hull_radii, scfg));
    out.push_back(check_simplex_in_min(*group, scfg));
  } else {
    out.push_back(PropertyResult{"hull_inflation", false, true, 0, 0.0, 1e-6, "no group in scene"});
    out.push_back(PropertyResult{"simplex_in_min", false, true, 0, 0.0, 1e-6, "no group in scene"});
  }
  out.push_back(check_phi_isometry(omega.dim() - 1, vcfg.phi_pairs, rng));
  return out;
}

}  // namespace hflat
