#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hilbert_flats/convex_domain.hpp"
#include "hilbert_flats/error.hpp"
#include "hilbert_flats/group_action.hpp"
#include "hilbert_flats/linalg.hpp"
#include "hilbert_flats/projective.hpp"
#include "hilbert_flats/simplex_geometry.hpp"

namespace hflat {

// ---------------------------------------------------------------------------
// Common fixed points
// ---------------------------------------------------------------------------

struct FixedPoint {
  ProjectivePoint point;
  /// Chart-normalized lift.
  Vec lift;
  /// One real eigenvalue per generator (Rayleigh ratio at the lift).
  Vec eigenvalues;
  Location location = Location::Boundary;
  /// Index of the joint eigenspace the point came from.
  int eigenspace = 0;
};

struct FixedPointSet {
  std::vector<FixedPoint> points;
  /// Dimensions of the joint eigenspaces, in the order found.
  std::vector<int> eigenspace_dims;
  /// Worst ‖a B − B P‖ and ‖P − μI‖ over generators and eigenspaces, relative to ‖a‖.
  double diagonalization_residual = 0.0;
  /// Every generator is a scalar: the whole closed domain is fixed.
  bool full_fix = false;
  /// Some eigenspace of dimension ≥ 3 meets an ellipsoid; its boundary
  /// sphere is not enumerated, only an interior point is reported.
  bool boundary_sphere_skipped = false;

  std::vector<ProjectivePoint> projective_points() const {
    std::vector<ProjectivePoint> out;
    for (const auto& f : points) out.push_back(f.point);
    return out;
  }
};

namespace detail {

inline constexpr double kDiagonalizationTol = 1e-8;

/// Joint eigenspaces (orthonormal column bases) of a commuting family, from
/// the eigenvectors of a generic combination. Throws on complex or defective
/// spectra and when the combination fails to diagonalize every generator.
inline std::vector<Mat> joint_eigenspaces(const std::vector<ProjectiveMap>& gens, int d, double& residual) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> coef(0.5, 1.5);
  std::vector<Mat> unit;
  for (const auto& g : gens) unit.push_back(g.matrix() / g.matrix().norm());
  for (int attempt = 0; attempt < 4; ++attempt) {
    Mat m = Mat::Zero(d, d);
    for (const auto& a : unit) m += coef(rng) * a;
    if (unit.empty()) m = Mat::Identity(d, d);
    const double scale = std::max(m.norm(), 1e-300);
    Eigen::EigenSolver<Mat> es(m);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenSolverFailure, "eigen-decomposition of the generic combination failed");
    const Eigen::VectorXcd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (std::abs(ev(i).imag()) > 1e-9 * scale)
        throw Error(ErrorCode::NotSimultaneouslyDiagonalizable, "generic combination has a complex eigenvalue");
    // Cluster real eigenvalues.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ev(a).real() > ev(b).real(); });
    std::vector<std::vector<Eigen::Index>> clusters;
    for (auto i : order) {
      if (!clusters.empty() && std::abs(ev(clusters.back().back()).real() - ev(i).real()) <= 1e-7 * scale)
        clusters.back().push_back(i);
      else
        clusters.push_back({i});
    }
    std::vector<Mat> spaces;
    double worst = 0.0;
    bool ok = true;
    for (const auto& cl : clusters) {
      Mat vecs(d, static_cast<Eigen::Index>(cl.size()));
      for (std::size_t j = 0; j < cl.size(); ++j) vecs.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(cl[j]).real();
      const Mat b = column_space(vecs, 1e-6);
      if (b.cols() < static_cast<Eigen::Index>(cl.size()))
        throw Error(ErrorCode::NotSimultaneouslyDiagonalizable, "defective eigenvalue in the generic combination");
      for (const auto& a : unit) {
        const Mat p = b.transpose() * a * b;
        const double mu = p.trace() / static_cast<double>(p.rows());
        const double r = std::max((a * b - b * p).norm(), (p - mu * Mat::Identity(p.rows(), p.cols())).norm());
        worst = std::max(worst, r);
        ok = ok && r <= kDiagonalizationTol;
      }
      spaces.push_back(b);
    }
    if (ok) {
      residual = worst;
      return spaces;
    }
  }
  throw Error(ErrorCode::NotSimultaneouslyDiagonalizable, "generators are not simultaneously diagonalizable over R");
}

/// Extreme rays of {c : G c ≥ 0} for G = F B, via (m−1)-subsets of active rows.
inline std::vector<Vec> cone_extreme_rays(const Mat& g, double tol = 1e-10) {
  const int m = static_cast<int>(g.cols());
  std::vector<Vec> out;
  for_each_combination(static_cast<int>(g.rows()), m - 1, [&](const std::vector<int>& idx) {
    Mat sub(static_cast<Eigen::Index>(idx.size()), m);
    for (std::size_t i = 0; i < idx.size(); ++i) sub.row(static_cast<Eigen::Index>(i)) = g.row(idx[i]);
    const Mat ns = null_space(sub, 1e-9);
    if (ns.cols() != 1) return true;
    for (double sign : {1.0, -1.0}) {
      const Vec c = sign * ns.col(0);
      const Vec vals = g * c;
      if (vals.minCoeff() < -tol) continue;
      if (vals.maxCoeff() <= tol && g.rows() > 0) continue;  // lies in the lineality of every facet
      bool dup = false;
      for (const auto& o : out) dup = dup || (o - c).norm() < 1e-9;
      if (!dup) out.push_back(c);
    }
    return true;
  });
  return out;
}

inline Vec rayleigh_tuple(const std::vector<ProjectiveMap>& gens, const Vec& v) {
  Vec mu(static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) mu(static_cast<Eigen::Index>(j)) = v.dot(gens[j].matrix() * v) / v.squaredNorm();
  return mu;
}

}  // namespace detail

/// Common eigendirections of a commuting, real-diagonalizable family that lie
/// in the closed domain. An eigenspace of dimension ≥ 2 contributes the
/// extreme points of P(E) ∩ Ω̄, plus one interior point when P(E) meets Ω.
inline FixedPointSet common_fixed_points(const GroupSpec& group) {
  if (!group.commuting) throw Error(ErrorCode::ValidationError, "common fixed points need a commuting family");
  const ConvexDomain& omega = group.ambient;
  const int d = omega.dim();
  FixedPointSet out;
  const std::vector<Mat> spaces = detail::joint_eigenspaces(group.generators, d, out.diagonalization_residual);
  out.full_fix = spaces.size() == 1;
  auto add = [&](const Vec& raw, int space) {
    const auto l = omega.try_lift(raw);
    if (!l) return;
    const Classification c = omega.classify_lift(*l);
    if (c.location == Location::Outside) return;
    for (const auto& f : out.points)
      if (f.point.distance(ProjectivePoint(*l)) < 1e-9) return;
    out.points.push_back(FixedPoint{ProjectivePoint(*l), *l, detail::rayleigh_tuple(group.generators, *l), c.location, space});
  };
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    const Mat& b = spaces[s];
    const int m = static_cast<int>(b.cols());
    const int idx = static_cast<int>(s);
    out.eigenspace_dims.push_back(m);
    if (m == 1) {
      add(b.col(0), idx);
      continue;
    }
    if (omega.is_polytope()) {
      std::vector<Vec> rays;
      for (const Vec& c : detail::cone_extreme_rays(omega.facets() * b)) {
        const Vec x = b * c;
        const auto l = omega.try_lift(x);
        if (!l) continue;
        rays.push_back(*l);
        add(x, idx);
      }
      if (!rays.empty()) {
        Vec centroid = Vec::Zero(d);
        for (const auto& r : rays) centroid += r;
        centroid /= static_cast<double>(rays.size());
        if (omega.is_interior_lift(centroid)) add(centroid, idx);
      }
    } else {
      Eigen::SelfAdjointEigenSolver<Mat> es(b.transpose() * omega.quadric() * b);
      const Vec lam = es.eigenvalues();
      const double tol = 1e-10;
      if (lam(0) < -tol) {
        add(b * es.eigenvectors().col(0), idx);
        if (m == 2) {
          const Vec u1 = es.eigenvectors().col(0), u2 = es.eigenvectors().col(1);
          for (double sign : {1.0, -1.0}) add(b * (u1 * std::sqrt(lam(1)) + sign * u2 * std::sqrt(-lam(0))), idx);
        } else {
          out.boundary_sphere_skipped = true;
        }
      } else {
        for (Eigen::Index i = 0; i < m && std::abs(lam(i)) <= tol; ++i) add(b * es.eigenvectors().col(i), idx);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Minimal simplex
// ---------------------------------------------------------------------------

namespace detail {

/// Largest s such that a convex combination with all weights ≥ s has every
/// unit facet value ≥ s (polytopes), or minus the normalized quadric value
/// at the centroid (ellipsoids). The open hull meets Ω iff this is positive.
inline double open_hull_margin(const ConvexDomain& omega, const std::vector<Vec>& lifts) {
  const auto n = static_cast<Eigen::Index>(lifts.size());
  if (!omega.is_polytope()) {
    Vec c = Vec::Zero(omega.dim());
    for (const auto& l : lifts) c += l;
    return omega.margin(c / static_cast<double>(n));
  }
  const Mat& f = omega.facets();
  Mat fv(f.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) fv.col(i) = f * lifts[static_cast<std::size_t>(i)] / lifts[static_cast<std::size_t>(i)].norm();
  LinearProgram lp;
  for (Eigen::Index i = 0; i < n; ++i) lp.add_variable(false);
  const int s = lp.add_variable(true);
  const Eigen::Index nv = n + 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec row = Vec::Zero(nv);
    row(i) = 1.0;
    row(s) = -1.0;
    lp.add_constraint(row, LinearProgram::Sense::GreaterEq, 0.0);
  }
  for (Eigen::Index j = 0; j < f.rows(); ++j) {
    Vec row(nv);
    row << fv.row(j).transpose(), -1.0;
    lp.add_constraint(row, LinearProgram::Sense::GreaterEq, 0.0);
  }
  Vec sum = Vec::Ones(nv);
  sum(s) = 0.0;
  lp.add_constraint(sum, LinearProgram::Sense::Equal, 1.0);
  lp.add_constraint(Vec::Unit(nv, s), LinearProgram::Sense::LessEq, 1.0);
  Vec cost = Vec::Zero(nv);
  cost(s) = -1.0;
  const LpResult r = lp.minimize(cost);
  return r.status == LpStatus::Optimal ? r.x(s) : -kInf;
}

}  // namespace detail

inline constexpr double kHullMeetsTol = 1e-9;

struct SimplexSearchResult {
  SimplexFlat simplex;
  /// Indices into the candidate list, increasing.
  std::vector<int> indices;
  double hull_margin = 0.0;
  /// Smallest singular value of the unit-column vertex frame.
  double independence = 0.0;
  /// Every strict nonempty subset was re-checked and fails to meet Ω.
  bool minimal = false;
  int subsets_tested = 0;
};

/// First subset of `fixed` (by size, then lexicographic) whose open hull
/// meets Ω; its vertices must be independent and the simplex properly embedded.
inline SimplexSearchResult minimal_simplex_search(const GroupSpec& group, const std::vector<ProjectivePoint>& fixed) {
  if (fixed.empty()) throw Error(ErrorCode::EmptyInput, "no fixed points to search");
  if (fixed.size() > 24) throw Error(ErrorCode::InvalidInput, "too many fixed points for subset enumeration");
  const ConvexDomain& omega = group.ambient;
  std::vector<std::optional<Vec>> lifts;
  for (const auto& p : fixed) {
    const auto l = omega.try_lift(p.coords());
    if (l && omega.classify_lift(*l).location != Location::Outside) lifts.push_back(*l);
    else lifts.push_back(std::nullopt);
  }
  const int n = static_cast<int>(fixed.size());
  int tested = 0;
  auto margin_of = [&](const std::vector<int>& idx) {
    std::vector<Vec> ls;
    for (int i : idx) {
      if (!lifts[static_cast<std::size_t>(i)]) return -kInf;
      ls.push_back(*lifts[static_cast<std::size_t>(i)]);
    }
    ++tested;
    return detail::open_hull_margin(omega, ls);
  };
  std::optional<std::vector<int>> found;
  double found_margin = 0.0;
  for (int k = 1; k <= n && !found; ++k) {
    for_each_combination(n, k, [&](const std::vector<int>& idx) {
      const double m = margin_of(idx);
      if (m > kHullMeetsTol) {
        found = idx;
        found_margin = m;
        return false;
      }
      return true;
    });
  }
  if (!found) throw Error(ErrorCode::NoSimplexFound, "no subset of the fixed points has hull meeting the domain");

  std::vector<ProjectivePoint> verts;
  for (int i : *found) verts.push_back(fixed[static_cast<std::size_t>(i)]);
  SimplexSearchResult out{make_simplex_flat(verts, &omega), *found, found_margin, 0.0, true, 0};
  Mat unit = out.simplex.frame;
  for (Eigen::Index j = 0; j < unit.cols(); ++j) unit.col(j).normalize();
  out.independence = singular_values(unit).minCoeff();
  // Exhaustive re-check of every strict nonempty subset.
  const int k = static_cast<int>(found->size());
  for (int sz = 1; sz < k && out.minimal; ++sz) {
    for_each_combination(k, sz, [&](const std::vector<int>& sub) {
      std::vector<int> idx;
      for (int i : sub) idx.push_back((*found)[static_cast<std::size_t>(i)]);
      if (margin_of(idx) > kHullMeetsTol) out.minimal = false;
      return out.minimal;
    });
  }
  out.subsets_tested = tested;
  return out;
}

// ---------------------------------------------------------------------------
// Rank certificate
// ---------------------------------------------------------------------------

inline constexpr double kVertexFixTol = 1e-9;

struct RankCertificate {
  int rank = 0;
  /// Reduced basis of the translation subgroup in Φ-coordinates of S.
  std::vector<Vec> lattice_basis;
  /// Translation vector (log μ_{i+1}/μ_1)_i of each generator.
  std::vector<Vec> translation_vectors;
  /// Worst canonical distance between a·v and v over generators and vertices.
  double vertex_fix_residual = 0.0;
  /// The generated subgroup is discrete (basis size equals rank).
  bool discrete = true;
  /// Some generator acts with eigenvalues of both signs on the vertices.
  bool sign_flip = false;
};

namespace detail {

inline double projective_gap(const Vec& a, const Vec& b) {
  const Vec u = a.normalized(), v = b.normalized();
  return std::min((u - v).norm(), (u + v).norm());
}

}  // namespace detail

inline RankCertificate rank_certificate(const GroupSpec& group, const SimplexFlat& s) {
  RankCertificate out;
  const int k = s.dim;
  const auto m = static_cast<Eigen::Index>(group.generators.size());
  Mat w = Mat::Zero(m, k);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Mat& a = group.generators[static_cast<std::size_t>(j)].matrix();
    Vec mu(k + 1);
    for (int i = 0; i <= k; ++i) {
      const Vec v = s.frame.col(i);
      const Vec av = a * v;
      const double gap = detail::projective_gap(av, v);
      out.vertex_fix_residual = std::max(out.vertex_fix_residual, gap);
      if (gap > kVertexFixTol)
        throw Error(ErrorCode::VertexNotFixed, "generator " + std::to_string(j) + " moves vertex " + std::to_string(i));
      mu(i) = v.dot(av) / v.squaredNorm();
    }
    for (int i = 1; i <= k; ++i) {
      const double ratio = mu(i) / mu(0);
      if (ratio < 0) out.sign_flip = true;
      w(j, i - 1) = std::log(std::abs(ratio));
    }
    out.translation_vectors.push_back(w.row(j).transpose());
  }
  if (k == 0 || m == 0) return out;
  {
    const Vec sv = singular_values(w);
    const double cut = 1e-9 * std::max(1.0, sv(0));
    for (Eigen::Index i = 0; i < sv.size(); ++i) out.rank += sv(i) > cut ? 1 : 0;
  }
  // Integer relations among the rows separate from lattice vectors under the
  // embedding [I | T·W]; the surviving W-parts span the subgroup.
  const double big = 1e6;
  Mat emb(m, m + k);
  emb << Mat::Identity(m, m), big * w;
  lll_reduce_rows(emb);
  std::vector<Vec> basis;
  for (Eigen::Index r = 0; r < m; ++r) {
    const Vec part = emb.row(r).tail(k).transpose() / big;
    if (part.norm() > 1e-6) basis.push_back(part);
  }
  out.discrete = static_cast<int>(basis.size()) == out.rank;
  if (out.discrete && !basis.empty()) {
    Mat bm(static_cast<Eigen::Index>(basis.size()), k);
    for (std::size_t r = 0; r < basis.size(); ++r) bm.row(static_cast<Eigen::Index>(r)) = basis[r].transpose();
    lll_reduce_rows(bm);
    basis.clear();
    for (Eigen::Index r = 0; r < bm.rows(); ++r) basis.push_back(bm.row(r).transpose());
  }
  out.lattice_basis = std::move(basis);
  return out;
}

/// Covering radius of a full-rank lattice in (R^k, dist_rd), estimated over
/// Halton points of the fundamental parallelepiped. Infinite when the basis
/// does not span R^k; zero for k = 0.
inline double lattice_covering_radius(const std::vector<Vec>& basis, int k, int samples = 256) {
  if (k == 0) return 0.0;
  if (static_cast<int>(basis.size()) != k) return kInf;
  Mat b(k, k);
  for (int r = 0; r < k; ++r) b.col(r) = basis[static_cast<std::size_t>(r)];
  if (numeric_rank(b, 1e-9) < k) return kInf;
  std::vector<Vec> nearby;
  const int span = 4;  // coefficients in {-1, 0, 1, 2}
  int total = 1;
  for (int i = 0; i < k; ++i) total *= span;
  for (int code = 0; code < total; ++code) {
    Vec n(k);
    int c = code;
    for (int i = 0; i < k; ++i) {
      n(i) = static_cast<double>(c % span) - 1.0;
      c /= span;
    }
    nearby.push_back(b * n);
  }
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec u = b * halton_point(static_cast<std::uint64_t>(s), k, 0);
    double best = kInf;
    for (const auto& p : nearby) best = std::min(best, dist_rd(u, p));
    worst = std::max(worst, best);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Min-hull
// ---------------------------------------------------------------------------

struct MinHullReport {
  std::vector<ProjectivePoint> witnesses;
  std::vector<double> translation_lengths;
  int grid_size = 0;
  /// Best max_j (disp_j − τ_j) over the sample.
  double best_excess = kInf;
  /// Worst max_j (disp_j − τ_j) over samples of the simplex (−∞ if none given).
  double simplex_residual = -kInf;
  int simplex_samples = 0;
};

struct SimplexMinResidual {
  /// Worst max_j (disp_j − τ_j) over the samples.
  double residual = -kInf;
  int samples = 0;
};

/// Displacement excess over τ on the barycenter and interior samples of S.
inline SimplexMinResidual simplex_min_residual(const GroupSpec& group, const SimplexFlat& s, const SamplingConfig& cfg = {}) {
  const ConvexDomain& omega = group.ambient;
  std::vector<double> tau;
  for (const auto& g : group.generators) tau.push_back(translation_length(g));
  std::vector<Vec> pts;
  if (s.dim == 0) {
    pts.push_back(omega.lift(s.vertices.front()));
  } else {
    std::vector<Vec> cols;
    for (Eigen::Index j = 0; j < s.frame.cols(); ++j) cols.push_back(s.frame.col(j));
    const SampleRegion region = SampleRegion::subset(omega, ConvexSubset(std::move(cols)), cfg.interior_margin);
    pts.push_back(omega.lift(s.barycenter()));
    for (const auto& p : region.grid(std::max(16, cfg.hull_samples / 4), cfg.seed)) pts.push_back(*region.point(p));
  }
  SimplexMinResidual out;
  for (const auto& x : pts) {
    double e = -kInf;
    for (std::size_t j = 0; j < group.generators.size(); ++j)
      e = std::max(e, detail::displacement_lift(omega, group.generators[j], x) - tau[j]);
    out.residual = std::max(out.residual, e);
  }
  out.samples = static_cast<int>(pts.size());
  return out;
}

/// Samples of ∩_j Min(a_j) inside the invariant subset (or the whole
/// domain), and, when `s` is given, the check that S lies in every Min(a_j).
inline MinHullReport min_hull(const GroupSpec& group, const SamplingConfig& cfg = {}, const SimplexFlat* s = nullptr) {
  cfg.validate();
  const ConvexDomain& omega = group.ambient;
  MinHullReport out;
  std::vector<double> thr;
  for (const auto& g : group.generators) {
    out.translation_lengths.push_back(translation_length(g));
    thr.push_back(out.translation_lengths.back() + cfg.epsilon_min);
  }
  const ThresholdSample t = detail::threshold_sample(omega, detail::invariant_region(group, cfg.interior_margin), group.generators,
                                                     out.translation_lengths, thr, cfg, true);
  if (t.points.empty())
    throw Error(ErrorCode::MinSetEmpty, "no point of the common min set found at sampling density " + std::to_string(t.grid_size));
  out.witnesses = t.points;
  out.grid_size = t.grid_size;
  out.best_excess = t.best_excess;
  if (s) {
    const SimplexMinResidual sr = simplex_min_residual(group, *s, cfg);
    out.simplex_residual = sr.residual;
    out.simplex_samples = sr.samples;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Flat torus report
// ---------------------------------------------------------------------------

struct FlatReport {
  SimplexFlat simplex;
  std::vector<ProjectivePoint> fixed_points_used;
  int rank = 0;
  std::vector<Vec> lattice_basis;
  bool cocompact = false;
  std::vector<ProjectivePoint> min_set_witnesses;
  std::map<std::string, double> diagnostics;
  /// Completed pipeline stages, in order.
  std::vector<std::string> stages;
  /// Error from the first failing stage after the simplex was found.
  std::optional<std::string> error;

  int dim() const { return simplex.dim; }
};

inline FlatReport flat_torus_report(const GroupSpec& group, const SamplingConfig& cfg = {}) {
  cfg.validate();
  const FixedPointSet fixed = common_fixed_points(group);
  const SimplexSearchResult found = minimal_simplex_search(group, fixed.projective_points());
  FlatReport rep{found.simplex, {}, 0, {}, false, {}, {}, {"fixed_points", "simplex"}, std::nullopt};
  for (int i : found.indices) rep.fixed_points_used.push_back(fixed.points[static_cast<std::size_t>(i)].point);
  auto& dg = rep.diagnostics;
  dg["fixed_point_count"] = static_cast<double>(fixed.points.size());
  dg["diagonalization_residual"] = fixed.diagonalization_residual;
  dg["full_fix"] = fixed.full_fix ? 1.0 : 0.0;
  dg["hull_margin"] = found.hull_margin;
  dg["independence"] = found.independence;
  dg["minimal"] = found.minimal ? 1.0 : 0.0;
  try {
    const RankCertificate rc = rank_certificate(group, rep.simplex);
    rep.rank = rc.rank;
    rep.lattice_basis = rc.lattice_basis;
    rep.cocompact = rc.rank == rep.simplex.dim;
    dg["vertex_fix_residual"] = rc.vertex_fix_residual;
    dg["lattice_discrete"] = rc.discrete ? 1.0 : 0.0;
    dg["covering_radius"] = rep.cocompact ? lattice_covering_radius(rc.lattice_basis, rep.simplex.dim) : kInf;
    rep.stages.push_back("rank");
    const MinHullReport mh = min_hull(group, cfg, &rep.simplex);
    rep.min_set_witnesses = mh.witnesses;
    dg["min_set_grid_size"] = mh.grid_size;
    dg["min_set_best_excess"] = mh.best_excess;
    dg["simplex_min_residual"] = mh.simplex_residual;
    rep.stages.push_back("min_hull");
  } catch (const Error& e) {
    rep.cocompact = false;
    rep.error = std::string(error_name(e.code())) + ": " + e.what();
  }
  return rep;
}

}  // namespace hflat
