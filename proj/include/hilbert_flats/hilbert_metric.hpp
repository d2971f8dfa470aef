#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hilbert_flats/convex_domain.hpp"
#include "hilbert_flats/error.hpp"
#include "hilbert_flats/linalg.hpp"
#include "hilbert_flats/projective.hpp"

namespace hflat {

struct MetricConfig {
  double boundary_tolerance = 1e-10;
  int hausdorff_samples = 32;
  /// Hilbert reach used to truncate ideal generators in Hausdorff estimates.
  double hausdorff_reach = 8.0;
  int com_samples = 256;
  double com_radius_tolerance = 1e-9;
  std::uint64_t rng_seed = 1;

  void validate() const {
    if (!(boundary_tolerance > 0)) throw Error(ErrorCode::ValidationError, "boundary_tolerance must be positive");
    if (!(com_radius_tolerance > 0)) throw Error(ErrorCode::ValidationError, "com_radius_tolerance must be positive");
    if (!(hausdorff_reach > 0)) throw Error(ErrorCode::ValidationError, "hausdorff_reach must be positive");
    if (hausdorff_samples < 2) throw Error(ErrorCode::ValidationError, "hausdorff_samples must be >= 2");
    if (com_samples < 2) throw Error(ErrorCode::ValidationError, "com_samples must be >= 2");
  }
};

// ---------------------------------------------------------------------------
// Distance between points
// ---------------------------------------------------------------------------

namespace detail {

/// Below this chart separation two lifts are treated as the same point.
inline constexpr double kCoincident = 1e-14;

inline double distance_from_parameters(double ta, double tb) {
  return 0.5 * (std::log1p(1.0 / (tb - 1.0)) + std::log1p(1.0 / (-ta)));
}

/// Distance between chart-normalized interior lifts; no validation.
inline double distance_lifts(const ConvexDomain& omega, const Vec& x, const Vec& y) {
  if ((x - y).norm() <= kCoincident * x.norm()) return 0.0;
  const auto [ta, tb] = omega.chord_parameters(x, y);
  return distance_from_parameters(ta, tb);
}

inline Vec interior_lift_or_throw(const ConvexDomain& omega, const ProjectivePoint& p, const char* what) {
  omega.check_dim(p.dim());
  auto l = omega.try_lift(p.coords());
  if (!l || !omega.is_interior_lift(*l)) throw Error(ErrorCode::NotInterior, std::string(what) + " is not an interior point");
  return *l;
}

}  // namespace detail

struct DistanceReport {
  double value = 0.0;
  /// Set when a chord endpoint lies so close to a query point that the
  /// logarithm has lost roughly seven significant digits.
  bool near_boundary = false;
  double t_a = 0.0;
  double t_b = 0.0;
};

inline DistanceReport hilbert_distance_report(const ConvexDomain& omega, const ProjectivePoint& x, const ProjectivePoint& y) {
  const Vec xh = detail::interior_lift_or_throw(omega, x, "x");
  const Vec yh = detail::interior_lift_or_throw(omega, y, "y");
  DistanceReport r;
  const Vec v = yh - xh;
  if (v.norm() <= detail::kCoincident * xh.norm()) return r;
  const auto [ta, tb] = omega.chord_parameters(xh, yh);
  r.t_a = ta;
  r.t_b = tb;
  r.value = detail::distance_from_parameters(ta, tb);
  const double gap = std::min(-ta, tb - 1.0) * v.norm() / xh.norm();
  r.near_boundary = gap <= 1e3 * omega.boundary_tolerance();
  return r;
}

inline double hilbert_distance(const ConvexDomain& omega, const ProjectivePoint& x, const ProjectivePoint& y) {
  return hilbert_distance_report(omega, x, y).value;
}

// ---------------------------------------------------------------------------
// Geodesics
// ---------------------------------------------------------------------------

/// Point on the ray from x through y at Hilbert distance `length` from x.
/// The ray is the projective line geodesic; it runs past y toward ∂Ω.
inline ProjectivePoint geodesic_at_length(const ConvexDomain& omega, const ProjectivePoint& x, const ProjectivePoint& y,
                                          double length) {
  const Vec xh = detail::interior_lift_or_throw(omega, x, "x");
  const Vec yh = detail::interior_lift_or_throw(omega, y, "y");
  if ((yh - xh).norm() <= detail::kCoincident * xh.norm()) throw Error(ErrorCode::CoincidentPoints, "geodesic through coincident points");
  if (!(length >= 0)) throw Error(ErrorCode::InvalidInput, "geodesic length must be nonnegative");
  const auto [ta, tb] = omega.chord_parameters(xh, yh);
  // Solve [a, x, p, b] = e^{2 length} for the affine parameter s of p.
  const double one_minus_k = -std::expm1(2.0 * length);
  const double k = 1.0 - one_minus_k;
  const double s = ta * tb * one_minus_k / (tb - k * ta);
  return ProjectivePoint(Vec(xh + s * (yh - xh)));
}

/// Point p on [x,y] with H(x,p) = t H(x,y).
inline ProjectivePoint geodesic_point(const ConvexDomain& omega, const ProjectivePoint& x, const ProjectivePoint& y, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::InvalidInput, "geodesic fraction must lie in [0,1]");
  const Vec xh = detail::interior_lift_or_throw(omega, x, "x");
  const Vec yh = detail::interior_lift_or_throw(omega, y, "y");
  if ((yh - xh).norm() <= detail::kCoincident * xh.norm()) throw Error(ErrorCode::CoincidentPoints, "geodesic through coincident points");
  if (t == 0.0) return x;
  if (t == 1.0) return y;
  return geodesic_at_length(omega, x, y, t * detail::distance_lifts(omega, xh, yh));
}

// ---------------------------------------------------------------------------
// Distance to a convex subset
// ---------------------------------------------------------------------------

namespace detail {

/// Minimizes w^T G w over the probability simplex (Wolfe's minimum-norm
/// point algorithm on a Gram matrix). Returns the optimal weights.
inline Vec min_norm_weights(const Mat& gram) {
  const Eigen::Index m = gram.rows();
  const double scale = std::max(gram.diagonal().cwiseAbs().maxCoeff(), 1e-300);
  Vec x = Vec::Zero(m);
  Eigen::Index start = 0;
  gram.diagonal().minCoeff(&start);
  x(start) = 1.0;
  std::vector<Eigen::Index> support{start};

  for (int major = 0; major < 1000; ++major) {
    const Vec grad = gram * x;
    const double xx = x.dot(grad);
    Eigen::Index j = 0;
    const double best = grad.minCoeff(&j);
    if (best >= xx - 1e-13 * scale) break;
    if (std::find(support.begin(), support.end(), j) != support.end()) break;
    support.push_back(j);
    for (int minor = 0; minor < 1000; ++minor) {
      const auto k = static_cast<Eigen::Index>(support.size());
      Mat kkt = Mat::Zero(k + 1, k + 1);
      for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) kkt(a, b) = gram(support[a], support[b]);
        kkt(a, k) = 1.0;
        kkt(k, a) = 1.0;
      }
      Vec rhs = Vec::Zero(k + 1);
      rhs(k) = 1.0;
      const Vec sol = kkt.fullPivLu().solve(rhs);
      const Vec alpha = sol.head(k);
      if (alpha.minCoeff() > 1e-14) {
        x.setZero();
        for (Eigen::Index a = 0; a < k; ++a) x(support[a]) = alpha(a);
        break;
      }
      double theta = 1.0;
      for (Eigen::Index a = 0; a < k; ++a) {
        const double cur = x(support[a]);
        if (alpha(a) <= 1e-14 && cur - alpha(a) > 0) theta = std::min(theta, cur / (cur - alpha(a)));
      }
      for (Eigen::Index a = 0; a < k; ++a) x(support[a]) = (1 - theta) * x(support[a]) + theta * alpha(a);
      std::vector<Eigen::Index> kept;
      for (auto s : support) {
        if (x(s) > 1e-14) {
          kept.push_back(s);
        } else {
          x(s) = 0.0;
        }
      }
      support = kept;
      if (support.empty()) {
        x(j) = 1.0;
        support.push_back(j);
        break;
      }
    }
  }
  return x;
}

}  // namespace detail

struct SubsetDistance {
  double value = kInf;
  /// Chart-normalized lift of a nearest point of the subset (empty when the
  /// subset does not meet Ω).
  Vec nearest;
};

/// Exact Hilbert distance from an interior point to a convex subset given by
/// generators. Polytopes: linear program over the cone of the subset using
/// H(p,q) = 1/2 log max_{j,k} f_j(q) f_k(p) / (f_j(p) f_k(q)). Ellipsoids: the
/// metric is hyperbolic, so the nearest point is a minimum-norm point in the
/// tangent frame at p.
inline SubsetDistance distance_to_subset(const ConvexDomain& omega, const ConvexSubset& subset, const ProjectivePoint& p) {
  const Vec ph = detail::interior_lift_or_throw(omega, p, "query point");
  const auto& gens = subset.generators();
  if (gens.empty()) throw Error(ErrorCode::EmptySubset, "subset has no generators");
  SubsetDistance out;
  if (subset.contains_lift(ph, 1e-12)) {
    out.value = 0.0;
    out.nearest = ph;
    return out;
  }
  const int d = omega.dim();
  if (omega.is_polytope()) {
    const Mat& f = omega.facets();
    const Vec fp = f * ph;
    const Eigen::Index mf = f.rows();
    const Eigen::Index mg = static_cast<Eigen::Index>(gens.size());
    // Ratios r_j = f_j(q) / f_j(p) for q = sum w_i g_i. Maximize sigma with
    // sigma <= r_j <= 1; then H = -1/2 log sigma. The LP is solved with raw
    // columns and with columns scaled to a largest ratio of 1: near a facet
    // the raw entries reach 1/f_j(p), while the scaled form can stop one
    // vertex short on nearly degenerate ties. Both candidates are points of
    // the subset, so the nearer one is kept.
    Mat raw(mf, mg);
    for (Eigen::Index i = 0; i < mg; ++i) raw.col(i) = (f * gens[static_cast<std::size_t>(i)]).cwiseQuotient(fp);
    for (const bool scaled : {false, true}) {
      Mat ratio = raw;
      Vec colscale = Vec::Ones(mg);
      if (scaled) {
        for (Eigen::Index i = 0; i < mg; ++i) {
          colscale(i) = std::max(raw.col(i).maxCoeff(), 1e-300);
          ratio.col(i) /= colscale(i);
        }
      }
      LinearProgram lp;
      for (Eigen::Index i = 0; i < mg; ++i) lp.add_variable(false);
      const int sigma = lp.add_variable(false);
      for (Eigen::Index j = 0; j < mf; ++j) {
        Vec row = Vec::Zero(mg + 1);
        row.head(mg) = ratio.row(j).transpose();
        lp.add_constraint(row, LinearProgram::Sense::LessEq, 1.0);
        row(sigma) = -1.0;
        lp.add_constraint(row, LinearProgram::Sense::GreaterEq, 0.0);
      }
      Vec cost = Vec::Zero(mg + 1);
      cost(sigma) = -1.0;
      const LpResult res = lp.minimize(cost);
      if (res.status != LpStatus::Optimal || !(res.x(sigma) > 0.0)) continue;
      Vec q = Vec::Zero(d);
      for (Eigen::Index i = 0; i < mg; ++i) q += res.x(i) / colscale(i) * gens[static_cast<std::size_t>(i)];
      const Vec nearest = q / omega.chart().dot(q);
      // Re-evaluate through the chord so the value is the metric itself, not
      // the LP objective.
      const double value = omega.is_interior_lift(nearest) ? detail::distance_lifts(omega, ph, nearest) : -0.5 * std::log(res.x(sigma));
      if (value < out.value) {
        out.value = value;
        out.nearest = nearest;
      }
    }
    return out;
  }
  // Hyperbolic case: B = -Q is positive on the cone over Ω.
  const Mat b = -omega.quadric();
  const Vec e0 = ph / std::sqrt(ph.dot(b * ph));
  const auto m = static_cast<Eigen::Index>(gens.size());
  Mat perp(d, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vec& g = gens[static_cast<std::size_t>(i)];
    const double be = e0.dot(b * g);
    const Vec gh = g / be;
    perp.col(i) = gh - e0;
  }
  // Gram matrix of the negative-definite part, sign flipped.
  const Mat gram = -(perp.transpose() * b * perp);
  const Vec w = detail::min_norm_weights(gram);
  Vec q = Vec::Zero(d);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vec& g = gens[static_cast<std::size_t>(i)];
    q += w(i) * g / e0.dot(b * g);
  }
  const double norm2 = w.dot(gram * w);
  if (!(norm2 < 1.0)) return out;
  out.nearest = q / omega.chart().dot(q);
  out.value = std::acosh(1.0 / std::sqrt(1.0 - norm2));
  if (omega.is_interior_lift(out.nearest)) out.value = detail::distance_lifts(omega, ph, out.nearest);
  return out;
}

/// Whether p lies in the open r-neighborhood N_r(D) = {p : H(p, D) < r}.
inline bool neighborhood_contains(const ConvexDomain& omega, const ConvexSubset& d, double r, const ProjectivePoint& p) {
  return distance_to_subset(omega, d, p).value < r;
}

// ---------------------------------------------------------------------------
// Hausdorff distance
// ---------------------------------------------------------------------------

struct HausdorffEstimate {
  double value = 0.0;
  /// Change of the estimate between reach R-1 and R (how far the truncated
  /// ideal ends still are from their limit), plus `rounding`.
  double resolution = 0.0;
  /// Floating-point allowance: chord parameters at a probe with facet margin
  /// m carry relative error ~ eps/m, and the ends sit at margin ~ e^{-2R}.
  double rounding = 0.0;
  double reach = 0.0;
  int evaluations = 0;
};

namespace detail {

/// Points representing a subset for sup-inf evaluation: its generators,
/// with ideal ones pulled in to Hilbert distance `reach` from the centroid,
/// plus deterministic interior samples.
inline std::vector<Vec> hausdorff_probe_points(const ConvexDomain& omega, const ConvexSubset& s, double reach, int samples) {
  const Vec c = s.centroid() / omega.chart().dot(s.centroid());
  if (!omega.is_interior_lift(c)) throw Error(ErrorCode::EmptySubset, "subset does not meet the interior of the domain");
  std::vector<Vec> truncated;
  for (const auto& g : s.generators()) {
    if (omega.is_interior_lift(g)) {
      truncated.push_back(g);
    } else if ((g - c).norm() > kCoincident) {
      // Ray from c through the midpoint toward g. When c itself hugs the
      // boundary the full reach can land inside the boundary tolerance; back
      // off until the truncated point is interior again.
      const Vec mid = 0.5 * (c + g);
      Vec t;
      for (double r = reach;; r *= 0.5) {
        t = omega.lift(geodesic_at_length(omega, ProjectivePoint(c), ProjectivePoint(mid), r));
        if (omega.is_interior_lift(t) || r < 1e-6) break;
      }
      truncated.push_back(t);
    }
  }
  std::vector<Vec> out = truncated;
  const int k = static_cast<int>(truncated.size());
  for (int i = 0; i < samples && k > 1; ++i) {
    Vec w = halton_point(static_cast<std::uint64_t>(i), k);
    w /= w.sum();
    Vec p = Vec::Zero(omega.dim());
    for (int j = 0; j < k; ++j) p += w(j) * truncated[static_cast<std::size_t>(j)];
    out.push_back(p / omega.chart().dot(p));
  }
  return out;
}

inline double one_sided(const ConvexDomain& omega, const std::vector<Vec>& from, const ConvexSubset& to, int& evals) {
  double best = 0.0;
  for (const auto& p : from) {
    best = std::max(best, distance_to_subset(omega, to, ProjectivePoint(p)).value);
    ++evals;
  }
  return best;
}

}  // namespace detail

/// Two-sided sup-inf estimate. The distance to a convex set is quasiconvex
/// (its sublevel sets are convex neighborhoods), so the sup over a hull is
/// taken at generators; ideal generators are approached to a finite reach.
inline HausdorffEstimate hausdorff_distance(const ConvexDomain& omega, const ConvexSubset& a, const ConvexSubset& b,
                                            const MetricConfig& cfg = {}) {
  if (a.generators().empty() || b.generators().empty()) throw Error(ErrorCode::EmptySubset, "Hausdorff distance of an empty subset");
  HausdorffEstimate est;
  est.reach = cfg.hausdorff_reach;
  double min_margin = kInf;
  auto at_reach = [&](double reach) {
    const auto pa = detail::hausdorff_probe_points(omega, a, reach, cfg.hausdorff_samples);
    const auto pb = detail::hausdorff_probe_points(omega, b, reach, cfg.hausdorff_samples);
    for (const auto* ps : {&pa, &pb})
      for (const auto& p : *ps) min_margin = std::min(min_margin, omega.margin(p));
    return std::max(detail::one_sided(omega, pa, b, est.evaluations), detail::one_sided(omega, pb, a, est.evaluations));
  };
  est.value = at_reach(cfg.hausdorff_reach);
  est.rounding = 16.0 * std::numeric_limits<double>::epsilon() / std::max(min_margin, 1e-300);
  est.resolution = std::abs(est.value - at_reach(std::max(cfg.hausdorff_reach - 1.0, 0.5 * cfg.hausdorff_reach))) + est.rounding;
  return est;
}

// ---------------------------------------------------------------------------
// Center of mass
// ---------------------------------------------------------------------------

struct CenterOfMassResult {
  ProjectivePoint point;
  /// Radii r_0, r_1, ... of the iteration.
  std::vector<double> radii;
  /// Dimension of each iterate C_0, C_1, ...
  std::vector<int> dimensions;
  double final_diameter = 0.0;
};

namespace detail {

/// Vertices of the bounded polytope {z : A z <= b}, by brute-force choice of
/// active rows. Candidates closer than `merge` are identified.
inline std::vector<Vec> enumerate_vertices(const Mat& a, const Vec& b, double tol, double merge) {
  const int k = static_cast<int>(a.cols());
  std::vector<Vec> out;
  for_each_combination(static_cast<int>(a.rows()), k, [&](const std::vector<int>& idx) {
    Mat sys(k, k);
    Vec rhs(k);
    for (int r = 0; r < k; ++r) {
      sys.row(r) = a.row(idx[static_cast<std::size_t>(r)]);
      rhs(r) = b(idx[static_cast<std::size_t>(r)]);
    }
    Eigen::FullPivLU<Mat> lu(sys);
    lu.setThreshold(1e-10);
    if (lu.rank() < k) return true;
    const Vec z = lu.solve(rhs);
    if ((a * z - b).maxCoeff() > tol) return true;
    for (const auto& w : out)
      if ((w - z).norm() <= merge) return true;
    out.push_back(z);
    return true;
  });
  return out;
}

inline double hilbert_diameter(const ConvexDomain& omega, const std::vector<Vec>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, distance_lifts(omega, pts[i], pts[j]));
  return best;
}

/// Homogeneous constraint rows a(rho) . p <= 0 describing C_n(r), rho = e^{2r},
/// for a polytope iterate with extreme points `extreme`: the hull of the
/// extreme points, then H(p,e) <= r for each e written through facet pairs as
/// f_j(p) f_k(e) - rho f_j(e) f_k(p) <= 0.
class IterateConstraints {
 public:
  IterateConstraints(const ConvexDomain& omega, const std::vector<Vec>& extreme, const Vec& origin, const Mat& basis)
      : origin_(origin), basis_(basis) {
    const Mat& f = omega.facets();
    // Hull of the extreme points, in affine coordinates lifted to [z; 1].
    const auto m = basis.cols();
    Mat pts(m + 1, static_cast<Eigen::Index>(extreme.size()));
    for (std::size_t i = 0; i < extreme.size(); ++i) {
      pts.col(static_cast<Eigen::Index>(i)).head(m) = basis.transpose() * (extreme[i] - origin);
      pts(m, static_cast<Eigen::Index>(i)) = 1.0;
    }
    const Mat hull = cone_facets(pts);
    for (Eigen::Index r = 0; r < hull.rows(); ++r) {
      fixed_a_.push_back(-hull.row(r).head(m).transpose());
      fixed_b_.push_back(hull(r, m));
    }
    for (const auto& e : extreme) {
      const Vec fe = f * e;
      for (Eigen::Index j = 0; j < f.rows(); ++j) {
        for (Eigen::Index k = 0; k < f.rows(); ++k) {
          if (j == k) continue;
          base_.push_back(fe(k) * f.row(j).transpose());
          scaled_.push_back(fe(j) * f.row(k).transpose());
        }
      }
    }
  }

  /// Rows (A, b) of {z : A z <= b} at the given rho, each row unit-normalized.
  /// Returns false when a row is constant and violated.
  bool rows(double rho, Mat& a, Vec& b) const {
    const auto m = basis_.cols();
    const auto total = static_cast<Eigen::Index>(fixed_a_.size() + base_.size());
    a.resize(total, m);
    b.resize(total);
    Eigen::Index n = 0;
    for (std::size_t i = 0; i < fixed_a_.size(); ++i) {
      const double s = fixed_a_[i].norm();
      if (s <= 1e-14) continue;
      a.row(n) = fixed_a_[i].transpose() / s;
      b(n++) = fixed_b_[i] / s;
    }
    bool ok = true;
    for (std::size_t i = 0; i < base_.size(); ++i) {
      const Vec r = base_[i] - rho * scaled_[i];
      const Vec rz = basis_.transpose() * r;
      const double rhs = -r.dot(origin_);
      const double s = rz.norm();
      if (s <= 1e-13 * r.norm()) {
        ok = ok && rhs >= -1e-13 * r.norm();
        continue;
      }
      a.row(n) = rz.transpose() / s;
      b(n++) = rhs / s;
    }
    a.conservativeResize(n, m);
    b.conservativeResize(n);
    return ok;
  }

  Vec point(const Vec& z) const { return origin_ + basis_ * z; }

 private:
  Vec origin_;
  Mat basis_;
  std::vector<Vec> fixed_a_;
  std::vector<double> fixed_b_;
  std::vector<Vec> base_;
  std::vector<Vec> scaled_;
};

/// Maximizes c.z over {A z <= b}; with `slack` set, maximizes a uniform
/// slack s (bounded by 1) instead and returns it as the last entry.
inline std::optional<Vec> small_lp(const Mat& a, const Vec& b, const Vec& c, bool slack) {
  const auto m = a.cols();
  LinearProgram lp;
  for (Eigen::Index i = 0; i < m; ++i) lp.add_variable(true);
  const int s = slack ? lp.add_variable(true) : -1;
  const auto nv = lp.num_variables();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    Vec row = Vec::Zero(nv);
    row.head(m) = a.row(r).transpose();
    if (slack) row(s) = 1.0;
    lp.add_constraint(row, LinearProgram::Sense::LessEq, b(r));
  }
  Vec cost = Vec::Zero(nv);
  if (slack) {
    Vec bound = Vec::Zero(nv);
    bound(s) = 1.0;
    lp.add_constraint(bound, LinearProgram::Sense::LessEq, 1.0);
    cost(s) = -1.0;
  } else {
    cost.head(m) = -c;
  }
  const LpResult res = lp.minimize(cost);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  return res.x;
}

inline CenterOfMassResult com_polytope(const ConvexDomain& omega, std::vector<Vec> extreme, const MetricConfig& cfg) {
  const int d = omega.dim();
  CenterOfMassResult result{ProjectivePoint(extreme.front()), {}, {}, 0.0};
  auto centroid = [&]() {
    Vec c = Vec::Zero(d);
    for (const auto& e : extreme) c += e;
    return Vec(c / omega.chart().dot(c));
  };
  for (int iter = 0; iter <= d; ++iter) {
    const Vec origin = centroid();
    Mat diffs(d, static_cast<Eigen::Index>(extreme.size()));
    double scale = 0.0;
    for (std::size_t i = 0; i < extreme.size(); ++i) {
      diffs.col(static_cast<Eigen::Index>(i)) = extreme[i] - origin;
      scale = std::max(scale, (extreme[i] - origin).norm());
    }
    const Mat basis = column_space(diffs, 1e-7);
    result.dimensions.push_back(static_cast<int>(basis.cols()));
    result.final_diameter = hilbert_diameter(omega, extreme);
    if (basis.cols() == 0 || result.final_diameter < cfg.com_radius_tolerance) {
      result.point = ProjectivePoint(origin);
      return result;
    }
    if (iter == d) break;

    const IterateConstraints cons(omega, extreme, origin, basis);
    Mat a;
    Vec b;
    auto slack_at = [&](double log_rho) {
      if (!cons.rows(std::exp(log_rho), a, b)) return -kInf;
      const auto x = small_lp(a, b, Vec(), true);
      return x ? (*x)(x->size() - 1) : -kInf;
    };
    // Smallest radius with a nonempty iterate, by bisection on log(rho).
    double lo = 0.0, hi = 2.0 * result.final_diameter + 1e-9;
    while (slack_at(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (slack_at(mid) >= 0.0 ? hi : lo) = mid;
    }
    result.radii.push_back(0.5 * hi);

    // The LP pins the threshold only to its own tolerance; work with a
    // slightly thickened iterate and read off its shape.
    const double log_rho = hi + 1e-10;
    cons.rows(std::exp(log_rho), a, b);
    const auto center = small_lp(a, b, Vec(), true);
    if (!center) throw Error(ErrorCode::NotConverged, "center of mass iterate became empty");
    const auto m = basis.cols();
    const Vec zc = center->head(m);
    // Extent probes are posed around the feasible center: with z = zc + u the
    // right-hand sides are nonnegative and phase one is trivial. Posed in z,
    // an iterate thinner than the solver's tolerance can read as infeasible.
    const Vec shifted = (b - a * zc).cwiseMax(0.0);
    Mat spread(m, 2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (int sgn = 0; sgn < 2; ++sgn) {
        const Vec dir = (sgn == 0 ? 1.0 : -1.0) * Vec::Unit(m, i);
        const auto u = small_lp(a, shifted, dir, false);
        if (!u) throw Error(ErrorCode::NotConverged, "center of mass iterate extent could not be probed");
        spread.col(2 * i + sgn) = *u;
      }
    }
    Eigen::JacobiSVD<Mat> svd(spread, Eigen::ComputeThinU);
    int keep = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-6 * std::max(scale, 1e-300)) ++keep;
    const Vec new_origin = cons.point(zc);
    extreme.clear();
    if (keep == 0) {
      extreme.push_back(new_origin / omega.chart().dot(new_origin));
      continue;
    }
    // Restrict to the affine span of the iterate and enumerate its vertices.
    const Mat sub = basis * svd.matrixU().leftCols(keep);
    Mat ra(a.rows(), keep);
    Vec rb(a.rows());
    Eigen::Index n = 0;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      const Vec row = svd.matrixU().leftCols(keep).transpose() * a.row(r).transpose();
      const double rhs = b(r) - a.row(r).dot(zc);
      if (row.norm() <= 1e-8) continue;
      ra.row(n) = row.transpose() / row.norm();
      rb(n++) = rhs / row.norm();
    }
    ra.conservativeResize(n, keep);
    rb.conservativeResize(n);
    for (const auto& w : enumerate_vertices(ra, rb, 1e-9, 1e-7 * scale)) {
      Vec p = new_origin + sub * w;
      extreme.push_back(p / omega.chart().dot(p));
    }
    if (extreme.empty()) throw Error(ErrorCode::NotConverged, "center of mass iterate has no vertices");
  }
  throw Error(ErrorCode::NotConverged, "center of mass did not reach diameter " + std::to_string(cfg.com_radius_tolerance) +
                                           " within " + std::to_string(d) + " iterations");
}

/// Minimal enclosing ball in the hyperbolic metric of an ellipsoid: the
/// unique minimizer of max_k H(p, k), found among circumcenters of support
/// subsets. The first Frankel step already collapses to this point because
/// hyperbolic balls are strictly convex.
inline CenterOfMassResult com_ellipsoid(const ConvexDomain& omega, const std::vector<Vec>& pts) {
  const Mat b = -omega.quadric();
  const int n = static_cast<int>(pts.size());
  std::vector<Vec> unit;
  for (const auto& p : pts) unit.push_back(p / std::sqrt(p.dot(b * p)));
  double best_r = kInf;
  Vec best;
  for (int k = 1; k <= std::min(n, omega.dim()); ++k) {
    for_each_combination(n, k, [&](const std::vector<int>& idx) {
      Mat gram(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gram(i, j) = unit[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].dot(b * unit[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
      Eigen::FullPivLU<Mat> lu(gram);
      if (lu.rank() < k) return true;
      const Vec lambda = lu.solve(Vec::Ones(k));
      if (lambda.minCoeff() < -1e-12 * lambda.cwiseAbs().maxCoeff()) return true;
      Vec c = Vec::Zero(omega.dim());
      for (int i = 0; i < k; ++i) c += lambda(i) * unit[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      const double cc = c.dot(b * c);
      if (!(cc > 0)) return true;
      c /= std::sqrt(cc);
      double radius = 0.0;
      for (const auto& u : unit) radius = std::max(radius, c.dot(b * u));
      const double support = c.dot(b * unit[static_cast<std::size_t>(idx[0])]);
      if (radius > support * (1 + 1e-12)) return true;
      if (radius < best_r) {
        best_r = radius;
        best = c;
      }
      return true;
    });
  }
  CenterOfMassResult res{ProjectivePoint(best), {std::acosh(std::max(best_r, 1.0))}, {}, 0.0};
  return res;
}

}  // namespace detail

inline CenterOfMassResult center_of_mass_detailed(const ConvexDomain& omega, const std::vector<ProjectivePoint>& k,
                                                  const MetricConfig& cfg = {}) {
  cfg.validate();
  if (k.empty()) throw Error(ErrorCode::EmptyInput, "center of mass of an empty set");
  std::vector<Vec> lifts;
  for (const auto& p : k) {
    const Vec l = detail::interior_lift_or_throw(omega, p, "center-of-mass input");
    bool dup = false;
    for (const auto& q : lifts) dup = dup || (q - l).norm() <= 1e-13 * l.norm();
    if (!dup) lifts.push_back(l);
  }
  if (lifts.size() == 1) return CenterOfMassResult{ProjectivePoint(lifts.front()), {0.0}, {0}, 0.0};
  if (!omega.is_polytope()) return detail::com_ellipsoid(omega, lifts);
  // Extreme points of ConvHull(K).
  std::vector<Vec> extreme;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < lifts.size(); ++j)
      if (j != i) others.push_back(lifts[j]);
    if (cone_membership_residual(columns_of(others), lifts[i]) > 1e-10) extreme.push_back(lifts[i]);
  }
  return detail::com_polytope(omega, extreme, cfg);
}

inline ProjectivePoint center_of_mass(const ConvexDomain& omega, const std::vector<ProjectivePoint>& k, const MetricConfig& cfg = {}) {
  return center_of_mass_detailed(omega, k, cfg).point;
}

}  // namespace hflat
