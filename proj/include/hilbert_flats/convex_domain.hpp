#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilbert_flats/error.hpp"
#include "hilbert_flats/linalg.hpp"
#include "hilbert_flats/projective.hpp"

namespace hflat {

enum class DomainKind { Polytope, Ellipsoid };
enum class Location { Interior, Boundary, Outside };

inline const char* location_name(Location loc) {
  switch (loc) {
    case Location::Interior: return "interior";
    case Location::Boundary: return "boundary";
    case Location::Outside: return "outside";
  }
  return "?";
}

struct Classification {
  Location location = Location::Outside;
  /// Facets whose functional vanishes at the point (polytope, boundary only).
  std::vector<int> active_facets;
  /// Normalized quadric value (ellipsoid only); negative inside.
  double quadric_residual = 0.0;
  /// Signed distance-like margin: min facet value or -quadric value.
  double margin = 0.0;
};

/// Affine parametrization of the chart hyperplane {chart · x = 1}.
struct ChartFrame {
  Vec origin;  // chart-normalized interior point
  Mat basis;   // d x (d-1), orthonormal, orthogonal to the chart functional

  Vec lift(const Vec& u) const { return origin + basis * u; }
  Vec coords(const Vec& x_hat) const { return basis.transpose() * (x_hat - origin); }
};

/// A properly convex open domain of P(R^d): a polytope given by the lifts
/// of its vertices, or an ellipsoid given by a quadric of signature (d-1,1).
///
/// Both kinds carry an affine chart functional that is strictly positive on
/// the closed domain; every lift the class hands out is normalized so the
/// chart functional equals 1.
class ConvexDomain {
 public:
  static constexpr double kDefaultBoundaryTolerance = 1e-10;

  /// Polytope spanned by vertex lifts, which must all lie in one open
  /// half-space (a consistent choice of signs). Non-extreme and duplicate
  /// lifts are dropped.
  static ConvexDomain polytope(const std::vector<Vec>& lifts, double boundary_tol = kDefaultBoundaryTolerance) {
    if (lifts.size() < 2) throw Error(ErrorCode::ValidationError, "polytope needs at least 2 vertices");
    const Eigen::Index d = lifts.front().size();
    if (d < 2) throw Error(ErrorCode::ValidationError, "ambient dimension must be >= 2");
    for (std::size_t i = 0; i < lifts.size(); ++i) {
      if (lifts[i].size() != d) throw Error(ErrorCode::ValidationError, "vertex " + std::to_string(i) + " has wrong length");
      if (!lifts[i].allFinite() || lifts[i].norm() == 0.0)
        throw Error(ErrorCode::ValidationError, "vertex " + std::to_string(i) + " is zero or non-finite");
    }
    Mat gens = columns_of(lifts);
    for (Eigen::Index j = 0; j < gens.cols(); ++j) gens.col(j).normalize();
    if (numeric_rank(gens, 1e-10) < d) throw Error(ErrorCode::ValidationError, "domain has empty interior: vertices do not span R^d");

    // Proper convexity: some functional is >= 1 on every (unit) vertex lift.
    {
      LinearProgram lp;
      for (Eigen::Index k = 0; k < d; ++k) lp.add_variable(true);
      for (Eigen::Index j = 0; j < gens.cols(); ++j)
        lp.add_constraint(gens.col(j), LinearProgram::Sense::GreaterEq, 1.0);
      const LpResult res = lp.minimize(Vec::Zero(d));
      if (res.status != LpStatus::Optimal) {
        const Vec mean = gens.rowwise().mean();
        std::string which;
        for (Eigen::Index j = 0; j < gens.cols(); ++j) {
          if (mean.dot(gens.col(j)) <= 0.0) {
            which = " (vertex " + std::to_string(j) + " non-positive under chart)";
            break;
          }
        }
        throw Error(ErrorCode::ValidationError, "domain not properly convex: vertex lifts do not lie in an open half-space" + which);
      }
    }

    ConvexDomain dom;
    dom.kind_ = DomainKind::Polytope;
    dom.dim_ = static_cast<int>(d);
    dom.boundary_tol_ = boundary_tol;
    dom.facets_ = cone_facets(gens);
    dom.chart_ = dom.facets_.colwise().sum().transpose();
    dom.chart_.normalize();

    // Keep extreme, distinct vertices in input order.
    for (Eigen::Index j = 0; j < gens.cols(); ++j) {
      const Vec v = gens.col(j) / dom.chart_.dot(gens.col(j));
      const Vec vals = dom.facets_ * v / v.norm();
      std::vector<Eigen::Index> active;
      for (Eigen::Index f = 0; f < vals.size(); ++f)
        if (std::abs(vals(f)) <= 1e-9) active.push_back(f);
      Mat act(static_cast<Eigen::Index>(active.size()), d);
      for (std::size_t a = 0; a < active.size(); ++a) act.row(static_cast<Eigen::Index>(a)) = dom.facets_.row(active[a]);
      if (active.empty() || numeric_rank(act, 1e-9) < d - 1) continue;
      bool dup = false;
      for (const auto& w : dom.vertices_) dup = dup || (w - v).norm() <= 1e-9 * v.norm();
      if (!dup) dom.vertices_.push_back(v);
    }
    dom.build_frame();
    return dom;
  }

  /// Ellipsoid {[u:1] : (u-c)^T M (u-c) < 1} in the standard chart x_d = 1.
  static ConvexDomain ellipsoid(const Vec& center, const Mat& shape, double boundary_tol = kDefaultBoundaryTolerance) {
    const Eigen::Index n = center.size();
    if (n < 1 || shape.rows() != n || shape.cols() != n)
      throw Error(ErrorCode::ValidationError, "ellipsoid center/shape dimensions disagree");
    if ((shape - shape.transpose()).norm() > 1e-12 * std::max(1.0, shape.norm()))
      throw Error(ErrorCode::ValidationError, "ellipsoid shape matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(shape);
    if (es.eigenvalues().minCoeff() <= 0.0) throw Error(ErrorCode::ValidationError, "ellipsoid shape matrix must be positive definite");
    Mat q(n + 1, n + 1);
    q.topLeftCorner(n, n) = shape;
    q.topRightCorner(n, 1) = -shape * center;
    q.bottomLeftCorner(1, n) = -(shape * center).transpose();
    q(n, n) = center.dot(shape * center) - 1.0;
    Vec p0(n + 1);
    p0 << center, 1.0;
    return from_quadric(q, p0, boundary_tol);
  }

  /// Domain {q(x) < 0} for a symmetric form of signature (d-1, 1), taking
  /// the component containing `interior_point`.
  static ConvexDomain from_quadric(const Mat& quadric, const Vec& interior_point, double boundary_tol = kDefaultBoundaryTolerance) {
    const Eigen::Index d = quadric.rows();
    if (d < 2 || quadric.cols() != d || interior_point.size() != d)
      throw Error(ErrorCode::ValidationError, "quadric dimensions disagree");
    Mat q = 0.5 * (quadric + quadric.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(q);
    const Vec ev = es.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    if (scale == 0.0) throw Error(ErrorCode::ValidationError, "quadric is zero");
    int neg = 0, pos = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (ev(i) < -1e-12 * scale) ++neg;
      if (ev(i) > 1e-12 * scale) ++pos;
    }
    if (neg != 1 || pos != d - 1) throw Error(ErrorCode::ValidationError, "quadric must have signature (d-1,1) to bound a properly convex domain");
    q /= scale;
    Vec p = interior_point;
    if (p.dot(q * p) >= 0.0) throw Error(ErrorCode::ValidationError, "ellipsoid reference point is not interior");
    ConvexDomain dom;
    dom.kind_ = DomainKind::Ellipsoid;
    dom.dim_ = static_cast<int>(d);
    dom.boundary_tol_ = boundary_tol;
    dom.quadric_ = q;
    dom.chart_ = -(q * p);
    dom.chart_.normalize();
    dom.center_ = p / dom.chart_.dot(p);
    dom.build_frame();
    return dom;
  }

  DomainKind kind() const { return kind_; }
  bool is_polytope() const { return kind_ == DomainKind::Polytope; }
  /// Ambient dimension d of P(R^d); the domain itself has dimension d-1.
  int dim() const { return dim_; }
  double boundary_tolerance() const { return boundary_tol_; }
  const Vec& chart() const { return chart_; }
  const ChartFrame& frame() const { return frame_; }

  /// Chart-normalized vertex lifts (polytope only).
  const std::vector<Vec>& vertex_lifts() const { return vertices_; }
  std::vector<ProjectivePoint> vertices() const {
    std::vector<ProjectivePoint> out;
    for (const auto& v : vertices_) out.emplace_back(v);
    return out;
  }
  /// Unit facet functionals as rows (polytope only).
  const Mat& facets() const { return facets_; }
  /// Quadric form normalized to unit spectral radius (ellipsoid only).
  const Mat& quadric() const { return quadric_; }

  /// Chart-normalized interior reference point (vertex centroid or center).
  Vec reference_lift() const { return frame_.origin; }
  ProjectivePoint reference_point() const { return ProjectivePoint(frame_.origin); }

  /// Chart-normalized representative, or nullopt on the chart's line at infinity.
  std::optional<Vec> try_lift(const Vec& x) const {
    const double s = chart_.dot(x);
    if (std::abs(s) <= 1e-13 * x.norm()) return std::nullopt;
    return Vec(x / s);
  }

  Vec lift(const ProjectivePoint& p) const {
    check_dim(p.dim());
    auto l = try_lift(p.coords());
    if (!l) throw Error(ErrorCode::OutsideDomain, "point lies outside the affine chart of the domain");
    return *l;
  }

  Classification classify_lift(const Vec& x_hat) const {
    Classification c;
    const double nrm = x_hat.norm();
    if (kind_ == DomainKind::Polytope) {
      const Vec vals = facets_ * x_hat / nrm;
      c.margin = vals.minCoeff();
      if (c.margin > boundary_tol_) {
        c.location = Location::Interior;
      } else if (c.margin < -boundary_tol_) {
        c.location = Location::Outside;
      } else {
        c.location = Location::Boundary;
        for (Eigen::Index j = 0; j < vals.size(); ++j)
          if (std::abs(vals(j)) <= boundary_tol_) c.active_facets.push_back(static_cast<int>(j));
      }
    } else {
      c.quadric_residual = x_hat.dot(quadric_ * x_hat) / (nrm * nrm);
      c.margin = -c.quadric_residual;
      if (c.quadric_residual < -boundary_tol_) {
        c.location = Location::Interior;
      } else if (c.quadric_residual > boundary_tol_) {
        c.location = Location::Outside;
      } else {
        c.location = Location::Boundary;
      }
    }
    return c;
  }

  Classification classify(const ProjectivePoint& p) const {
    check_dim(p.dim());
    auto l = try_lift(p.coords());
    if (!l) return Classification{};
    return classify_lift(*l);
  }

  Location contains(const ProjectivePoint& p) const { return classify(p).location; }
  bool is_interior(const ProjectivePoint& p) const { return contains(p) == Location::Interior; }
  bool is_interior_lift(const Vec& x_hat) const { return classify_lift(x_hat).location == Location::Interior; }

  /// Margin of a chart-normalized lift: distance-like, positive inside.
  double margin(const Vec& x_hat) const { return classify_lift(x_hat).margin; }

  /// Parameters (t_a, t_b), t_a < 0 < 1 < t_b, where the line x + t (y - x)
  /// through chart-normalized interior lifts leaves the closed domain.
  std::pair<double, double> chord_parameters(const Vec& x_hat, const Vec& y_hat) const {
    return chord_parameters_in(x_hat, y_hat, {});
  }

  /// Same as chord_parameters, ignoring the listed facets (used for chords
  /// inside a face, where those facets vanish identically).
  std::pair<double, double> chord_parameters_in(const Vec& x_hat, const Vec& y_hat, const std::vector<int>& skip) const {
    const Vec v = y_hat - x_hat;
    double ta = -kInf, tb = kInf;
    if (kind_ == DomainKind::Polytope) {
      for (Eigen::Index j = 0; j < facets_.rows(); ++j) {
        if (std::find(skip.begin(), skip.end(), static_cast<int>(j)) != skip.end()) continue;
        const double fx = facets_.row(j).dot(x_hat);
        const double fv = facets_.row(j).dot(v);
        if (fv < 0) tb = std::min(tb, fx / -fv);
        if (fv > 0) ta = std::max(ta, -fx / fv);
      }
    } else {
      const double qx = x_hat.dot(quadric_ * x_hat);
      const double bxv = x_hat.dot(quadric_ * v);
      const double qv = v.dot(quadric_ * v);
      if (qv <= 0.0) throw Error(ErrorCode::DegenerateConfiguration, "chord direction is not spacelike");
      const double disc = std::sqrt(std::max(bxv * bxv - qx * qv, 0.0));
      // Roots of qv t^2 + 2 bxv t + qx = 0, computed without cancellation.
      const double qq = -(bxv + std::copysign(disc, bxv));
      const double r1 = qq / qv;
      const double r2 = qq != 0.0 ? qx / qq : 0.0;
      ta = std::min(r1, r2);
      tb = std::max(r1, r2);
    }
    return {ta, tb};
  }

  /// Image gΩ under a projective map.
  ConvexDomain transformed(const ProjectiveMap& g) const {
    check_dim(g.dim());
    if (kind_ == DomainKind::Polytope) {
      std::vector<Vec> imgs;
      // A linear image of a pointed cone is pointed, so signs stay consistent.
      for (const auto& v : vertices_) imgs.push_back(g.matrix() * v);
      return polytope(imgs, boundary_tol_);
    }
    const Mat ginv = g.matrix().inverse();
    return from_quadric(ginv.transpose() * quadric_ * ginv, g.matrix() * center_, boundary_tol_);
  }

  void check_dim(int d) const {
    if (d != dim_) throw Error(ErrorCode::LengthMismatch, "point dimension " + std::to_string(d) + " does not match domain dimension " + std::to_string(dim_));
  }

 private:
  ConvexDomain() = default;

  void build_frame() {
    if (kind_ == DomainKind::Polytope) {
      Vec c = Vec::Zero(dim_);
      for (const auto& v : vertices_) c += v;
      frame_.origin = c / static_cast<double>(vertices_.size());
    } else {
      frame_.origin = center_;
    }
    Mat row(1, dim_);
    row.row(0) = chart_.transpose();
    frame_.basis = null_space(row, 1e-12);
  }

  DomainKind kind_ = DomainKind::Polytope;
  int dim_ = 0;
  double boundary_tol_ = kDefaultBoundaryTolerance;
  Vec chart_;
  ChartFrame frame_;
  std::vector<Vec> vertices_;
  Mat facets_;
  Mat quadric_;
  Vec center_;
};

// ---------------------------------------------------------------------------
// Chords
// ---------------------------------------------------------------------------

struct Chord {
  ProjectivePoint a;
  ProjectivePoint b;
  double t_a;  // affine parameters along x + t (y - x), chart-normalized lifts
  double t_b;
};

/// The two boundary points of the line through x and y, ordered a, x, y, b.
inline Chord chord_endpoints(const ConvexDomain& omega, const ProjectivePoint& x, const ProjectivePoint& y) {
  if (x.approx_equal(y, 1e-12)) throw Error(ErrorCode::CoincidentPoints, "chord through coincident points");
  const Vec xh = omega.lift(x);
  const Vec yh = omega.lift(y);
  if (!omega.is_interior_lift(xh) || !omega.is_interior_lift(yh))
    throw Error(ErrorCode::NotInterior, "chord endpoints requested for a non-interior point");
  const auto [ta, tb] = omega.chord_parameters(xh, yh);
  const Vec v = yh - xh;
  return Chord{ProjectivePoint(Vec(xh + ta * v)), ProjectivePoint(Vec(xh + tb * v)), ta, tb};
}

// ---------------------------------------------------------------------------
// Faces
// ---------------------------------------------------------------------------

/// The open face F_Ω(x): relatively open convex subset of ∂Ω (or Ω itself).
struct Face {
  ProjectivePoint base_point;
  bool is_domain = false;
  std::vector<int> active_facets;
  Mat span;                        // orthonormal basis, d x (dimension + 1)
  std::vector<Vec> vertex_lifts;   // closed-face vertices (polytope)
  int dimension = 0;
  std::vector<ProjectivePoint> relative_interior_sample;
};

inline Face open_face(const ConvexDomain& omega, const ProjectivePoint& x) {
  const Classification c = omega.classify(x);
  if (c.location == Location::Outside) throw Error(ErrorCode::OutsideDomain, "open face requested for a point outside the closed domain");
  const int d = omega.dim();
  Face f{x, false, {}, Mat(), {}, 0, {}};
  if (c.location == Location::Interior) {
    f.is_domain = true;
    f.span = Mat::Identity(d, d);
    f.dimension = d - 1;
    f.vertex_lifts = omega.vertex_lifts();
    f.relative_interior_sample.push_back(x);
    f.relative_interior_sample.push_back(omega.reference_point());
    return f;
  }
  if (!omega.is_polytope()) {
    f.span = x.coords();
    f.dimension = 0;
    f.relative_interior_sample.push_back(x);
    return f;
  }
  f.active_facets = c.active_facets;
  for (const auto& v : omega.vertex_lifts()) {
    bool on = true;
    for (int j : f.active_facets) on = on && std::abs(omega.facets().row(j).dot(v)) <= 1e-9 * v.norm();
    if (on) f.vertex_lifts.push_back(v);
  }
  f.span = column_space(columns_of(f.vertex_lifts), 1e-9);
  f.dimension = static_cast<int>(f.span.cols()) - 1;
  Vec centroid = Vec::Zero(d);
  for (const auto& v : f.vertex_lifts) centroid += v;
  centroid /= static_cast<double>(f.vertex_lifts.size());
  f.relative_interior_sample.emplace_back(centroid);
  if (f.dimension > 0) {
    for (const auto& v : f.vertex_lifts) f.relative_interior_sample.emplace_back(Vec(0.5 * (centroid + v)));
  }
  return f;
}

/// Whether y ∈ F_Ω(x) for the face computed by open_face.
inline bool in_face(const ConvexDomain& omega, const Face& face, const ProjectivePoint& y) {
  const Classification c = omega.classify(y);
  if (face.is_domain) return c.location == Location::Interior;
  if (c.location != Location::Boundary) return false;
  if (!omega.is_polytope()) return y.approx_equal(face.base_point, 1e-8);
  return c.active_facets == face.active_facets;
}

/// Hilbert distance inside an open face (the face is a properly convex set
/// open in its span). Zero for coincident points.
inline double face_distance(const ConvexDomain& omega, const Face& face, const ProjectivePoint& p, const ProjectivePoint& q) {
  if (!in_face(omega, face, p) || !in_face(omega, face, q))
    throw Error(ErrorCode::FaceMembershipViolated, "face distance between points outside the face");
  if (p.approx_equal(q, 1e-13)) return 0.0;
  if (!omega.is_polytope() && !face.is_domain) return 0.0;
  const Vec ph = omega.lift(p);
  const Vec qh = omega.lift(q);
  const auto [ta, tb] = omega.chord_parameters_in(ph, qh, face.active_facets);
  return 0.5 * (std::log1p(1.0 / (tb - 1.0)) + std::log1p(1.0 / (-ta)));
}

// ---------------------------------------------------------------------------
// Convex subsets
// ---------------------------------------------------------------------------

/// A convex subset given by generators (V-representation): the hull of the
/// generators, taken in the ambient chart. Generators may lie on ∂Ω.
class ConvexSubset {
 public:
  ConvexSubset() = default;

  /// `lifts` must be chart-normalized lifts with respect to the ambient.
  explicit ConvexSubset(std::vector<Vec> lifts) : generators_(std::move(lifts)) {
    if (generators_.empty()) throw Error(ErrorCode::EmptyInput, "convex subset needs at least one generator");
    span_ = column_space(columns_of(generators_), 1e-9);
    span_dim_ = static_cast<int>(span_.cols()) - 1;
    if (span_dim_ >= 1) {
      Mat w = span_.transpose() * columns_of(generators_);
      span_facets_ = cone_facets(w);
    }
  }

  const std::vector<Vec>& generators() const { return generators_; }
  std::vector<ProjectivePoint> points() const {
    std::vector<ProjectivePoint> out;
    for (const auto& g : generators_) out.emplace_back(g);
    return out;
  }
  int span_dim() const { return span_dim_; }
  /// Orthonormal basis of the linear span of the generators.
  const Mat& span() const { return span_; }
  /// Facets of the generator cone in span coordinates (rows).
  const Mat& span_facets() const { return span_facets_; }

  Vec centroid() const {
    Vec c = Vec::Zero(generators_.front().size());
    for (const auto& g : generators_) c += g;
    return c / static_cast<double>(generators_.size());
  }

  /// Fast closed-hull membership through the cached facets.
  bool contains_lift(const Vec& x_hat, double tol = 1e-9) const {
    const Vec w = span_.transpose() * x_hat;
    if ((span_ * w - x_hat).norm() > tol * x_hat.norm()) return false;
    if (span_dim_ == 0) return true;
    return (span_facets_ * w / w.norm()).minCoeff() >= -tol;
  }

  /// L1 residual of the best nonnegative combination of generators
  /// reproducing x_hat (linear program); zero iff x_hat is in the hull.
  double membership_residual(const Vec& x_hat) const {
    return cone_membership_residual(columns_of(generators_), x_hat);
  }

 private:
  std::vector<Vec> generators_;
  Mat span_;
  Mat span_facets_;
  int span_dim_ = 0;
};

/// Smallest convex subset of the closed domain containing X; generators are
/// the extreme points of X.
inline ConvexSubset convex_hull(const ConvexDomain& omega, const std::vector<ProjectivePoint>& points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "convex hull of an empty set");
  std::vector<Vec> lifts;
  for (const auto& p : points) {
    const Classification c = omega.classify(p);
    if (c.location == Location::Outside) throw Error(ErrorCode::OutsideDomain, "hull generator outside the closed domain");
    const Vec l = omega.lift(p);
    bool dup = false;
    for (const auto& q : lifts) dup = dup || (q - l).norm() <= 1e-12 * l.norm();
    if (!dup) lifts.push_back(l);
  }
  std::vector<Vec> extreme;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < lifts.size(); ++j)
      if (j != i) others.push_back(lifts[j]);
    if (others.empty() || cone_membership_residual(columns_of(others), lifts[i]) > 1e-10 * lifts[i].norm())
      extreme.push_back(lifts[i]);
  }
  return ConvexSubset(std::move(extreme));
}

/// Whether the relatively open hull of S is properly embedded in Ω, i.e.
/// every point of its relative boundary lies on ∂Ω. Checked exactly for
/// polytopal subsets: each facet of the hull must have its centroid on ∂Ω
/// (a convex set whose relative interior touches ∂Ω lies in ∂Ω).
inline bool properly_embedded(const ConvexDomain& omega, const ConvexSubset& s) {
  if (!omega.is_interior_lift(s.centroid())) return false;
  if (s.span_dim() == 0) return true;
  const Mat w = s.span().transpose() * columns_of(s.generators());
  const Mat& facets = s.span_facets();
  for (Eigen::Index f = 0; f < facets.rows(); ++f) {
    Vec c = Vec::Zero(omega.dim());
    int count = 0;
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (std::abs(facets.row(f).dot(w.col(j))) <= 1e-9 * w.col(j).norm()) {
        c += s.generators()[static_cast<std::size_t>(j)];
        ++count;
      }
    }
    if (count == 0) continue;
    c /= count;
    if (omega.classify_lift(c).location != Location::Boundary) return false;
  }
  return true;
}

struct FaceLineResult {
  bool pq_inside = false;
  bool xy_inside = false;
  bool holds() const { return pq_inside == xy_inside; }
};

/// Whether the open segment between two chart-normalized lifts lies in Ω,
/// judged on interior sample parameters.
inline bool open_segment_inside(const ConvexDomain& omega, const Vec& p, const Vec& q) {
  if ((p - q).norm() <= 1e-12 * p.norm()) return false;
  for (int i = 1; i <= 9; ++i) {
    const double s = i / 10.0;
    if (!omega.is_interior_lift((1 - s) * p + s * q)) return false;
  }
  return true;
}

/// For p ∈ F_Ω(x), q ∈ F_Ω(y): (p,q) ⊂ Ω exactly when (x,y) ⊂ Ω.
inline FaceLineResult face_line_property(const ConvexDomain& omega, const ProjectivePoint& x, const ProjectivePoint& y,
                                         const ProjectivePoint& p, const ProjectivePoint& q) {
  const Face fx = open_face(omega, x);
  const Face fy = open_face(omega, y);
  if (!in_face(omega, fx, p)) throw Error(ErrorCode::FaceMembershipViolated, "p is not in the open face of x");
  if (!in_face(omega, fy, q)) throw Error(ErrorCode::FaceMembershipViolated, "q is not in the open face of y");
  FaceLineResult r;
  r.pq_inside = open_segment_inside(omega, omega.lift(p), omega.lift(q));
  r.xy_inside = open_segment_inside(omega, omega.lift(x), omega.lift(y));
  return r;
}

}  // namespace hflat
