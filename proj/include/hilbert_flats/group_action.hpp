#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hilbert_flats/convex_domain.hpp"
#include "hilbert_flats/error.hpp"
#include "hilbert_flats/hilbert_metric.hpp"
#include "hilbert_flats/linalg.hpp"
#include "hilbert_flats/projective.hpp"

namespace hflat {

struct SamplingConfig {
  int grid_samples = 10000;
  int refine_starts = 4;
  int refine_iterations = 400;
  double epsilon_min = 1e-6;
  int hull_samples = 400;
  double accumulation_margin = 1e-6;
  /// Sample points keep at least this facet/quadric margin. The domain's
  /// facets are only known to ~1e-14, so at margin m a displacement carries
  /// about 1e-14/m of error; 1e-4 keeps that near 1e-10.
  double interior_margin = 1e-4;
  std::uint64_t seed = 1;

  void validate() const {
    if (grid_samples < 1 || refine_starts < 0 || refine_iterations < 0 || hull_samples < 0)
      throw Error(ErrorCode::ValidationError, "sampling counts must be nonnegative (grid_samples >= 1)");
    if (!(epsilon_min > 0) || !(accumulation_margin > 0) || !(interior_margin >= 0))
      throw Error(ErrorCode::ValidationError, "sampling tolerances must be positive");
  }
};

// ---------------------------------------------------------------------------
// Automorphisms and translation lengths
// ---------------------------------------------------------------------------

/// Structural test of gΩ = Ω. Polytopes: g permutes the vertex rays with a
/// common sign. Ellipsoids: gᵀQg is a positive multiple of Q.
inline bool is_automorphism(const ConvexDomain& omega, const ProjectiveMap& g, double tol = 1e-9) {
  if (g.dim() != omega.dim()) return false;
  const Mat& m = g.matrix();
  if (!omega.is_polytope()) {
    const Mat& q = omega.quadric();
    const Mat t = m.transpose() * q * m;
    const double c = t.cwiseProduct(q).sum() / q.squaredNorm();
    return c > 0 && (t - c * q).norm() <= tol * t.norm();
  }
  const auto& vs = omega.vertex_lifts();
  std::vector<bool> hit(vs.size(), false);
  double sign = 0.0;
  for (const auto& v : vs) {
    const Vec w = m * v;
    const ProjectivePoint pw(w);
    bool matched = false;
    for (std::size_t j = 0; j < vs.size() && !matched; ++j) {
      if (hit[j] || !pw.approx_equal(ProjectivePoint(vs[j]), tol)) continue;
      const double s = w.dot(vs[j]) > 0 ? 1.0 : -1.0;
      if (sign == 0.0) sign = s;
      if (s != sign) return false;
      hit[j] = true;
      matched = true;
    }
    if (!matched) return false;
  }
  return true;
}

/// (1/2) log(λ_1/λ_d) from the eigenvalue moduli.
inline double translation_length(const ProjectiveMap& g) {
  const Vec& m = g.spectrum();
  if (!(m(m.size() - 1) > 0)) throw Error(ErrorCode::EigenSolverFailure, "vanishing eigenvalue modulus");
  return 0.5 * std::log(m(0) / m(m.size() - 1));
}

inline double displacement(const ConvexDomain& omega, const ProjectiveMap& g, const ProjectivePoint& x) {
  return hilbert_distance(omega, x, g.apply(x));
}

namespace detail {
inline double displacement_lift(const ConvexDomain& omega, const ProjectiveMap& g, const Vec& x_hat) {
  const auto gx = omega.try_lift(g.matrix() * x_hat);
  if (!gx) throw Error(ErrorCode::OutsideDomain, "image left the affine chart");
  return distance_lifts(omega, x_hat, *gx);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Groups
// ---------------------------------------------------------------------------

struct GroupSpec {
  std::vector<ProjectiveMap> generators;
  std::vector<std::string> labels;
  bool commuting = false;
  ConvexDomain ambient;
  std::optional<ConvexSubset> invariant_subset;

  int dim() const { return ambient.dim(); }
};

inline bool all_commute(const std::vector<ProjectiveMap>& gens, double tol = 1e-10) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (commutator_residual(gens[i], gens[j]) > tol) return false;
  return true;
}

/// Validated group: every generator preserves the ambient domain and the
/// invariant subset, and `commuting` records the pairwise commutator test.
inline GroupSpec make_group(ConvexDomain ambient, std::vector<ProjectiveMap> gens, std::vector<std::string> labels = {},
                            std::optional<ConvexSubset> subset = std::nullopt) {
  if (labels.empty())
    for (std::size_t i = 0; i < gens.size(); ++i) labels.push_back("a" + std::to_string(i + 1));
  if (labels.size() != gens.size()) throw Error(ErrorCode::LengthMismatch, "group labels and generators differ in count");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].dim() != ambient.dim())
      throw Error(ErrorCode::LengthMismatch, "generator " + labels[i] + " has the wrong dimension");
    if (!is_automorphism(ambient, gens[i]))
      throw Error(ErrorCode::ValidationError, "generator " + labels[i] + " does not preserve the domain");
  }
  if (subset) {
    for (const auto& v : subset->generators()) {
      if (v.size() != ambient.dim()) throw Error(ErrorCode::LengthMismatch, "invariant subset has the wrong dimension");
      if (ambient.classify_lift(v).location == Location::Outside)
        throw Error(ErrorCode::ValidationError, "invariant subset leaves the closed domain");
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (const auto& v : subset->generators()) {
        const auto w = ambient.try_lift(gens[i].matrix() * v);
        if (!w || !subset->contains_lift(*w, 1e-8))
          throw Error(ErrorCode::ValidationError, "generator " + labels[i] + " does not preserve the invariant subset");
      }
    }
  }
  GroupSpec g{std::move(gens), std::move(labels), false, std::move(ambient), std::move(subset)};
  g.commuting = all_commute(g.generators);
  return g;
}

// ---------------------------------------------------------------------------
// Sampling regions
// ---------------------------------------------------------------------------

/// Parametrized interior region: the whole domain (chart coordinates, Halton
/// grid in a bounding box) or a convex subset (softmax weights on its
/// generators, Dirichlet-distributed Halton grid).
class SampleRegion {
 public:
  static SampleRegion whole(const ConvexDomain& omega, double min_margin = 0.0) {
    SampleRegion r(omega, min_margin);
    const int k = omega.dim() - 1;
    r.lo_ = Vec::Zero(k);
    r.hi_ = Vec::Zero(k);
    if (omega.is_polytope()) {
      r.lo_ = Vec::Constant(k, kInf);
      r.hi_ = Vec::Constant(k, -kInf);
      for (const auto& v : omega.vertex_lifts()) {
        const Vec u = omega.frame().coords(v / omega.chart().dot(v));
        r.lo_ = r.lo_.cwiseMin(u);
        r.hi_ = r.hi_.cwiseMax(u);
      }
    } else {
      Mat f(omega.dim(), omega.dim());
      f << omega.frame().origin, omega.frame().basis;
      const Mat m = f.transpose() * omega.quadric() * f;
      const Mat a = m.bottomRightCorner(k, k);
      const Vec b = m.col(0).tail(k);
      const Mat ainv = a.inverse();
      const Vec u0 = -ainv * b;
      const double rhs = b.dot(ainv * b) - m(0, 0);
      for (int i = 0; i < k; ++i) {
        const double h = std::sqrt(std::max(rhs * ainv(i, i), 0.0));
        r.lo_(i) = u0(i) - h;
        r.hi_(i) = u0(i) + h;
      }
    }
    return r;
  }

  static SampleRegion subset(const ConvexDomain& omega, const ConvexSubset& c, double min_margin = 0.0) {
    SampleRegion r(omega, min_margin);
    r.subset_ = c.generators();
    return r;
  }

  bool is_subset() const { return !subset_.empty(); }
  int param_dim() const { return is_subset() ? static_cast<int>(subset_.size()) : static_cast<int>(lo_.size()); }

  /// Chart-normalized interior lift for a parameter, if interior.
  std::optional<Vec> point(const Vec& param) const {
    Vec x;
    if (is_subset()) {
      const Vec e = (param.array() - param.maxCoeff()).exp();
      x = Vec::Zero(omega_->dim());
      for (std::size_t i = 0; i < subset_.size(); ++i) x += e(static_cast<Eigen::Index>(i)) * subset_[i];
      x /= omega_->chart().dot(x);
    } else {
      x = omega_->frame().lift(param);
    }
    const Classification c = omega_->classify_lift(x);
    if (c.location != Location::Interior || c.margin <= min_margin_) return std::nullopt;
    return x;
  }

  /// Up to n interior sample parameters from a deterministic Halton stream.
  std::vector<Vec> grid(int n, std::uint64_t seed) const {
    std::vector<Vec> out;
    const int k = param_dim();
    const std::uint64_t offset = 1 + 7919 * seed;
    if (k == 0 || (is_subset() && k == 1)) {
      const Vec p = Vec::Zero(k);
      if (point(p)) out.push_back(p);
      return out;
    }
    const std::uint64_t max_tries = 64ull * static_cast<std::uint64_t>(n) + 1000;
    for (std::uint64_t i = 0; i < max_tries && static_cast<int>(out.size()) < n; ++i) {
      const Vec h = halton_point(i, k, offset);
      Vec p(k);
      if (is_subset()) {
        // Exponential spacings give uniform Dirichlet weights; θ = log w.
        for (int j = 0; j < k; ++j) p(j) = std::log(-std::log(std::clamp(h(j), 1e-300, 1.0 - 1e-16)));
      } else {
        p = lo_.array() + h.array() * (hi_ - lo_).array();
      }
      if (point(p)) out.push_back(p);
    }
    return out;
  }

 private:
  SampleRegion(const ConvexDomain& omega, double min_margin) : omega_(&omega), min_margin_(min_margin) {}
  const ConvexDomain* omega_;
  double min_margin_;
  Vec lo_, hi_;
  std::vector<Vec> subset_;
};

namespace detail {

/// Nelder–Mead on a function that may return +inf outside its domain.
inline Vec nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0, double step, int iterations) {
  const auto n = x0.size();
  if (n == 0 || iterations <= 0) return x0;
  std::vector<Vec> simplex{x0};
  for (Eigen::Index i = 0; i < n; ++i) simplex.push_back(x0 + step * Vec::Unit(n, i));
  std::vector<double> vals;
  for (const auto& p : simplex) vals.push_back(f(p));
  std::vector<std::size_t> order(simplex.size());
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    if (std::abs(vals[worst] - vals[best]) <= 1e-15 * (1 + std::abs(vals[best])) && it > 2 * n) break;
    Vec centroid = Vec::Zero(n);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) centroid += simplex[order[i]];
    centroid /= static_cast<double>(n);
    const Vec xr = centroid + (centroid - simplex[worst]);
    const double fr = f(xr);
    if (fr < vals[best]) {
      const Vec xe = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        vals[worst] = fe;
      } else {
        simplex[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      simplex[worst] = xr;
      vals[worst] = fr;
    } else {
      const Vec xc = centroid + 0.5 * (simplex[worst] - centroid);
      const double fc = f(xc);
      if (fc < vals[worst]) {
        simplex[worst] = xc;
        vals[worst] = fc;
      } else {
        for (std::size_t i = 0; i < simplex.size(); ++i) {
          if (i == best) continue;
          simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
          vals[i] = f(simplex[i]);
        }
      }
    }
  }
  return simplex[static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin())];
}

}  // namespace detail

/// Sampled set {x : disp(g_j, x) ≤ threshold_j for all j} in a region, with
/// Nelder–Mead refinement of max_j (disp_j − base_j) from the best grid points.
struct ThresholdSample {
  std::vector<ProjectivePoint> points;
  std::vector<Vec> lifts;
  /// Best value of max_j (disp_j − base_j) seen, and where.
  double best_excess = kInf;
  std::optional<ProjectivePoint> best_point;
  int grid_size = 0;
};

namespace detail {
inline ThresholdSample threshold_sample(const ConvexDomain& omega, const SampleRegion& region, const std::vector<ProjectiveMap>& gens,
                                        const std::vector<double>& base, const std::vector<double>& threshold, const SamplingConfig& cfg,
                                        bool refine) {
  cfg.validate();
  ThresholdSample out;
  auto excess_at = [&](const Vec& x, bool& within) {
    double e = -kInf;
    within = true;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const double dj = displacement_lift(omega, gens[j], x);
      e = std::max(e, dj - base[j]);
      within = within && dj <= threshold[j];
    }
    if (gens.empty()) e = 0.0;
    return e;
  };
  const std::vector<Vec> params = region.grid(cfg.grid_samples, cfg.seed);
  out.grid_size = static_cast<int>(params.size());
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Vec x = *region.point(params[i]);
    bool within = false;
    const double e = excess_at(x, within);
    ranked.emplace_back(e, i);
    if (within) {
      out.points.emplace_back(x);
      out.lifts.push_back(x);
    }
    if (e < out.best_excess) {
      out.best_excess = e;
      out.best_point = ProjectivePoint(x);
    }
  }
  if (!refine || gens.empty()) return out;
  std::sort(ranked.begin(), ranked.end());
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(cfg.refine_starts), ranked.size());
  auto objective = [&](const Vec& p) {
    const auto x = region.point(p);
    if (!x) return kInf;
    bool within = false;
    return excess_at(*x, within);
  };
  for (std::size_t s = 0; s < starts; ++s) {
    Vec p = params[ranked[s].second];
    double step = region.is_subset() ? 0.5 : 0.05 * std::max(1.0, p.norm());
    for (int round = 0; round < 3; ++round) {
      p = nelder_mead(objective, p, step, cfg.refine_iterations);
      step *= 0.1;
    }
    const Vec x = *region.point(p);
    bool within = false;
    const double e = excess_at(x, within);
    if (within) {
      out.points.emplace_back(x);
      out.lifts.push_back(x);
    }
    if (e < out.best_excess) {
      out.best_excess = e;
      out.best_point = ProjectivePoint(x);
    }
  }
  return out;
}
}  // namespace detail

struct MinSetSample {
  std::vector<ProjectivePoint> points;
  double translation_length = 0.0;
  double threshold = 0.0;
  /// Smallest displacement found (grid and refinement).
  double best_displacement = kInf;
  std::optional<ProjectivePoint> best_point;
  int grid_size = 0;
  bool empty() const { return points.empty(); }
};

/// Sampled Min(g): points with displacement ≤ τ(g) + ε_min.
inline MinSetSample min_set_sample(const ConvexDomain& omega, const ProjectiveMap& g, const SamplingConfig& cfg = {}) {
  const double tau = translation_length(g);
  const ThresholdSample t = detail::threshold_sample(omega, SampleRegion::whole(omega, cfg.interior_margin), {g}, {tau}, {tau + cfg.epsilon_min}, cfg, true);
  return MinSetSample{t.points, tau, tau + cfg.epsilon_min, tau + t.best_excess, t.best_point, t.grid_size};
}

struct MrSample {
  std::vector<ProjectivePoint> points;
  std::vector<Vec> lifts;
  double r = 0.0;
  int grid_size = 0;
};

namespace detail {
inline SampleRegion invariant_region(const GroupSpec& group, double min_margin) {
  return group.invariant_subset ? SampleRegion::subset(group.ambient, *group.invariant_subset, min_margin)
                                : SampleRegion::whole(group.ambient, min_margin);
}
}  // namespace detail

/// Sampled M_r = {x ∈ C : disp(a_j, x) ≤ r for all j}. Without an invariant
/// subset the whole domain plays the role of C.
inline MrSample m_r_sample(const GroupSpec& group, double r, const SamplingConfig& cfg = {}) {
  if (!(r > 0)) throw Error(ErrorCode::InvalidInput, "r must be positive");
  const std::vector<double> zero(group.generators.size(), 0.0), thr(group.generators.size(), r);
  const ThresholdSample t =
      detail::threshold_sample(group.ambient, detail::invariant_region(group, cfg.interior_margin), group.generators, zero, thr, cfg, false);
  return MrSample{t.points, t.lifts, r, t.grid_size};
}

struct HullInflationReport {
  int m_r_count = 0;
  int hull_samples = 0;
  double r = 0.0;
  double bound = 0.0;
  double worst_displacement = 0.0;
  double worst_ratio = 0.0;
  bool passed = true;
};

/// Samples ConvHull(M_r) by random convex combinations of M_r samples and
/// checks every generator displacement against 2^{d−1} r.
inline HullInflationReport hull_inflation_check(const GroupSpec& group, double r, const SamplingConfig& cfg = {}, double slack = 1e-6) {
  HullInflationReport rep;
  rep.r = r;
  rep.bound = std::ldexp(r, group.dim() - 1);
  const MrSample m = m_r_sample(group, r, cfg);
  rep.m_r_count = static_cast<int>(m.lifts.size());
  if (m.lifts.empty()) return rep;
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<std::size_t> pick(0, m.lifts.size() - 1);
  std::exponential_distribution<double> expo(1.0);
  const int max_k = std::min<int>(group.dim() + 1, static_cast<int>(m.lifts.size()));
  for (int s = 0; s < cfg.hull_samples; ++s) {
    const int k = max_k <= 1 ? 1 : 2 + s % (max_k - 1);
    Vec x = Vec::Zero(group.dim());
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      const double w = expo(rng);
      x += w * m.lifts[pick(rng)];
      total += w;
    }
    x /= total;
    ++rep.hull_samples;
    for (const auto& g : group.generators) {
      const double d = detail::displacement_lift(group.ambient, g, x);
      rep.worst_displacement = std::max(rep.worst_displacement, d);
      if (d > rep.bound + slack) rep.passed = false;
    }
  }
  rep.worst_ratio = rep.worst_displacement / r;
  return rep;
}

// ---------------------------------------------------------------------------
// Orbits and limit sets
// ---------------------------------------------------------------------------

struct OrbitSample {
  ProjectivePoint base_point;
  int word_radius = 0;
  std::vector<ProjectivePoint> points;
  std::vector<int> word_lengths;
  std::vector<ProjectivePoint> boundary_accumulation;
};

namespace detail {

/// Set of projective points deduplicated at a fixed tolerance, bucketed on a
/// quantized first coordinate.
class PointSet {
 public:
  explicit PointSet(double tol) : tol_(tol) {}
  bool insert(const ProjectivePoint& p) {
    const auto key = static_cast<long long>(std::floor(p.coords()(0) / tol_));
    for (long long k = key - 1; k <= key + 1; ++k) {
      auto [lo, hi] = buckets_.equal_range(k);
      for (auto it = lo; it != hi; ++it)
        if (p.approx_equal(it->second, tol_)) return false;
    }
    buckets_.emplace(key, p);
    return true;
  }

 private:
  double tol_;
  std::multimap<long long, ProjectivePoint> buckets_;
};

/// Ideal point where the ray from the reference point through x leaves Ω.
inline std::optional<ProjectivePoint> boundary_projection(const ConvexDomain& omega, const Vec& x_hat) {
  const Vec o = omega.reference_lift();
  if ((x_hat - o).norm() <= 1e-14 * o.norm()) return std::nullopt;
  const auto [ta, tb] = omega.chord_parameters(o, x_hat);
  (void)ta;
  return ProjectivePoint(Vec(o + tb * (x_hat - o)));
}

}  // namespace detail

/// Breadth-first orbit over words of length ≤ word_radius in the generators
/// and their inverses. Images within the accumulation margin of ∂Ω are
/// recorded through their projection to ∂Ω.
inline OrbitSample orbit(const GroupSpec& group, const ProjectivePoint& p, int word_radius, const SamplingConfig& cfg = {}) {
  if (word_radius < 0) throw Error(ErrorCode::InvalidInput, "word radius must be nonnegative");
  const ConvexDomain& omega = group.ambient;
  detail::interior_lift_or_throw(omega, p, "orbit base point");
  std::vector<Mat> moves;
  for (const auto& g : group.generators) {
    moves.push_back(g.matrix());
    moves.push_back(g.inverse().matrix());
  }
  OrbitSample out{p, word_radius, {p}, {0}, {}};
  detail::PointSet seen(1e-9);
  seen.insert(p);
  std::vector<ProjectivePoint> frontier{p};
  detail::PointSet acc_seen(1e-9);
  for (int len = 1; len <= word_radius; ++len) {
    std::vector<ProjectivePoint> next;
    for (const auto& q : frontier) {
      for (const auto& m : moves) {
        const Vec v = m * q.coords();
        if (!v.allFinite() || v.norm() == 0.0) throw Error(ErrorCode::OrbitBlowup, "orbit image overflowed");
        ProjectivePoint img(v);
        if (!seen.insert(img)) continue;
        next.push_back(img);
        out.points.push_back(img);
        out.word_lengths.push_back(len);
      }
    }
    frontier = std::move(next);
  }
  for (const auto& q : out.points) {
    const auto l = omega.try_lift(q.coords());
    if (!l || omega.margin(*l) >= cfg.accumulation_margin) continue;
    if (auto b = detail::boundary_projection(omega, *l); b && acc_seen.insert(*b)) out.boundary_accumulation.push_back(*b);
  }
  return out;
}

struct LimitSetSample {
  std::vector<ProjectivePoint> base_points;
  std::vector<ProjectivePoint> points;
  /// Projective dimension of the span of the sampled limit points.
  int hull_dimension = -1;
};

/// Union of orbit accumulation points over several base points.
inline LimitSetSample orbital_limit_sample(const GroupSpec& group, const std::vector<ProjectivePoint>& base_points, int word_radius,
                                           const SamplingConfig& cfg = {}) {
  LimitSetSample out;
  out.base_points = base_points;
  detail::PointSet seen(1e-9);
  for (const auto& b : base_points) {
    for (const auto& q : orbit(group, b, word_radius, cfg).boundary_accumulation)
      if (seen.insert(q)) out.points.push_back(q);
  }
  if (!out.points.empty()) {
    Mat m(group.dim(), static_cast<Eigen::Index>(out.points.size()));
    for (std::size_t i = 0; i < out.points.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = out.points[i].coords();
    out.hull_dimension = numeric_rank(m, 1e-8) - 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Product construction
// ---------------------------------------------------------------------------

struct ProductExample {
  ConvexDomain domain;
  ConvexSubset diagonal;
  GroupSpec group;
};

/// Ω⋆ = {[(v,w)] : v, w ∈ C} over the cone C of a polytope Ω, the diagonal
/// copy C⋆ = {[(v,v)]}, and Λ⋆ = {g ⊕ g}.
inline ProductExample build_product_example(const ConvexDomain& omega, const GroupSpec& lambda) {
  if (!omega.is_polytope()) throw Error(ErrorCode::NotPolytope, "product construction needs a polytope");
  const int d = omega.dim();
  std::vector<Vec> lifts;
  for (const auto& v : omega.vertex_lifts()) {
    Vec a = Vec::Zero(2 * d);
    a.head(d) = v;
    lifts.push_back(a);
  }
  for (const auto& v : omega.vertex_lifts()) {
    Vec b = Vec::Zero(2 * d);
    b.tail(d) = v;
    lifts.push_back(b);
  }
  ConvexDomain star = ConvexDomain::polytope(lifts, omega.boundary_tolerance());
  std::vector<Vec> diag;
  for (const auto& v : omega.vertex_lifts()) {
    Vec c(2 * d);
    c << v, v;
    diag.push_back(star.lift(ProjectivePoint(c)));
  }
  ConvexSubset cstar(std::move(diag));
  std::vector<ProjectiveMap> gens;
  for (const auto& g : lambda.generators) {
    Mat m = Mat::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d) = g.matrix();
    m.bottomRightCorner(d, d) = g.matrix();
    gens.emplace_back(m);
  }
  std::vector<std::string> labels;
  for (const auto& l : lambda.labels) labels.push_back(l + "*");
  GroupSpec group = make_group(star, std::move(gens), std::move(labels), cstar);
  return ProductExample{std::move(star), std::move(cstar), std::move(group)};
}

// ---------------------------------------------------------------------------
// Face dynamics
// ---------------------------------------------------------------------------

struct FaceDynamicsReport {
  int powers_used = 0;
  double limit_residual = kInf;
  double inverse_limit_residual = kInf;
  EndomorphismClass t;
  ProjectivePoint x;
  ProjectivePoint y;
  Face face;
  /// Component of image(T) outside span F_Ω(x).
  double image_residual = kInf;
  /// Best facet margin attainable on P(ker T) (polytopes), or the smallest
  /// eigenvalue of Q restricted to ker T, sign-flipped (ellipsoids); ≤ 0
  /// means P(ker T) misses Ω.
  double kernel_margin = kInf;
  double y_kernel_residual = kInf;
  /// T(Ω) = F_Ω(x): images of the vertex rays stay in the closed face and
  /// their cone contains the face's vertex rays.
  double face_map_residual = kInf;
  bool subset_checked = false;
  double subset_residual = 0.0;

  bool image_in_face(double tol = 1e-9) const { return image_residual <= tol; }
  bool kernel_disjoint(double tol = 1e-9) const { return kernel_margin <= tol; }
  bool y_in_kernel(double tol = 1e-9) const { return y_kernel_residual <= tol; }
  bool maps_onto_face(double tol = 1e-9) const { return face_map_residual <= tol; }
  bool passed(double tol = 1e-9) const {
    return image_in_face(tol) && kernel_disjoint(tol) && y_in_kernel(tol) && maps_onto_face(tol) && (!subset_checked || subset_residual <= tol);
  }
};

namespace detail {

/// Powers of g until the normalized terms settle below 1e-10.
inline std::pair<ProjectiveLimit, int> converged_power_limit(const Mat& g, int max_power) {
  for (int n = 8;; n *= 2) {
    const int use = std::min(n, max_power);
    const auto seq = power_sequence(g, use);
    ProjectiveLimit lim = projective_limit(std::span<const Mat>(seq));
    if (lim.converged()) return {std::move(lim), use};
    if (use >= max_power) throw Error(ErrorCode::NotConverged, "normalized powers did not converge");
  }
}

/// Rank-truncated copy of T (drops singular values below the rank cutoff).
inline Mat truncate_rank(const EndomorphismClass& t) {
  Eigen::JacobiSVD<Mat> svd(t.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int r = t.rank();
  return svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
}

inline double kernel_margin(const ConvexDomain& omega, const Mat& kernel) {
  if (kernel.cols() == 0) return -kInf;
  if (!omega.is_polytope()) {
    const Mat qk = kernel.transpose() * omega.quadric() * kernel;
    Eigen::SelfAdjointEigenSolver<Mat> es(qk);
    return -es.eigenvalues().minCoeff() / omega.quadric().norm();
  }
  // max s subject to f_j(K c) ≥ s, |c_i| ≤ 1.
  LinearProgram lp;
  std::vector<int> c;
  for (Eigen::Index i = 0; i < kernel.cols(); ++i) c.push_back(lp.add_variable(true));
  const int s = lp.add_variable(true);
  const Mat fk = omega.facets() * kernel;
  for (Eigen::Index j = 0; j < fk.rows(); ++j) {
    Vec row = Vec::Zero(lp.num_variables());
    for (Eigen::Index i = 0; i < kernel.cols(); ++i) row(c[static_cast<std::size_t>(i)]) = fk(j, i);
    row(s) = -1.0;
    lp.add_constraint(row, LinearProgram::Sense::GreaterEq, 0.0);
  }
  for (Eigen::Index i = 0; i < kernel.cols(); ++i) {
    Vec row = Vec::Zero(lp.num_variables());
    row(c[static_cast<std::size_t>(i)]) = 1.0;
    lp.add_constraint(row, LinearProgram::Sense::LessEq, 1.0);
    lp.add_constraint(row, LinearProgram::Sense::GreaterEq, -1.0);
  }
  Vec cost = Vec::Zero(lp.num_variables());
  cost(s) = -1.0;
  const LpResult res = lp.minimize(cost);
  if (res.status != LpStatus::Optimal) throw Error(ErrorCode::NotConverged, "kernel margin program failed");
  return -res.objective;
}

}  // namespace detail

/// Limit endomorphism of the powers of g and the face dynamics it induces:
/// image(T) ⊂ span F_Ω(x), P(ker T) ∩ Ω = ∅, y ∈ P(ker T), T(Ω) = F_Ω(x), and
/// T(C) ⊂ F_Ω(x) ∩ ∂_i C when an invariant subset C is given.
inline FaceDynamicsReport face_dynamics_check(const ConvexDomain& omega, const std::optional<ConvexSubset>& c, const ProjectiveMap& g,
                                              const ProjectivePoint& p0, int max_power = 4096) {
  const Vec p0h = detail::interior_lift_or_throw(omega, p0, "base point");
  auto [fwd, n] = detail::converged_power_limit(g.matrix(), max_power);
  auto [bwd, nb] = detail::converged_power_limit(g.inverse().matrix(), max_power);
  const Mat t = detail::truncate_rank(fwd.limit);
  const Mat tinv = detail::truncate_rank(bwd.limit);
  const ProjectivePoint x(Vec(t * p0h));
  if (omega.classify(x).location != Location::Boundary) throw Error(ErrorCode::NonBoundaryLimit, "orbit limit is not on the boundary");
  FaceDynamicsReport rep{std::max(n, nb), fwd.residual, bwd.residual, fwd.limit, x, ProjectivePoint(Vec(tinv * p0h)), open_face(omega, x)};
  const Mat& span = rep.face.span;
  const Mat& img = fwd.limit.image();
  rep.image_residual = (img - span * (span.transpose() * img)).norm();
  rep.kernel_margin = detail::kernel_margin(omega, fwd.limit.kernel());
  rep.y_kernel_residual = fwd.limit.kernel_residual(rep.y);
  if (omega.is_polytope()) {
    std::vector<Vec> images;
    double res = 0.0;
    for (const auto& v : omega.vertex_lifts()) {
      const Vec w = t * v;
      if (w.norm() <= EndomorphismClass::kRankCutoff * v.norm()) continue;
      const Vec wn = w / w.norm();
      for (int j : rep.face.active_facets) res = std::max(res, std::abs(omega.facets().row(j).dot(wn)));
      res = std::max(res, -std::min(0.0, (omega.facets() * wn).minCoeff()));
      images.push_back(wn);
    }
    const Mat cone = columns_of(images);
    for (const auto& fv : rep.face.vertex_lifts) res = std::max(res, cone_membership_residual(cone, fv / fv.norm()));
    rep.face_map_residual = res;
  } else {
    const Vec w = t * p0h;
    rep.face_map_residual = std::max(static_cast<double>(t.cols() > 0 ? fwd.limit.rank() - 1 : 0),
                                     1.0 - std::abs(w.normalized().dot(rep.x.coords())));
  }
  if (c) {
    rep.subset_checked = true;
    double res = 0.0;
    std::vector<Vec> pts = c->generators();
    pts.push_back(c->centroid());
    for (const auto& v : pts) {
      const Vec w = t * v;
      if (w.norm() <= EndomorphismClass::kRankCutoff * v.norm()) continue;
      const Vec wl = *omega.try_lift(w);
      const Classification cw = omega.classify_lift(wl);
      if (cw.location != Location::Boundary) res = std::max(res, std::abs(cw.margin));
      if (omega.is_polytope())
        for (int j : rep.face.active_facets) res = std::max(res, std::abs(omega.facets().row(j).dot(wl)) / wl.norm());
      res = std::max(res, c->membership_residual(wl) / wl.norm());
    }
    rep.subset_residual = res;
  }
  return rep;
}

}  // namespace hflat
