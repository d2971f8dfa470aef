#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "hilbert_flats/builders.hpp"
#include "hilbert_flats/flat_torus.hpp"
#include "support.hpp"

using namespace hflat;
using testsupport::Gen;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

Mat diag_of(std::initializer_list<double> v) { return Vec(Eigen::Map<const Vec>(v.begin(), static_cast<Eigen::Index>(v.size()))).asDiagonal(); }

ConvexDomain disk() {
  Mat q = Mat::Identity(3, 3);
  q(2, 2) = -1;
  return ConvexDomain::from_quadric(q, Vec::Unit(3, 2));
}

Mat boost3(double s) {
  Mat b = Mat::Identity(3, 3);
  b(0, 0) = b(2, 2) = std::cosh(s);
  b(0, 2) = b(2, 0) = std::sinh(s);
  return b;
}

Mat rotation3(double t) {
  Mat r = Mat::Identity(3, 3);
  r(0, 0) = r(1, 1) = std::cos(t);
  r(0, 1) = -std::sin(t);
  r(1, 0) = std::sin(t);
  return r;
}

Mat cyclic3() {
  Mat p = Mat::Zero(3, 3);
  p(1, 0) = p(2, 1) = p(0, 2) = 1;
  return p;
}

bool contains_point(const std::vector<ProjectivePoint>& pts, const Vec& v) {
  for (const auto& p : pts)
    if (p.approx_equal(ProjectivePoint(v))) return true;
  return false;
}

// Independent hull test: the open hull of points of the closed domain meets
// the interior iff the centroid of chart lifts is interior.
bool centroid_interior(const ConvexDomain& omega, const std::vector<ProjectivePoint>& pts) {
  Vec c = Vec::Zero(omega.dim());
  for (const auto& p : pts) c += omega.lift(p);
  c /= static_cast<double>(pts.size());
  return omega.margin(c) > 1e-9;
}

// Coefficients of v in the basis rows; integer iff v is a lattice vector.
Vec lattice_coefficients(const std::vector<Vec>& basis, const Vec& v) {
  Mat b(v.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = basis[i];
  return b.colPivHouseholderQr().solve(v);
}

}  // namespace

// ---------------------------------------------------------------------------
// common_fixed_points
// ---------------------------------------------------------------------------

TEST(CommonFixedPoints, DiagonalOnSimplex) {
  const Vec z = (Vec(3) << 0.3, -0.4, 1.1).finished();
  const FixedPointSet f = common_fixed_points(simplex_with_diagonal(2, z));
  ASSERT_EQ(f.points.size(), 3u);
  EXPECT_FALSE(f.full_fix);
  const auto pts = f.projective_points();
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(contains_point(pts, Vec::Unit(3, i)));
  for (const auto& p : f.points) {
    EXPECT_EQ(p.location, Location::Boundary);
    ASSERT_EQ(p.eigenvalues.size(), 1);
    Eigen::Index i = 0;
    p.point.coords().cwiseAbs().maxCoeff(&i);
    // Ratio against the first vertex's eigenvalue is e^{z_i − z_1}.
    double mu0 = 0;
    for (const auto& q : f.points)
      if (q.point.approx_equal(ProjectivePoint(Vec(Vec::Unit(3, 0))))) mu0 = q.eigenvalues(0);
    EXPECT_NEAR(p.eigenvalues(0) / mu0, std::exp(z(i) - z(0)), 1e-12);
  }
}

TEST(CommonFixedPoints, RotationIsRefused) {
  const GroupSpec g = make_group(disk(), {ProjectiveMap(rotation3(0.9))});
  EXPECT_EQ(code_of([&] { common_fixed_points(g); }), ErrorCode::NotSimultaneouslyDiagonalizable);
}

TEST(CommonFixedPoints, IdentityIsFullFix) {
  const GroupSpec g = make_group(build_standard_simplex(2), {ProjectiveMap(Mat(Mat::Identity(3, 3)))});
  const FixedPointSet f = common_fixed_points(g);
  EXPECT_TRUE(f.full_fix);
  const auto pts = f.projective_points();
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(contains_point(pts, Vec::Unit(3, i)));
  // Plus the centroid of the fixed locus, which is interior.
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_TRUE(contains_point(pts, Vec::Ones(3)));
}

TEST(CommonFixedPoints, SquareReflections) {
  const FixedPointSet f = common_fixed_points(square_reflections());
  // e1 and e2 lie on the line at infinity of the square's chart.
  ASSERT_EQ(f.points.size(), 1u);
  EXPECT_TRUE(f.points[0].point.approx_equal(ProjectivePoint{0, 0, 1}));
  EXPECT_EQ(f.points[0].location, Location::Interior);
}

TEST(CommonFixedPoints, DiskBoost) {
  const double s = 0.8;
  const FixedPointSet f = common_fixed_points(make_group(disk(), {ProjectiveMap(boost3(s))}));
  // The light-like eigenvectors (1, 0, ±1); (0, 1, 0) is outside the disk.
  ASSERT_EQ(f.points.size(), 2u);
  const auto pts = f.projective_points();
  EXPECT_TRUE(contains_point(pts, (Vec(3) << 1, 0, 1).finished()));
  EXPECT_TRUE(contains_point(pts, (Vec(3) << 1, 0, -1).finished()));
  for (const auto& p : f.points) EXPECT_EQ(p.location, Location::Boundary);
  // Eigenvalues e^{±s} up to the projective scale: their ratio is e^{2s}.
  EXPECT_NEAR(std::abs(std::log(f.points[0].eigenvalues(0) / f.points[1].eigenvalues(0))), 2 * s, 1e-12);
}

TEST(CommonFixedPoints, RandomConjugatedSimplexProperty) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const int k = 2 + static_cast<int>(seed % 3);
    const GroupSpec g = random_simplex_scene(rng, k, 2);
    const FixedPointSet f = common_fixed_points(g);
    // The fixed points are exactly the simplex vertices.
    ASSERT_EQ(f.points.size(), static_cast<std::size_t>(k + 1)) << seed;
    for (const auto& v : g.ambient.vertices()) EXPECT_TRUE(contains_point(f.projective_points(), v.coords())) << seed;
    for (const auto& p : f.points)
      for (const auto& a : g.generators) EXPECT_LT(a.apply(p.point).distance(p.point), 1e-9);
    EXPECT_LT(f.diagonalization_residual, 1e-8);
  }
}

// ---------------------------------------------------------------------------
// minimal_simplex_search
// ---------------------------------------------------------------------------

TEST(MinimalSimplex, DiagonalLatticeIsWholeSimplex) {
  for (int d = 1; d <= 4; ++d) {
    const GroupSpec g = diagonal_lattice(d);
    const SimplexSearchResult r = minimal_simplex_search(g, common_fixed_points(g).projective_points());
    EXPECT_EQ(r.simplex.dim, d);
    for (int i = 0; i <= d; ++i) EXPECT_TRUE(contains_point(r.simplex.vertices, Vec::Unit(d + 1, i)));
    EXPECT_TRUE(r.minimal);
  }
}

TEST(MinimalSimplex, HyperbolicOnInterval) {
  const GroupSpec g = make_group(build_standard_simplex(1), {ProjectiveMap(diag_of({4.0, 0.25}))});
  const SimplexSearchResult r = minimal_simplex_search(g, common_fixed_points(g).projective_points());
  EXPECT_EQ(r.simplex.dim, 1);
  EXPECT_TRUE(contains_point(r.simplex.vertices, Vec::Unit(2, 0)));
  EXPECT_TRUE(contains_point(r.simplex.vertices, Vec::Unit(2, 1)));
}

TEST(MinimalSimplex, FiniteGroupGivesPoint) {
  const GroupSpec g = square_reflections();
  const SimplexSearchResult r = minimal_simplex_search(g, common_fixed_points(g).projective_points());
  EXPECT_EQ(r.simplex.dim, 0);
  EXPECT_TRUE(r.simplex.vertices[0].approx_equal(ProjectivePoint{0, 0, 1}));
}

TEST(MinimalSimplex, EnumerationOrderAndErrors) {
  const GroupSpec g = simplex_with_diagonal(2, (Vec(3) << 1, 0, -1).finished());
  const std::vector<ProjectivePoint> edge{ProjectivePoint{1, 0, 0}, ProjectivePoint{0, 1, 0}};
  EXPECT_EQ(code_of([&] { minimal_simplex_search(g, edge); }), ErrorCode::NoSimplexFound);
  EXPECT_EQ(code_of([&] { minimal_simplex_search(g, {}); }), ErrorCode::EmptyInput);
  // Two interior points: the first in index order wins.
  const std::vector<ProjectivePoint> two{ProjectivePoint{1, 0, 0}, ProjectivePoint{1, 2, 3}, ProjectivePoint{3, 2, 1}};
  const SimplexSearchResult r = minimal_simplex_search(g, two);
  EXPECT_EQ(r.indices, std::vector<int>{1});
}

TEST(MinimalSimplex, FaceDiagonalOnTetrahedron) {
  // diag(4,4,1,1) has two 2-dimensional eigenspaces, both meeting the
  // closed 3-simplex only in edges.
  const GroupSpec g = make_group(build_standard_simplex(3), {ProjectiveMap(diag_of({4, 4, 1, 1}))});
  const FixedPointSet f = common_fixed_points(g);
  EXPECT_EQ(f.points.size(), 4u);
  const SimplexSearchResult r = minimal_simplex_search(g, f.projective_points());
  EXPECT_EQ(r.simplex.dim, 3);
}

TEST(MinimalSimplex, MinimalityProperty) {
  Gen gen(71);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed + 100);
    const int k = gen.integer(2, 4);
    const GroupSpec g = random_simplex_scene(rng, k, gen.integer(1, 3));
    const auto pts = common_fixed_points(g).projective_points();
    const SimplexSearchResult r = minimal_simplex_search(g, pts);
    EXPECT_TRUE(centroid_interior(g.ambient, r.simplex.vertices)) << seed;
    // Every strict subset (by the independent centroid test) misses Ω.
    const int n = static_cast<int>(r.simplex.vertices.size());
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
      std::vector<ProjectivePoint> sub;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) sub.push_back(r.simplex.vertices[static_cast<std::size_t>(i)]);
      EXPECT_FALSE(centroid_interior(g.ambient, sub)) << seed;
    }
    // No smaller subset of the candidates meets Ω either.
    for (int mask = 1; mask < (1 << pts.size()); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) >= n) continue;
      std::vector<ProjectivePoint> sub;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (mask & (1 << i)) sub.push_back(pts[i]);
      EXPECT_FALSE(centroid_interior(g.ambient, sub)) << seed;
    }
    EXPECT_GT(r.independence, 1e-6);
    EXPECT_TRUE(r.minimal);
  }
}

// ---------------------------------------------------------------------------
// rank_certificate
// ---------------------------------------------------------------------------

TEST(RankCertificate, DiagonalLatticeIsUnimodular) {
  for (int d = 1; d <= 4; ++d) {
    const GroupSpec g = diagonal_lattice(d);
    const SimplexFlat s = make_simplex_flat(g.ambient.vertices(), &g.ambient);
    const RankCertificate rc = rank_certificate(g, s);
    EXPECT_EQ(rc.rank, d);
    ASSERT_EQ(rc.lattice_basis.size(), static_cast<std::size_t>(d));
    Mat b(d, d);
    for (int i = 0; i < d; ++i) b.col(i) = rc.lattice_basis[static_cast<std::size_t>(i)];
    // Generator vectors are (−1, …, −1) and the unit vectors: the lattice Z^d.
    EXPECT_NEAR((b.array() - b.array().round()).abs().maxCoeff(), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(b.determinant()), 1.0, 1e-9);
    EXPECT_LT(rc.vertex_fix_residual, 1e-12);
  }
}

TEST(RankCertificate, HomomorphismSubgroup) {
  const GroupSpec g = homomorphism_subgroup(2, (Mat(3, 1) << 0, 1, 2).finished());
  const SimplexFlat s = make_simplex_flat(g.ambient.vertices(), &g.ambient);
  const RankCertificate rc = rank_certificate(g, s);
  EXPECT_EQ(rc.rank, 1);
  ASSERT_EQ(rc.lattice_basis.size(), 1u);
  const Vec b = rc.lattice_basis[0].cwiseAbs();
  EXPECT_NEAR(b(0), 1.0, 1e-9);
  EXPECT_NEAR(b(1), 2.0, 1e-9);
}

TEST(RankCertificate, IntegerRelationsReduce) {
  // Translation vectors 2(1, 2) and 3(1, 2) generate Z(1, 2).
  const ConvexDomain t = build_standard_simplex(2);
  const GroupSpec g = make_group(t, {ProjectiveMap(diag_of({1, std::exp(2.0), std::exp(4.0)})),
                                     ProjectiveMap(diag_of({1, std::exp(3.0), std::exp(6.0)}))});
  const RankCertificate rc = rank_certificate(g, make_simplex_flat(t.vertices(), &t));
  EXPECT_EQ(rc.rank, 1);
  EXPECT_TRUE(rc.discrete);
  ASSERT_EQ(rc.lattice_basis.size(), 1u);
  EXPECT_NEAR(rc.lattice_basis[0].cwiseAbs()(0), 1.0, 1e-9);
  EXPECT_NEAR(rc.lattice_basis[0].cwiseAbs()(1), 2.0, 1e-9);
}

TEST(RankCertificate, TorsionAndErrors) {
  const GroupSpec sq = square_reflections();
  const SimplexFlat point = make_simplex_flat({ProjectivePoint{0, 0, 1}}, &sq.ambient);
  const RankCertificate rc = rank_certificate(sq, point);
  EXPECT_EQ(rc.rank, 0);
  EXPECT_TRUE(rc.lattice_basis.empty());

  const ConvexDomain t = build_standard_simplex(2);
  const GroupSpec cyc = make_group(t, {ProjectiveMap(cyclic3())});
  EXPECT_EQ(code_of([&] { rank_certificate(cyc, make_simplex_flat(t.vertices(), &t)); }), ErrorCode::VertexNotFixed);
}

TEST(RankCertificate, RankBoundedByDimensionProperty) {
  Gen gen(72);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed + 300);
    const int k = gen.integer(1, 4), m = gen.integer(1, 4);
    const GroupSpec g = random_simplex_scene(rng, k, m);
    const SimplexFlat s = make_simplex_flat(g.ambient.vertices(), &g.ambient);
    const RankCertificate rc = rank_certificate(g, s);
    EXPECT_LE(rc.rank, k);
    // Generic real exponents: rank is min(m, k).
    EXPECT_EQ(rc.rank, std::min(m, k)) << seed;
    EXPECT_LT(rc.vertex_fix_residual, 1e-9);
  }
}

TEST(CoveringRadius, Examples) {
  // Z in R^1: dist_rd is |u|/2, farthest point 1/2.
  EXPECT_NEAR(lattice_covering_radius({Vec::Ones(1)}, 1), 0.25, 1e-12);
  EXPECT_EQ(lattice_covering_radius({}, 0), 0.0);
  EXPECT_TRUE(std::isinf(lattice_covering_radius({(Vec(2) << 1, 2).finished()}, 2)));
}

TEST(CoveringRadius, MatchesGridOracle) {
  // Z² with the brute-force grid maximum of min over a wide neighborhood.
  const std::vector<Vec> basis{Vec::Unit(2, 0), Vec::Unit(2, 1)};
  auto rd = [](double a, double b) { return 0.5 * (std::max({a, b, 0.0}) - std::min({a, b, 0.0})); };
  double oracle = 0.0;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      const double u = i / 200.0, v = j / 200.0;
      double best = 1e9;
      for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) best = std::min(best, rd(u - a, v - b));
      oracle = std::max(oracle, best);
    }
  const double est = lattice_covering_radius(basis, 2, 4096);
  EXPECT_LE(est, oracle + 1e-12);
  EXPECT_NEAR(est, oracle, 5e-3);
}

TEST(RankCertificate, OrbitLiesOnLatticeProperty) {
  for (int d = 1; d <= 3; ++d) {
    const GroupSpec g = diagonal_lattice(d);
    const SimplexFlat s = make_simplex_flat(g.ambient.vertices(), &g.ambient);
    const RankCertificate rc = rank_certificate(g, s);
    const ProjectivePoint b = s.barycenter();
    const Vec phi0 = phi_coordinates(b, d);
    const OrbitSample o = orbit(g, b, 3);
    for (const auto& p : o.points) {
      const Vec c = lattice_coefficients(rc.lattice_basis, phi_coordinates(p, d) - phi0);
      EXPECT_NEAR((c.array() - c.array().round()).abs().maxCoeff(), 0.0, 1e-8);
    }
  }
}

// ---------------------------------------------------------------------------
// min_hull
// ---------------------------------------------------------------------------

TEST(MinHull, DiagonalGroupCoversGrid) {
  SamplingConfig cfg;
  cfg.grid_samples = 400;
  const GroupSpec g = diagonal_lattice(2);
  const SimplexFlat s = make_simplex_flat(g.ambient.vertices(), &g.ambient);
  const MinHullReport r = min_hull(g, cfg, &s);
  EXPECT_GE(static_cast<int>(r.witnesses.size()), r.grid_size);
  EXPECT_LT(r.simplex_residual, 1e-6);
  for (double t : r.translation_lengths) EXPECT_NEAR(t, 0.5, 1e-12);
}

TEST(MinHull, IdentityEverywhere) {
  SamplingConfig cfg;
  cfg.grid_samples = 300;
  const GroupSpec g = make_group(build_standard_simplex(2), {ProjectiveMap(Mat(Mat::Identity(3, 3)))});
  const MinHullReport r = min_hull(g, cfg);
  EXPECT_GE(static_cast<int>(r.witnesses.size()), r.grid_size);
  EXPECT_EQ(r.translation_lengths[0], 0.0);
}

TEST(MinHull, DiskBoostNearAxis) {
  SamplingConfig cfg;
  cfg.grid_samples = 4000;
  const double s = 1.2;
  const MinHullReport r = min_hull(make_group(disk(), {ProjectiveMap(boost3(s))}), cfg);
  ASSERT_FALSE(r.witnesses.empty());
  for (const auto& w : r.witnesses) {
    // Klein model: displacement at height y off the axis satisfies
    // sinh(δ/2) = cosh(ρ) sinh(s/2) with tanh ρ = |y| for x = 0.
    const Vec l = w.coords() / w.coords()(2);
    EXPECT_LT(std::abs(l(1)), 5e-2);
  }
}

// ---------------------------------------------------------------------------
// flat_torus_report
// ---------------------------------------------------------------------------

TEST(FlatTorusReport, DiagonalLatticeIsCocompact) {
  SamplingConfig cfg;
  cfg.grid_samples = 500;
  for (int d = 1; d <= 3; ++d) {
    const FlatReport r = flat_torus_report(diagonal_lattice(d), cfg);
    EXPECT_FALSE(r.error.has_value()) << *r.error;
    EXPECT_EQ(r.dim(), d);
    EXPECT_EQ(r.rank, d);
    EXPECT_TRUE(r.cocompact);
    EXPECT_LT(r.diagnostics.at("vertex_fix_residual"), 1e-9);
    EXPECT_LT(r.diagnostics.at("simplex_min_residual"), 1e-6);
    EXPECT_TRUE(std::isfinite(r.diagnostics.at("covering_radius")));
    EXPECT_FALSE(r.min_set_witnesses.empty());
  }
}

TEST(FlatTorusReport, HomomorphismSubgroupIsNotCocompact) {
  SamplingConfig cfg;
  cfg.grid_samples = 500;
  const FlatReport r = flat_torus_report(homomorphism_subgroup(2, (Mat(3, 1) << 0, 1, 2).finished()), cfg);
  EXPECT_EQ(r.dim(), 2);
  EXPECT_EQ(r.rank, 1);
  EXPECT_FALSE(r.cocompact);
  EXPECT_TRUE(std::isinf(r.diagnostics.at("covering_radius")));
}

TEST(FlatTorusReport, FiniteGroupGivesFixedPoint) {
  SamplingConfig cfg;
  cfg.grid_samples = 500;
  const FlatReport r = flat_torus_report(square_reflections(), cfg);
  EXPECT_EQ(r.dim(), 0);
  EXPECT_EQ(r.rank, 0);
  EXPECT_TRUE(r.cocompact);
  EXPECT_TRUE(r.simplex.vertices[0].approx_equal(ProjectivePoint{0, 0, 1}));
}

TEST(FlatTorusReport, RotationRefused) {
  EXPECT_EQ(code_of([] { flat_torus_report(make_group(disk(), {ProjectiveMap(rotation3(0.4))})); }),
            ErrorCode::NotSimultaneouslyDiagonalizable);
}

TEST(FlatTorusReport, RandomSimplexScenesProperty) {
  SamplingConfig cfg;
  cfg.grid_samples = 300;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    std::mt19937_64 rng(seed + 500);
    const int k = 2 + static_cast<int>(seed % 2);
    const GroupSpec g = random_simplex_scene(rng, k, 2);
    const FlatReport r = flat_torus_report(g, cfg);
    EXPECT_FALSE(r.error.has_value()) << *r.error;
    EXPECT_EQ(r.dim(), k);
    EXPECT_LE(r.rank, r.dim());
    EXPECT_EQ(r.cocompact, r.rank == r.dim());
    for (const auto& v : r.simplex.vertices)
      for (const auto& a : g.generators) EXPECT_LT(a.apply(v).distance(v), 1e-9);
    EXPECT_LT(r.diagnostics.at("simplex_min_residual"), 1e-6) << seed;
  }
}
