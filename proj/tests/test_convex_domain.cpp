#include <gtest/gtest.h>

#include <algorithm>

#include "hilbert_flats/convex_domain.hpp"
#include "support.hpp"

using namespace hflat;
using testsupport::Gen;

namespace {

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

ConvexDomain triangle() { return ConvexDomain::polytope({v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)}); }

ConvexDomain square() {
  return ConvexDomain::polytope({v3(1, 1, 1), v3(-1, 1, 1), v3(-1, -1, 1), v3(1, -1, 1)});
}

ConvexDomain disk() { return ConvexDomain::ellipsoid(Vec::Zero(2), Mat::Identity(2, 2)); }

}  // namespace

TEST(ConvexDomainTest, Construction) {
  const ConvexDomain t = triangle();
  EXPECT_EQ(t.dim(), 3);
  EXPECT_EQ(t.facets().rows(), 3);
  EXPECT_EQ(t.vertex_lifts().size(), 3u);
  for (const auto& v : t.vertex_lifts()) EXPECT_NEAR(t.chart().dot(v), 1.0, 1e-14);
  // Facet functionals are nonnegative on the vertices and vanish on two.
  for (Eigen::Index f = 0; f < t.facets().rows(); ++f) {
    int zeros = 0;
    for (const auto& v : t.vertex_lifts()) {
      EXPECT_GE(t.facets().row(f).dot(v), -1e-14);
      zeros += std::abs(t.facets().row(f).dot(v)) < 1e-12 ? 1 : 0;
    }
    EXPECT_EQ(zeros, 2);
  }
  EXPECT_EQ(square().facets().rows(), 4);
}

TEST(ConvexDomainTest, DropsNonExtremeVertices) {
  const ConvexDomain s = ConvexDomain::polytope({v3(1, 1, 1), v3(-1, 1, 1), v3(-1, -1, 1), v3(1, -1, 1), v3(0, 0, 1), v3(1, 0, 1)});
  EXPECT_EQ(s.vertex_lifts().size(), 4u);
}

TEST(ConvexDomainTest, ValidationErrors) {
  // Lifts straddling the origin: no common open half-space.
  EXPECT_THROW(ConvexDomain::polytope({v3(1, 0, 0), v3(-1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)}), Error);
  try {
    ConvexDomain::polytope({v3(1, 0, 0), v3(0, 1, 0), v3(1, 1, 0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
  }
  EXPECT_THROW(ConvexDomain::ellipsoid(Vec::Zero(2), -Mat::Identity(2, 2)), Error);
  Mat q = Mat::Identity(3, 3);
  EXPECT_THROW(ConvexDomain::from_quadric(q, v3(0, 0, 1)), Error);
}

TEST(Contains, TriangleExamples) {
  const ConvexDomain t = triangle();
  EXPECT_EQ(t.contains(ProjectivePoint({1, 1, 1})), Location::Interior);
  const Classification c = t.classify(ProjectivePoint({1, 1, 0}));
  EXPECT_EQ(c.location, Location::Boundary);
  ASSERT_EQ(c.active_facets.size(), 1u);
  const Vec f = t.facets().row(c.active_facets[0]).transpose();
  EXPECT_NEAR(std::abs(f(2)), 1.0, 1e-12);  // the facet {x_3 = 0}
  EXPECT_EQ(t.contains(ProjectivePoint({1, -1, 1})), Location::Outside);
}

TEST(Contains, EllipsoidResidual) {
  const ConvexDomain d = disk();
  EXPECT_EQ(d.contains(ProjectivePoint({0, 0, 1})), Location::Interior);
  const Classification c = d.classify(ProjectivePoint({0.6, 0.8, 1}));
  EXPECT_EQ(c.location, Location::Boundary);
  EXPECT_LE(std::abs(c.quadric_residual), 1e-10);
  EXPECT_EQ(d.contains(ProjectivePoint({1, 1, 1})), Location::Outside);
  // Points on the line at infinity of the chart are outside.
  EXPECT_EQ(d.contains(ProjectivePoint({1, 0, 0})), Location::Outside);
}

TEST(ChordEndpoints, DiskDiameter) {
  const Chord ch = chord_endpoints(disk(), ProjectivePoint({0, 0, 1}), ProjectivePoint({0.5, 0, 1}));
  EXPECT_TRUE(ch.a.approx_equal(ProjectivePoint({-1, 0, 1}), 1e-12));
  EXPECT_TRUE(ch.b.approx_equal(ProjectivePoint({1, 0, 1}), 1e-12));
}

TEST(ChordEndpoints, TriangleTowardVertex) {
  const ConvexDomain t = triangle();
  const Chord ch = chord_endpoints(t, ProjectivePoint({1, 1, 1}), ProjectivePoint({2, 1, 1}));
  // Direct computation: the line [1+s : 1 : 1] exits at s = -1 (x_1 = 0) and at the vertex e_1 (s -> inf).
  EXPECT_TRUE(ch.a.approx_equal(ProjectivePoint({0, 1, 1}), 1e-12));
  EXPECT_TRUE(ch.b.approx_equal(ProjectivePoint({1, 0, 0}), 1e-12));
}

TEST(ChordEndpoints, Errors) {
  const ConvexDomain t = triangle();
  const ProjectivePoint x({1, 1, 1});
  try {
    chord_endpoints(t, x, x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoincidentPoints);
  }
  try {
    chord_endpoints(t, x, ProjectivePoint({1, 1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInterior);
  }
}

TEST(ChordEndpoints, RandomDomainsLandOnBoundaryProperty) {
  Gen gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = gen.integer(3, 5);
    const ConvexDomain omega = trial % 4 == 3 ? ConvexDomain::ellipsoid(Vec::Zero(d - 1), Mat::Identity(d - 1, d - 1) * gen.uniform(0.5, 2))
                                              : testsupport::random_polytope(gen, d);
    const ProjectivePoint x(testsupport::interior_lift(gen, omega));
    const ProjectivePoint y(testsupport::interior_lift(gen, omega));
    const Chord ch = chord_endpoints(omega, x, y);
    EXPECT_EQ(omega.contains(ch.a), Location::Boundary);
    EXPECT_EQ(omega.contains(ch.b), Location::Boundary);
    EXPECT_GE(cross_ratio(ch.a, x, y, ch.b), 1.0 - 1e-12);
    EXPECT_NEAR(cross_ratio(ch.a, x, x, ch.b), 1.0, 1e-9);
  }
}

TEST(OpenFace, SquareExamples) {
  const ConvexDomain s = square();
  const Face edge = open_face(s, ProjectivePoint({1, 0, 1}));
  EXPECT_EQ(edge.dimension, 1);
  EXPECT_FALSE(edge.is_domain);
  EXPECT_TRUE(in_face(s, edge, ProjectivePoint({1, 0.7, 1})));
  EXPECT_FALSE(in_face(s, edge, ProjectivePoint({1, 1, 1})));
  const Face corner = open_face(s, ProjectivePoint({1, 1, 1}));
  EXPECT_EQ(corner.dimension, 0);
  const Face whole = open_face(s, ProjectivePoint({0.1, 0.2, 1}));
  EXPECT_TRUE(whole.is_domain);
  EXPECT_EQ(whole.dimension, 2);
  EXPECT_THROW(open_face(s, ProjectivePoint({3, 0, 1})), Error);
}

TEST(OpenFace, PartitionProperty) {
  // y in F(x) implies F(x) = F(y); boundary points of a face have strictly
  // smaller faces in its closure.
  Gen gen(22);
  for (int trial = 0; trial < 50; ++trial) {
    const ConvexDomain omega = testsupport::random_polytope(gen, gen.integer(3, 4));
    const auto& vs = omega.vertex_lifts();
    const std::size_t i = static_cast<std::size_t>(gen.integer(0, static_cast<int>(vs.size()) - 1));
    // A point on an edge or facet: centroid of the active vertices of a facet.
    const int f = gen.integer(0, static_cast<int>(omega.facets().rows()) - 1);
    std::vector<Vec> on;
    for (const auto& v : vs)
      if (std::abs(omega.facets().row(f).dot(v)) < 1e-9) on.push_back(v);
    Vec c = Vec::Zero(omega.dim());
    for (const auto& v : on) c += v;
    c /= static_cast<double>(on.size());
    const ProjectivePoint x(c);
    const Face fx = open_face(omega, x);
    for (const auto& sample : fx.relative_interior_sample) {
      ASSERT_TRUE(in_face(omega, fx, sample));
      const Face fy = open_face(omega, sample);
      EXPECT_EQ(fy.active_facets, fx.active_facets);
    }
    // A vertex of the face lies on its relative boundary when dimension > 0.
    if (fx.dimension > 0) {
      const Face fv = open_face(omega, ProjectivePoint(fx.vertex_lifts.front()));
      EXPECT_LT(fv.dimension, fx.dimension);
      EXPECT_GT(fv.active_facets.size(), fx.active_facets.size());
      for (int a : fx.active_facets) EXPECT_NE(std::find(fv.active_facets.begin(), fv.active_facets.end(), a), fv.active_facets.end());
    }
    (void)i;
  }
}

TEST(ConvexHull, Examples) {
  const ConvexDomain t = triangle();
  const ConvexSubset seg = convex_hull(t, {ProjectivePoint({1, 1, 1}), ProjectivePoint({1, 2, 4})});
  EXPECT_EQ(seg.span_dim(), 1);
  EXPECT_EQ(seg.generators().size(), 2u);
  const ConvexSubset tri = convex_hull(t, t.vertices());
  EXPECT_EQ(tri.span_dim(), 2);
  EXPECT_THROW(convex_hull(t, {}), Error);
  EXPECT_THROW(convex_hull(t, {ProjectivePoint({1, -1, 1})}), Error);
}

TEST(ConvexHull, MembershipAgreesWithPolygonOracleProperty) {
  Gen gen(23);
  const ConvexDomain s = square();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ProjectivePoint> pts;
    std::vector<std::pair<double, double>> raw;
    for (int i = 0; i < 10; ++i) {
      const double a = gen.uniform(-0.9, 0.9), b = gen.uniform(-0.9, 0.9);
      pts.emplace_back(v3(a, b, 1));
      raw.emplace_back(a, b);
    }
    const ConvexSubset h = convex_hull(s, pts);
    for (int q = 0; q < 100; ++q) {
      const double a = gen.uniform(-1, 1), b = gen.uniform(-1, 1);
      const Vec l = s.lift(ProjectivePoint(v3(a, b, 1)));
      const bool oracle = testsupport::polygon_contains(raw, a, b);
      const double res = h.membership_residual(l);
      // Skip queries within numerical distance of the hull boundary.
      if (oracle) {
        EXPECT_LT(res, 1e-9);
        EXPECT_TRUE(h.contains_lift(l));
      } else if (res > 1e-6) {
        EXPECT_FALSE(h.contains_lift(l));
      } else {
        EXPECT_LT(res, 1e-6);
      }
    }
  }
}

TEST(ProperlyEmbedded, Examples) {
  const ConvexDomain s = square();
  EXPECT_TRUE(properly_embedded(s, convex_hull(s, {ProjectivePoint({1, 1, 1}), ProjectivePoint({-1, -1, 1})})));
  const ConvexDomain t = triangle();
  EXPECT_FALSE(properly_embedded(t, convex_hull(t, {ProjectivePoint({1, 1, 1}), ProjectivePoint({1, 0, 0})})));
  EXPECT_TRUE(properly_embedded(t, convex_hull(t, t.vertices())));
  // Interior points only: ideal boundary lies inside the domain.
  EXPECT_FALSE(properly_embedded(t, convex_hull(t, {ProjectivePoint({1, 1, 1}), ProjectivePoint({1, 2, 3})})));
  // An edge of the triangle does not meet the interior at all.
  EXPECT_FALSE(properly_embedded(t, convex_hull(t, {ProjectivePoint({1, 0, 0}), ProjectivePoint({0, 1, 0})})));
  // Chord between points on two distinct edges of the square.
  EXPECT_TRUE(properly_embedded(s, convex_hull(s, {ProjectivePoint({1, 0.3, 1}), ProjectivePoint({-0.2, -1, 1})})));
}

TEST(ProperlyEmbedded, WholeDomainProperty) {
  Gen gen(24);
  for (int trial = 0; trial < 30; ++trial) {
    const ConvexDomain omega = testsupport::random_polytope(gen, gen.integer(3, 5));
    EXPECT_TRUE(properly_embedded(omega, convex_hull(omega, omega.vertices())));
    // Replacing one vertex by an interior point breaks proper embedding.
    auto vs = omega.vertices();
    vs[0] = omega.reference_point();
    EXPECT_FALSE(properly_embedded(omega, convex_hull(omega, vs)));
  }
}

TEST(FaceLine, Examples) {
  const ConvexDomain s = square();
  const ProjectivePoint x({1, 0.2, 1}), y({-1, -0.4, 1}), p({1, -0.5, 1}), q({-1, 0.9, 1});
  const FaceLineResult r = face_line_property(s, x, y, p, q);
  EXPECT_TRUE(r.pq_inside);
  EXPECT_TRUE(r.xy_inside);
  const ProjectivePoint c({1, 1, 1});
  const FaceLineResult deg = face_line_property(s, c, c, c, c);
  EXPECT_FALSE(deg.pq_inside);
  EXPECT_FALSE(deg.xy_inside);
  const ConvexDomain t = triangle();
  const FaceLineResult edge = face_line_property(t, ProjectivePoint({1, 0, 0}), ProjectivePoint({0, 1, 0}),
                                                 ProjectivePoint({1, 0, 0}), ProjectivePoint({0, 1, 0}));
  EXPECT_FALSE(edge.pq_inside);
  EXPECT_TRUE(edge.holds());
  try {
    face_line_property(s, x, y, ProjectivePoint({0.5, 1, 1}), q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FaceMembershipViolated);
  }
}

TEST(FaceLine, RandomFacePointsProperty) {
  Gen gen(25);
  for (int trial = 0; trial < 50; ++trial) {
    const ConvexDomain omega = testsupport::random_polytope(gen, gen.integer(3, 4));
    auto boundary_point = [&]() {
      const int f = gen.integer(0, static_cast<int>(omega.facets().rows()) - 1);
      std::vector<Vec> on;
      for (const auto& v : omega.vertex_lifts())
        if (std::abs(omega.facets().row(f).dot(v)) < 1e-9) on.push_back(v);
      Vec w = gen.positive_vec(static_cast<int>(on.size()), 0.2, 1.0);
      Vec c = Vec::Zero(omega.dim());
      for (std::size_t i = 0; i < on.size(); ++i) c += w(static_cast<Eigen::Index>(i)) * on[i];
      return ProjectivePoint(c);
    };
    const ProjectivePoint x = boundary_point(), y = boundary_point();
    const Face fx = open_face(omega, x), fy = open_face(omega, y);
    const ProjectivePoint p = fx.relative_interior_sample.back(), q = fy.relative_interior_sample.front();
    EXPECT_TRUE(face_line_property(omega, x, y, p, q).holds());
  }
}

TEST(Transformed, ImageDomain) {
  Gen gen(26);
  const ConvexDomain t = triangle();
  const ProjectiveMap g(gen.well_conditioned(3));
  const ConvexDomain gt = t.transformed(g);
  const ProjectivePoint x({1, 2, 3});
  EXPECT_EQ(gt.contains(g.apply(x)), Location::Interior);
  EXPECT_EQ(gt.contains(g.apply(ProjectivePoint({1, 1, 0}))), Location::Boundary);
  const ConvexDomain d = disk();
  const ConvexDomain gd = d.transformed(g);
  EXPECT_EQ(gd.contains(g.apply(ProjectivePoint({0.6, 0.8, 1}))), Location::Boundary);
  EXPECT_EQ(gd.contains(g.apply(ProjectivePoint({0.1, 0.1, 1}))), Location::Interior);
}
