// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and printed with each line.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <algorithm>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hilbert_flats/cli/commands.hpp"
#include "hilbert_flats/hilbert_flats.hpp"
#include "support.hpp"

using namespace hflat;
using testsupport::Gen;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %2d  %s | %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

template <class... A>
std::string fmt(const char* f, A... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double eig_tau_from_exponents(const Vec& z) { return 0.5 * (z.maxCoeff() - z.minCoeff()); }

ProjectivePoint halton_simplex_point(std::uint64_t i, int k) {
  // Halton point of the cube mapped to log-coordinates in [-3, 3]^{k+1}.
  const Vec h = halton_point(i, k + 1);
  return ProjectivePoint(Vec((6.0 * h.array() - 3.0).exp().matrix()));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  // 1. Generic chord distance against the simplex closed form.
  report(1, "simplex metric: chord distance = closed form", [] {
    Gen g(101);
    double worst = 0.0;
    const int pairs = 1000;
    for (int t = 0; t < pairs; ++t) {
      const int k = 1 + t % 6;
      const ConvexDomain s = build_standard_simplex(k);
      const Vec x = g.simplex_point(k + 1), y = g.simplex_point(k + 1);
      const double err = std::abs(hilbert_distance(s, ProjectivePoint(x), ProjectivePoint(y)) - testsupport::simplex_formula(x, y));
      worst = std::max(worst, err / std::max(1.0, testsupport::simplex_formula(x, y)));
    }
    return Outcome{worst <= 1e-8, fmt("%d pairs, k=1..6, worst relative error %.3g, tol 1e-8", pairs, worst)};
  });

  // 2. Phi is an isometry onto (R^k, dist_rd).
  report(2, "isometry Phi: simplex distance = dist_rd(Phi x, Phi y)", [] {
    Gen g(202);
    double worst = 0.0;
    const int pairs = 1000;
    for (int t = 0; t < pairs; ++t) {
      const int k = 1 + t % 6;
      const ProjectivePoint x(g.simplex_point(k + 1)), y(g.simplex_point(k + 1));
      const double lhs = simplex_distance(x, y, k);
      const double rhs = dist_rd(phi_coordinates(x, k), phi_coordinates(y, k));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    return Outcome{worst <= 1e-10, fmt("%d pairs, k=1..6, worst |difference| %.3g, tol 1e-10", pairs, worst)};
  });

  // 3. Translation length.
  report(3, "translation length: constant displacement on simplex, Min-set bound on polytopes", [] {
    Gen g(303);
    // (a) positive diagonal maps of the simplex: displacement ≡ (1/2) log(λ_1/λ_d).
    double worst_const = 0.0;
    for (int k = 1; k <= 4; ++k) {
      const ConvexDomain s = build_standard_simplex(k);
      const Vec z = 1.5 * g.normal_vec(k + 1);
      const ProjectiveMap a = ProjectiveMap::diagonal(z.array().exp().matrix());
      const double tau = eig_tau_from_exponents(z);
      for (std::uint64_t i = 0; i < 1000; ++i)
        worst_const = std::max(worst_const, std::abs(displacement(s, a, halton_simplex_point(i, k)) - tau));
    }
    // (b) random diagonalizable automorphisms of random polytopes.
    SamplingConfig cfg;
    cfg.grid_samples = 2000;
    double worst_below = -kInf, worst_gap = 0.0;
    int scenes = 0;
    for (int t = 0; t < 100; ++t) {
      ConvexDomain omega = build_standard_simplex(1);
      Mat a;
      double tau = 0.0;
      if (t % 2 == 0) {
        // Conjugated simplex with diag(e^z).
        const int k = 1 + (t / 2) % 4;
        const Vec z = g.normal_vec(k + 1);
        const Mat h = g.well_conditioned(k + 1, 2.0);
        omega = build_standard_simplex(k).transformed(ProjectiveMap(h));
        a = h * Mat(z.array().exp().matrix().asDiagonal()) * h.inverse();
        tau = eig_tau_from_exponents(z);
      } else {
        // Pyramid over a regular n-gon with diag(λR, λ, μ), R = ±I.
        const int n = 3 + (t / 2) % 4;
        std::vector<Vec> vs;
        for (int j = 0; j < n; ++j) {
          const double th = 2.0 * std::numbers::pi * j / n;
          vs.push_back((Vec(4) << std::cos(th), std::sin(th), 1.0, 0.0).finished());
        }
        vs.push_back((Vec(4) << 0.0, 0.0, 0.0, 1.0).finished());
        omega = ConvexDomain::polytope(vs);
        const double sign = (n % 2 == 0 && t % 4 == 3) ? -1.0 : 1.0;
        const double ll = g.uniform(-1.2, 1.2), lm = g.uniform(-1.2, 1.2);
        a = Mat::Zero(4, 4);
        a(0, 0) = a(1, 1) = sign * std::exp(ll);
        a(2, 2) = std::exp(ll);
        a(3, 3) = std::exp(lm);
        tau = 0.5 * std::abs(ll - lm);
      }
      const MinSetSample m = min_set_sample(omega, ProjectiveMap(a), cfg);
      worst_below = std::max(worst_below, tau - m.best_displacement);
      worst_gap = std::max(worst_gap, m.best_displacement - tau);
      ++scenes;
    }
    const bool pass = worst_const <= 1e-8 && worst_below <= 1e-8 && worst_gap <= 1e-3;
    return Outcome{pass, fmt("simplex grid worst |disp - tau| %.3g (tol 1e-8); %d polytope scenes: max(tau - min disp) %.3g (tol 1e-8), "
                             "max(min disp - tau) %.3g (tol 1e-3)",
                             worst_const, scenes, worst_below, worst_gap)};
  });

  // 4. Metric axioms and projective invariance.
  report(4, "metric axioms and invariance", [] {
    std::mt19937_64 rng(404);
    Gen g(404);
    double worst = -kInf;
    int triples = 0, domains = 0;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const GroupSpec scene = random_commuting_scene(seed);
      const PropertyResult r = check_metric_axioms(scene.ambient, scene.generators, 1000, rng, 1e-9);
      worst = std::max(worst, r.worst);
      triples += r.trials;
      ++domains;
    }
    for (int d = 3; d <= 5; ++d) {
      const PropertyResult r = check_metric_axioms(testsupport::random_polytope(g, d), {}, 1000, rng, 1e-9);
      worst = std::max(worst, r.worst);
      triples += r.trials;
      ++domains;
    }
    return Outcome{worst <= 1e-9, fmt("%d domains, %d triples, worst violation %.3g, tol 1e-9", domains, triples, worst)};
  });

  // 5. Crampon estimate along chord geodesics.
  report(5, "Crampon estimate", [] {
    std::mt19937_64 rng(505);
    Gen g(505);
    double worst = -kInf;
    int trials = 0;
    std::vector<ConvexDomain> doms{build_standard_simplex(2), testsupport::random_polytope(g, 3), testsupport::random_polytope(g, 4),
                                   random_commuting_scene(2).ambient};
    for (const auto& omega : doms) {
      const PropertyResult r = check_crampon(omega, 250, 20, rng, 1e-9);
      worst = std::max(worst, r.worst);
      trials += r.trials;
    }
    return Outcome{worst <= 1e-9, fmt("%d pairs x 20 times = %d evaluations, worst violation %.3g, tol 1e-9", trials / 20, trials, worst)};
  });

  // 6. Convexity of neighborhoods of convex sets.
  report(6, "neighborhood convexity", [] {
    std::mt19937_64 rng(606);
    Gen g(606);
    double worst = -kInf;
    int trials = 0;
    for (int i = 0; i < 5; ++i) {
      const ConvexDomain omega = i == 4 ? random_commuting_scene(2).ambient : testsupport::random_polytope(g, 3 + i % 2);
      const PropertyResult r = check_neighborhood_convexity(omega, 10, 1000, rng, 1e-9);
      worst = std::max(worst, r.worst);
      trials += r.trials;
    }
    return Outcome{worst <= 1e-9, fmt("50 configurations, %d midpoint probes, worst violation %.3g, tol 1e-9 (exact distance to set)", trials,
                                      worst)};
  });

  // 7. Hull inflation.
  report(7, "hull inflation: ConvHull(M_r) displacement <= 2^{d-1} r", [] {
    std::mt19937_64 rng(707);
    double worst = -kInf;
    int samples = 0, empty = 0;
    SamplingConfig cfg;
    cfg.grid_samples = 3000;
    for (int t = 0; t < 20; ++t) {
      const GroupSpec grp = t % 4 == 3 ? random_pyramid_scene(rng, 3 + t % 3) : random_simplex_scene(rng, 1 + t % 3, 2);
      double tau = 0.0;
      for (const auto& a : grp.generators) tau = std::max(tau, translation_length(a));
      for (double margin : {0.5, 1.0}) {
        const HullInflationReport h = hull_inflation_check(grp, tau + margin, cfg, 1e-6);
        if (h.m_r_count == 0) ++empty;
        worst = std::max(worst, h.worst_displacement - h.bound);
        samples += h.hull_samples;
      }
    }
    return Outcome{worst <= 1e-6 && empty == 0,
                   fmt("20 commuting-pair scenes (d<=4), %d hull samples, worst excess over bound %.3g, tol 1e-6, empty M_r %d", samples,
                       worst, empty)};
  });

  // 8. Center of mass.
  report(8, "center of mass: in hull, equivariant, barycenter for symmetric sets", [] {
    Gen g(808);
    double worst_hull = 0.0, worst_equiv = 0.0, worst_bary = 0.0;
    for (int t = 0; t < 50; ++t) {
      const int d = 3 + t % 2;
      const ConvexDomain omega = t % 5 == 4 ? random_commuting_scene(2).ambient : testsupport::random_polytope(g, d);
      std::vector<ProjectivePoint> k;
      std::vector<Vec> lifts;
      const int n = 2 + t % 4;
      for (int i = 0; i < n; ++i) {
        lifts.push_back(testsupport::interior_lift(g, omega));
        k.emplace_back(lifts.back());
      }
      const ProjectivePoint c = center_of_mass(omega, k);
      worst_hull = std::max(worst_hull, cone_membership_residual(columns_of(lifts), omega.lift(c)));
      const ProjectiveMap h(g.well_conditioned(omega.dim(), 2.0));
      std::vector<ProjectivePoint> hk;
      for (const auto& p : k) hk.push_back(h.apply(p));
      worst_equiv = std::max(worst_equiv, center_of_mass(omega.transformed(h), hk).distance(h.apply(c)));
    }
    // Orbits of the coordinate permutations: the barycenter (1:...:1).
    for (int k = 1; k <= 3; ++k) {
      const ConvexDomain s = build_standard_simplex(k);
      std::vector<int> perm(static_cast<std::size_t>(k + 1));
      for (int i = 0; i <= k; ++i) perm[static_cast<std::size_t>(i)] = i;
      std::vector<ProjectivePoint> orbit;
      do {
        Vec v(k + 1);
        for (int i = 0; i <= k; ++i) v(i) = 1.0 + perm[static_cast<std::size_t>(i)];
        orbit.emplace_back(v);
      } while (std::next_permutation(perm.begin(), perm.end()));
      worst_bary = std::max(worst_bary, center_of_mass(s, orbit).distance(ProjectivePoint(Vec::Ones(k + 1))));
    }
    const bool pass = worst_hull < 1e-8 && worst_equiv <= 1e-6 && worst_bary <= 1e-8;
    return Outcome{pass, fmt("50 sets: hull residual %.3g (tol 1e-8), equivariance %.3g (tol 1e-6); symmetric sets: barycenter error %.3g "
                             "(tol 1e-8)",
                             worst_hull, worst_equiv, worst_bary)};
  });

  // 9. Flat torus pipeline on the scene templates.
  report(9, "flat torus pipeline: lattice cocompact, homomorphism subgroup not, finite group fixes a point", [] {
    std::string bad;
    double worst_fix = 0.0, worst_min = 0.0;
    for (int d = 1; d <= 4; ++d) {
      const auto s = cli::parse_scene_text(R"({"template": "example-3.2", "params": {"d": )" + std::to_string(d) + "}}");
      const FlatReport f = flat_torus_report(s.group(), s.sampling);
      worst_fix = std::max(worst_fix, f.diagnostics.at("vertex_fix_residual"));
      worst_min = std::max(worst_min, f.diagnostics.at("simplex_min_residual"));
      if (f.dim() != d || f.rank != d || !f.cocompact) bad += " lattice d=" + std::to_string(d);
    }
    for (int w = 1; w <= 3; ++w) {
      const auto s = cli::parse_scene_text(R"({"template": "example-3.3", "params": {"d": 2, "w": )" + std::to_string(w) + "}}");
      const FlatReport f = flat_torus_report(s.group(), s.sampling);
      if (f.dim() != 2 || f.rank != 1 || f.cocompact) bad += " homomorphism w=" + std::to_string(w);
    }
    const auto fin = cli::parse_scene_text(R"({"template": "finite-reflections"})");
    const FlatReport f = flat_torus_report(fin.group(), fin.sampling);
    if (f.dim() != 0) bad += " finite-dim";
    double fixed = 0.0;
    for (const auto& a : fin.group().generators) fixed = std::max(fixed, a.apply(f.simplex.vertices[0]).distance(f.simplex.vertices[0]));
    if (fixed > 1e-12) bad += " finite-not-fixed";
    const bool pass = bad.empty() && worst_fix < 1e-9 && worst_min < 1e-6;
    return Outcome{pass, fmt("lattice d=1..4 vertex-fix %.3g (tol 1e-9), simplex-in-Min %.3g (tol 1e-6); homomorphism w=1..3 rank 1 of 2; "
                             "finite group dim 0, fixed to %.3g",
                             worst_fix, worst_min, fixed) +
                             (bad.empty() ? "" : "; mismatches:" + bad)};
  });

  // 10. Face dynamics of diag(4,2,1) on the triangle.
  report(10, "face dynamics of diag(4,2,1) powers on the triangle", [] {
    const auto s = cli::parse_scene_text(R"({"template": "example-3.1", "params": {"d": 2, "z": [1.3862943611198906, 0.6931471805599453, 0]}})");
    const FaceDynamicsReport f = face_dynamics_check(s.omega(), s.group().invariant_subset, s.group().generators[0], ProjectivePoint({1, 1, 1}));
    // T is the projection onto e_1: diag(1,0,0) up to scale.
    Mat e11 = Mat::Zero(3, 3);
    e11(0, 0) = 1.0;
    const Mat tn = f.t.matrix() / f.t.matrix()(0, 0);
    const double t_err = (tn - e11).norm();
    const double worst = std::max({f.image_residual, std::max(f.kernel_margin, 0.0), f.y_kernel_residual, f.face_map_residual, t_err});
    const bool pass = f.image_in_face(1e-9) && f.kernel_disjoint(1e-9) && f.y_in_kernel(1e-9) && f.maps_onto_face(1e-9) && t_err < 1e-9 &&
                      f.x.distance(ProjectivePoint({1, 0, 0})) < 1e-9;
    return Outcome{pass, fmt("image in span e1 %.3g, kernel margin %.3g, y in ker %.3g, T(Omega)=F(x) %.3g, |T - e1e1^T| %.3g; worst %.3g, tol 1e-9",
                             f.image_residual, f.kernel_margin, f.y_kernel_residual, f.face_map_residual, t_err, worst)};
  });

  // 11. Product construction: the orbital limit set spans the whole domain.
  report(11, "product domain: orbital limit set hull is full-dimensional", [] {
    const auto s = cli::parse_scene_text(R"({"template": "product-example", "params": {"lambda": 2}})");
    const cli::Report one = cli::run_command(s, "limitset", {{"points", "1:1:1:1"}, {"radius", "60"}});
    const cli::Report many = cli::run_command(s, "limitset", {{"points", "1:1:1:1;1:2:3:1;3:1:1:2"}, {"radius", "60"}});
    if (one.error || many.error) return Outcome{false, "limit set command failed"};
    const int full = many.outputs["domain_dimension"].get<int>();
    const int h1 = one.outputs["hull_dimension"].get<int>(), hm = many.outputs["hull_dimension"].get<int>();
    return Outcome{hm == full && h1 < full, fmt("dim Omega* = %d; one base point spans %d, three base points span %d", full, h1, hm)};
  });

  // 12. Determinism and verify exit codes.
  report(12, "determinism: byte-identical reruns, verify exits 0 on 10 seeded scenes", [] {
    const std::string dir = "acceptance_tmp_";
    int mismatches = 0, nonzero = 0;
    for (int seed = 0; seed < 10; ++seed) {
      const std::string scene = dir + "scene" + std::to_string(seed) + ".json";
      std::ofstream(scene) << R"({"template": "random", "params": {"seed": )" << seed << "}, \"seed\": " << 17 + seed << "}";
      std::string outs[2];
      for (int run = 0; run < 2; ++run) {
        const std::string out = dir + "report" + std::to_string(run) + ".txt";
        const int status = std::system((std::string(HFLAT_TOOL) + " verify --format text --scene " + scene + " --out " + out + " 2>/dev/null").c_str());
        if (WEXITSTATUS(status) != 0) ++nonzero;
        outs[run] = read_file(out);
        std::remove(out.c_str());
      }
      if (outs[0].empty() || outs[0] != outs[1]) ++mismatches;
      std::remove(scene.c_str());
    }
    // Every other command, in process, on two template scenes.
    int commands = 0;
    for (const char* text : {R"({"template": "example-3.1", "points": {"x": [1,1,1], "y": [1,2,4]}, "config": {"sampling": {"grid_samples": 500}}})",
                             R"({"template": "example-3.2", "params": {"d": 2}, "points": {"x": [1,1,1], "y": [1,2,4]}, "config": {"sampling": {"grid_samples": 500}}})"}) {
      const std::vector<std::pair<std::string, cli::Params>> runs{
          {"dist", {{"x", "x"}, {"y", "y"}}}, {"geodesic", {{"x", "x"}, {"y", "y"}}}, {"tau", {}},        {"displacement", {{"x", "y"}, {"g", "0"}}},
          {"minset", {}},                     {"mr", {{"r", "3"}}},                   {"hull-check", {{"r", "3"}}}, {"com", {}},
          {"orbit", {{"radius", "3"}}},       {"limitset", {{"radius", "20"}}},       {"face-dynamics", {}}, {"flat", {}},
          {"verify", {}},                     {"echo", {}}};
      for (const auto& [cmd, params] : runs) {
        const cli::Report a = cli::run_command(cli::parse_scene_text(text), cmd, params);
        const cli::Report b = cli::run_command(cli::parse_scene_text(text), cmd, params);
        for (const char* f : {"json", "text", "csv"})
          if (cli::render_report(a, f) != cli::render_report(b, f)) ++mismatches;
        ++commands;
      }
    }
    return Outcome{mismatches == 0 && nonzero == 0,
                   fmt("10 verify runs x 2: %d nonzero exits; %d command reruns x 3 formats; %d byte mismatches", nonzero, commands, mismatches)};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
