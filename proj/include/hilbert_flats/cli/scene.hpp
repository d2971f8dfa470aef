#pragma once

// Scene files: JSON with a domain, named groups and subsets, named points and
// configuration. A template name expands into explicit declarations before
// validation; `scene_to_json` emits the expanded, canonical form.

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hilbert_flats/builders.hpp"
#include "hilbert_flats/cli/report.hpp"
#include "hilbert_flats/convex_domain.hpp"
#include "hilbert_flats/error.hpp"
#include "hilbert_flats/group_action.hpp"
#include "hilbert_flats/hilbert_metric.hpp"
#include "hilbert_flats/properties.hpp"

namespace hflat::cli {

using json = nlohmann::json;

struct DomainDecl {
  /// "polytope", "simplex", "quadric" or "ellipsoid".
  std::string kind;
  std::vector<Vec> vertices;
  int k = 0;
  Mat form;
  Vec interior;
  Vec center;
  Mat shape;
};

struct GroupDecl {
  std::vector<Mat> generators;
  std::vector<std::string> labels;
  std::optional<bool> commuting;
  std::optional<std::string> subset;
};

struct Scene {
  /// Template and parameters this scene was expanded from, if any.
  std::optional<std::string> origin_template;
  json origin_params = json::object();

  DomainDecl domain_decl;
  std::map<std::string, GroupDecl> group_decls;
  std::map<std::string, std::vector<Vec>> subset_decls;
  std::map<std::string, Vec> points;

  MetricConfig metric;
  SamplingConfig sampling;
  VerifyConfig verify;
  std::uint64_t seed = 1;

  // Built objects.
  std::optional<ConvexDomain> domain;
  std::map<std::string, ConvexSubset> subsets;
  std::map<std::string, GroupSpec> groups;

  const ConvexDomain& omega() const { return *domain; }

  /// The scene seed drives every sampler.
  void set_seed(std::uint64_t v) {
    seed = v;
    metric.rng_seed = v;
    sampling.seed = v;
  }

  /// The named group, or the only group when `name` is empty.
  const GroupSpec& group(const std::string& name = "") const {
    if (name.empty()) {
      if (groups.size() != 1)
        throw Error(ErrorCode::InvalidInput, groups.empty() ? "scene has no group" : "scene has several groups; pass group=<name>");
      return groups.begin()->second;
    }
    auto it = groups.find(name);
    if (it == groups.end()) throw Error(ErrorCode::InvalidInput, "unknown group '" + name + "'");
    return it->second;
  }
};

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void field_error(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + msg);
}

inline void check_keys(const json& j, const std::string& field, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) field_error(field, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) field_error(field.empty() ? it.key() : field + "." + it.key(), "unknown field");
  }
}

inline double get_real(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  return j.get<double>();
}

inline int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<int>();
}

inline Vec get_vec(const json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = get_real(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

/// Row-major matrix; every row must have the same length.
inline Mat get_mat(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a non-empty array of rows");
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(get_vec(j[i], field + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size())
      field_error(field, "row " + std::to_string(i) + " has " + std::to_string(rows.back().size()) + " entries, expected " +
                             std::to_string(rows.front().size()));
  }
  Mat m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return m;
}

inline std::vector<Vec> get_vec_list(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a non-empty array of vectors");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_vec(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline DomainDecl domain_decl_of(const ConvexDomain& omega) {
  DomainDecl d;
  if (omega.is_polytope()) {
    d.kind = "polytope";
    d.vertices = omega.vertex_lifts();
  } else {
    d.kind = "quadric";
    d.form = omega.quadric();
    d.interior = omega.reference_lift();
  }
  return d;
}

inline GroupDecl group_decl_of(const GroupSpec& g, const std::optional<std::string>& subset) {
  GroupDecl d;
  for (const auto& a : g.generators) d.generators.push_back(a.matrix());
  d.labels = g.labels;
  d.commuting = g.commuting ? std::optional<bool>(true) : std::nullopt;
  d.subset = subset;
  return d;
}

/// Declarations of a built group: domain, the group "A" and its subset "C".
inline void adopt_group(Scene& s, const GroupSpec& g) {
  s.domain_decl = domain_decl_of(g.ambient);
  std::optional<std::string> cname;
  if (g.invariant_subset) {
    s.subset_decls["C"] = g.invariant_subset->generators();
    cname = "C";
  }
  s.group_decls["A"] = group_decl_of(g, cname);
}

inline Vec param_vec(const json& p, const char* key, const Vec& fallback) {
  return p.contains(key) ? get_vec(p[key], std::string("params.") + key) : fallback;
}

inline int param_int(const json& p, const char* key, int fallback) {
  return p.contains(key) ? get_int(p[key], std::string("params.") + key) : fallback;
}

inline void expand_template(Scene& s, const std::string& name, const json& p) {
  if (!p.is_object()) field_error("params", "expected an object");
  if (name == "example-3.1") {
    check_keys(p, "params", {"d", "z"});
    const int d = param_int(p, "d", 2);
    Vec z(d + 1);
    for (int i = 0; i <= d; ++i) z(i) = static_cast<double>(d - i);
    z = param_vec(p, "z", z);
    adopt_group(s, simplex_with_diagonal(d, z));
  } else if (name == "example-3.2") {
    check_keys(p, "params", {"d"});
    adopt_group(s, diagonal_lattice(param_int(p, "d", 2)));
  } else if (name == "example-3.3") {
    // phi is (d+1) x m, row-major; the default is the single column w(0, 1, ..., d).
    check_keys(p, "params", {"d", "phi", "w"});
    const int d = param_int(p, "d", 2);
    Mat phi(d + 1, 1);
    for (int i = 0; i <= d; ++i) phi(i, 0) = i;
    if (p.contains("phi")) phi = get_mat(p["phi"], "params.phi");
    phi *= param_int(p, "w", 1);
    adopt_group(s, homomorphism_subgroup(d, phi));
  } else if (name == "product-example") {
    check_keys(p, "params", {"lambda"});
    const double lambda = p.contains("lambda") ? get_real(p["lambda"], "params.lambda") : 2.0;
    const GroupSpec base = interval_with_dilation(lambda);
    const ProductExample ex = build_product_example(base.ambient, base);
    s.domain_decl = domain_decl_of(ex.domain);
    s.subset_decls["C"] = ex.diagonal.generators();
    s.group_decls["A"] = group_decl_of(ex.group, std::string("C"));
  } else if (name == "finite-reflections") {
    check_keys(p, "params", {});
    adopt_group(s, square_reflections());
  } else if (name == "random") {
    check_keys(p, "params", {"seed"});
    const int seed = param_int(p, "seed", 0);
    if (seed < 0) field_error("params.seed", "must be nonnegative");
    adopt_group(s, random_commuting_scene(static_cast<std::uint64_t>(seed)));
  } else {
    field_error("template", "unknown template '" + name + "'");
  }
}

inline void parse_config(Scene& s, const json& c) {
  check_keys(c, "config", {"metric", "sampling", "verify"});
  if (c.contains("metric")) {
    const json& m = c["metric"];
    check_keys(m, "config.metric", {"boundary_tolerance", "hausdorff_samples", "hausdorff_reach", "com_samples", "com_radius_tolerance"});
    if (m.contains("boundary_tolerance")) s.metric.boundary_tolerance = get_real(m["boundary_tolerance"], "config.metric.boundary_tolerance");
    if (m.contains("hausdorff_samples")) s.metric.hausdorff_samples = get_int(m["hausdorff_samples"], "config.metric.hausdorff_samples");
    if (m.contains("hausdorff_reach")) s.metric.hausdorff_reach = get_real(m["hausdorff_reach"], "config.metric.hausdorff_reach");
    if (m.contains("com_samples")) s.metric.com_samples = get_int(m["com_samples"], "config.metric.com_samples");
    if (m.contains("com_radius_tolerance"))
      s.metric.com_radius_tolerance = get_real(m["com_radius_tolerance"], "config.metric.com_radius_tolerance");
  }
  if (c.contains("sampling")) {
    const json& m = c["sampling"];
    check_keys(m, "config.sampling", {"grid_samples", "refine_starts", "refine_iterations", "epsilon_min", "hull_samples",
                                      "accumulation_margin", "interior_margin"});
    auto& sc = s.sampling;
    if (m.contains("grid_samples")) sc.grid_samples = get_int(m["grid_samples"], "config.sampling.grid_samples");
    if (m.contains("refine_starts")) sc.refine_starts = get_int(m["refine_starts"], "config.sampling.refine_starts");
    if (m.contains("refine_iterations")) sc.refine_iterations = get_int(m["refine_iterations"], "config.sampling.refine_iterations");
    if (m.contains("epsilon_min")) sc.epsilon_min = get_real(m["epsilon_min"], "config.sampling.epsilon_min");
    if (m.contains("hull_samples")) sc.hull_samples = get_int(m["hull_samples"], "config.sampling.hull_samples");
    if (m.contains("accumulation_margin")) sc.accumulation_margin = get_real(m["accumulation_margin"], "config.sampling.accumulation_margin");
    if (m.contains("interior_margin")) sc.interior_margin = get_real(m["interior_margin"], "config.sampling.interior_margin");
  }
  if (c.contains("verify")) {
    const json& m = c["verify"];
    check_keys(m, "config.verify", {"metric_triples", "geodesic_pairs", "geodesic_times", "neighborhood_configs", "neighborhood_probes",
                                    "chord_pairs", "phi_pairs", "hull_radii"});
    auto& v = s.verify;
    if (m.contains("metric_triples")) v.metric_triples = get_int(m["metric_triples"], "config.verify.metric_triples");
    if (m.contains("geodesic_pairs")) v.geodesic_pairs = get_int(m["geodesic_pairs"], "config.verify.geodesic_pairs");
    if (m.contains("geodesic_times")) v.geodesic_times = get_int(m["geodesic_times"], "config.verify.geodesic_times");
    if (m.contains("neighborhood_configs")) v.neighborhood_configs = get_int(m["neighborhood_configs"], "config.verify.neighborhood_configs");
    if (m.contains("neighborhood_probes")) v.neighborhood_probes = get_int(m["neighborhood_probes"], "config.verify.neighborhood_probes");
    if (m.contains("chord_pairs")) v.chord_pairs = get_int(m["chord_pairs"], "config.verify.chord_pairs");
    if (m.contains("phi_pairs")) v.phi_pairs = get_int(m["phi_pairs"], "config.verify.phi_pairs");
    if (m.contains("hull_radii")) {
      const Vec r = get_vec(m["hull_radii"], "config.verify.hull_radii");
      v.hull_radii.assign(r.data(), r.data() + r.size());
    }
  }
}

inline DomainDecl parse_domain(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) field_error("domain.kind", "expected a string");
  DomainDecl d;
  d.kind = j["kind"].get<std::string>();
  if (d.kind == "polytope") {
    check_keys(j, "domain", {"kind", "vertices"});
    if (!j.contains("vertices")) field_error("domain.vertices", "missing");
    d.vertices = get_vec_list(j["vertices"], "domain.vertices");
  } else if (d.kind == "simplex") {
    check_keys(j, "domain", {"kind", "k"});
    if (!j.contains("k")) field_error("domain.k", "missing");
    d.k = get_int(j["k"], "domain.k");
  } else if (d.kind == "quadric") {
    check_keys(j, "domain", {"kind", "form", "interior"});
    if (!j.contains("form") || !j.contains("interior")) field_error("domain", "quadric needs 'form' and 'interior'");
    d.form = get_mat(j["form"], "domain.form");
    d.interior = get_vec(j["interior"], "domain.interior");
  } else if (d.kind == "ellipsoid") {
    check_keys(j, "domain", {"kind", "center", "shape"});
    if (!j.contains("center") || !j.contains("shape")) field_error("domain", "ellipsoid needs 'center' and 'shape'");
    d.center = get_vec(j["center"], "domain.center");
    d.shape = get_mat(j["shape"], "domain.shape");
  } else {
    field_error("domain.kind", "unknown domain kind '" + d.kind + "'");
  }
  return d;
}

inline GroupDecl parse_group(const json& j, const std::string& field) {
  check_keys(j, field, {"generators", "labels", "commuting", "subset"});
  GroupDecl g;
  if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
    field_error(field + ".generators", "expected a non-empty array of matrices");
  for (std::size_t i = 0; i < j["generators"].size(); ++i)
    g.generators.push_back(get_mat(j["generators"][i], field + ".generators[" + std::to_string(i) + "]"));
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) field_error(field + ".labels", "expected an array of strings");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) field_error(field + ".labels", "expected an array of strings");
      g.labels.push_back(l.get<std::string>());
    }
  }
  if (j.contains("commuting")) {
    if (!j["commuting"].is_boolean()) field_error(field + ".commuting", "expected a boolean");
    g.commuting = j["commuting"].get<bool>();
  }
  if (j.contains("subset")) {
    if (!j["subset"].is_string()) field_error(field + ".subset", "expected a subset name");
    g.subset = j["subset"].get<std::string>();
  }
  return g;
}

template <class F>
auto prefixed(const std::string& prefix, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError || e.code() == ErrorCode::LengthMismatch)
      throw Error(ErrorCode::ValidationError, prefix + ": " + e.message());
    throw;
  }
}

/// Builds the domain, subsets and groups from the declarations.
inline void build(Scene& s) {
  const DomainDecl& d = s.domain_decl;
  s.domain = prefixed("domain", [&]() -> ConvexDomain {
    if (d.kind == "polytope") return ConvexDomain::polytope(d.vertices, s.metric.boundary_tolerance);
    if (d.kind == "simplex") return build_standard_simplex(d.k);
    if (d.kind == "quadric") return ConvexDomain::from_quadric(d.form, d.interior, s.metric.boundary_tolerance);
    return ConvexDomain::ellipsoid(d.center, d.shape, s.metric.boundary_tolerance);
  });
  const int dim = s.domain->dim();
  for (const auto& [name, gens] : s.subset_decls) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].size() != dim)
        throw Error(ErrorCode::ValidationError, "subset '" + name + "': generator " + std::to_string(i) + " has wrong length");
    std::vector<Vec> lifts;
    for (const auto& v : gens) {
      const auto l = s.domain->try_lift(v);
      if (!l || s.domain->classify_lift(*l).location == Location::Outside)
        throw Error(ErrorCode::ValidationError, "subset '" + name + "': generator outside the closed domain");
      lifts.push_back(*l);
    }
    s.subsets.emplace(name, ConvexSubset(std::move(lifts)));
  }
  for (const auto& [name, decl] : s.group_decls) {
    std::vector<ProjectiveMap> gens;
    for (std::size_t i = 0; i < decl.generators.size(); ++i) {
      const Mat& m = decl.generators[i];
      if (m.rows() != dim || m.cols() != dim)
        throw Error(ErrorCode::ValidationError, "group '" + name + "': generator " + std::to_string(i) + " is not " + std::to_string(dim) + "x" +
                                                    std::to_string(dim));
      gens.emplace_back(m);
    }
    if (!decl.labels.empty() && decl.labels.size() != gens.size())
      throw Error(ErrorCode::ValidationError, "group '" + name + "': label count differs from generator count");
    std::optional<ConvexSubset> c;
    if (decl.subset) {
      auto it = s.subsets.find(*decl.subset);
      if (it == s.subsets.end()) throw Error(ErrorCode::ValidationError, "group '" + name + "': unknown subset '" + *decl.subset + "'");
      c = it->second;
    }
    if (decl.commuting.value_or(false) && !all_commute(gens))
      throw Error(ErrorCode::ValidationError, "group '" + name + "' is declared commuting but its generators do not commute");
    GroupSpec g = prefixed("group '" + name + "'", [&] { return make_group(*s.domain, gens, decl.labels, c); });
    if (decl.commuting && !*decl.commuting) g.commuting = false;
    s.groups.emplace(name, std::move(g));
  }
  for (const auto& [name, p] : s.points)
    if (p.size() != dim) throw Error(ErrorCode::ValidationError, "point '" + name + "' has wrong length");
  s.metric.validate();
  s.sampling.validate();
  s.verify.validate();
}

}  // namespace detail

inline Scene parse_scene_json(const json& j) {
  using namespace detail;
  check_keys(j, "", {"template", "params", "origin", "domain", "groups", "subsets", "points", "config", "seed"});
  Scene s;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      field_error("seed", "expected a nonnegative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  s.set_seed(s.seed);
  if (j.contains("config")) parse_config(s, j["config"]);
  if (j.contains("template")) {
    if (!j["template"].is_string()) field_error("template", "expected a string");
    for (const char* k : {"domain", "groups", "subsets", "origin"})
      if (j.contains(k)) field_error(k, "not allowed together with 'template'");
    const json params = j.contains("params") ? j["params"] : json::object();
    s.origin_template = j["template"].get<std::string>();
    s.origin_params = params;
    expand_template(s, *s.origin_template, params);
  } else {
    if (j.contains("params")) field_error("params", "only allowed together with 'template'");
    if (!j.contains("domain")) field_error("domain", "missing");
    s.domain_decl = parse_domain(j["domain"]);
    if (j.contains("subsets")) {
      if (!j["subsets"].is_object()) field_error("subsets", "expected an object");
      for (auto it = j["subsets"].begin(); it != j["subsets"].end(); ++it) {
        check_keys(it.value(), "subsets." + it.key(), {"generators"});
        if (!it.value().contains("generators")) field_error("subsets." + it.key() + ".generators", "missing");
        s.subset_decls[it.key()] = get_vec_list(it.value()["generators"], "subsets." + it.key() + ".generators");
      }
    }
    if (j.contains("groups")) {
      if (!j["groups"].is_object()) field_error("groups", "expected an object");
      for (auto it = j["groups"].begin(); it != j["groups"].end(); ++it) s.group_decls[it.key()] = parse_group(it.value(), "groups." + it.key());
    }
    if (j.contains("origin")) {
      const json& o = j["origin"];
      check_keys(o, "origin", {"template", "params"});
      if (!o.contains("template") || !o["template"].is_string()) field_error("origin.template", "expected a string");
      s.origin_template = o["template"].get<std::string>();
      if (o.contains("params")) s.origin_params = o["params"];
    }
  }
  if (j.contains("points")) {
    if (!j["points"].is_object()) field_error("points", "expected an object");
    for (auto it = j["points"].begin(); it != j["points"].end(); ++it) s.points[it.key()] = get_vec(it.value(), "points." + it.key());
  }
  build(s);
  return s;
}

inline Scene parse_scene_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": malformed JSON");
  }
  return parse_scene_json(j);
}

inline Scene parse_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open scene file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene_text(ss.str());
}

/// Expanded, canonical form of a scene (template already expanded).
inline json scene_to_json(const Scene& s) {
  json j;
  if (s.origin_template) j["origin"] = json{{"template", *s.origin_template}, {"params", s.origin_params}};
  const DomainDecl& d = s.domain_decl;
  json dom{{"kind", d.kind}};
  if (d.kind == "polytope") {
    dom["vertices"] = json::array();
    for (const auto& v : d.vertices) dom["vertices"].push_back(vec_json(v));
  } else if (d.kind == "simplex") {
    dom["k"] = d.k;
  } else if (d.kind == "quadric") {
    dom["form"] = mat_json(d.form);
    dom["interior"] = vec_json(d.interior);
  } else {
    dom["center"] = vec_json(d.center);
    dom["shape"] = mat_json(d.shape);
  }
  j["domain"] = dom;
  if (!s.subset_decls.empty()) {
    j["subsets"] = json::object();
    for (const auto& [name, gens] : s.subset_decls) {
      json g = json::array();
      for (const auto& v : gens) g.push_back(vec_json(v));
      j["subsets"][name] = json{{"generators", g}};
    }
  }
  if (!s.group_decls.empty()) {
    j["groups"] = json::object();
    for (const auto& [name, decl] : s.group_decls) {
      json g;
      g["generators"] = json::array();
      for (const auto& m : decl.generators) g["generators"].push_back(mat_json(m));
      if (!decl.labels.empty()) g["labels"] = decl.labels;
      if (decl.commuting) g["commuting"] = *decl.commuting;
      if (decl.subset) g["subset"] = *decl.subset;
      j["groups"][name] = g;
    }
  }
  if (!s.points.empty()) {
    j["points"] = json::object();
    for (const auto& [name, p] : s.points) j["points"][name] = vec_json(p);
  }
  j["config"]["metric"] = json{{"boundary_tolerance", s.metric.boundary_tolerance},
                               {"hausdorff_samples", s.metric.hausdorff_samples},
                               {"hausdorff_reach", s.metric.hausdorff_reach},
                               {"com_samples", s.metric.com_samples},
                               {"com_radius_tolerance", s.metric.com_radius_tolerance}};
  j["config"]["sampling"] = json{{"grid_samples", s.sampling.grid_samples},
                                 {"refine_starts", s.sampling.refine_starts},
                                 {"refine_iterations", s.sampling.refine_iterations},
                                 {"epsilon_min", s.sampling.epsilon_min},
                                 {"hull_samples", s.sampling.hull_samples},
                                 {"accumulation_margin", s.sampling.accumulation_margin},
                                 {"interior_margin", s.sampling.interior_margin}};
  j["config"]["verify"] = json{{"metric_triples", s.verify.metric_triples},
                               {"geodesic_pairs", s.verify.geodesic_pairs},
                               {"geodesic_times", s.verify.geodesic_times},
                               {"neighborhood_configs", s.verify.neighborhood_configs},
                               {"neighborhood_probes", s.verify.neighborhood_probes},
                               {"chord_pairs", s.verify.chord_pairs},
                               {"phi_pairs", s.verify.phi_pairs},
                               {"hull_radii", s.verify.hull_radii}};
  j["seed"] = s.seed;
  return j;
}

}  // namespace hflat::cli
