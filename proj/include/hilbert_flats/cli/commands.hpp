#pragma once

// Subcommand dispatch. Each command reads named parameters (k=v strings),
// calls the library and fills a Report; library errors become the report's
// error instead of escaping.

#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hilbert_flats/cli/report.hpp"
#include "hilbert_flats/cli/scene.hpp"
#include "hilbert_flats/flat_torus.hpp"
#include "hilbert_flats/properties.hpp"

namespace hflat::cli {

using Params = std::map<std::string, std::string>;

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"dist",  "geodesic",  "tau",           "displacement", "minset", "mr",     "hull-check",
                                              "com",   "orbit",     "limitset",      "face-dynamics", "flat",  "verify", "echo"};
  return names;
}

namespace detail {

class ParamReader {
 public:
  ParamReader(const Scene& s, const Params& p) : scene_(s), params_(p) {}

  bool has(const std::string& key) const {
    used_.push_back(key);
    return params_.count(key) != 0;
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    used_.push_back(key);
    auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return parse_real(params_.at(key), key);
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const std::string& t = params_.at(key);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) throw Error(ErrorCode::InvalidInput, "parameter " + key + ": expected an integer");
    return v;
  }

  /// A named scene point or coordinates "1:2:4", "1,2,4" or "[1,2,4]".
  ProjectivePoint point(const std::string& text, const std::string& key) const {
    auto named = scene_.points.find(text);
    if (named != scene_.points.end()) return ProjectivePoint(named->second);
    std::string t = text;
    if (!t.empty() && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
    std::replace(t.begin(), t.end(), ':', ',');
    std::vector<double> xs;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) xs.push_back(parse_real(item, key));
    if (xs.size() != static_cast<std::size_t>(scene_.omega().dim()))
      throw Error(ErrorCode::InvalidInput, "parameter " + key + ": '" + text + "' is neither a scene point nor a point of P(R^" +
                                               std::to_string(scene_.omega().dim()) + ")");
    return ProjectivePoint(Eigen::Map<const Vec>(xs.data(), static_cast<Eigen::Index>(xs.size())));
  }

  ProjectivePoint point(const std::string& key) const {
    if (!has(key)) throw Error(ErrorCode::InvalidInput, "missing parameter " + key);
    return point(params_.at(key), key);
  }

  ProjectivePoint point_or_reference(const std::string& key) const {
    return has(key) ? point(params_.at(key), key) : scene_.omega().reference_point();
  }

  /// ';'-separated list of points.
  std::vector<ProjectivePoint> point_list(const std::string& key) const {
    std::vector<ProjectivePoint> out;
    std::stringstream ss(params_.at(key));
    std::string item;
    while (std::getline(ss, item, ';'))
      if (!item.empty()) out.push_back(point(item, key));
    return out;
  }

  const GroupSpec& group() const { return scene_.group(text("group", "")); }

  /// Generator by label or index (default 0).
  std::size_t generator_index(const GroupSpec& g) const {
    const std::string t = text("g", "0");
    for (std::size_t i = 0; i < g.labels.size(); ++i)
      if (g.labels[i] == t) return i;
    const int i = integer("g", 0);
    if (i < 0 || static_cast<std::size_t>(i) >= g.generators.size())
      throw Error(ErrorCode::InvalidInput, "generator index " + std::to_string(i) + " out of range");
    return static_cast<std::size_t>(i);
  }

  /// Parameters the command never looked at.
  std::vector<std::string> unused() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : params_)
      if (std::find(used_.begin(), used_.end(), k) == used_.end()) out.push_back(k);
    return out;
  }

 private:
  static double parse_real(const std::string& raw, const std::string& key) {
    std::string t = raw;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
      throw Error(ErrorCode::InvalidInput, "parameter " + key + ": '" + raw + "' is not a number");
    return v;
  }

  const Scene& scene_;
  const Params& params_;
  mutable std::vector<std::string> used_;
};

inline std::vector<json> coords_row(const ProjectivePoint& p) {
  std::vector<json> row;
  const Vec c = canonical_coords(p);
  for (Eigen::Index i = 0; i < c.size(); ++i) row.push_back(num(c(i)));
  return row;
}

inline std::vector<std::string> coord_columns(int d, const std::string& prefix = "x") {
  std::vector<std::string> cols;
  for (int i = 0; i < d; ++i) cols.push_back(prefix + std::to_string(i));
  return cols;
}

inline json labels_json(const GroupSpec& g) {
  json a = json::array();
  for (std::size_t i = 0; i < g.generators.size(); ++i) a.push_back(i < g.labels.size() ? g.labels[i] : std::to_string(i));
  return a;
}

inline void point_rows(Report& r, const std::vector<ProjectivePoint>& pts, int d) {
  r.columns = coord_columns(d);
  r.columns.insert(r.columns.begin(), "index");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto row = coords_row(pts[i]);
    row.insert(row.begin(), static_cast<int>(i));
    r.rows.push_back(std::move(row));
  }
}

// --- commands --------------------------------------------------------------

inline void cmd_dist(const Scene& s, const ParamReader& p, Report& r) {
  const ProjectivePoint x = p.point("x"), y = p.point("y");
  const DistanceReport d = hilbert_distance_report(s.omega(), x, y);
  r.outputs["value"] = num(d.value);
  r.outputs["near_boundary"] = d.near_boundary;
  r.outputs["chord_parameters"] = json::array({num(d.t_a), num(d.t_b)});
  r.outputs["x"] = point_json(x);
  r.outputs["y"] = point_json(y);
  r.residuals["symmetry"] = std::abs(d.value - hilbert_distance(s.omega(), y, x));
}

inline void cmd_geodesic(const Scene& s, const ParamReader& p, Report& r) {
  const ProjectivePoint x = p.point("x"), y = p.point("y");
  const int n = p.integer("samples", 11);
  if (n < 2) throw Error(ErrorCode::InvalidInput, "samples must be >= 2");
  const double total = hilbert_distance(s.omega(), x, y);
  std::vector<ProjectivePoint> pts;
  double worst = 0.0;
  r.columns = coord_columns(s.omega().dim());
  r.columns.insert(r.columns.begin(), {"t", "distance_from_x"});
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    const ProjectivePoint q = geodesic_point(s.omega(), x, y, t);
    const double dx = hilbert_distance(s.omega(), x, q), dy = hilbert_distance(s.omega(), q, y);
    worst = std::max(worst, std::abs(dx + dy - total));
    pts.push_back(q);
    auto row = coords_row(q);
    row.insert(row.begin(), {num(t), num(dx)});
    r.rows.push_back(std::move(row));
  }
  r.outputs["length"] = num(total);
  r.outputs["points"] = points_json(pts);
  r.residuals["additivity"] = worst;
  r.verdicts["additive"] = worst <= 1e-9 * std::max(1.0, total);
}

inline void cmd_tau(const Scene&, const ParamReader& p, Report& r) {
  const GroupSpec& g = p.group();
  json taus = json::array();
  r.columns = {"generator", "tau"};
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    const double t = translation_length(g.generators[i]);
    taus.push_back(num(t));
    r.rows.push_back({labels_json(g)[i], num(t)});
  }
  r.outputs["generators"] = labels_json(g);
  r.outputs["tau"] = taus;
}

inline void cmd_displacement(const Scene& s, const ParamReader& p, Report& r) {
  const GroupSpec& g = p.group();
  const std::size_t i = p.generator_index(g);
  const ProjectivePoint x = p.point_or_reference("x");
  const double d = displacement(s.omega(), g.generators[i], x);
  const double tau = translation_length(g.generators[i]);
  r.outputs["generator"] = labels_json(g)[i];
  r.outputs["x"] = point_json(x);
  r.outputs["displacement"] = num(d);
  r.outputs["tau"] = num(tau);
  r.residuals["displacement_minus_tau"] = d - tau;
  r.verdicts["at_least_tau"] = d >= tau - 1e-8;
}

inline void cmd_minset(const Scene& s, const ParamReader& p, Report& r) {
  const GroupSpec& g = p.group();
  const std::size_t i = p.generator_index(g);
  const MinSetSample m = min_set_sample(s.omega(), g.generators[i], s.sampling);
  r.outputs["generator"] = labels_json(g)[i];
  r.outputs["tau"] = num(m.translation_length);
  r.outputs["threshold"] = num(m.threshold);
  r.outputs["best_displacement"] = num(m.best_displacement);
  r.outputs["best_point"] = m.best_point ? point_json(*m.best_point) : json(nullptr);
  r.outputs["empty"] = m.empty();
  r.outputs["count"] = static_cast<int>(m.points.size());
  r.outputs["grid_size"] = m.grid_size;
  r.residuals["best_minus_tau"] = m.best_displacement - m.translation_length;
  r.verdicts["at_least_tau"] = m.best_displacement >= m.translation_length - 1e-8;
  point_rows(r, m.points, s.omega().dim());
}

inline void cmd_mr(const Scene& s, const ParamReader& p, Report& r) {
  const GroupSpec& g = p.group();
  const MrSample m = m_r_sample(g, p.real("r", 1.0), s.sampling);
  r.outputs["r"] = num(m.r);
  r.outputs["count"] = static_cast<int>(m.points.size());
  r.outputs["grid_size"] = m.grid_size;
  r.outputs["restricted_to_subset"] = g.invariant_subset.has_value();
  point_rows(r, m.points, s.omega().dim());
}

inline void cmd_hull_check(const Scene& s, const ParamReader& p, Report& r) {
  const GroupSpec& g = p.group();
  const HullInflationReport h = hull_inflation_check(g, p.real("r", 1.0), s.sampling);
  r.outputs["r"] = num(h.r);
  r.outputs["bound"] = num(h.bound);
  r.outputs["m_r_count"] = h.m_r_count;
  r.outputs["hull_samples"] = h.hull_samples;
  r.outputs["worst_displacement"] = num(h.worst_displacement);
  r.residuals["worst_over_bound"] = h.worst_displacement - h.bound;
  r.residuals["worst_ratio"] = h.worst_ratio;
  r.verdicts["within_bound"] = h.passed;
}

inline void cmd_com(const Scene& s, const ParamReader& p, Report& r) {
  std::vector<ProjectivePoint> k;
  if (p.has("points")) {
    k = p.point_list("points");
  } else {
    for (const auto& [name, v] : s.points) k.emplace_back(v);
  }
  if (k.empty()) throw Error(ErrorCode::EmptyInput, "com needs points=... or named scene points");
  const CenterOfMassResult c = center_of_mass_detailed(s.omega(), k, s.metric);
  std::vector<Vec> lifts;
  for (const auto& q : k) lifts.push_back(s.omega().lift(q));
  const double hull = cone_membership_residual(columns_of(lifts), s.omega().lift(c.point));
  r.outputs["center"] = point_json(c.point);
  r.outputs["radii"] = json::array();
  for (double x : c.radii) r.outputs["radii"].push_back(num(x));
  r.outputs["dimensions"] = c.dimensions;
  r.outputs["final_diameter"] = num(c.final_diameter);
  r.residuals["hull_membership"] = hull;
  r.verdicts["in_hull"] = hull < 1e-8;
}

inline void cmd_orbit(const Scene& s, const ParamReader& p, Report& r) {
  const GroupSpec& g = p.group();
  const OrbitSample o = orbit(g, p.point_or_reference("x"), p.integer("radius", 4), s.sampling);
  r.outputs["base_point"] = point_json(o.base_point);
  r.outputs["word_radius"] = o.word_radius;
  r.outputs["count"] = static_cast<int>(o.points.size());
  r.outputs["boundary_accumulation"] = points_json(o.boundary_accumulation);
  r.columns = coord_columns(s.omega().dim());
  r.columns.insert(r.columns.begin(), {"index", "word_length"});
  for (std::size_t i = 0; i < o.points.size(); ++i) {
    auto row = coords_row(o.points[i]);
    row.insert(row.begin(), {static_cast<int>(i), o.word_lengths[i]});
    r.rows.push_back(std::move(row));
  }
}

inline void cmd_limitset(const Scene& s, const ParamReader& p, Report& r) {
  const GroupSpec& g = p.group();
  std::vector<ProjectivePoint> bases;
  if (p.has("points")) {
    bases = p.point_list("points");
  } else {
    // Reference point plus seeded interior points.
    bases.push_back(s.omega().reference_point());
    std::mt19937_64 rng(s.seed);
    const int extra = p.integer("bases", s.omega().dim());
    for (int i = 0; i < extra; ++i) bases.emplace_back(hflat::detail::random_interior_lift(s.omega(), rng));
  }
  const LimitSetSample l = orbital_limit_sample(g, bases, p.integer("radius", 60), s.sampling);
  const int full = s.omega().dim() - 1;
  r.outputs["base_points"] = points_json(l.base_points);
  r.outputs["count"] = static_cast<int>(l.points.size());
  r.outputs["hull_dimension"] = l.hull_dimension;
  r.outputs["domain_dimension"] = full;
  r.outputs["full_dimensional"] = l.hull_dimension == full;
  point_rows(r, l.points, s.omega().dim());
}

inline void cmd_face_dynamics(const Scene& s, const ParamReader& p, Report& r) {
  const GroupSpec& g = p.group();
  const std::size_t i = p.generator_index(g);
  const FaceDynamicsReport f =
      face_dynamics_check(s.omega(), g.invariant_subset, g.generators[i], p.point_or_reference("x"), p.integer("max_power", 4096));
  const double tol = p.real("tol", 1e-9);
  r.outputs["generator"] = labels_json(g)[i];
  r.outputs["powers_used"] = f.powers_used;
  r.outputs["T"] = mat_json(f.t.matrix());
  r.outputs["rank_T"] = f.t.rank();
  r.outputs["x"] = point_json(f.x);
  r.outputs["y"] = point_json(f.y);
  r.outputs["face_dimension"] = f.face.dimension;
  r.residuals["limit"] = f.limit_residual;
  r.residuals["inverse_limit"] = f.inverse_limit_residual;
  r.residuals["image_in_face"] = f.image_residual;
  r.residuals["kernel_margin"] = f.kernel_margin;
  r.residuals["y_in_kernel"] = f.y_kernel_residual;
  r.residuals["face_map"] = f.face_map_residual;
  if (f.subset_checked) r.residuals["subset"] = f.subset_residual;
  r.verdicts["image_in_face"] = f.image_in_face(tol);
  r.verdicts["kernel_misses_domain"] = f.kernel_disjoint(tol);
  r.verdicts["y_in_kernel"] = f.y_in_kernel(tol);
  r.verdicts["maps_onto_face"] = f.maps_onto_face(tol);
  if (f.subset_checked) r.verdicts["subset_to_face"] = f.subset_residual <= tol;
}

inline void cmd_flat(const Scene& s, const ParamReader& p, Report& r) {
  const FlatReport f = flat_torus_report(p.group(), s.sampling);
  json vj = json::array();
  for (const auto& v : f.simplex.vertices) vj.push_back(point_json(v));
  r.outputs["dim"] = f.dim();
  r.outputs["vertices"] = vj;
  r.outputs["rank"] = f.rank;
  r.outputs["cocompact"] = f.cocompact;
  json basis = json::array();
  for (const auto& b : f.lattice_basis) basis.push_back(vec_json(b));
  r.outputs["lattice_basis"] = basis;
  r.outputs["fixed_points_used"] = points_json(f.fixed_points_used);
  r.outputs["min_set_witness_count"] = static_cast<int>(f.min_set_witnesses.size());
  r.outputs["stages"] = f.stages;
  if (f.error) r.outputs["stage_error"] = *f.error;
  for (const auto& [k, v] : f.diagnostics) r.residuals[k] = v;
  r.verdicts["pipeline_complete"] = !f.error.has_value();
  if (auto it = f.diagnostics.find("vertex_fix_residual"); it != f.diagnostics.end()) r.verdicts["vertices_fixed"] = it->second < 1e-9;
  if (auto it = f.diagnostics.find("simplex_min_residual"); it != f.diagnostics.end()) r.verdicts["simplex_in_min"] = it->second < 1e-6;
  // Tabular view: the sampled points of Min(a_1) ∩ ... ∩ Min(a_m).
  point_rows(r, f.min_set_witnesses, s.omega().dim());
}

inline void cmd_verify(const Scene& s, const ParamReader& p, Report& r) {
  const GroupSpec* g = nullptr;
  if (!s.groups.empty()) g = &p.group();
  const auto results = run_property_suite(s.omega(), g, s.verify, s.sampling, s.metric, s.seed);
  json props = json::array();
  r.columns = {"property", "applicable", "passed", "trials", "worst", "tolerance"};
  for (const auto& res : results) {
    props.push_back(json{{"name", res.name},
                         {"applicable", res.applicable},
                         {"passed", res.passed},
                         {"trials", res.trials},
                         {"worst", num(res.worst)},
                         {"tolerance", num(res.tolerance)},
                         {"note", res.note}});
    r.rows.push_back({res.name, res.applicable, res.passed, res.trials, num(res.worst), num(res.tolerance)});
    r.verdicts[res.name] = res.passed;
    if (res.applicable) r.residuals[res.name] = res.worst;
  }
  r.outputs["properties"] = props;
}

inline void cmd_echo(const Scene& s, const ParamReader&, Report& r) { r.outputs["scene"] = scene_to_json(s); }

inline json config_json(const Scene& s) {
  const json sc = scene_to_json(s);
  return sc["config"];
}

}  // namespace detail

/// Runs one command. Library errors are captured in the report; an unknown
/// command or unused parameter is an error too.
inline Report run_command(const Scene& scene, const std::string& command, const Params& params = {},
                          const std::vector<std::string>& overrides = {}) {
  Report r;
  r.command = command;
  std::string canon = scene_to_json(scene).dump() + "\n" + command;
  for (const auto& [k, v] : params) canon += "\n" + k + "=" + v;
  r.digest = hex64(fnv1a64(canon));
  r.provenance = json{{"seed", scene.seed}, {"version", kVersion}, {"tolerances", detail::config_json(scene)}, {"overrides", overrides}};
  json pj = json::object();
  for (const auto& [k, v] : params) pj[k] = v;
  r.provenance["parameters"] = pj;

  using Fn = void (*)(const Scene&, const detail::ParamReader&, Report&);
  static const std::map<std::string, Fn> table{
      {"dist", detail::cmd_dist},         {"geodesic", detail::cmd_geodesic},   {"tau", detail::cmd_tau},
      {"displacement", detail::cmd_displacement}, {"minset", detail::cmd_minset}, {"mr", detail::cmd_mr},
      {"hull-check", detail::cmd_hull_check},     {"com", detail::cmd_com},       {"orbit", detail::cmd_orbit},
      {"limitset", detail::cmd_limitset},         {"face-dynamics", detail::cmd_face_dynamics},
      {"flat", detail::cmd_flat},                 {"verify", detail::cmd_verify}, {"echo", detail::cmd_echo}};
  auto it = table.find(command);
  if (it == table.end()) {
    r.error = {ErrorCode::UnknownCommand, "unknown command '" + command + "'"};
    return r;
  }
  try {
    detail::ParamReader reader(scene, params);
    it->second(scene, reader, r);
    if (const auto unused = reader.unused(); !unused.empty())
      throw Error(ErrorCode::InvalidInput, "parameter '" + unused.front() + "' is not used by " + command);
  } catch (const Error& e) {
    r.error = {e.code(), e.message()};
  }
  return r;
}

}  // namespace hflat::cli
