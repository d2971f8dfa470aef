#pragma once

// Command reports and their serializations. Nothing time- or host-dependent
// goes into a report, so a rerun with the same scene and seed is
// byte-identical.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hilbert_flats/error.hpp"
#include "hilbert_flats/linalg.hpp"
#include "hilbert_flats/projective.hpp"

namespace hflat::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// JSON has no infinities or NaN; they travel as strings.
inline json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

inline json mat_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
  return a;
}

/// Unit-norm representative with a positive largest-magnitude entry.
inline Vec canonical_coords(const ProjectivePoint& p) {
  Vec v = p.coords().normalized();
  Eigen::Index i = 0;
  v.cwiseAbs().maxCoeff(&i);
  if (v(i) < 0) v = -v;
  return (v.array() + 0.0).matrix();  // no negative zeros in reports
}

inline json point_json(const ProjectivePoint& p) { return vec_json(canonical_coords(p)); }

inline json points_json(const std::vector<ProjectivePoint>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(point_json(p));
  return a;
}

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Report {
  std::string command;
  std::string digest;
  json outputs = json::object();
  std::map<std::string, double> residuals;
  std::map<std::string, bool> verdicts;
  json provenance = json::object();
  /// Tabular view for plotting: header plus one row per sample.
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::optional<std::pair<ErrorCode, std::string>> error;

  bool all_verdicts_pass() const {
    for (const auto& [k, v] : verdicts)
      if (!v) return false;
    return true;
  }

  /// 0 success, 1 hard error, 2 a verdict came out false.
  int exit_code() const { return error ? 1 : all_verdicts_pass() ? 0 : 2; }
};

inline json report_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["digest"] = r.digest;
  j["outputs"] = r.outputs;
  j["residuals"] = json::object();
  for (const auto& [k, v] : r.residuals) j["residuals"][k] = num(v);
  j["verdicts"] = json::object();
  for (const auto& [k, v] : r.verdicts) j["verdicts"][k] = v;
  j["provenance"] = r.provenance;
  if (r.error) j["error"] = json{{"code", std::string(error_name(r.error->first))}, {"message", r.error->second}};
  return j;
}

namespace detail {

inline std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string scalar_text(const json& v) {
  if (v.is_number_float()) return real17(v.get<double>());
  if (v.is_string()) return v.dump();
  return v.dump();
}

inline bool is_flat_array(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (e.is_object()) return false;
  return true;
}

inline std::string inline_array(const json& v) {
  std::string s = "[";
  bool first = true;
  for (const auto& e : v) {
    if (!first) s += ", ";
    first = false;
    s += e.is_array() ? inline_array(e) : scalar_text(e);
  }
  return s + "]";
}

inline void write_text(std::ostringstream& os, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      const json& e = it.value();
      if (e.is_object()) {
        os << pad << it.key() << ":\n";
        write_text(os, e, indent + 2);
      } else if (e.is_array() && !is_flat_array(e)) {
        os << pad << it.key() << ":\n";
        for (const auto& item : e) {
          os << pad << "  -\n";
          write_text(os, item, indent + 4);
        }
      } else {
        os << pad << it.key() << ": " << (e.is_array() ? inline_array(e) : scalar_text(e)) << "\n";
      }
    }
  } else {
    os << pad << (v.is_array() ? inline_array(v) : scalar_text(v)) << "\n";
  }
}

inline std::string csv_cell(const json& v) {
  if (v.is_number_float()) return real17(v.get<double>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

}  // namespace detail

/// Serializes a report: "json", "text" (indented key/value, reals with 17
/// significant digits) or "csv" (the tabular rows; residuals and verdicts
/// when the command has no per-sample rows).
inline std::string render_report(const Report& r, const std::string& format) {
  if (format == "json") return report_json(r).dump(2) + "\n";
  if (format == "text") {
    std::ostringstream os;
    detail::write_text(os, report_json(r), 0);
    return os.str();
  }
  if (format == "csv") {
    std::ostringstream os;
    if (!r.columns.empty()) {
      for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
      os << "\n";
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_cell(row[i]);
        os << "\n";
      }
    } else {
      os << "kind,name,value\n";
      for (const auto& [k, v] : r.residuals) os << "residual," << k << "," << detail::csv_cell(num(v)) << "\n";
      for (const auto& [k, v] : r.verdicts) os << "verdict," << k << "," << (v ? "true" : "false") << "\n";
    }
    return os.str();
  }
  throw Error(ErrorCode::InvalidInput, "unknown format '" + format + "' (expected json, text or csv)");
}

inline void write_report(const Report& r, const std::string& format, const std::string& path) {
  const std::string body = render_report(r, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace hflat::cli
