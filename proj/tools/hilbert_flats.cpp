// hilbert-flats <command> --scene <path> [--out <path>] [--format json|text|csv]
//               [--seed <n>] [--param key=value]...
//
// Exit codes: 0 success, 1 hard error, 2 a verdict came out false.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hilbert_flats/cli/commands.hpp"

namespace {

int emit(const hflat::cli::Report& r, const std::string& format, const std::string& out) {
  try {
    if (out.empty()) {
      std::cout << hflat::cli::render_report(r, format);
    } else {
      hflat::cli::write_report(r, format, out);
    }
  } catch (const hflat::Error& e) {
    std::cerr << "hilbert-flats: " << e.what() << "\n";
    return 1;
  }
  if (r.error) std::cerr << "hilbert-flats: " << hflat::error_name(r.error->first) << ": " << r.error->second << "\n";
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert geometry and flat torus computations"};
  std::string command, scene_path, out, format = "json";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> raw_params;
  app.add_option("command", command, "dist, geodesic, tau, displacement, minset, mr, hull-check, com, orbit, limitset, "
                                     "face-dynamics, flat, verify or echo")
      ->required();
  app.add_option("--scene", scene_path, "scene file (JSON)")->required();
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--format", format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_option("--seed", seed, "override the scene seed");
  app.add_option("--param,-p", raw_params, "command parameter key=value (repeatable)");
  CLI11_PARSE(app, argc, argv);

  hflat::cli::Report failed;
  failed.command = command;
  try {
    hflat::cli::Scene scene = hflat::cli::parse_scene(scene_path);
    std::vector<std::string> overrides;
    if (seed) {
      scene.set_seed(*seed);
      overrides.push_back("seed=" + std::to_string(*seed));
    }
    hflat::cli::Params params;
    for (const auto& kv : raw_params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw hflat::Error(hflat::ErrorCode::InvalidInput, "--param expects key=value, got '" + kv + "'");
      params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return emit(hflat::cli::run_command(scene, command, params, overrides), format, out);
  } catch (const hflat::Error& e) {
    failed.error = {e.code(), e.message()};
  }
  return emit(failed, format, out);
}
