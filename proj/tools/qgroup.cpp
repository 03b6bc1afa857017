// qgroup command line: run verification scenarios and inspect spin and
// phase-space constructions.
//
// Exit status: 0 when every check passes, 1 when some check fails, 2 on
// invalid input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgroup/qgroup.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qgroup::Error(qgroup::Errc::ConfigParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw qgroup::Error(qgroup::Errc::ConfigParseError, "cannot write '" + out_path + "'");
  out << text << '\n';
}

void summarize(const qgroup::VerificationReport& r) {
  int failed = 0;
  for (const auto& c : r.checks) {
    if (!c.passed) {
      ++failed;
      std::cerr << "  FAIL " << r.scenario << "/" << c.name << ": error " << c.max_error << " > " << c.tolerance
                << (c.details.empty() ? "" : " (" + c.details + ")") << '\n';
    }
  }
  std::cerr << (failed ? "FAIL " : "PASS ") << r.scenario << " (" << r.checks.size() - failed << "/" << r.checks.size()
            << " checks)\n";
}

int verify(const std::string& scenario, const std::string& config_path, const std::string& out_path,
           std::optional<double> tolerance) {
  std::vector<qgroup::VerificationReport> reports;
  if (scenario == "all" && config_path.empty()) {
    reports = qgroup::run_all(tolerance);
  } else {
    qgroup::ordered_json cfg = qgroup::ordered_json::object();
    if (!config_path.empty()) {
      try {
        cfg = qgroup::ordered_json::parse(read_file(config_path));
      } catch (const nlohmann::json::exception& e) {
        throw qgroup::Error(qgroup::Errc::ConfigParseError, e.what());
      }
      if (!cfg.is_object()) throw qgroup::Error(qgroup::Errc::ConfigParseError, "config must be a JSON object");
      if (!scenario.empty() && cfg.contains("scenario") && cfg["scenario"] != scenario)
        throw qgroup::Error(qgroup::Errc::ConfigParseError, "--scenario disagrees with the config file");
    }
    if (!scenario.empty()) cfg["scenario"] = scenario;
    if (tolerance) {
      if (!(*tolerance > 0)) throw qgroup::Error(qgroup::Errc::ConfigParseError, "--tolerance must be positive");
      if (!cfg.contains("tolerances")) cfg["tolerances"] = qgroup::ordered_json::object();
      cfg["tolerances"]["*"] = *tolerance;
    }
    reports.push_back(qgroup::run_scenario(cfg));
  }

  bool ok = true;
  for (const auto& r : reports) {
    summarize(r);
    ok = ok && r.passed();
  }
  if (reports.size() == 1) {
    emit(qgroup::dump_json(qgroup::to_json(reports.front())), out_path);
  } else {
    qgroup::ordered_json all = qgroup::ordered_json::array();
    for (const auto& r : reports) all.push_back(qgroup::to_json(r));
    emit(qgroup::dump_json(all), out_path);
  }
  return ok ? 0 : kExitFailed;
}

int spin(const std::string& j_text, double ax, double ay, double az, bool reduce) {
  const qgroup::Spin s = qgroup::Spin::parse(j_text);
  // No direction given means the z axis.
  const qgroup::Vec3 a = ax == 0 && ay == 0 && az == 0 ? qgroup::Vec3{0, 0, 1} : qgroup::normalized({ax, ay, az});
  const qgroup::OperatorBundle op = qgroup::spin_component_operator(s, a);
  const auto maps = qgroup::spin_value_maps("sign_flip");
  const qgroup::EigenOrbits eo = qgroup::eigen_orbit_partition(op, maps);

  qgroup::ordered_json j;
  j["j"] = s.j();
  j["direction"] = {a[0], a[1], a[2]};
  j["eigenvalues"] = op.spectrum.eigenvalues;
  j["multiplicities"] = op.spectrum.multiplicities;
  j["maximal"] = qgroup::maximality_check(op);
  j["sign_flip_orbits"] = eo.orbit_values;
  j["single_orbit"] = eo.single_orbit;
  if (reduce) {
    // Reduce the component sampled on [-j, j] in quarter steps to the orbit of +j.
    std::vector<double> grid;
    for (int k = -s.twice_j * 2; k <= s.twice_j * 2; ++k) grid.push_back(0.25 * k);
    const auto sampled = qgroup::ConceptualVariable::from_point_labels(grid);
    const auto red = qgroup::model_reduce(sampled, eo.orbit_values.back(), maps);
    j["reduced"] = {{"labels", red.variable.labels()}, {"transitive", red.transitive}};
  }

  qgroup::SpinScenario scn;
  scn.spin = s;
  scn.direction = a;
  const qgroup::VerificationReport r = qgroup::spin_orbit_demo(scn);
  summarize(r);
  j["report"] = qgroup::to_json(r);
  std::cout << qgroup::dump_json(j) << '\n';
  return r.passed() ? 0 : kExitFailed;
}

int phase(int n) {
  qgroup::ordered_json cfg;
  cfg["scenario"] = "phase";
  cfg["params"] = {{"n", n}};
  const qgroup::VerificationReport r = qgroup::run_scenario(cfg);
  summarize(r);
  std::cout << qgroup::dump_json(qgroup::to_json(r)) << '\n';
  return r.passed() ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group actions, coherent states and operator quantization on finite spaces"};
  app.require_subcommand(1);

  std::string scenario, config_path, out_path;
  std::optional<double> tolerance;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification scenario and print its JSON report");
  verify_cmd->add_option("--scenario", scenario, "Built-in scenario name, or 'all'");
  verify_cmd->add_option("--config", config_path, "JSON configuration file");
  verify_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
  verify_cmd->add_option("--tolerance", tolerance, "Override every numeric tolerance");

  std::string j_text = "1/2";
  double ax = 0, ay = 0, az = 0;
  bool reduce = false;
  auto* spin_cmd = app.add_subcommand("spin", "Spectrum, orbits and checks for the component a.J");
  spin_cmd->add_option("--j", j_text, "Spin, e.g. 1/2, 1, 3/2");
  spin_cmd->add_option("--ax", ax);
  spin_cmd->add_option("--ay", ay);
  spin_cmd->add_option("--az", az);
  spin_cmd->add_flag("--reduce", reduce, "Reduce a sampled component range to an orbit");

  int n = 4;
  auto* phase_cmd = app.add_subcommand("phase", "Finite phase-space checks on Z_n");
  phase_cmd->add_option("--n", n, "Lattice size");

  app.add_subcommand("list", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*verify_cmd) {
      if (scenario.empty() && config_path.empty())
        throw qgroup::Error(qgroup::Errc::ConfigParseError, "verify needs --scenario or --config");
      return verify(scenario, config_path, out_path, tolerance);
    }
    if (*spin_cmd) return spin(j_text, ax, ay, az, reduce);
    if (*phase_cmd) return phase(n);
    for (const auto& name : qgroup::builtin_scenarios()) std::cout << name << '\n';
    return 0;
  } catch (const qgroup::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
