// Command-line runner for the kerrqed simulation library.
//
// Exit codes: 0 success, 2 configuration error, 3 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kerrqed/io.hpp"
#include "kerrqed/scenario.hpp"

namespace {

using kerrqed::ConfigError;
using kerrqed::ScenarioConfig;

struct CommonOpts {
  std::string config_path;
  std::string preset_name;
  std::string out_dir = ".";
  std::string format;
  std::string frame;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_source) {
  auto* cfg = cmd->add_option("--config", o.config_path, "scenario config JSON");
  auto* pre = cmd->add_option("--preset", o.preset_name, "preset name (see 'presets')");
  if (needs_source) {
    cfg->excludes(pre);
    pre->excludes(cfg);
  }
  cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--format", o.format, "override output format: csv|json");
  cmd->add_option("--frame", o.frame, "override frame: lab|rotating");
  cmd->add_option("--threads", o.threads, "worker threads for grids (0 = hardware)");
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, "cannot open config file");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
  return ScenarioConfig::from_json(j);
}

std::vector<ScenarioConfig> gather_runs(const CommonOpts& o) {
  std::vector<ScenarioConfig> runs;
  if (!o.config_path.empty()) {
    runs.push_back(load_config_file(o.config_path));
  } else if (!o.preset_name.empty()) {
    const kerrqed::Preset* p = kerrqed::find_preset(o.preset_name);
    if (!p) throw ConfigError("--preset", "unknown preset '" + o.preset_name + "'");
    runs = p->runs;
  } else {
    throw ConfigError("--config", "need --config or --preset");
  }
  for (auto& r : runs) {
    if (!o.format.empty()) {
      if (o.format != "csv" && o.format != "json")
        throw ConfigError("--format", "must be csv or json");
      for (auto& out : r.outputs) {
        out.format = o.format;
        const auto dot = out.path.rfind('.');
        if (dot != std::string::npos) out.path = out.path.substr(0, dot + 1) + o.format;
      }
    }
    if (!o.frame.empty()) {
      if (o.frame == "lab")
        r.frame = kerrqed::Frame::Lab;
      else if (o.frame == "rotating")
        r.frame = kerrqed::Frame::Rotating;
      else
        throw ConfigError("--frame", "must be lab or rotating");
    }
    r.validate();
  }
  return runs;
}

void ensure_output(std::vector<ScenarioConfig>& runs, const std::string& observable) {
  for (auto& r : runs) {
    const bool has = std::any_of(r.outputs.begin(), r.outputs.end(),
                                 [&](const auto& o) { return o.observable == observable; });
    if (!has) {
      const std::string suffix = observable == "wigner" && r.absolute_time_grid(0.0).size() > 1
                                     ? "_{i}.csv"
                                     : ".csv";
      r.outputs.push_back({observable, r.name + "_" + observable + suffix, "csv"});
      r.validate();
    }
  }
}

int run_all(const std::vector<ScenarioConfig>& runs, const CommonOpts& o) {
  for (const auto& r : runs) {
    const kerrqed::RunSummary s = kerrqed::run(r, o.out_dir, o.threads);
    std::cout << r.name << ": dim=" << s.dim << " norm_drift=" << s.norm_drift
              << " conservation=" << s.conservation_residual << " files=" << s.outputs_written.size()
              << "\n";
    for (const auto& w : s.warnings) std::cout << "  warning: " << w << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-form simulator for a two-level emitter in a Kerr cavity"};
  app.require_subcommand(1);

  CommonOpts sim_o, car_o, wig_o;
  auto* sim = app.add_subcommand("simulate", "run a scenario and write its outputs");
  add_common(sim, sim_o, true);
  auto* car = app.add_subcommand("carpet", "run a scenario, ensuring a carpet output");
  add_common(car, car_o, true);
  auto* wig = app.add_subcommand("wigner", "run a scenario, ensuring a Wigner output");
  add_common(wig, wig_o, true);

  CommonOpts ver_o;
  double tolerance = 1e-8;
  auto* ver = app.add_subcommand("verify", "closed form vs brute-force integration");
  add_common(ver, ver_o, false);
  ver->add_option("--tolerance", tolerance, "max allowed amplitude deviation")
      ->capture_default_str();

  auto* pre = app.add_subcommand("presets", "list scenario presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pre->parsed()) {
      std::cout << kerrqed::preset_table();
      return 0;
    }
    if (sim->parsed()) return run_all(gather_runs(sim_o), sim_o);
    if (car->parsed()) {
      auto runs = gather_runs(car_o);
      ensure_output(runs, "carpet");
      return run_all(runs, car_o);
    }
    if (wig->parsed()) {
      auto runs = gather_runs(wig_o);
      ensure_output(runs, "wigner");
      return run_all(runs, wig_o);
    }
    if (ver->parsed()) {
      kerrqed::VerifyResult res;
      if (!ver_o.config_path.empty() || !ver_o.preset_name.empty()) {
        auto runs = gather_runs(ver_o);
        res.tolerance = tolerance;
        for (const auto& r : runs) {
          kerrqed::VerifyResult one = kerrqed::verify(r, tolerance);
          for (auto& c : one.cases) res.cases.push_back(std::move(c));
        }
        res.passed = res.worst_deviation() < tolerance;
      } else {
        res = kerrqed::verify_default_suite(tolerance);
      }
      const auto report_path = std::string(ver_o.out_dir) + "/verify_report.json";
      kerrqed::write_text_file(report_path, res.to_json().dump(2) + "\n");
      for (const auto& [name, rep] : res.cases)
        std::cout << name << ": max_amp_dev=" << rep.max_amp_dev << " dim=" << rep.dim << "\n";
      std::cout << (res.passed ? "VERIFY PASS" : "VERIFY FAIL")
                << " (worst " << res.worst_deviation() << " vs tolerance " << tolerance << ")\n";
      return res.passed ? 0 : 3;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const kerrqed::TruncationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
