#ifndef KERRQED_SCENARIO_HPP
#define KERRQED_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kerrqed/dynamics.hpp"
#include "kerrqed/oracle.hpp"
#include "kerrqed/phasespace.hpp"
#include "kerrqed/states.hpp"

namespace kerrqed {

struct OutputSpec {
  std::string observable;  // time-series name, "carpet", "wigner" or "var_grid"
  std::string path;        // written inside the run's output directory
  std::string format = "csv";
};

struct TimeSpec {
  double start = 0.0;
  double stop = 1.0;
  int steps = 256;
  std::string unit = "absolute";  // absolute | rabi_periods | kerr_periods
  std::optional<std::vector<double>> samples;  // explicit instants (same unit); overrides the range
};

struct GridSpec {
  AxisSpec x{-10.0, 10.0, 801};
  AxisSpec p{-10.0, 10.0, 801};
};

/// Optional sweep of the Kerr strength for the var_grid product.
struct GScan {
  double g_min = 0.0;
  double g_max = 0.1;
  int g_points = 2;
};

struct ScenarioConfig {
  std::string name = "run";
  ModelParams model;
  StateSpec initial = StateSpec::fock(0);
  TruncationPolicy truncation;
  TimeSpec time;
  GridSpec grid;
  Frame frame = Frame::Lab;
  std::optional<GScan> scan;
  std::vector<OutputSpec> outputs;

  static ScenarioConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  /// Scenario time in absolute units (rabi_periods scale by 2 pi / coupling,
  /// kerr_periods by 2 pi / |g|; a nonzero g_override replaces model.g for
  /// scan rows).
  double absolute_time(double value, double g_override) const;
  std::vector<double> absolute_time_grid(double g_override) const;
  std::vector<double> unit_time_grid() const;  // same instants in config units

  void validate() const;  // throws ConfigError naming the offending field
  uint64_t hash() const;
};

/// Names accepted as time-series outputs.
const std::vector<std::string>& observable_names();

struct RunSummary {
  std::string name;
  std::string config_hash;
  int dim = 0;
  double achieved_tail = 0.0;
  double norm_drift = 0.0;
  double conservation_residual = 0.0;  // <a^dag a> + P drift
  double manifold_residual = 0.0;      // per-manifold probability drift
  std::vector<std::string> outputs_written;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

/// Executes one scenario; writes the requested artifacts and a
/// <name>_summary.json into out_dir. Deterministic for a fixed config.
RunSummary run(const ScenarioConfig& config, const std::string& out_dir, int threads = 0);

struct VerifyResult {
  bool passed = false;
  double tolerance = 0.0;
  std::vector<std::pair<std::string, EquivalenceReport>> cases;

  double worst_deviation() const;
  nlohmann::json to_json() const;
};

/// Closed form vs brute-force integration on the scenario's own state,
/// model and time range (at most 33 probe times).
VerifyResult verify(const ScenarioConfig& config, double tolerance = 1e-8);

/// Built-in short verification sweep covering the coupled and the
/// self-phase-modulation-only regimes.
VerifyResult verify_default_suite(double tolerance = 1e-8);

struct Preset {
  std::string name;
  std::string description;
  std::vector<ScenarioConfig> runs;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);
std::string preset_table();

}  // namespace kerrqed

#endif
