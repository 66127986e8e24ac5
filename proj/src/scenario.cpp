#include "kerrqed/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include <nlohmann/json.hpp>

#include "kerrqed/io.hpp"
#include "kerrqed/observables.hpp"

namespace kerrqed {

namespace {

template <typename T>
T field_as(const nlohmann::json& j, const std::string& path, const T& fallback, bool required) {
  const nlohmann::json* cur = &j;
  std::string walked;
  size_t pos = 0;
  while (pos != std::string::npos) {
    const size_t dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
    walked = walked.empty() ? key : walked + "." + key;
    if (!cur->is_object() || !cur->contains(key)) {
      if (required) throw ConfigError(walked, "missing required field");
      return fallback;
    }
    cur = &(*cur)[key];
    pos = dot == std::string::npos ? dot : dot + 1;
  }
  try {
    return cur->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(path, "wrong type");
  }
}

StateSpec initial_from_json(const nlohmann::json& j) {
  const std::string kind = field_as<std::string>(j, "initial.kind", "", true);
  if (kind == "fock") return StateSpec::fock(field_as<int>(j, "initial.n", 0, true));
  if (kind == "coherent") {
    const double re = field_as<double>(j, "initial.alpha_re", 0.0, true);
    const double im = field_as<double>(j, "initial.alpha_im", 0.0, false);
    return StateSpec::coherent(Complex(re, im));
  }
  if (kind == "squeezed_vacuum") {
    if (j.contains("initial") && j["initial"].contains("r"))
      return StateSpec::squeezed_vacuum_r(field_as<double>(j, "initial.r", 0.0, true));
    return StateSpec::squeezed_vacuum(field_as<double>(j, "initial.R", 1.0, true));
  }
  if (kind == "custom") {
    if (!j.contains("initial") || !j["initial"].contains("amps") || !j["initial"]["amps"].is_array())
      throw ConfigError("initial.amps", "missing amplitude list");
    std::vector<Complex> amps;
    for (const auto& a : j["initial"]["amps"]) {
      if (a.is_array() && a.size() == 2)
        amps.emplace_back(a[0].get<double>(), a[1].get<double>());
      else if (a.is_number())
        amps.emplace_back(a.get<double>(), 0.0);
      else
        throw ConfigError("initial.amps", "entries must be numbers or [re, im] pairs");
    }
    return StateSpec::custom(std::move(amps));
  }
  throw ConfigError("initial.kind", "unknown kind '" + kind + "'");
}

nlohmann::json initial_to_json(const StateSpec& s) {
  switch (s.kind) {
    case StateKind::Fock:
      return {{"kind", "fock"}, {"n", s.n}};
    case StateKind::Coherent:
      return {{"kind", "coherent"}, {"alpha_re", s.alpha.real()}, {"alpha_im", s.alpha.imag()}};
    case StateKind::SqueezedVacuum:
      return {{"kind", "squeezed_vacuum"}, {"R", s.R}};
    case StateKind::Custom: {
      nlohmann::json amps = nlohmann::json::array();
      for (const auto& a : s.custom_amps) amps.push_back({a.real(), a.imag()});
      return {{"kind", "custom"}, {"amps", amps}};
    }
  }
  return {};
}

bool is_grid_observable(const std::string& name) {
  return name == "carpet" || name == "wigner" || name == "var_grid";
}

std::filesystem::path resolve_out(const std::string& out_dir, const std::string& rel) {
  const std::filesystem::path p = std::filesystem::path(out_dir) / rel;
  std::filesystem::create_directories(p.parent_path());
  return p;
}

}  // namespace

const std::vector<std::string>& observable_names() {
  static const std::vector<std::string> names = {
      "excitation", "mean_photon", "mean_x",     "var_x",     "var_x_normalized",
      "schmidt",    "purity_dot",  "purity_field", "norm_error"};
  return names;
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
  ScenarioConfig c;
  c.name = field_as<std::string>(j, "name", c.name, false);
  c.model.omega = field_as<double>(j, "model.omega", c.model.omega, false);
  c.model.omega0 = field_as<double>(j, "model.omega0", c.model.omega, false);
  c.model.g = field_as<double>(j, "model.g", c.model.g, false);
  c.model.coupling = field_as<double>(j, "model.coupling", c.model.coupling, false);
  if (j.contains("initial")) c.initial = initial_from_json(j);
  c.truncation.tail_eps = field_as<double>(j, "truncation.tail_eps", c.truncation.tail_eps, false);
  c.truncation.max_dim = field_as<int>(j, "truncation.max_dim", c.truncation.max_dim, false);
  c.time.start = field_as<double>(j, "time.start", c.time.start, false);
  c.time.stop = field_as<double>(j, "time.stop", c.time.stop, false);
  c.time.steps = field_as<int>(j, "time.steps", c.time.steps, false);
  c.time.unit = field_as<std::string>(j, "time.unit", c.time.unit, false);
  if (j.contains("time") && j["time"].contains("samples")) {
    if (!j["time"]["samples"].is_array() || j["time"]["samples"].empty())
      throw ConfigError("time.samples", "must be a non-empty array");
    std::vector<double> samples;
    for (const auto& v : j["time"]["samples"]) samples.push_back(v.get<double>());
    c.time.samples = std::move(samples);
  }
  c.grid.x.min = field_as<double>(j, "grid.x_min", c.grid.x.min, false);
  c.grid.x.max = field_as<double>(j, "grid.x_max", c.grid.x.max, false);
  c.grid.x.points = field_as<int>(j, "grid.x_points", c.grid.x.points, false);
  c.grid.p.min = field_as<double>(j, "grid.p_min", c.grid.p.min, false);
  c.grid.p.max = field_as<double>(j, "grid.p_max", c.grid.p.max, false);
  c.grid.p.points = field_as<int>(j, "grid.p_points", c.grid.p.points, false);
  const std::string frame = field_as<std::string>(j, "frame", "lab", false);
  if (frame == "lab")
    c.frame = Frame::Lab;
  else if (frame == "rotating")
    c.frame = Frame::Rotating;
  else
    throw ConfigError("frame", "must be 'lab' or 'rotating'");
  if (j.contains("scan")) {
    GScan s;
    s.g_min = field_as<double>(j, "scan.g_min", s.g_min, true);
    s.g_max = field_as<double>(j, "scan.g_max", s.g_max, true);
    s.g_points = field_as<int>(j, "scan.g_points", s.g_points, true);
    c.scan = s;
  }
  if (j.contains("outputs")) {
    if (!j["outputs"].is_array()) throw ConfigError("outputs", "must be an array");
    for (size_t i = 0; i < j["outputs"].size(); ++i) {
      const auto& o = j["outputs"][i];
      OutputSpec spec;
      if (!o.contains("observable") || !o.contains("path"))
        throw ConfigError("outputs[" + std::to_string(i) + "]",
                          "needs 'observable' and 'path'");
      spec.observable = o["observable"].get<std::string>();
      spec.path = o["path"].get<std::string>();
      if (o.contains("format")) spec.format = o["format"].get<std::string>();
      c.outputs.push_back(std::move(spec));
    }
  }
  c.validate();
  return c;
}

nlohmann::json ScenarioConfig::to_json() const {
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& o : outputs)
    outs.push_back({{"observable", o.observable}, {"path", o.path}, {"format", o.format}});
  nlohmann::json j = {
      {"name", name},
      {"model",
       {{"omega", model.omega},
        {"omega0", model.omega0},
        {"g", model.g},
        {"coupling", model.coupling}}},
      {"initial", initial_to_json(initial)},
      {"truncation", {{"tail_eps", truncation.tail_eps}, {"max_dim", truncation.max_dim}}},
      {"time",
       [&] {
         nlohmann::json t = {{"start", time.start},
                             {"stop", time.stop},
                             {"steps", time.steps},
                             {"unit", time.unit}};
         if (time.samples) t["samples"] = *time.samples;
         return t;
       }()},
      {"grid",
       {{"x_min", grid.x.min},
        {"x_max", grid.x.max},
        {"x_points", grid.x.points},
        {"p_min", grid.p.min},
        {"p_max", grid.p.max},
        {"p_points", grid.p.points}}},
      {"frame", frame == Frame::Lab ? "lab" : "rotating"},
      {"outputs", outs}};
  if (scan)
    j["scan"] = {{"g_min", scan->g_min}, {"g_max", scan->g_max}, {"g_points", scan->g_points}};
  return j;
}

double ScenarioConfig::absolute_time(double value, double g_override) const {
  if (time.unit == "absolute") return value;
  if (time.unit == "rabi_periods") {
    if (model.coupling <= 0.0)
      throw ConfigError("time.unit", "rabi_periods needs coupling > 0");
    return value * 2.0 * kPi / model.coupling;
  }
  if (time.unit == "kerr_periods") {
    const double g = g_override != 0.0 ? g_override : model.g;
    if (g == 0.0) throw ConfigError("time.unit", "kerr_periods needs g != 0");
    return value * 2.0 * kPi / std::abs(g);
  }
  throw ConfigError("time.unit", "unknown unit '" + time.unit + "'");
}

std::vector<double> ScenarioConfig::absolute_time_grid(double g_override) const {
  if (time.samples) {
    std::vector<double> ts;
    ts.reserve(time.samples->size());
    for (double u : *time.samples) ts.push_back(absolute_time(u, g_override));
    return ts;
  }
  std::vector<double> ts(time.steps);
  for (int i = 0; i < time.steps; ++i) {
    const double u = time.steps > 1
                         ? time.start + (time.stop - time.start) * i / (time.steps - 1)
                         : time.start;
    ts[i] = absolute_time(u, g_override);
  }
  return ts;
}

std::vector<double> ScenarioConfig::unit_time_grid() const {
  if (time.samples) return *time.samples;
  std::vector<double> ts(time.steps);
  for (int i = 0; i < time.steps; ++i)
    ts[i] = time.steps > 1 ? time.start + (time.stop - time.start) * i / (time.steps - 1)
                           : time.start;
  return ts;
}

void ScenarioConfig::validate() const {
  try {
    model.validate();
  } catch (const std::exception& e) {
    throw ConfigError("model", e.what());
  }
  if (!model.resonant()) throw ConfigError("model.omega0", "omega0 must equal omega");
  if (time.samples) {
    if (time.samples->empty()) throw ConfigError("time.samples", "must be non-empty");
    if (!std::is_sorted(time.samples->begin(), time.samples->end()))
      throw ConfigError("time.samples", "must be sorted ascending");
  } else {
    if (time.steps < 1) throw ConfigError("time.steps", "must be >= 1");
    if (!(time.stop > time.start)) throw ConfigError("time.stop", "must exceed time.start");
  }
  if (!(truncation.tail_eps > 0.0 && truncation.tail_eps < 1.0))
    throw ConfigError("truncation.tail_eps", "must lie in (0, 1)");
  if (truncation.max_dim < 1) throw ConfigError("truncation.max_dim", "must be >= 1");
  if (grid.x.points < 2) throw ConfigError("grid.x_points", "must be >= 2");
  if (grid.p.points < 2) throw ConfigError("grid.p_points", "must be >= 2");

  const auto& known = observable_names();
  std::set<std::string> paths;
  for (size_t i = 0; i < outputs.size(); ++i) {
    const auto& o = outputs[i];
    const std::string where = "outputs[" + std::to_string(i) + "]";
    const bool series = std::find(known.begin(), known.end(), o.observable) != known.end();
    if (!series && !is_grid_observable(o.observable))
      throw ConfigError(where + ".observable", "unknown observable '" + o.observable + "'");
    if (o.format != "csv" && o.format != "json")
      throw ConfigError(where + ".format", "must be 'csv' or 'json'");
    if (o.path.empty() || !paths.insert(o.path).second)
      throw ConfigError(where + ".path", "must be non-empty and unique");
    if (o.observable == "var_grid" && !scan)
      throw ConfigError(where, "var_grid needs a 'scan' section");
    if (frame == Frame::Rotating &&
        (o.observable == "carpet" || o.observable == "mean_x" || o.observable == "var_x" ||
         o.observable == "var_x_normalized"))
      throw ConfigError(where, "'" + o.observable + "' is defined in the lab frame");
  }
  if (scan) {
    if (scan->g_points < 1) throw ConfigError("scan.g_points", "must be >= 1");
    if (!(scan->g_max >= scan->g_min)) throw ConfigError("scan.g_max", "must be >= g_min");
  }
}

uint64_t ScenarioConfig::hash() const { return fnv1a64(to_json().dump()); }

nlohmann::json RunSummary::to_json() const {
  return {{"schema", "kerrqed.summary.v1"},
          {"name", name},
          {"config_hash", config_hash},
          {"dim", dim},
          {"achieved_tail", achieved_tail},
          {"norm_drift", norm_drift},
          {"conservation_residual", conservation_residual},
          {"manifold_residual", manifold_residual},
          {"outputs", outputs_written},
          {"warnings", warnings}};
}

RunSummary run(const ScenarioConfig& config, const std::string& out_dir, int threads) {
  config.validate();
  const FieldState initial = make_state(config.initial, config.truncation);

  RunSummary summary;
  summary.name = config.name;
  summary.config_hash = hash_hex(config.hash());
  summary.dim = initial.dim();
  summary.achieved_tail = initial.tail_eps;

  const std::vector<std::string> comments = {
      "kerrqed scenario '" + config.name + "'",
      "config_hash=" + summary.config_hash,
  };
  const nlohmann::json meta = {{"config_hash", summary.config_hash},
                               {"config", config.to_json()}};

  // var_grid sweeps g and owns its trajectories; everything else shares one.
  std::vector<double> ts = config.absolute_time_grid(0.0);
  std::vector<JointState> traj;
  const bool needs_trajectory =
      std::any_of(config.outputs.begin(), config.outputs.end(),
                  [](const OutputSpec& o) { return o.observable != "var_grid"; }) ||
      config.outputs.empty();
  if (needs_trajectory) {
    traj.reserve(ts.size());
    for (double t : ts) traj.push_back(evolve(initial, config.model, t));

    const double e0 = mean_photon_number(traj.front()) + excitation_probability(traj.front());
    for (const auto& s : traj) {
      summary.norm_drift = std::max(summary.norm_drift, s.total_norm_error());
      summary.conservation_residual =
          std::max(summary.conservation_residual,
                   std::abs(mean_photon_number(s) + excitation_probability(s) - e0));
      for (int n = 1; n < s.dim(); ++n) {
        const double manifold =
            std::norm(s.ground[n]) + std::norm(s.excited[n - 1]) - std::norm(initial.amps[n]);
        summary.manifold_residual = std::max(summary.manifold_residual, std::abs(manifold));
      }
    }
  }

  for (const auto& out : config.outputs) {
    const auto path = resolve_out(out_dir, out.path);
    if (out.observable == "carpet") {
      const CarpetGrid grid = carpet(traj, config.grid.x, threads);
      if (grid.min_row_integral < 0.999)
        summary.warnings.push_back("carpet row integral " +
                                   format_double(grid.min_row_integral) +
                                   " < 0.999: x grid clips the state");
      if (out.format == "csv")
        write_carpet_csv(grid, path.string(), comments);
      else
        write_carpet_json(grid, path.string(), meta);
    } else if (out.observable == "wigner") {
      // one file per trajectory instant; "{i}" in the path selects the slot
      const bool indexed = out.path.find("{i}") != std::string::npos;
      for (size_t k = 0; k < traj.size(); ++k) {
        if (!indexed && traj.size() > 1 && k + 1 < traj.size()) continue;  // last instant only
        JointState snap = traj[k];
        if (config.frame == Frame::Rotating) snap = to_frame(snap, Frame::Rotating, config.model);
        const DensityMatrix rho = reduced_density(snap, Subsystem::Field);
        const WignerGrid grid = wigner(rho, config.grid.x, config.grid.p, threads);
        std::string rel = out.path;
        if (indexed) rel.replace(rel.find("{i}"), 3, std::to_string(k));
        const auto snap_path = resolve_out(out_dir, rel);
        std::vector<std::string> snap_comments = comments;
        snap_comments.push_back("t_abs=" + format_double(traj[k].t));
        snap_comments.push_back("frame=" + std::string(config.frame == Frame::Lab ? "lab" : "rotating"));
        if (out.format == "csv")
          write_wigner_csv(grid, snap_path.string(), snap_comments);
        else {
          nlohmann::json m2 = meta;
          m2["t_abs"] = traj[k].t;
          write_wigner_json(grid, snap_path.string(), m2);
        }
        if (indexed) summary.outputs_written.push_back(rel);
      }
    } else if (out.observable == "var_grid") {
      const GScan scan = *config.scan;
      std::vector<double> gs(scan.g_points);
      for (int i = 0; i < scan.g_points; ++i)
        gs[i] = scan.g_points > 1
                    ? scan.g_min + (scan.g_max - scan.g_min) * i / (scan.g_points - 1)
                    : scan.g_min;
      const std::vector<double> unit_times = config.unit_time_grid();
      Eigen::MatrixXd m(scan.g_points, static_cast<Eigen::Index>(unit_times.size()));
      for (int i = 0; i < scan.g_points; ++i) {
        ModelParams p = config.model;
        p.g = gs[i];
        const std::vector<double> row_ts = config.absolute_time_grid(gs[i]);
        for (size_t k = 0; k < row_ts.size(); ++k)
          m(i, static_cast<Eigen::Index>(k)) =
              quadrature_moments(evolve(initial, p, row_ts[k])).var_x;
      }
      write_matrix_csv(path.string(), comments, "g", gs, unit_times, m);
    } else {
      TimeSeries series;
      series.time_label = "t_" + config.time.unit;
      series.t = config.unit_time_grid();
      std::vector<double> col(traj.size());
      for (size_t k = 0; k < traj.size(); ++k) {
        const JointState& s = traj[k];
        const std::string& name = out.observable;
        if (name == "excitation")
          col[k] = excitation_probability(s);
        else if (name == "mean_photon")
          col[k] = mean_photon_number(s);
        else if (name == "mean_x")
          col[k] = quadrature_moments(s).mean_x;
        else if (name == "var_x")
          col[k] = quadrature_moments(s).var_x;
        else if (name == "var_x_normalized")
          col[k] = quadrature_moments(s).var_x / 0.5;
        else if (name == "schmidt")
          col[k] = schmidt_parameter(reduced_density(s, Subsystem::Dot));
        else if (name == "purity_dot")
          col[k] = purity(reduced_density(s, Subsystem::Dot));
        else if (name == "purity_field")
          col[k] = purity(reduced_density(s, Subsystem::Field));
        else if (name == "norm_error")
          col[k] = s.total_norm_error();
      }
      series.columns.emplace_back(out.observable, std::move(col));
      if (out.format == "csv")
        write_timeseries_csv(series, path.string(), comments);
      else
        write_timeseries_json(series, path.string(), meta);
    }
    if (!(out.observable == "wigner" && out.path.find("{i}") != std::string::npos))
      summary.outputs_written.push_back(out.path);
  }

  const auto summary_path = resolve_out(out_dir, config.name + "_summary.json");
  write_text_file(summary_path.string(), summary.to_json().dump(2) + "\n");
  return summary;
}

double VerifyResult::worst_deviation() const {
  double worst = 0.0;
  for (const auto& [_, rep] : cases) worst = std::max(worst, rep.max_amp_dev);
  return worst;
}

nlohmann::json VerifyResult::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& [name, rep] : cases) {
    nlohmann::json c = rep.to_json();
    c["case"] = name;
    cs.push_back(std::move(c));
  }
  return {{"schema", "kerrqed.verify.v1"},
          {"passed", passed},
          {"tolerance", tolerance},
          {"worst_deviation", worst_deviation()},
          {"cases", cs}};
}

VerifyResult verify(const ScenarioConfig& config, double tolerance) {
  config.validate();
  const FieldState initial = make_state(config.initial, config.truncation);
  if (initial.dim() > kOracleDimCap)
    throw ConfigError("truncation",
                      "state dimension " + std::to_string(initial.dim()) +
                          " exceeds the oracle cap " + std::to_string(kOracleDimCap));
  std::vector<double> ts = config.absolute_time_grid(0.0);
  if (ts.size() > 33) {
    std::vector<double> reduced;
    const size_t stride = (ts.size() + 32) / 33;
    for (size_t i = 0; i < ts.size(); i += stride) reduced.push_back(ts[i]);
    if (reduced.back() != ts.back()) reduced.push_back(ts.back());
    ts = std::move(reduced);
  }
  VerifyResult res;
  res.tolerance = tolerance;
  res.cases.emplace_back(config.name, equivalence_report(initial, config.model, ts, 1e-10));
  res.passed = res.worst_deviation() < tolerance;
  return res;
}

VerifyResult verify_default_suite(double tolerance) {
  VerifyResult res;
  res.tolerance = tolerance;

  {
    ModelParams p{1.0, 1.0, 0.1, 1.0};
    const FieldState s = fock_state(1);
    std::vector<double> ts;
    for (int i = 0; i <= 10; ++i) ts.push_back(i * 1.0);
    res.cases.emplace_back("fock1_coupled", equivalence_report(s, p, ts, 1e-10));
  }
  {
    ModelParams p{1.0, 1.0, 0.1, 1.0};
    const FieldState s = coherent_state(2.0);
    std::vector<double> ts;
    for (int i = 0; i <= 10; ++i) ts.push_back(i * 1.0);
    res.cases.emplace_back("coherent2_coupled", equivalence_report(s, p, ts, 1e-10));
  }
  {
    ModelParams p{1.0, 1.0, 0.12, 0.0};
    const FieldState s = squeezed_vacuum_state(4.0, {1e-6, 4096});
    const double T = 2.0 * kPi / p.g;
    std::vector<double> ts;
    for (int i = 0; i <= 8; ++i) ts.push_back(T / 16.0 * i / 8.0);
    res.cases.emplace_back("squeezed4_kerr_only", equivalence_report(s, p, ts, 1e-10));
  }
  res.passed = res.worst_deviation() < tolerance;
  return res;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace kerrqed
