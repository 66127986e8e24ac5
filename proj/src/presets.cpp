#include <cmath>
#include <sstream>

#include "kerrqed/io.hpp"
#include "kerrqed/scenario.hpp"

namespace kerrqed {

namespace {

// All presets fix ratios only; the absolute scale is coupling = 1 for the
// coupled scenarios and omega = 1 for the self-phase-modulation-only ones.

ScenarioConfig coupled_base(const std::string& name, double g_over_coupling) {
  ScenarioConfig c;
  c.name = name;
  c.model.coupling = 1.0;
  c.model.omega = 100.0;
  c.model.omega0 = 100.0;
  c.model.g = g_over_coupling;
  c.time.unit = "rabi_periods";
  return c;
}

ScenarioConfig kerr_base(const std::string& name, double g_over_omega) {
  ScenarioConfig c;
  c.name = name;
  c.model.coupling = 0.0;
  c.model.omega = 1.0;
  c.model.omega0 = 1.0;
  c.model.g = g_over_omega;
  c.time.unit = g_over_omega != 0.0 ? "kerr_periods" : "absolute";
  return c;
}

std::string gtag(double g) {
  std::ostringstream os;
  os << g;
  std::string s = os.str();
  for (auto& ch : s)
    if (ch == '.') ch = 'p';
  return s;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> out;

  {
    // Excitation dynamics of a coherent drive state across Kerr strengths.
    // The legend's exact ratios are not fixed anywhere, so a representative
    // ladder {0, 0.01, 0.05, 0.1} is used.
    Preset p;
    p.name = "fig1a";
    p.description =
        "quantum dot excitation P(t), coherent alpha=4, omega/Omega=100, "
        "g/Omega in {0, 0.01, 0.05, 0.1}";
    for (double g : {0.0, 0.01, 0.05, 0.1}) {
      ScenarioConfig c = coupled_base("fig1a_g" + gtag(g), g);
      c.initial = StateSpec::coherent(4.0);
      c.time.start = 0.0;
      c.time.stop = 6.0;
      c.time.steps = 2401;
      c.outputs = {{"excitation", c.name + "_excitation.csv", "csv"}};
      p.runs.push_back(std::move(c));
    }
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig1b";
    p.description =
        "quantum dot excitation P(t), squeezed vacuum R=6, omega/Omega=100, "
        "g/Omega in {0, 0.01, 0.05, 0.1}";
    for (double g : {0.0, 0.01, 0.05, 0.1}) {
      ScenarioConfig c = coupled_base("fig1b_g" + gtag(g), g);
      c.initial = StateSpec::squeezed_vacuum(6.0);
      c.truncation.tail_eps = 1e-9;  // R=6 spreads far over the Fock basis
      c.time.start = 0.0;
      c.time.stop = 6.0;
      c.time.steps = 2401;
      c.outputs = {{"excitation", c.name + "_excitation.csv", "csv"}};
      p.runs.push_back(std::move(c));
    }
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig2a";
    p.description =
        "Var[x](g, t) under self-phase modulation only, coherent alpha=2, "
        "g/omega scanned over [0.005, 0.25]";
    ScenarioConfig c = kerr_base("fig2a", 0.1);
    c.initial = StateSpec::coherent(2.0);
    c.scan = GScan{0.005, 0.25, 50};
    c.time.start = 0.0;
    c.time.stop = 1.0;  // one revival period per row
    c.time.steps = 401;
    c.outputs = {{"var_grid", "fig2a_var_grid.csv", "csv"}};
    p.runs.push_back(std::move(c));
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig2b";
    p.description =
        "Var[x](g, t) under self-phase modulation only, squeezed vacuum R=4, "
        "g/omega scanned over [0.005, 0.25]";
    ScenarioConfig c = kerr_base("fig2b", 0.1);
    c.initial = StateSpec::squeezed_vacuum(4.0);
    c.scan = GScan{0.005, 0.25, 50};
    c.time.start = 0.0;
    c.time.stop = 1.0;
    c.time.steps = 401;
    c.outputs = {{"var_grid", "fig2b_var_grid.csv", "csv"}};
    p.runs.push_back(std::move(c));
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig3";
    p.description = "quantum carpets, coherent alpha=2, g/omega = 0 and 0.1";
    {
      ScenarioConfig c = kerr_base("fig3_g0", 0.0);
      c.initial = StateSpec::coherent(2.0);
      c.time.start = 0.0;
      c.time.stop = 3.0 * 2.0 * kPi;  // three field oscillations
      c.time.steps = 512;
      c.outputs = {{"carpet", "fig3_g0_carpet.csv", "csv"}};
      p.runs.push_back(std::move(c));
    }
    {
      ScenarioConfig c = kerr_base("fig3_g0p1", 0.1);
      c.initial = StateSpec::coherent(2.0);
      c.time.start = 0.0;
      c.time.stop = 1.0;
      c.time.steps = 512;
      c.outputs = {{"carpet", "fig3_g0p1_carpet.csv", "csv"}};
      p.runs.push_back(std::move(c));
    }
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig4";
    p.description = "quantum carpets, squeezed vacuum R=4, g/omega = 0 and 0.125";
    {
      ScenarioConfig c = kerr_base("fig4_g0", 0.0);
      c.initial = StateSpec::squeezed_vacuum(4.0);
      c.time.start = 0.0;
      c.time.stop = 3.0 * 2.0 * kPi;
      c.time.steps = 512;
      c.outputs = {{"carpet", "fig4_g0_carpet.csv", "csv"}};
      p.runs.push_back(std::move(c));
    }
    {
      ScenarioConfig c = kerr_base("fig4_g0p125", 0.125);
      c.initial = StateSpec::squeezed_vacuum(4.0);
      c.time.start = 0.0;
      c.time.stop = 1.0;
      c.time.steps = 512;
      c.outputs = {{"carpet", "fig4_g0p125_carpet.csv", "csv"}};
      p.runs.push_back(std::move(c));
    }
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig5";
    p.description =
        "Wigner snapshots of the squeezed vacuum R=4 under self-phase "
        "modulation, g/omega=0.12, t/T in {0, 1/64, 3/32, 1/8}, rotating frame";
    ScenarioConfig c = kerr_base("fig5", 0.12);
    c.initial = StateSpec::squeezed_vacuum(4.0);
    c.frame = Frame::Rotating;
    c.time.samples = std::vector<double>{0.0, 1.0 / 64.0, 3.0 / 32.0, 1.0 / 8.0};
    c.grid.x.points = 401;
    c.grid.p.points = 401;
    c.outputs = {{"wigner", "fig5_wigner_{i}.csv", "csv"}};
    p.runs.push_back(std::move(c));
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig6";
    p.description =
        "Schmidt parameter K(t), coherent alpha=4, omega/Omega=100, "
        "g/Omega in {0, 0.01, 0.1}";
    for (double g : {0.0, 0.01, 0.1}) {
      ScenarioConfig c = coupled_base("fig6_g" + gtag(g), g);
      c.initial = StateSpec::coherent(4.0);
      c.time.start = 0.0;
      c.time.stop = 6.0;
      c.time.steps = 2401;
      c.outputs = {{"schmidt", c.name + "_schmidt.csv", "csv"}};
      p.runs.push_back(std::move(c));
    }
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig7";
    p.description =
        "quantum carpets in the strong-coupling regime, omega/Omega=100: "
        "coherent alpha=2 (g=0), alpha=4 (g=0), alpha=4 (g/Omega=0.1)";
    struct Row {
      const char* tag;
      double alpha;
      double g;
    };
    for (const Row& r : {Row{"a2_g0", 2.0, 0.0}, Row{"a4_g0", 4.0, 0.0}, Row{"a4_g0p1", 4.0, 0.1}}) {
      ScenarioConfig c = coupled_base(std::string("fig7_") + r.tag, r.g);
      c.initial = StateSpec::coherent(r.alpha);
      c.time.start = 0.0;
      c.time.stop = 2.5;
      c.time.steps = 4096;  // resolves the fast omega oscillation of the packet
      c.outputs = {{"carpet", c.name + "_carpet.csv", "csv"}};
      p.runs.push_back(std::move(c));
    }
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig8";
    p.description =
        "Wigner function of the reduced field at Omega t/2pi = 2, coherent "
        "alpha=4, omega/Omega=100, g/Omega = 0 (near-pure) and 0.1 (mixed)";
    for (double g : {0.0, 0.1}) {
      ScenarioConfig c = coupled_base("fig8_g" + gtag(g), g);
      c.initial = StateSpec::coherent(4.0);
      c.time.samples = std::vector<double>{2.0};
      c.grid.x.points = 401;
      c.grid.p.points = 401;
      c.outputs = {{"wigner", c.name + "_wigner.csv", "csv"}};
      p.runs.push_back(std::move(c));
    }
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.name = "fig9";
    p.description =
        "quadrature variance over the shot-noise limit, coherent alpha=4, "
        "omega/Omega=100, g/Omega in {0, 0.01, 0.1}";
    for (double g : {0.0, 0.01, 0.1}) {
      ScenarioConfig c = coupled_base("fig9_g" + gtag(g), g);
      c.initial = StateSpec::coherent(4.0);
      c.time.start = 0.0;
      c.time.stop = 4.0;
      c.time.steps = 16001;  // Var oscillates at 2 omega; keep it resolved
      c.outputs = {{"var_x", c.name + "_var.csv", "csv"},
                   {"var_x_normalized", c.name + "_var_normalized.csv", "csv"}};
      p.runs.push_back(std::move(c));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

std::string preset_table() {
  std::ostringstream os;
  for (const auto& p : presets()) {
    os << p.name << "\n  " << p.description << "\n";
    for (const auto& r : p.runs) {
      os << "    " << r.name << ": omega=" << r.model.omega << " omega0=" << r.model.omega0
         << " g=" << r.model.g << " coupling=" << r.model.coupling;
      switch (r.initial.kind) {
        case StateKind::Fock:
          os << " fock n=" << r.initial.n;
          break;
        case StateKind::Coherent:
          os << " coherent alpha=" << r.initial.alpha.real();
          if (r.initial.alpha.imag() != 0.0) os << "+" << r.initial.alpha.imag() << "i";
          break;
        case StateKind::SqueezedVacuum:
          os << " squeezed R=" << r.initial.R;
          break;
        case StateKind::Custom:
          os << " custom dim=" << r.initial.custom_amps.size();
          break;
      }
      if (r.time.samples) {
        os << " t_" << r.time.unit << "={";
        for (size_t i = 0; i < r.time.samples->size(); ++i)
          os << (i ? "," : "") << (*r.time.samples)[i];
        os << "}";
      } else {
        os << " t_" << r.time.unit << "=[" << r.time.start << "," << r.time.stop << "]x"
           << r.time.steps;
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace kerrqed
