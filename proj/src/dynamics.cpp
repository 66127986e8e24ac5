#include "kerrqed/dynamics.hpp"

#include <cmath>

namespace kerrqed {

namespace {

constexpr Complex kI{0.0, 1.0};

// sin(x)/x, accurate through x = 0.
double sinc(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

void ModelParams::validate() const {
  if (!std::isfinite(omega) || !std::isfinite(omega0) || !std::isfinite(g) ||
      !std::isfinite(coupling))
    throw std::invalid_argument("model parameters must be finite");
  if (coupling < 0.0) throw std::invalid_argument("coupling (vacuum Rabi frequency) must be >= 0");
}

bool ModelParams::resonant() const {
  const double scale = std::max({1.0, std::abs(omega), std::abs(omega0)});
  return std::abs(omega - omega0) <= 1e-12 * scale;
}

Quasienergies quasienergies(int n, const ModelParams& p) {
  p.validate();
  if (n < 1) throw std::invalid_argument("quasienergies need n >= 1 (no excited partner for n = 0)");
  const double nn = n;
  const double s = std::sqrt(p.coupling * p.coupling * nn + p.g * p.g * (nn - 1) * (nn - 1) / 4.0);
  const double shift = -p.g * (nn - 1) * (nn - 1) / 2.0;
  return Quasienergies{shift + s, shift - s, s};
}

JointState evolve(const FieldState& initial, const ModelParams& p, double t) {
  p.validate();
  if (!p.resonant())
    throw std::invalid_argument("closed-form evolution requires resonance omega0 == omega");
  const int dim = initial.dim();
  JointState out;
  out.ground = VectorXc::Zero(dim);
  out.excited = VectorXc::Zero(dim);
  out.t = t;
  out.frame = Frame::Lab;

  if (dim > 0) out.ground[0] = initial.amps[0];  // n = 0 is an invariant subspace

  for (int n = 1; n < dim; ++n) {
    const Complex c = initial.amps[n];
    if (c == Complex(0.0)) continue;
    const double nn = n;
    const double s = std::sqrt(p.coupling * p.coupling * nn + p.g * p.g * (nn - 1) * (nn - 1) / 4.0);
    const double delta = -p.g * (nn - 1) / 2.0;          // half-splitting of the manifold diagonal
    const double shift = -p.g * (nn - 1) * (nn - 1) / 2.0;  // common manifold shift
    const double th = s * t;
    const double snc = sinc(th);
    const Complex common = std::exp(-kI * (shift * t)) * std::exp(-kI * (p.omega * nn * t));
    const Complex a = (std::cos(th) - kI * (delta * t * snc)) * common;
    const Complex b = (-kI * (p.coupling * std::sqrt(nn) * t * snc)) * common;
    out.ground[n] = c * a;
    out.excited[n - 1] = c * b;
  }
  return out;
}

FieldState kerr_propagate(const FieldState& initial, const ModelParams& p, double t, Frame frame) {
  p.validate();
  const int dim = initial.dim();
  FieldState out = initial;
  for (int n = 0; n < dim; ++n) {
    double phase = p.g * n * (n - 1.0) * t / 2.0;
    if (frame == Frame::Lab) phase -= p.omega * n * t;
    out.amps[n] *= std::exp(kI * phase);
  }
  return out;
}

double excitation_probability(const JointState& s) { return s.excited.squaredNorm(); }

JointState to_frame(const JointState& s, Frame target, const ModelParams& p) {
  if (s.frame == target) return s;
  JointState out = s;
  out.frame = target;
  const double sign = (target == Frame::Rotating) ? +1.0 : -1.0;  // strip vs restore
  for (int n = 0; n < s.dim(); ++n) {
    out.ground[n] *= std::exp(kI * (sign * p.omega * n * s.t));
    out.excited[n] *= std::exp(kI * (sign * (p.omega * n + p.omega0) * s.t));
  }
  return out;
}

JointState lift_to_joint(const FieldState& field) {
  JointState s;
  s.ground = field.amps;
  s.excited = VectorXc::Zero(field.dim());
  s.t = 0.0;
  s.frame = Frame::Lab;
  return s;
}

}  // namespace kerrqed
