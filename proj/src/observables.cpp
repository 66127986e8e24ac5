#include "kerrqed/observables.hpp"

#include <cmath>

namespace kerrqed {

namespace {

constexpr Complex kI{0.0, 1.0};

// <x> and <x^2> accumulated from one pure component vector.
void accumulate_x_moments(const VectorXc& c, double& mx, double& mx2) {
  const int dim = static_cast<int>(c.size());
  for (int n = 0; n + 1 < dim; ++n)
    mx += 2.0 * std::real(std::conj(c[n]) * c[n + 1]) * std::sqrt((n + 1.0) / 2.0);
  for (int n = 0; n < dim; ++n) mx2 += (n + 0.5) * std::norm(c[n]);
  for (int n = 0; n + 2 < dim; ++n)
    mx2 += std::real(std::conj(c[n]) * c[n + 2]) * std::sqrt((n + 1.0) * (n + 2.0));
}

}  // namespace

double mean_photon_number(const FieldState& s) {
  double acc = 0.0;
  for (int n = 0; n < s.dim(); ++n) acc += n * std::norm(s.amps[n]);
  return acc;
}

double mean_photon_number(const JointState& s) {
  double acc = 0.0;
  for (int n = 0; n < s.dim(); ++n) acc += n * (std::norm(s.ground[n]) + std::norm(s.excited[n]));
  return acc;
}

QuadratureMoments quadrature_moments(const FieldState& s) {
  double mx = 0.0, mx2 = 0.0;
  accumulate_x_moments(s.amps, mx, mx2);
  return {mx, mx2 - mx * mx};
}

QuadratureMoments quadrature_moments(const JointState& s) {
  if (s.frame != Frame::Lab)
    throw std::invalid_argument("quadrature moments are defined on lab-frame states");
  double mx = 0.0, mx2 = 0.0;
  accumulate_x_moments(s.ground, mx, mx2);
  accumulate_x_moments(s.excited, mx, mx2);
  return {mx, mx2 - mx * mx};
}

double kerr_variance_analytic(Complex alpha, const ModelParams& p, double t) {
  p.validate();
  const double a2 = std::norm(alpha);
  const double ph = (a2 > 0.0) ? 2.0 * std::arg(alpha) : 0.0;
  const double g = p.g, w = p.omega;
  const double e1 = std::exp(-2.0 * a2 * (1.0 - std::cos(g * t)));
  const double e2 = std::exp(-a2 * (1.0 - std::cos(2.0 * g * t)));
  return 0.5 + a2 * (1.0 - e1 - std::cos(ph + 2.0 * a2 * std::sin(g * t) - 2.0 * w * t) * e1 +
                     std::cos(ph + g * t + a2 * std::sin(2.0 * g * t) - 2.0 * w * t) * e2);
}

DensityMatrix reduced_density(const JointState& s, Subsystem which) {
  if (which == Subsystem::Dot) {
    MatrixXc m(2, 2);
    Complex r_ge = 0.0;
    for (int n = 0; n < s.dim(); ++n) r_ge += s.ground[n] * std::conj(s.excited[n]);
    m(0, 0) = s.ground.squaredNorm();
    m(1, 1) = s.excited.squaredNorm();
    m(0, 1) = r_ge;
    m(1, 0) = std::conj(r_ge);
    return DensityMatrix{std::move(m), Subsystem::Dot};
  }
  MatrixXc m = s.ground * s.ground.adjoint() + s.excited * s.excited.adjoint();
  return DensityMatrix{std::move(m), Subsystem::Field};
}

double purity(const DensityMatrix& rho) { return rho.elements.squaredNorm(); }

double schmidt_parameter(const DensityMatrix& rho_dot) {
  if (rho_dot.subsystem != Subsystem::Dot || rho_dot.dim() != 2)
    throw std::invalid_argument("schmidt_parameter expects the 2x2 dot density matrix");
  const double p11 = rho_dot.elements(0, 0).real();
  const double p22 = rho_dot.elements(1, 1).real();
  const double c2 = std::norm(rho_dot.elements(0, 1));
  return 1.0 / (p11 * p11 + p22 * p22 + 2.0 * c2);
}

double fidelity(const FieldState& s, const FieldState& ref) {
  const int n = std::min(s.dim(), ref.dim());
  Complex ov = 0.0;
  for (int k = 0; k < n; ++k) ov += std::conj(ref.amps[k]) * s.amps[k];
  return std::norm(ov);
}

double overlap(const DensityMatrix& rho_field, const FieldState& ref) {
  if (rho_field.subsystem != Subsystem::Field)
    throw std::invalid_argument("overlap expects a field density matrix");
  const int n = std::min(rho_field.dim(), ref.dim());
  Complex acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      acc += std::conj(ref.amps[i]) * rho_field.elements(i, j) * ref.amps[j];
  return acc.real();
}

FieldState cat_reference(Complex alpha, const TruncationPolicy& trunc) {
  const FieldState plus = coherent_state(kI * alpha, trunc);
  const FieldState minus = coherent_state(-kI * alpha, trunc);
  const int dim = std::max(plus.dim(), minus.dim());
  VectorXc amps = VectorXc::Zero(dim);
  const Complex u = std::exp(-kI * (kPi / 4.0));
  const Complex v = std::exp(kI * (kPi / 4.0));
  for (int n = 0; n < plus.dim(); ++n) amps[n] += u * plus.amps[n];
  for (int n = 0; n < minus.dim(); ++n) amps[n] += v * minus.amps[n];
  const double nn = amps.norm();
  if (!(nn > 0.0)) throw std::invalid_argument("cat reference has zero norm");
  amps /= nn;
  return FieldState{std::move(amps), std::max(plus.tail_eps, minus.tail_eps)};
}

FieldState rotated_squeezed_state(double R, double theta, const TruncationPolicy& trunc) {
  FieldState s = squeezed_vacuum_state(R, trunc);
  for (int n = 0; n < s.dim(); ++n) s.amps[n] *= std::exp(kI * (theta * n));
  return s;
}

FieldState cross_reference(double R, const TruncationPolicy& trunc) {
  const double theta0 = kPi / 8.0;
  const FieldState b1 = rotated_squeezed_state(R, theta0 + kPi / 4.0, trunc);
  const FieldState b2 = rotated_squeezed_state(R, theta0 - kPi / 4.0, trunc);
  VectorXc amps = (std::exp(-kI * (kPi / 4.0)) * b1.amps + std::exp(kI * (kPi / 4.0)) * b2.amps) /
                  std::sqrt(2.0);
  const double nn = amps.norm();
  amps /= nn;
  return FieldState{std::move(amps), b1.tail_eps};
}

}  // namespace kerrqed
