#ifndef KERRQED_OBSERVABLES_HPP
#define KERRQED_OBSERVABLES_HPP

#include "kerrqed/dynamics.hpp"
#include "kerrqed/states.hpp"
#include "kerrqed/types.hpp"

namespace kerrqed {

enum class Subsystem { Field, Dot };

/// Reduced density matrix of one subsystem. Dot matrices are 2x2 in the
/// basis (|g>, |e>); field matrices are dim x dim in the Fock basis.
struct DensityMatrix {
  MatrixXc elements;
  Subsystem subsystem;

  int dim() const { return static_cast<int>(elements.rows()); }
};

double mean_photon_number(const FieldState& s);
double mean_photon_number(const JointState& s);

/// First two moments of x = (a + a^dag)/sqrt2, from the reduced field state.
/// Matrix elements <n|x|n+1> = sqrt((n+1)/2). Vacuum variance is 1/2.
struct QuadratureMoments {
  double mean_x;
  double var_x;
};
QuadratureMoments quadrature_moments(const FieldState& s);
QuadratureMoments quadrature_moments(const JointState& s);  // requires lab frame

/// Closed-form Var[x](t) of an initial coherent state under pure self-phase
/// modulation (coupling = 0 regime). For complex alpha the phase 2 arg(alpha)
/// enters both oscillatory terms; for real alpha this is the plain formula.
double kerr_variance_analytic(Complex alpha, const ModelParams& p, double t);

DensityMatrix reduced_density(const JointState& s, Subsystem which);

double purity(const DensityMatrix& rho);  // Tr(rho^2)

/// Schmidt parameter K = 1/Tr(rho^2) of the 2x2 dot matrix,
///   K = 1/(rho_gg^2 + rho_ee^2 + 2|rho_ge|^2), in [1, 2].
/// (The inverse-purity form; the diagonal terms enter squared, which is what
/// makes K reach 2 for the maximally mixed state.)
double schmidt_parameter(const DensityMatrix& rho_dot);

/// |<ref|s>|^2 for pure states; dimensions are zero-padded to match.
double fidelity(const FieldState& s, const FieldState& ref);

/// <ref|rho|ref> for a field density matrix against a pure reference.
double overlap(const DensityMatrix& rho_field, const FieldState& ref);

/// Even-cat reference (e^{-i pi/4}|i alpha> + e^{i pi/4}|-i alpha>)/sqrt2,
/// normalized on the truncated basis (the branches are not orthogonal).
FieldState cat_reference(Complex alpha, const TruncationPolicy& trunc = {});

/// Squeezed vacuum rotated by theta in phase space: level 2k gains
/// phase e^{+i 2k theta}. theta and theta + pi give the same state.
FieldState rotated_squeezed_state(double R, double theta, const TruncationPolicy& trunc = {});

/// Two-branch squeezed superposition formed by self-phase modulation at
/// one eighth of the revival period:
///   (e^{-i pi/4}|R>_{theta0 + pi/4} + e^{i pi/4}|R>_{theta0 - pi/4})/sqrt2,
/// with |R>_theta as in rotated_squeezed_state and theta0 = pi/8, the
/// rotation contributed by the n-linear part of the Kerr phase at t = T/8.
/// Fidelity against kerr_propagate(..., T/8, Rotating) is 1 up to truncation.
FieldState cross_reference(double R, const TruncationPolicy& trunc = {});

}  // namespace kerrqed

#endif
