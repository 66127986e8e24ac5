#ifndef KERRQED_DYNAMICS_HPP
#define KERRQED_DYNAMICS_HPP

#include "kerrqed/states.hpp"
#include "kerrqed/types.hpp"

namespace kerrqed {

/// System frequencies, hbar = 1 throughout.
struct ModelParams {
  double omega = 1.0;    // field mode frequency
  double omega0 = 1.0;   // two-level transition frequency
  double g = 0.0;        // Kerr strength (signed)
  double coupling = 1.0; // vacuum Rabi frequency Omega >= 0

  void validate() const;
  bool resonant() const;
};

enum class Frame { Lab, Rotating };

/// Joint dot+field state at one instant. ground[n] and excited[n] are the
/// amplitudes of |g,n> and |e,n>. Lab frame carries the free phases
/// e^{-i omega n t} (ground) and e^{-i (omega n + omega0) t} (excited), with
/// the constant zero-point phase dropped; the rotating frame strips them.
struct JointState {
  VectorXc ground;
  VectorXc excited;
  double t = 0.0;
  Frame frame = Frame::Lab;

  int dim() const { return static_cast<int>(ground.size()); }
  double total_norm_error() const {
    return std::abs(ground.squaredNorm() + excited.squaredNorm() - 1.0);
  }
};

/// Dressed-manifold quasienergies for manifold n >= 1 (levels |g,n>, |e,n-1>),
/// relative to the manifold's free energy:
///   gamma_{1,2} = -g(n-1)^2/2 +- s_n,  s_n = sqrt(Omega^2 n + g^2 (n-1)^2 / 4).
struct Quasienergies {
  double gamma1;
  double gamma2;
  double s;
};
Quasienergies quasienergies(int n, const ModelParams& p);

/// Closed-form evolution of |g> x field under the resonant model. Each
/// manifold {|g,n>, |e,n-1>} precesses independently; the n = 0 amplitude is
/// constant. Result is in the lab frame.
JointState evolve(const FieldState& initial, const ModelParams& p, double t);

/// Pure self-phase-modulation limit (the coupling is treated as exactly 0):
/// level n acquires phase exp(+i g n(n-1) t/2 - i omega n t) in the lab frame;
/// the rotating frame drops the omega term.
FieldState kerr_propagate(const FieldState& initial, const ModelParams& p, double t,
                          Frame frame = Frame::Lab);

/// Probability that the dot is excited: sum_n |excited_n|^2.
double excitation_probability(const JointState& s);

/// View of the same state in another frame.
JointState to_frame(const JointState& s, Frame target, const ModelParams& p);

/// Field state lifted to the joint space with the dot in its ground state.
JointState lift_to_joint(const FieldState& field);

}  // namespace kerrqed

#endif
