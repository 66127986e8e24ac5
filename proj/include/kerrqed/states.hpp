#ifndef KERRQED_STATES_HPP
#define KERRQED_STATES_HPP

#include <vector>

#include "kerrqed/types.hpp"

namespace kerrqed {

/// Pure single-mode field state over the truncated Fock basis |0..dim-1>.
/// Amplitudes are normalized on the truncated basis; tail_eps records the
/// probability mass of the exact state that the truncation excluded.
struct FieldState {
  VectorXc amps;
  double tail_eps = 0.0;

  int dim() const { return static_cast<int>(amps.size()); }
  double norm_error() const { return std::abs(amps.squaredNorm() - 1.0); }
};

enum class StateKind { Fock, Coherent, SqueezedVacuum, Custom };

/// Tagged description of an initial field state; exactly one variant's
/// parameters are meaningful.
struct StateSpec {
  StateKind kind = StateKind::Fock;
  int n = 0;                          // Fock
  Complex alpha = 0.0;                // Coherent
  double R = 1.0;                     // SqueezedVacuum, R = exp(r) > 0
  std::vector<Complex> custom_amps;   // Custom

  static StateSpec fock(int n);
  static StateSpec coherent(Complex alpha);
  static StateSpec squeezed_vacuum(double R);
  static StateSpec squeezed_vacuum_r(double r);  // squeezing parameter, R = exp(r)
  static StateSpec custom(std::vector<Complex> amps);
};

/// Unit amplitude at level n. Fails if n+1 exceeds the dimension cap.
FieldState fock_state(int n, const TruncationPolicy& trunc = {});

/// Coherent state |alpha>. Amplitudes follow C_{k+1} = C_k alpha/sqrt(k+1),
/// renormalized on the truncated basis.
FieldState coherent_state(Complex alpha, const TruncationPolicy& trunc = {});

/// Squeezed vacuum with squeezing factor R = exp(r) > 0. Only even levels are
/// populated; C_{m+2} = -tanh(r) C_m sqrt((m+1)/(m+2)). The resulting state
/// has its x = (a+a^dag)/sqrt2 quadrature squeezed at t = 0, Var[x] = 1/(2R^2).
FieldState squeezed_vacuum_state(double R, const TruncationPolicy& trunc = {});

/// Arbitrary amplitude list, normalized. Throws on zero or non-finite input.
FieldState custom_state(const std::vector<Complex>& amps);

FieldState make_state(const StateSpec& spec, const TruncationPolicy& trunc = {});

/// Smallest basis size whose excluded probability mass (from the exact
/// per-term expansion, before renormalization) is below tail_eps.
int auto_dim(const StateSpec& spec, double tail_eps, int max_dim = 4096);

}  // namespace kerrqed

#endif
