#ifndef KERRQED_ORACLE_HPP
#define KERRQED_ORACLE_HPP

#include <functional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kerrqed/dynamics.hpp"
#include "kerrqed/states.hpp"
#include "kerrqed/types.hpp"

namespace kerrqed {

/// Largest basis size the brute-force path accepts (dense matrix memory).
inline constexpr int kOracleDimCap = 256;

/// Full joint Hamiltonian on the truncated basis, hbar = 1.
/// Basis ordering is [|g,0>, |e,0>, |g,1>, |e,1>, ...]: ground level n sits at
/// index 2n, excited level n at 2n+1. Nonzeros are the diagonal
///   -+omega0/2 + omega n - (g/2) n(n-1)
/// and the couplings <g,n|H|e,n-1> = Omega sqrt(n).
struct JointHamiltonian {
  MatrixXc matrix;
  int dim = 0;  // Fock levels per dot state

  static int index_ground(int n) { return 2 * n; }
  static int index_excited(int n) { return 2 * n + 1; }
};

JointHamiltonian build_hamiltonian(const ModelParams& p, int dim);

/// Integrates i dpsi/dt = H psi from the given state to time t with an
/// adaptive embedded Runge-Kutta scheme; tol is the global error budget
/// (the per-step tolerance is tol scaled down by ||H|| t). The result keeps
/// the raw phases of the full Hamiltonian, including the constant -+omega0/2
/// zero-point terms that the closed form drops.
JointState integrate(const JointState& initial, const JointHamiltonian& h, double t,
                     double tol = 1e-10);

struct EquivalenceRow {
  double t;
  double max_amp_dev;     // infinity norm over joint amplitudes, global phase aligned
  double d_excitation;
  double d_mean_photon;
  double d_var_x;
  double d_schmidt;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  double max_amp_dev = 0.0;
  double max_d_excitation = 0.0;
  double max_d_mean_photon = 0.0;
  double max_d_var_x = 0.0;
  double max_d_schmidt = 0.0;
  double norm_drift = 0.0;
  int dim = 0;
  double tol = 0.0;

  nlohmann::json to_json() const;
};

/// Closed-form path under test; defaults to evolve().
using ClosedFormEvolver = std::function<JointState(const FieldState&, const ModelParams&, double)>;

/// Evolves the same initial state along the closed form and along brute-force
/// integration, and reports per-time amplitude and observable deviations.
EquivalenceReport equivalence_report(const FieldState& initial, const ModelParams& p,
                                     std::span<const double> t_grid, double tol = 1e-10,
                                     const ClosedFormEvolver& evolver = {});

}  // namespace kerrqed

#endif
