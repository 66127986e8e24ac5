#ifndef KERRQED_PHASESPACE_HPP
#define KERRQED_PHASESPACE_HPP

#include <span>
#include <vector>

#include "kerrqed/dynamics.hpp"
#include "kerrqed/observables.hpp"
#include "kerrqed/types.hpp"

namespace kerrqed {

/// Oscillator eigenfunction F_n(x) = pi^{-1/4} (2^n n!)^{-1/2} H_n(x) e^{-x^2/2}
/// in the x = (a + a^dag)/sqrt2 convention, by the normalized three-term
/// recurrence F_{n+1} = x sqrt(2/(n+1)) F_n - sqrt(n/(n+1)) F_{n-1}.
double fock_wavefunction(int n, double x);

/// Fills out[0..n_max] with F_0(x) .. F_n_max(x) in one recurrence pass.
void fock_wavefunctions(int n_max, double x, std::span<double> out);

struct AxisSpec {
  double min = -10.0;
  double max = 10.0;
  int points = 801;

  double step() const { return points > 1 ? (max - min) / (points - 1) : 0.0; }
  double at(int i) const { return min + i * step(); }
  std::vector<double> values() const;
};

/// Time-resolved field density |psi(x,t)|^2, field traced over the dot
/// (ground and excited components added incoherently). Rows follow the
/// time grid, columns the x axis.
struct CarpetGrid {
  AxisSpec x;
  std::vector<double> t;
  Eigen::MatrixXd values;
  double min_row_integral = 1.0;  // rows should integrate to 1; < 0.999 means the grid clips

  int rows() const { return static_cast<int>(values.rows()); }
};

CarpetGrid carpet(std::span<const JointState> traj, const AxisSpec& x_axis, int threads = 0);

/// Wigner distribution W(x,p) of a field density matrix, normalized so that
/// the integral over dx dp is 1 and W(0,0) = 1/pi for the vacuum.
struct WignerGrid {
  AxisSpec x;
  AxisSpec p;
  Eigen::MatrixXd values;  // rows: p, cols: x

  double integral() const;  // trapezoid
};

WignerGrid wigner(const DensityMatrix& rho_field, const AxisSpec& x_axis, const AxisSpec& p_axis,
                  int threads = 0);

/// Integral of the negative part, integral max(-W, 0) dx dp.
double negativity_volume(const WignerGrid& w);

/// Time rows of a carpet whose dominant local maximum is narrower than
/// threshold x (the FWHM of the first row). Half-maximum crossings are
/// located by linear interpolation between samples.
struct SqueezingZone {
  double t;
  double x_lo;
  double x_hi;
  double fwhm;
};

struct SqueezingScan {
  std::vector<SqueezingZone> zones;  // ordered by time
  std::vector<double> sigma_x;       // sqrt(Var[x]) per row from grid moments
  std::vector<double> fwhm;          // dominant-peak FWHM per row (NaN if unresolved)
  double initial_fwhm = 0.0;
};

SqueezingScan squeezing_zones(const CarpetGrid& c, double threshold);

}  // namespace kerrqed

#endif
