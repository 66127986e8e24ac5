#include "kerrqed/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace kerrqed {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Chunked parallel loop over [0, count). Rows write to disjoint outputs, so
// the result does not depend on the schedule.
template <typename Fn>
void parallel_rows(int count, int threads, Fn&& fn) {
  threads = std::min(resolve_threads(threads), std::max(1, count));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([=]() {
      for (int i = w; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double trapezoid(const Eigen::VectorXd& f, double h) {
  if (f.size() < 2) return 0.0;
  return h * (f.sum() - 0.5 * (f[0] + f[f.size() - 1]));
}

// Row profile of one state: |sum_n g_n F_n(x)|^2 + |sum_n e_n F_n(x)|^2,
// with F the precomputed (x_points x dim) eigenfunction table.
void carpet_row(const Eigen::MatrixXd& F, const JointState& s, Eigen::Ref<Eigen::VectorXd> row) {
  const Eigen::VectorXd gr = F * s.ground.real();
  const Eigen::VectorXd gi = F * s.ground.imag();
  row = gr.array().square() + gi.array().square();
  if (s.excited.squaredNorm() > 0.0) {
    const Eigen::VectorXd er = F * s.excited.real();
    const Eigen::VectorXd ei = F * s.excited.imag();
    row += (er.array().square() + ei.array().square()).matrix();
  }
}

struct PeakWidth {
  double x_lo = 0.0, x_hi = 0.0;
  double fwhm = std::numeric_limits<double>::quiet_NaN();
};

// FWHM of the dominant maximum; NaN when a half-maximum crossing is not
// bracketed inside the grid.
PeakWidth dominant_peak_width(const AxisSpec& x, const Eigen::VectorXd& row) {
  PeakWidth out;
  int ipk = 0;
  row.maxCoeff(&ipk);
  const double half = row[ipk] / 2.0;
  int il = ipk;
  while (il > 0 && row[il] > half) --il;
  int ir = ipk;
  const int last = static_cast<int>(row.size()) - 1;
  while (ir < last && row[ir] > half) ++ir;
  if (row[il] > half || row[ir] > half) return out;
  const auto interp = [&](int i0, int i1) {
    return x.at(i0) + (half - row[i0]) * (x.at(i1) - x.at(i0)) / (row[i1] - row[i0]);
  };
  out.x_lo = (il == ipk) ? x.at(il) : interp(il, il + 1);
  out.x_hi = (ir == ipk) ? x.at(ir) : interp(ir - 1, ir);
  out.fwhm = out.x_hi - out.x_lo;
  return out;
}

}  // namespace

std::vector<double> AxisSpec::values() const {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = at(i);
  return v;
}

double fock_wavefunction(int n, double x) {
  if (n < 0) throw std::invalid_argument("fock_wavefunction needs n >= 0");
  double fm1 = 0.0;
  double f = std::pow(kPi, -0.25) * std::exp(-x * x / 2.0);
  for (int k = 0; k < n; ++k) {
    const double fp = x * std::sqrt(2.0 / (k + 1.0)) * f - std::sqrt(k / (k + 1.0)) * fm1;
    fm1 = f;
    f = fp;
  }
  return f;
}

void fock_wavefunctions(int n_max, double x, std::span<double> out) {
  if (n_max < 0 || out.size() < static_cast<size_t>(n_max) + 1)
    throw std::invalid_argument("fock_wavefunctions output span too small");
  double fm1 = 0.0;
  double f = std::pow(kPi, -0.25) * std::exp(-x * x / 2.0);
  out[0] = f;
  for (int k = 0; k < n_max; ++k) {
    const double fp = x * std::sqrt(2.0 / (k + 1.0)) * f - std::sqrt(k / (k + 1.0)) * fm1;
    fm1 = f;
    f = fp;
    out[k + 1] = f;
  }
}

CarpetGrid carpet(std::span<const JointState> traj, const AxisSpec& x_axis, int threads) {
  if (traj.empty()) throw std::invalid_argument("carpet needs at least one state");
  if (x_axis.points < 2) throw std::invalid_argument("carpet grid needs x_points >= 2");
  const int dim = traj[0].dim();
  for (const auto& s : traj) {
    if (s.dim() != dim) throw std::invalid_argument("carpet states must share one basis size");
    if (s.frame != Frame::Lab) throw std::invalid_argument("carpet expects lab-frame states");
  }

  Eigen::MatrixXd F(x_axis.points, dim);
  std::vector<double> col(dim);
  for (int ix = 0; ix < x_axis.points; ++ix) {
    fock_wavefunctions(dim - 1, x_axis.at(ix), col);
    for (int n = 0; n < dim; ++n) F(ix, n) = col[n];
  }

  CarpetGrid grid;
  grid.x = x_axis;
  grid.t.reserve(traj.size());
  for (const auto& s : traj) grid.t.push_back(s.t);
  grid.values.resize(static_cast<Eigen::Index>(traj.size()), x_axis.points);

  const int rows = static_cast<int>(traj.size());
  std::vector<Eigen::VectorXd> buf(rows);
  parallel_rows(rows, threads, [&](int r) {
    buf[r].resize(x_axis.points);
    carpet_row(F, traj[r], buf[r]);
  });
  double min_integral = std::numeric_limits<double>::infinity();
  for (int r = 0; r < rows; ++r) {
    grid.values.row(r) = buf[r];
    min_integral = std::min(min_integral, trapezoid(buf[r], x_axis.step()));
  }
  grid.min_row_integral = min_integral;
  return grid;
}

double WignerGrid::integral() const {
  const double hx = x.step(), hp = p.step();
  double acc = 0.0;
  for (int ip = 0; ip < p.points; ++ip) {
    const double wp = (ip == 0 || ip == p.points - 1) ? 0.5 : 1.0;
    for (int ix = 0; ix < x.points; ++ix) {
      const double wx = (ix == 0 || ix == x.points - 1) ? 0.5 : 1.0;
      acc += wp * wx * values(ip, ix);
    }
  }
  return acc * hx * hp;
}

WignerGrid wigner(const DensityMatrix& rho_field, const AxisSpec& x_axis, const AxisSpec& p_axis,
                  int threads) {
  if (rho_field.subsystem != Subsystem::Field)
    throw std::invalid_argument("wigner expects a field density matrix");
  const int dim = rho_field.dim();
  const MatrixXc& rho = rho_field.elements;

  WignerGrid grid;
  grid.x = x_axis;
  grid.p = p_axis;
  grid.values.resize(p_axis.points, x_axis.points);

  // W(x,p) = (1/pi) sum_{n,m} (-1)^n rho_{nm} <n|D(gamma)|m>, gamma = sqrt2 (x+ip).
  // The displacement matrix elements are generated along diagonals d = m - n by a
  // normalized associated-Laguerre recurrence whose values are bounded by 1;
  // the d-start magnitude exp(d ln|gamma| - |gamma|^2/2 - lgamma(d+1)/2) is kept
  // in the log domain.
  parallel_rows(p_axis.points, threads, [&](int ip) {
    const double pv = p_axis.at(ip);
    for (int ix = 0; ix < x_axis.points; ++ix) {
      const double xv = x_axis.at(ix);
      const Complex gamma = std::sqrt(2.0) * Complex(xv, pv);
      const double z = std::norm(gamma);
      const double logg = (z > 0.0) ? 0.5 * std::log(z) : 0.0;
      const double argg = std::arg(gamma);
      double acc = 0.0;
      for (int d = 0; d < dim; ++d) {
        Complex pn;
        if (d == 0) {
          pn = std::exp(-z / 2.0);
        } else if (z == 0.0) {
          break;  // D(0) is the identity; only d = 0 contributes
        } else {
          const double mag = std::exp(d * logg - z / 2.0 - 0.5 * std::lgamma(d + 1.0));
          pn = mag * std::exp(Complex(0.0, d * argg));
        }
        Complex pm1 = 0.0;
        const double fold = (d == 0) ? 1.0 : 2.0;
        for (int n = 0; n + d < dim; ++n) {
          const double sign = (n % 2 == 0) ? 1.0 : -1.0;
          acc += fold * sign * std::real(rho(n, n + d) * pn);
          if (n + 1 + d < dim) {
            const Complex pnext =
                (2.0 * n + d + 1.0 - z) * pn / std::sqrt((n + 1.0) * (n + 1.0 + d)) -
                std::sqrt(n * (n + d) / ((n + 1.0) * (n + 1.0 + d))) * pm1;
            pm1 = pn;
            pn = pnext;
          }
        }
      }
      grid.values(ip, ix) = acc / kPi;
    }
  });
  return grid;
}

double negativity_volume(const WignerGrid& w) {
  const double hx = w.x.step(), hp = w.p.step();
  double acc = 0.0;
  for (int ip = 0; ip < w.p.points; ++ip) {
    const double wp = (ip == 0 || ip == w.p.points - 1) ? 0.5 : 1.0;
    for (int ix = 0; ix < w.x.points; ++ix) {
      const double wx = (ix == 0 || ix == w.x.points - 1) ? 0.5 : 1.0;
      acc += wp * wx * std::max(-w.values(ip, ix), 0.0);
    }
  }
  return acc * hx * hp;
}

SqueezingScan squeezing_zones(const CarpetGrid& c, double threshold) {
  if (c.rows() < 1) throw std::invalid_argument("squeezing_zones needs a non-empty carpet");
  SqueezingScan scan;
  scan.sigma_x.resize(c.rows());
  scan.fwhm.resize(c.rows());

  const double h = c.x.step();
  Eigen::VectorXd xs(c.x.points), x2s(c.x.points);
  for (int i = 0; i < c.x.points; ++i) {
    xs[i] = c.x.at(i);
    x2s[i] = xs[i] * xs[i];
  }

  const PeakWidth first = dominant_peak_width(c.x, c.values.row(0).transpose());
  scan.initial_fwhm = first.fwhm;

  for (int r = 0; r < c.rows(); ++r) {
    const Eigen::VectorXd row = c.values.row(r).transpose();
    const double m0 = trapezoid(row, h);
    const double m1 = trapezoid((row.array() * xs.array()).matrix(), h) / m0;
    const double m2 = trapezoid((row.array() * x2s.array()).matrix(), h) / m0;
    scan.sigma_x[r] = std::sqrt(std::max(0.0, m2 - m1 * m1));

    const PeakWidth pw = dominant_peak_width(c.x, row);
    scan.fwhm[r] = pw.fwhm;
    if (std::isfinite(pw.fwhm) && std::isfinite(scan.initial_fwhm) &&
        pw.fwhm < threshold * scan.initial_fwhm)
      scan.zones.push_back({c.t[r], pw.x_lo, pw.x_hi, pw.fwhm});
  }
  return scan;
}

}  // namespace kerrqed
