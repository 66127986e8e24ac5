#include "kerrqed/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>
#include <Eigen/Sparse>
#include <nlohmann/json.hpp>

#include "kerrqed/observables.hpp"

// boost 1.7x declares the Eigen norm with the matrix scalar as result type,
// which is complex here; the error checker needs a real norm.
namespace boost::numeric::odeint {
template <>
struct vector_space_norm_inf<kerrqed::VectorXc> {
  typedef double result_type;
  double operator()(const kerrqed::VectorXc& v) const { return v.cwiseAbs().maxCoeff(); }
};
}  // namespace boost::numeric::odeint

namespace kerrqed {

namespace {

constexpr Complex kI{0.0, 1.0};

using SparseXc = Eigen::SparseMatrix<Complex>;

// Nonzero pattern taken from the assembled matrix itself; the integrator
// stays agnostic of the manifold structure.
SparseXc compress(const MatrixXc& m) {
  std::vector<Eigen::Triplet<Complex>> trip;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Complex(0.0)) trip.emplace_back(i, j, m(i, j));
  SparseXc s(m.rows(), m.cols());
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

double inf_norm(const MatrixXc& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).lpNorm<1>());
  return best;
}

}  // namespace

JointHamiltonian build_hamiltonian(const ModelParams& p, int dim) {
  p.validate();
  if (dim < 1) throw std::invalid_argument("hamiltonian needs dim >= 1");
  if (dim > kOracleDimCap)
    throw std::invalid_argument("hamiltonian dim " + std::to_string(dim) +
                                " exceeds the oracle cap " + std::to_string(kOracleDimCap));
  JointHamiltonian h;
  h.dim = dim;
  h.matrix = MatrixXc::Zero(2 * dim, 2 * dim);
  for (int n = 0; n < dim; ++n) {
    const double free_n = p.omega * n - 0.5 * p.g * n * (n - 1.0);
    h.matrix(JointHamiltonian::index_ground(n), JointHamiltonian::index_ground(n)) =
        free_n - 0.5 * p.omega0;
    h.matrix(JointHamiltonian::index_excited(n), JointHamiltonian::index_excited(n)) =
        free_n + 0.5 * p.omega0;
    if (n >= 1) {
      const double v = p.coupling * std::sqrt(double(n));
      h.matrix(JointHamiltonian::index_ground(n), JointHamiltonian::index_excited(n - 1)) = v;
      h.matrix(JointHamiltonian::index_excited(n - 1), JointHamiltonian::index_ground(n)) = v;
    }
  }
  return h;
}

JointState integrate(const JointState& initial, const JointHamiltonian& h, double t, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("integration tol must be > 0");
  if (initial.dim() != h.dim)
    throw std::invalid_argument("state dimension does not match the hamiltonian");
  if (initial.frame != Frame::Lab)
    throw std::invalid_argument("integrate expects a lab-frame state");
  if (t < 0.0) throw std::invalid_argument("integrate expects t >= 0");

  VectorXc psi(2 * h.dim);
  for (int n = 0; n < h.dim; ++n) {
    psi[JointHamiltonian::index_ground(n)] = initial.ground[n];
    psi[JointHamiltonian::index_excited(n)] = initial.excited[n];
  }

  if (t > 0.0) {
    const SparseXc hs = compress(h.matrix);
    const double scale = std::max(1.0, inf_norm(h.matrix) * t);
    const double eps_local = tol / scale;
    auto rhs = [&hs](const VectorXc& x, VectorXc& dxdt, double) { dxdt = -kI * (hs * x); };

    namespace ode = boost::numeric::odeint;
    using stepper_t =
        ode::runge_kutta_fehlberg78<VectorXc, double, VectorXc, double, ode::vector_space_algebra>;
    auto ctrl = ode::make_controlled<stepper_t>(eps_local, eps_local);

    double tau = 0.0;
    double dt = std::min(t, 0.1 / std::max(1.0, inf_norm(h.matrix)));
    const double dt_min = std::max(t * 1e-14, 1e-300);
    while (tau < t) {
      if (tau + dt > t) dt = t - tau;
      const auto res = ctrl.try_step(rhs, psi, tau, dt);
      if (res == ode::fail && dt < dt_min)
        throw IntegrationError("adaptive step size underflow at t = " + std::to_string(tau) +
                                   " (step " + std::to_string(dt) + ")",
                               tau, dt);
    }
  }

  JointState out;
  out.ground.resize(h.dim);
  out.excited.resize(h.dim);
  for (int n = 0; n < h.dim; ++n) {
    out.ground[n] = psi[JointHamiltonian::index_ground(n)];
    out.excited[n] = psi[JointHamiltonian::index_excited(n)];
  }
  out.t = t;
  out.frame = Frame::Lab;
  return out;
}

EquivalenceReport equivalence_report(const FieldState& initial, const ModelParams& p,
                                     std::span<const double> t_grid, double tol,
                                     const ClosedFormEvolver& evolver) {
  if (initial.dim() > kOracleDimCap)
    throw std::invalid_argument("state dimension exceeds the oracle cap");
  std::vector<double> ts(t_grid.begin(), t_grid.end());
  std::sort(ts.begin(), ts.end());

  const JointHamiltonian h = build_hamiltonian(p, initial.dim());
  const ClosedFormEvolver cf =
      evolver ? evolver
              : [](const FieldState& f, const ModelParams& mp, double t) { return evolve(f, mp, t); };

  EquivalenceReport rep;
  rep.dim = initial.dim();
  rep.tol = tol;

  JointState num = lift_to_joint(initial);
  double t_prev = 0.0;
  for (double t : ts) {
    if (t < 0.0) throw std::invalid_argument("equivalence grid times must be >= 0");
    if (t > t_prev) {
      // continue the same trajectory; each leg gets its share of the budget
      num = integrate(num, h, t - t_prev, tol * std::max(1e-3, (t - t_prev) / std::max(t, 1e-300)));
      num.t = t;
      t_prev = t;
    }

    JointState closed = cf(initial, p, t);
    // the brute-force state keeps the constant -+omega0/2 zero-point phase
    // that the closed form drops; realign before comparing amplitudes
    const Complex align = std::exp(kI * (0.5 * p.omega0 * t));
    EquivalenceRow row;
    row.t = t;
    double dev = 0.0;
    for (int n = 0; n < rep.dim; ++n) {
      dev = std::max(dev, std::abs(num.ground[n] - align * closed.ground[n]));
      dev = std::max(dev, std::abs(num.excited[n] - align * closed.excited[n]));
    }
    row.max_amp_dev = dev;
    row.d_excitation = std::abs(excitation_probability(num) - excitation_probability(closed));
    row.d_mean_photon = std::abs(mean_photon_number(num) - mean_photon_number(closed));
    row.d_var_x =
        std::abs(quadrature_moments(num).var_x - quadrature_moments(closed).var_x);
    row.d_schmidt = std::abs(schmidt_parameter(reduced_density(num, Subsystem::Dot)) -
                             schmidt_parameter(reduced_density(closed, Subsystem::Dot)));
    rep.rows.push_back(row);

    rep.max_amp_dev = std::max(rep.max_amp_dev, row.max_amp_dev);
    rep.max_d_excitation = std::max(rep.max_d_excitation, row.d_excitation);
    rep.max_d_mean_photon = std::max(rep.max_d_mean_photon, row.d_mean_photon);
    rep.max_d_var_x = std::max(rep.max_d_var_x, row.d_var_x);
    rep.max_d_schmidt = std::max(rep.max_d_schmidt, row.d_schmidt);
    rep.norm_drift = std::max(rep.norm_drift, num.total_norm_error());
  }
  return rep;
}

nlohmann::json EquivalenceReport::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_j.push_back({{"t", r.t},
                      {"max_amp_dev", r.max_amp_dev},
                      {"d_excitation", r.d_excitation},
                      {"d_mean_photon", r.d_mean_photon},
                      {"d_var_x", r.d_var_x},
                      {"d_schmidt", r.d_schmidt}});
  }
  return {{"schema", "kerrqed.equivalence.v1"},
          {"dim", dim},
          {"tol", tol},
          {"max_amp_dev", max_amp_dev},
          {"max_d_excitation", max_d_excitation},
          {"max_d_mean_photon", max_d_mean_photon},
          {"max_d_var_x", max_d_var_x},
          {"max_d_schmidt", max_d_schmidt},
          {"norm_drift", norm_drift},
          {"rows", rows_j}};
}

}  // namespace kerrqed
