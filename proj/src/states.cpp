#include "kerrqed/states.hpp"

#include <algorithm>
#include <cmath>

namespace kerrqed {

namespace {

// Scaled weight sequence |C_k|^2 of an exact expansion, with suffix sums
// evaluated bottom-up so tiny tails are not lost to cancellation.
struct TailTable {
  std::vector<double> weights;  // arbitrary common scale
  double total = 0.0;

  // Smallest number of leading terms whose excluded mass is < eps.
  int count_for(double eps) const {
    double suffix = 0.0;
    for (int k = static_cast<int>(weights.size()) - 1; k >= 0; --k) {
      suffix += weights[k];
      if (suffix >= eps * total) return k + 1;
    }
    return 1;
  }

  double tail_of(int count) const {
    double suffix = 0.0;
    for (int k = static_cast<int>(weights.size()) - 1; k >= count; --k) suffix += weights[k];
    return suffix / total;
  }
};

// Poisson weights |alpha|^{2k}/k!, scaled to 1 at the mode.
TailTable poisson_table(double abs2, int hard_cap) {
  TailTable t;
  if (abs2 <= 0.0) {
    t.weights = {1.0};
    t.total = 1.0;
    return t;
  }
  const int mode = static_cast<int>(abs2);
  const int bound = std::max(4 * hard_cap, mode + 64 + static_cast<int>(20.0 * std::sqrt(abs2)));
  std::vector<double> up;
  up.reserve(bound);
  double w = 1.0;
  double wmax = 1.0;
  for (int k = 0; k < bound; ++k) {
    up.push_back(w);
    wmax = std::max(wmax, w);
    w *= abs2 / (k + 1);
    if (k > mode && w / wmax < 1e-320) break;
    if (w > 1e280) {  // rescale to avoid overflow for large |alpha|^2
      for (auto& v : up) v /= 1e280;
      w /= 1e280;
      wmax /= 1e280;
    }
  }
  t.weights = std::move(up);
  t.total = 0.0;
  for (double v : t.weights) t.total += v;
  return t;
}

// Squeezed-vacuum pair weights |C_{2k}|^2 with ratio tanh^2(r)(2k+1)/(2k+2).
TailTable squeezed_pair_table(double r, int hard_cap) {
  TailTable t;
  const double t2 = std::tanh(r) * std::tanh(r);
  double q = 1.0;
  const int bound = std::max(4 * hard_cap, 512);
  t.weights.reserve(bound);
  for (int k = 0; k < bound; ++k) {
    t.weights.push_back(q);
    q *= t2 * (2.0 * k + 1.0) / (2.0 * k + 2.0);
    if (k > 8 && q < 1e-320) break;
  }
  t.total = 0.0;
  for (double v : t.weights) t.total += v;
  return t;
}

void check_policy(const TruncationPolicy& trunc) {
  if (!(trunc.tail_eps > 0.0 && trunc.tail_eps < 1.0))
    throw std::invalid_argument("truncation tail_eps must lie in (0, 1)");
  if (trunc.max_dim < 1) throw std::invalid_argument("truncation max_dim must be >= 1");
}

FieldState finish(VectorXc amps, double achieved_tail) {
  const double n = amps.norm();
  if (!(n > 0.0)) throw std::invalid_argument("state has zero norm");
  amps /= n;
  return FieldState{std::move(amps), achieved_tail};
}

}  // namespace

StateSpec StateSpec::fock(int n) {
  StateSpec s;
  s.kind = StateKind::Fock;
  s.n = n;
  return s;
}

StateSpec StateSpec::coherent(Complex alpha) {
  StateSpec s;
  s.kind = StateKind::Coherent;
  s.alpha = alpha;
  return s;
}

StateSpec StateSpec::squeezed_vacuum(double R) {
  StateSpec s;
  s.kind = StateKind::SqueezedVacuum;
  s.R = R;
  return s;
}

StateSpec StateSpec::squeezed_vacuum_r(double r) { return squeezed_vacuum(std::exp(r)); }

StateSpec StateSpec::custom(std::vector<Complex> amps) {
  StateSpec s;
  s.kind = StateKind::Custom;
  s.custom_amps = std::move(amps);
  return s;
}

int auto_dim(const StateSpec& spec, double tail_eps, int max_dim) {
  if (!(tail_eps > 0.0 && tail_eps < 1.0))
    throw std::invalid_argument("tail_eps must lie in (0, 1)");
  int required = 1;
  switch (spec.kind) {
    case StateKind::Fock:
      if (spec.n < 0) throw std::invalid_argument("fock level must be >= 0");
      required = spec.n + 1;
      break;
    case StateKind::Coherent:
      required = poisson_table(std::norm(spec.alpha), max_dim).count_for(tail_eps);
      break;
    case StateKind::SqueezedVacuum: {
      if (!(spec.R > 0.0)) throw std::invalid_argument("squeezing factor R must be > 0");
      const int pairs = squeezed_pair_table(std::log(spec.R), max_dim).count_for(tail_eps);
      required = 2 * (pairs - 1) + 1;
      break;
    }
    case StateKind::Custom:
      required = static_cast<int>(spec.custom_amps.size());
      break;
  }
  if (required > max_dim)
    throw TruncationError("required basis size " + std::to_string(required) +
                              " exceeds max_dim " + std::to_string(max_dim) +
                              "; raise max_dim or loosen tail_eps",
                          required);
  return required;
}

FieldState fock_state(int n, const TruncationPolicy& trunc) {
  check_policy(trunc);
  if (n < 0) throw std::invalid_argument("fock level must be >= 0");
  if (n + 1 > trunc.max_dim)
    throw TruncationError("fock level " + std::to_string(n) + " needs basis size " +
                              std::to_string(n + 1) + " > max_dim " +
                              std::to_string(trunc.max_dim),
                          n + 1);
  VectorXc amps = VectorXc::Zero(n + 1);
  amps[n] = 1.0;
  return FieldState{std::move(amps), 0.0};
}

FieldState coherent_state(Complex alpha, const TruncationPolicy& trunc) {
  check_policy(trunc);
  const StateSpec spec = StateSpec::coherent(alpha);
  const int dim = auto_dim(spec, trunc.tail_eps, trunc.max_dim);
  VectorXc amps = VectorXc::Zero(dim);
  const double abs2 = std::norm(alpha);
  if (abs2 == 0.0) {
    amps[0] = 1.0;
    return FieldState{std::move(amps), 0.0};
  }
  // Anchor the recurrence at the Poisson mode so neither end underflows.
  const int mode = std::min(dim - 1, static_cast<int>(abs2));
  amps[mode] = 1.0;
  for (int k = mode; k > 0; --k) amps[k - 1] = amps[k] * std::sqrt(double(k)) / alpha;
  for (int k = mode; k + 1 < dim; ++k) amps[k + 1] = amps[k] * alpha / std::sqrt(double(k + 1));
  const double tail = poisson_table(abs2, trunc.max_dim).tail_of(dim);
  return finish(std::move(amps), tail);
}

FieldState squeezed_vacuum_state(double R, const TruncationPolicy& trunc) {
  check_policy(trunc);
  if (!(R > 0.0)) throw std::invalid_argument("squeezing factor R must be > 0");
  const StateSpec spec = StateSpec::squeezed_vacuum(R);
  const int dim = auto_dim(spec, trunc.tail_eps, trunc.max_dim);
  const double r = std::log(R);
  VectorXc amps = VectorXc::Zero(dim);
  amps[0] = 1.0;
  const double th = std::tanh(r);
  for (int m = 0; m + 2 < dim; m += 2)
    amps[m + 2] = -th * amps[m] * std::sqrt((m + 1.0) / (m + 2.0));
  const int pairs = (dim + 1) / 2;
  const double tail = squeezed_pair_table(r, trunc.max_dim).tail_of(pairs);
  return finish(std::move(amps), tail);
}

FieldState custom_state(const std::vector<Complex>& amps) {
  if (amps.empty()) throw std::invalid_argument("custom state needs at least one amplitude");
  VectorXc v(amps.size());
  for (size_t i = 0; i < amps.size(); ++i) {
    if (!std::isfinite(amps[i].real()) || !std::isfinite(amps[i].imag()))
      throw std::invalid_argument("custom state has non-finite amplitude");
    v[static_cast<Eigen::Index>(i)] = amps[i];
  }
  return finish(std::move(v), 0.0);
}

FieldState make_state(const StateSpec& spec, const TruncationPolicy& trunc) {
  switch (spec.kind) {
    case StateKind::Fock:
      return fock_state(spec.n, trunc);
    case StateKind::Coherent:
      return coherent_state(spec.alpha, trunc);
    case StateKind::SqueezedVacuum:
      return squeezed_vacuum_state(spec.R, trunc);
    case StateKind::Custom:
      return custom_state(spec.custom_amps);
  }
  throw std::logic_error("unreachable state kind");
}

}  // namespace kerrqed
